#pragma once

#include <map>
#include <string>
#include <vector>

#include "pbw/alphabet.hpp"
#include "pbw/monomial.hpp"

namespace pbw {

/// Generators and relations of a symmetric operad. Relation monomials are
/// tree expressions: vertex tokens index `generators`, leaves are the
/// variables a1..an, each used once.
struct SymmetricPresentation {
  std::string name;
  std::vector<GeneratorSpec> generators;
  std::vector<Term> relations;

  /// Names of the generators, for formatting relation terms.
  std::vector<std::string> names() const;
  /// Checks declared generators and relation well-formedness. Throws
  /// InvalidInput.
  void validate() const;
};

/// A presentation of a shuffle operad.
struct ShufflePresentation {
  std::string name;
  Alphabet alphabet;
  std::vector<Term> relations;
};

/// The forgetful image: all shuffle generators of the declared symmetric
/// ones, and a basis of the shuffle relations obtained by relabeling each
/// relation by every permutation of its variables.
ShufflePresentation shuffleize(const SymmetricPresentation& p);

/// The S_n-orbit of a symmetric relation written over the shuffle alphabet;
/// one Term per permutation (possibly zero or repeated).
std::vector<Term> shuffle_orbit(const Term& relation, const Alphabet& alphabet);

/// Converts a tree expression over `alphabet.origins()` into a shuffle term.
Term to_shuffle(const Term& symmetric, const Alphabet& alphabet);

/// The symmetric tree expression of a shuffle term.
Term to_symmetric(const Term& shuffle, const Alphabet& alphabet);

std::vector<std::string> zoo_names();
/// Built-in presentations. Throws InvalidInput for an unknown name.
SymmetricPresentation zoo(const std::string& name);

/// A new binary generator defined as a term in the old generators.
struct NewGenerator {
  std::string name;
  Term definition;  // arity 2, over the old symmetric generators
  int weight = 0;
};

/// Rewrites a presentation with binary generators in terms of new binary
/// generators. The new shuffle generators must form a basis of the span of
/// the old ones in arity 2; otherwise MathError("non-invertible
/// substitution"). Symmetry of each new generator is detected from its
/// definition. Old generators must all be binary.
SymmetricPresentation change_generators(const SymmetricPresentation& p, const std::vector<NewGenerator>& gens);

/// Relabels variables and sorts the arguments of (anti)symmetric generators
/// by their minimal variable, collecting signs.
Term canonicalize(const Term& symmetric, std::span<const GeneratorSpec> gens);

/// DSL text for a presentation; parse_presentation inverts it.
std::string print_presentation(const SymmetricPresentation& p);

}  // namespace pbw
