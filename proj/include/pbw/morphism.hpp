#pragma once

#include <string>
#include <vector>

#include "pbw/presentation.hpp"

namespace pbw {

/// A morphism of symmetric operads given on generators: images[i] is a term
/// over the target generators in the variables a1..ak, k the arity of source
/// generator i.
struct SymmetricMorphism {
  std::string name;
  SymmetricPresentation source;
  SymmetricPresentation target;
  std::vector<Term> images;

  void validate() const;
};

/// The same morphism between the shuffle presentations: images are indexed
/// by source shuffle generators and written over the target alphabet.
struct OperadMorphism {
  std::string name;
  ShufflePresentation source;
  ShufflePresentation target;
  std::vector<Term> images;
};

OperadMorphism shuffleize(const SymmetricMorphism& m);

/// Built-in morphism between two zoo operads (e.g. Lie -> Ass, the
/// commutator). Throws InvalidInput when no default is known.
SymmetricMorphism zoo_morphism(const std::string& source, const std::string& target);

/// Known (source, target) pairs.
std::vector<std::pair<std::string, std::string>> zoo_morphism_names();

}  // namespace pbw
