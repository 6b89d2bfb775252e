#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbw/groebner.hpp"
#include "pbw/linalg.hpp"
#include "pbw/morphism.hpp"
#include "pbw/series.hpp"
#include "pbw/shuffle.hpp"

namespace pbw {

/// Image of a source tree monomial (or term) under a morphism given on
/// generators.
Term apply_morphism(const OperadMorphism& m, const Monomial& source);
Term apply_morphism(const OperadMorphism& m, const Term& source);

/// A presentation filtered by generator weights (taken from the alphabet).
struct FilteredPresentation {
  ShufflePresentation base;

  /// Generators of positive weight.
  std::vector<int> distinguished() const;
  /// Throws InvalidInput unless some generator has positive weight.
  void validate() const;
};

int monomial_weight(const Monomial& m, const Alphabet& alphabet);

/// Lowest-weight homogeneous component of each relation.
SymmetricPresentation associated_graded(const SymmetricPresentation& p);

/// The associated graded relation space: lowest-weight components of an
/// echelon basis taken with respect to weight, so that the result spans all
/// lowest-weight components of the relation space.
ShufflePresentation associated_graded(const FilteredPresentation& f);

/// Same span of relations in each arity.
bool same_relation_span(const ShufflePresentation& a, const ShufflePresentation& b);

/// A target presentation filtered so that the images of the source
/// generators carry weight 1, and its associated graded.
struct GradedTarget {
  SymmetricPresentation filtered;
  /// Lowest-weight component of each filtered relation.
  SymmetricPresentation graded;
  /// The source mapped into the graded presentation.
  SymmetricMorphism morphism;
  bool changed_generators = false;
  std::vector<NewGenerator> generators;  // when changed
};

/// When every image is a single target generator, those generators get
/// weight 1. Otherwise the target is rewritten in new binary generators: one
/// per source generator, named after it and defined by its image (weight 1),
/// plus a complement of weight 0. Without an explicit complement an image
/// u(a1,a2) - v(a2,a1) is completed by dot = u(a1,a2) + v(a2,a1).
GradedTarget graded_target(const SymmetricMorphism& m, const std::optional<NewGenerator>& complement = std::nullopt);

struct DimensionComparison {
  std::vector<std::int64_t> candidate;
  std::vector<std::int64_t> base;
  bool isomorphic = false;
  int first_difference = 0;  // arity, 0 when none
};

/// Compares normal-monomial counts up to arity d. Equal counts certify that
/// the surjection from the candidate onto the associated graded operad is an
/// isomorphism in those arities.
DimensionComparison gr_is_isomorphic_check(const GroebnerBasis& candidate, const GroebnerBasis& base, int d);

struct MorphismVerdict {
  bool valid = true;
  std::vector<std::string> failures;
};

/// Substitutes the images into every source relation and reduces modulo the
/// target basis; also checks that images respect declared symmetries.
MorphismVerdict verify_morphism(const OperadMorphism& m, const GroebnerBasis& target);

/// Normal monomials of a basis for arities 1..bound with index lookup.
class NormalTable {
 public:
  NormalTable() = default;
  NormalTable(const GroebnerBasis& g, int bound);

  int bound() const { return static_cast<int>(lists_.size()); }
  const std::vector<Monomial>& at(int n) const { return lists_.at(static_cast<std::size_t>(n - 1)); }
  int dim(int n) const { return static_cast<int>(at(n).size()); }
  int index(const Monomial& m) const;
  /// Coordinates of a reduced term. Throws MathError on a non-normal monomial.
  SparseRow coordinates(const Term& reduced) const;
  Term term(int n, const SparseRow& row) const;

 private:
  std::vector<std::vector<Monomial>> lists_;
  std::vector<std::map<Monomial, int>> index_;
};

/// N regarded as a right M-module through a morphism M -> N.
struct RightModuleData {
  OperadMorphism morphism;
  GroebnerBasis gbM;
  GroebnerBasis gbN;
  int bound = 0;
  NormalTable normalM;
  NormalTable normalN;
  /// Per arity n: images of nu o_B phi(g) over normal nu and generators g
  /// of M, as rows over the normal monomials of N(n).
  std::map<int, std::vector<SparseRow>> action;

  Term reduce_n(const Term& t) const;
  Term reduce_m(const Term& t) const;
};

RightModuleData right_module(const OperadMorphism& m, const GroebnerBasis& gbM, const GroebnerBasis& gbN, int bound);

/// dim X(n) = dim N(n) - rank of the action image, n = 1..bound.
DimTable generator_quotient(const RightModuleData& r);

/// The arity-n strand of the free module X o M, mapped to N. Keeps a
/// pointer to `r`, which must outlive it.
class FreeModel {
 public:
  FreeModel(const RightModuleData& r, int n);

  int arity() const { return n_; }
  int size() const { return static_cast<int>(cells_.size()); }
  int rank() const { return echelon_.rank(); }
  const std::vector<SparseRow>& kernel() const { return echelon_.kernel(); }

  /// Names of the mixed alphabet: N generators followed by M generators.
  const std::vector<std::string>& names() const { return names_; }
  /// The mixed alphabet, for parsing mixed terms. A source generator whose
  /// name clashes with a target generator is renamed with prefix "src_".
  const Alphabet& mixed_alphabet() const { return mixed_; }
  /// An element of X o M written as a tree whose top part uses N generators
  /// and whose hanging subtrees use M generators.
  Term mixed_term(const SparseRow& coordinates) const;
  /// Coordinates of a mixed tree term in the free model basis.
  SparseRow coordinates(const Term& mixed) const;
  /// Image in N (as a row over normal monomials).
  SparseRow evaluate(const SparseRow& coordinates) const;

  /// Generator index of the first M generator in mixed trees.
  int offset() const { return offset_; }

 private:
  struct Cell {
    int k;
    int x;  // index among representatives of X(k)
    Blocks blocks;
    std::vector<int> trees;  // normal monomials of M, one per block
    auto operator<=>(const Cell&) const = default;
  };

  const RightModuleData* r_;
  int n_;
  int offset_;
  std::vector<std::string> names_;
  Alphabet mixed_;
  std::map<int, std::vector<int>> reps_;        // arity -> normal indices representing X
  std::map<int, Echelon> quotient_;              // arity -> echelon of the action image
  std::vector<Cell> cells_;
  std::map<Cell, int> cell_index_;
  std::vector<SparseRow> images_;
  Echelon echelon_{true};
};

struct ArityVerdict {
  int n = 0;
  Integer dim_n;
  Integer dim_free_model;
  bool match = false;
};

struct Witness {
  int arity = 0;
  int kernel_dim = 0;
  std::vector<std::string> names;
  Term term;
  std::string text;
};

struct FreenessReport {
  int bound = 0;
  int free_up_to = 0;
  DimTable generator_dims;
  DimTable dims_n;
  DimTable dims_m;
  std::vector<ArityVerdict> per_arity;
  std::optional<Witness> witness;
  /// The generating-series test alone: f_X solving f_X(f_M) = f_N has
  /// non-negative integer coefficients.
  TruncatedEGF series_quotient;
  bool series_consistent = false;
};

FreenessReport freeness_check(const RightModuleData& r);

struct BarHomology {
  int n = 0;
  std::vector<std::int64_t> chain_dims;  // B_0, B_1, ...
  std::vector<std::int64_t> homology;    // H_0, H_1, ...
};

/// Homology of the normalized bar complex B(N, M, I) in arity n, degrees
/// 0..max_degree (at most 2).
/// Throws InvalidInput for max_degree above 2.
BarHomology bar_homology(const RightModuleData& r, int n, int max_degree = 1);

}  // namespace pbw
