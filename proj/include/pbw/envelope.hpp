#pragma once

#include <map>
#include <string>
#include <vector>

#include "pbw/analysis.hpp"
#include "pbw/dsl.hpp"
#include "pbw/groebner.hpp"
#include "pbw/linalg.hpp"

namespace pbw {

/// Integer partitions of n, parts in decreasing order.
std::vector<std::vector<int>> integer_partitions(int n);

/// Trace of a permutation of cycle type lambda, per cycle type.
using Character = std::map<std::vector<int>, Rational>;

/// Characters of the symmetric group actions on N(n), n = 1..bound, computed
/// on the normal monomial basis.
std::vector<Character> operad_characters(const GroebnerBasis& g, int bound);

/// Characters of the generator collection X(n) = N(n) / (action image).
std::vector<Character> generator_characters(const RightModuleData& r);

/// Weight dims 1..d of the free algebra C(V) = sum_n C(n) (x)_{S_n} V^n for a
/// collection given by characters. vdims[w-1] = dim V_w, weights >= 1.
std::vector<Integer> evaluate(const std::vector<Character>& chars, const std::vector<int>& vdims, int d);

/// Weight dims 1..d of the free N-algebra on V.
std::vector<Integer> evaluate(const GroebnerBasis& g, const std::vector<int>& vdims, int d);

/// A weight-graded algebra over a presented operad, nilpotent above its
/// bound. Structure constants are stored per shuffle generator of the
/// operad; products of basis elements are weight homogeneous.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;

  /// Builds the algebra from parsed structure constants over `over`.
  /// Unlisted products are zero; (anti)symmetric generators are completed
  /// by their symmetry. Throws InvalidInput on a weight violation, a clash
  /// with a declared symmetry, or a relation of `over` that fails.
  static GradedAlgebra from_source(const AlgebraSource& source, const SymmetricPresentation& over);

  /// All products zero.
  static GradedAlgebra abelian(const SymmetricPresentation& over, const std::vector<std::pair<std::string, int>>& basis);

  const std::string& name() const { return name_; }
  const ShufflePresentation& operad() const { return operad_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  int weight(int e) const { return weights_.at(static_cast<std::size_t>(e)); }
  int max_weight() const;
  /// dims[w-1] = number of basis elements of weight w, w = 1..d.
  std::vector<int> dims(int d) const;

  /// s(e_1, ..., e_k) for a shuffle generator s.
  SparseRow product(int generator, const std::vector<int>& args) const;
  /// A shuffle monomial of the operad evaluated on basis elements.
  SparseRow evaluate(const Monomial& m, const std::vector<int>& args) const;
  SparseRow evaluate(const Term& t, const std::vector<int>& args) const;

 private:
  void check_relations() const;

  std::string name_;
  ShufflePresentation operad_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<std::map<std::vector<int>, SparseRow>> products_;  // per shuffle generator
};

/// Weight dims 1..d of the direct image of A along M -> N: the free N-algebra
/// on A modulo the ideal generated by phi(g)(x..) - gamma(g; x..). Requires
/// d <= r.bound and an algebra over the source of r.
std::vector<Integer> direct_image(const RightModuleData& r, const GradedAlgebra& a, int d);

struct EnvelopeReport {
  int bound = 0;
  std::vector<int> algebra_dims;
  std::vector<Integer> envelope;
  std::vector<Integer> free_prediction;  // evaluate(X, dims of A)
  bool matches = false;
};

/// The direct image together with the dims predicted by the generator
/// collection X.
EnvelopeReport envelope_report(const RightModuleData& r, const GradedAlgebra& a, int d);

}  // namespace pbw
