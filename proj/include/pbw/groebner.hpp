#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pbw/alphabet.hpp"
#include "pbw/monomial.hpp"
#include "pbw/ordering.hpp"
#include "pbw/presentation.hpp"

namespace pbw {

struct GroebnerElement {
  Monomial lead;
  Term term;  // monic: coefficient of lead is 1
};

struct Limits {
  int max_arity = 8;
  std::size_t max_basis = 20000;

  /// Reads PBW_MAX_ARITY and PBW_MAX_BASIS when set.
  static Limits from_environment();
};

/// A Gröbner basis certified up to arity `complete_to`.
struct GroebnerBasis {
  Alphabet alphabet;
  Ordering ordering;
  int complete_to = 0;
  bool quadratic = false;
  std::vector<GroebnerElement> elements;

  /// Throws ResourceError when n exceeds complete_to.
  void require(int n, const std::string& what) const;
};

/// Greatest monomial of a nonzero term.
Monomial leading_monomial(const Term& t, OrderingCache& cache);

/// Normal form modulo the elements: repeatedly rewrites the greatest
/// reducible monomial.
Term reduce(const Term& t, const std::vector<GroebnerElement>& elements, OrderingCache& cache);
Term reduce(const Term& t, const GroebnerBasis& g);

/// Reduction with random choice of reducible monomial, element and
/// occurrence at every step. `steps` receives the number of rewrites.
Term reduce_randomized(const Term& t, const GroebnerBasis& g, std::mt19937_64& rng, std::int64_t* steps = nullptr);

/// S-polynomials of all overlaps of leading monomials whose common multiple
/// has arity n, in a fixed order.
std::vector<Term> critical_pairs(const std::vector<GroebnerElement>& elements, OrderingCache& cache, int n);

/// Arity-by-arity completion up to `max_arity`. Throws ResourceError when a
/// limit is exceeded.
GroebnerBasis buchberger(const ShufflePresentation& p, const Ordering& o, int max_arity,
                         const Limits& limits = Limits{});

/// Monomials of arity n divisible by no leading monomial, in enumeration
/// order. Requires n <= complete_to.
std::vector<Monomial> normal_monomials(const GroebnerBasis& g, int n);

/// Counts of normal monomials for arities 1..n.
std::vector<std::int64_t> normal_counts(const GroebnerBasis& g, int n);

/// Normal monomials indexed by arity; built lazily and memoized.
class NormalBasis {
 public:
  explicit NormalBasis(const GroebnerBasis& g) : g_(&g) {}
  const std::vector<Monomial>& at(int n);
  /// Position of a normal monomial in at(n), or -1.
  int index(const Monomial& m);
  const GroebnerBasis& basis() const { return *g_; }

 private:
  const GroebnerBasis* g_;
  std::map<int, std::vector<Monomial>> lists_;
  std::map<int, std::map<Monomial, int>> index_;
};

}  // namespace pbw
