#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pbw/alphabet.hpp"
#include "pbw/monomial.hpp"

namespace pbw {

/// One comparison layer. Each layer maps a monomial to an integer vector;
/// monomials are compared by the concatenated layer keys, lexicographically,
/// and finally by their serialization.
struct OrderingLayer {
  enum class Kind {
    Weight,    // total generator weight
    PathLex,   // path sequences, then the leaf permutation
    Custom,    // arbitrary key, for experiments and tests
  };
  Kind kind = Kind::PathLex;
  /// Weight: per shuffle generator. PathLex: rank of each generator in the
  /// declared order (lowest first).
  std::vector<int> values;
  /// PathLex only: class of each generator. When present, path words are
  /// compared by their class content and class inversions before the
  /// degree-lexicographic comparison.
  std::vector<int> classes;
  /// PathLex only: per-generator weights summed along each leaf path and
  /// compared before the path length.
  std::vector<int> leaf_weights;
  /// PathLex only: compare leaf permutations reverse-lexicographically (the
  /// lexicographically greater word is smaller).
  bool reverse_permutation = true;
  std::function<std::vector<int>(const Monomial&)> custom;
};

/// A total order on same-arity monomials.
class Ordering {
 public:
  Ordering() = default;
  Ordering(std::vector<OrderingLayer> layers, std::string description)
      : layers_(std::move(layers)), description_(std::move(description)) {}

  /// Presets: `pathlex:<g1,g2,...>` (lowest first),
  /// `weightfirst:<g=w,...>;pathlex:<...>` (unlisted weights are 0; `auto`
  /// takes the alphabet's weights), `rootclass:<c1<c2...>;pathlex:<...>`
  /// where each class is a comma list, `leafweight:<g=w,...>;pathlex:<...>`
  /// (per-leaf path weights), and `perm:forward` or `perm:reverse` before the
  /// pathlex layer for the leaf permutation direction (default reverse). A
  /// bare generator list means pathlex.
  static Ordering parse(const std::string& preset, const Alphabet& alphabet);

  /// Preset strings shipped by name; `parse` also accepts `@<name>`.
  static const std::vector<std::pair<std::string, std::string>>& named_presets();

  /// Path-lex by the alphabet order.
  static Ordering default_for(const Alphabet& alphabet);

  std::vector<int> key(const Monomial& m) const;
  /// -1, 0, 1. Throws InvalidInput on arity mismatch.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  const std::string& description() const { return description_; }
  const std::vector<OrderingLayer>& layers() const { return layers_; }

 private:
  std::vector<OrderingLayer> layers_;
  std::string description_;
};

/// Memoizes ordering keys; not thread safe, one per computation.
class OrderingCache {
 public:
  explicit OrderingCache(const Ordering& o) : order_(&o) {}
  const std::vector<int>& key(const Monomial& m);
  int compare(const Monomial& a, const Monomial& b);
  const Ordering& ordering() const { return *order_; }

 private:
  const Ordering* order_;
  std::unordered_map<Monomial, std::vector<int>, MonomialHash> keys_;
};

struct AdmissibilityReport {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  std::string example;  // first violation, human readable
};

/// Exhaustive check: for every pair m1 < m2 of arity k and every partial
/// composition context landing in arity <= max_arity (m inserted into an
/// outer monomial, or a monomial inserted into m), the order is preserved.
AdmissibilityReport check_admissibility_exhaustive(const Ordering& o, const Alphabet& alphabet, int max_arity);

/// Randomized check: `trials` random pairs and random multi-step contexts up
/// to `max_arity`.
AdmissibilityReport check_admissibility_random(const Ordering& o, const Alphabet& alphabet, int trials,
                                               std::uint64_t seed, int max_arity = 6);

}  // namespace pbw
