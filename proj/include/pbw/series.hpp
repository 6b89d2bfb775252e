#pragma once

#include <cstdint>
#include <vector>

#include "pbw/rational.hpp"

namespace pbw {

inline constexpr int kDefaultSeriesOrder = 6;

/// Component dimensions for arities 1..N; dims[0] is arity 1.
struct DimTable {
  std::vector<Integer> dims;

  int size() const { return static_cast<int>(dims.size()); }
  const Integer& at(int n) const { return dims.at(static_cast<std::size_t>(n - 1)); }
  static DimTable from(const std::vector<std::int64_t>& values);
  bool operator==(const DimTable&) const = default;
};

/// Exponential series sum_{n=1..N} a_n t^n / n! with exact coefficients.
/// a_n is stored at index n-1; the constant term is always zero.
class TruncatedEGF {
 public:
  TruncatedEGF() = default;
  explicit TruncatedEGF(std::vector<Rational> coefficients) : a_(std::move(coefficients)) {}

  int order() const { return static_cast<int>(a_.size()); }
  /// Coefficient of t^n/n!.
  const Rational& operator[](int n) const { return a_.at(static_cast<std::size_t>(n - 1)); }
  Rational& operator[](int n) { return a_.at(static_cast<std::size_t>(n - 1)); }
  /// Coefficient of t^n.
  Rational ordinary(int n) const;
  const std::vector<Rational>& coefficients() const { return a_; }

  /// The series t truncated at order N.
  static TruncatedEGF identity(int order);

  bool operator==(const TruncatedEGF&) const = default;

 private:
  std::vector<Rational> a_;
};

TruncatedEGF egf_of(const DimTable& d);

/// Inverse of egf_of. Throws MathError when a coefficient is not a
/// non-negative integer.
DimTable dims_of(const TruncatedEGF& f);

/// f(g(t)) truncated at the common order.
TruncatedEGF egf_compose(const TruncatedEGF& f, const TruncatedEGF& g);

/// The unique x with x(m(t)) = n(t), solved degree by degree. Throws MathError
/// when m has zero linear coefficient.
TruncatedEGF egf_solve_left(const TruncatedEGF& n, const TruncatedEGF& m);

/// dim (X o M)(n) as a sum over set partitions of {1..n}: a partition into
/// k blocks contributes x(k) times the product of m(|block|).
Rational composite_count(const TruncatedEGF& x, const TruncatedEGF& m, int n);

/// True when every coefficient is a non-negative integer.
bool is_dimension_series(const TruncatedEGF& f);

}  // namespace pbw
