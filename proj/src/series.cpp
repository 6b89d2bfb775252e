#include "pbw/series.hpp"

#include "pbw/errors.hpp"
#include "pbw/shuffle.hpp"

namespace pbw {

namespace {

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

using Poly = std::vector<Rational>;  // ordinary coefficients, index = degree

Poly truncated_product(const Poly& a, const Poly& b, int order) {
  Poly c(static_cast<std::size_t>(order) + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(order); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Poly ordinary_poly(const TruncatedEGF& f) {
  Poly p(static_cast<std::size_t>(f.order()) + 1, 0);
  for (int n = 1; n <= f.order(); ++n) p[static_cast<std::size_t>(n)] = f.ordinary(n);
  return p;
}

// powers[k] = g^k truncated, k = 0..order
std::vector<Poly> powers(const TruncatedEGF& g, int order) {
  std::vector<Poly> out;
  Poly one(static_cast<std::size_t>(order) + 1, 0);
  one[0] = 1;
  out.push_back(one);
  Poly base = ordinary_poly(g);
  base.resize(static_cast<std::size_t>(order) + 1, 0);
  for (int k = 1; k <= order; ++k) out.push_back(truncated_product(out.back(), base, order));
  return out;
}

}  // namespace

DimTable DimTable::from(const std::vector<std::int64_t>& values) {
  DimTable d;
  for (auto v : values) d.dims.emplace_back(static_cast<long>(v));
  return d;
}

Rational TruncatedEGF::ordinary(int n) const {
  Rational q = (*this)[n] / Rational(factorial(n));
  q.canonicalize();
  return q;
}

TruncatedEGF TruncatedEGF::identity(int order) {
  std::vector<Rational> a(static_cast<std::size_t>(order), 0);
  if (order > 0) a[0] = 1;
  return TruncatedEGF(std::move(a));
}

TruncatedEGF egf_of(const DimTable& d) {
  std::vector<Rational> a;
  for (const auto& x : d.dims) a.emplace_back(x);
  return TruncatedEGF(std::move(a));
}

DimTable dims_of(const TruncatedEGF& f) {
  DimTable d;
  for (int n = 1; n <= f.order(); ++n) {
    if (!is_integer(f[n]) || f[n] < 0)
      throw MathError("coefficient " + to_string(f[n]) + " at arity " + std::to_string(n) + " is not a dimension");
    d.dims.push_back(f[n].get_num());
  }
  return d;
}

TruncatedEGF egf_compose(const TruncatedEGF& f, const TruncatedEGF& g) {
  const int order = std::min(f.order(), g.order());
  auto pw = powers(g, order);
  Poly c(static_cast<std::size_t>(order) + 1, 0);
  for (int k = 1; k <= order; ++k) {
    Rational fk = f.ordinary(k);
    if (fk == 0) continue;
    for (int n = 0; n <= order; ++n) c[static_cast<std::size_t>(n)] += fk * pw[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
  }
  std::vector<Rational> a(static_cast<std::size_t>(order));
  for (int n = 1; n <= order; ++n) {
    a[static_cast<std::size_t>(n - 1)] = c[static_cast<std::size_t>(n)] * Rational(factorial(n));
    a[static_cast<std::size_t>(n - 1)].canonicalize();
  }
  return TruncatedEGF(std::move(a));
}

TruncatedEGF egf_solve_left(const TruncatedEGF& n, const TruncatedEGF& m) {
  const int order = std::min(n.order(), m.order());
  if (order == 0) return TruncatedEGF();
  const Rational m1 = m.ordinary(1);
  if (m1 == 0) throw MathError("solve: the inner series has zero linear coefficient");
  auto pw = powers(m, order);
  // ordinary coefficients of x
  Poly x(static_cast<std::size_t>(order) + 1, 0);
  for (int d = 1; d <= order; ++d) {
    Rational rhs = n.ordinary(d);
    for (int k = 1; k < d; ++k) rhs -= x[static_cast<std::size_t>(k)] * pw[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)];
    Rational lead = pw[static_cast<std::size_t>(d)][static_cast<std::size_t>(d)];
    x[static_cast<std::size_t>(d)] = rhs / lead;
  }
  std::vector<Rational> a(static_cast<std::size_t>(order));
  for (int d = 1; d <= order; ++d) {
    a[static_cast<std::size_t>(d - 1)] = x[static_cast<std::size_t>(d)] * Rational(factorial(d));
    a[static_cast<std::size_t>(d - 1)].canonicalize();
  }
  return TruncatedEGF(std::move(a));
}

Rational composite_count(const TruncatedEGF& x, const TruncatedEGF& m, int n) {
  if (n < 1 || n > std::min(x.order(), m.order())) throw InvalidInput("composite_count: arity out of range");
  Rational total = 0;
  for (int k = 1; k <= n; ++k) {
    if (x[k] == 0) continue;
    for (const auto& blocks : set_partitions(n, k)) {
      Rational term = x[k];
      for (const auto& b : blocks) term *= m[static_cast<int>(b.size())];
      total += term;
    }
  }
  return total;
}

bool is_dimension_series(const TruncatedEGF& f) {
  for (const auto& a : f.coefficients())
    if (!is_integer(a) || a < 0) return false;
  return true;
}

}  // namespace pbw
