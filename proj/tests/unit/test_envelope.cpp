#include "doctest.h"
#include "pbw/dsl.hpp"
#include "pbw/envelope.hpp"
#include "pbw/errors.hpp"
#include "pbw/pipeline.hpp"

using namespace pbw;

namespace {

GroebnerBasis gb(const std::string& name, int d) {
  auto s = shuffleize(zoo(name));
  return buchberger(s, Ordering::default_for(s.alphabet), d);
}

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// Weight dims of the symmetric algebra on a graded space, weights 1..d.
std::vector<Integer> symmetric_algebra(const std::vector<int>& vdims, int d) {
  std::vector<Integer> p(static_cast<std::size_t>(d + 1), 0);
  p[0] = 1;
  for (std::size_t w = 1; w <= vdims.size(); ++w)
    for (int copy = 0; copy < vdims[w - 1]; ++copy)
      for (int k = static_cast<int>(w); k <= d; ++k) p[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k) - w];
  return {p.begin() + 1, p.end()};
}

// Necklace count: dim of the free Lie algebra on k generators in degree n.
Integer witt(int k, int n) {
  auto mobius = [](int m) {
    int r = 1;
    for (int q = 2; q * q <= m; ++q)
      if (m % q == 0) {
        m /= q;
        if (m % q == 0) return 0;
        r = -r;
      }
    return m > 1 ? -r : r;
  };
  Integer s = 0;
  for (int e = 1; e <= n; ++e) {
    if (n % e) continue;
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(n / e));
    s += mobius(e) * pw;
  }
  return s / n;
}

RightModuleData lie_ass(int d) {
  PipelineOptions o;
  o.max_arity = d;
  o.bar = false;
  return pbw_check(zoo_morphism("Lie", "Ass"), o).module;
}

GradedAlgebra load(const std::string& file) {
  return GradedAlgebra::from_source(parse_algebra(read_file(std::string(PBW_DATA_DIR) + "/" + file)), zoo("Lie"));
}

GradedAlgebra inline_algebra(const std::string& text, const std::string& over) {
  return GradedAlgebra::from_source(parse_algebra(text), zoo(over));
}

std::size_t derived_dim(const GradedAlgebra& a) {
  Echelon e;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) e.insert(a.product(0, {i, j}));
  return static_cast<std::size_t>(e.rank());
}

}  // namespace

TEST_CASE("free algebras on a graded space") {
  CHECK(evaluate(gb("Com", 4), {2}, 4) == ints({2, 3, 4, 5}));
  CHECK(evaluate(gb("Com", 5), {2, 1}, 5) == symmetric_algebra({2, 1}, 5));
  CHECK(evaluate(gb("Ass", 5), {2}, 5) == ints({2, 4, 8, 16, 32}));
  CHECK(evaluate(gb("Ass", 4), {0}, 4) == ints({0, 0, 0, 0}));
  auto lie = evaluate(gb("Lie", 6), {3}, 6);
  for (int n = 1; n <= 6; ++n) CHECK(lie[static_cast<std::size_t>(n - 1)] == witt(3, n));
}

TEST_CASE("characters of Com are trivial") {
  auto chars = operad_characters(gb("Com", 4), 4);
  for (int n = 1; n <= 4; ++n) {
    CHECK(chars[static_cast<std::size_t>(n - 1)].size() == integer_partitions(n).size());
    for (const auto& [cycle, trace] : chars[static_cast<std::size_t>(n - 1)]) CHECK(trace == 1);
  }
  CHECK(integer_partitions(5).size() == 7);
}

TEST_CASE("envelope of an abelian Lie algebra is symmetric") {
  auto r = lie_ass(4);
  auto a = GradedAlgebra::abelian(zoo("Lie"), {{"x", 1}, {"y", 1}});
  CHECK(direct_image(r, a, 4) == ints({2, 3, 4, 5}));
  auto rep = envelope_report(r, a, 4);
  CHECK(rep.matches);
  CHECK_THROWS_AS(direct_image(r, a, 5), ResourceError);
}

TEST_CASE("envelope of a truncated free Lie algebra") {
  auto r = lie_ass(3);
  auto a = load("free_lie_3.algebra");
  CHECK(a.dims(3) == std::vector<int>{2, 1, 2});
  CHECK(direct_image(r, a, 3) == ints({2, 4, 8}));
}

TEST_CASE("non-isomorphic algebras with equal envelopes") {
  auto r = lie_ass(4);
  auto h = load("heisenberg.algebra");
  auto ab = load("abelian_211.algebra");
  CHECK(h.dims(4) == ab.dims(4));
  CHECK(direct_image(r, h, 4) == ints({2, 4, 6, 9}));
  CHECK(direct_image(r, ab, 4) == ints({2, 4, 6, 9}));
  CHECK(derived_dim(h) == 1);
  CHECK(derived_dim(ab) == 0);
  auto f = load("filiform.algebra");
  auto ab2 = load("abelian_1211.algebra");
  CHECK(direct_image(r, f, 4) == ints({2, 4, 7, 11}));
  CHECK(direct_image(r, ab2, 4) == direct_image(r, f, 4));
  CHECK(envelope_report(r, f, 4).matches);
}

TEST_CASE("invalid algebras are rejected") {
  CHECK_THROWS_AS(inline_algebra(R"(algebra bad over Ass {
  basis: x, y @2, z @3;
  gamma(m; x, x) = y;
  gamma(m; x, y) = z;
  gamma(m; y, x) = 0;
})", "Ass"),
                  InvalidInput);
  CHECK_THROWS_AS(inline_algebra(R"(algebra heavy over Lie {
  basis: x, y;
  gamma(b; x, y) = x;
})", "Lie"),
                  InvalidInput);
  CHECK_THROWS_AS(inline_algebra(R"(algebra jacobi over Lie {
  basis: x, y, z @2, u @3;
  gamma(b; x, y) = z;
  gamma(b; x, z) = u;
  gamma(b; y, z) = u;
  gamma(b; y, x) = z;
})", "Lie"),
                  InvalidInput);
  CHECK_NOTHROW(inline_algebra(R"(algebra ok over Ass {
  basis: x, y @2;
  gamma(m; x, x) = y;
})", "Ass"));
}
