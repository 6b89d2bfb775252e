#include <random>

#include "doctest.h"
#include "pbw/analysis.hpp"
#include "pbw/errors.hpp"
#include "pbw/pipeline.hpp"
#include "pbw/series.hpp"

using namespace pbw;

namespace {

PipelineReport run(const std::string& s, const std::string& t, int d, bool graded = false) {
  PipelineOptions o;
  o.max_arity = d;
  o.graded = graded;
  return pbw_check(zoo_morphism(s, t), o);
}

}  // namespace

TEST_CASE("egf round trips") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int order = 2 + static_cast<int>(rng() % 6);
    std::vector<std::int64_t> x(static_cast<std::size_t>(order)), m(static_cast<std::size_t>(order));
    for (auto& v : x) v = static_cast<std::int64_t>(rng() % 50);
    for (auto& v : m) v = static_cast<std::int64_t>(rng() % 50);
    m[0] = 1;
    auto fx = egf_of(DimTable::from(x));
    auto fm = egf_of(DimTable::from(m));
    CHECK(dims_of(fx) == DimTable::from(x));
    auto fn = egf_compose(fx, fm);
    CHECK(egf_solve_left(fn, fm) == fx);
    CHECK(is_dimension_series(fn));
    for (int n = 1; n <= std::min(order, 5); ++n) CHECK(composite_count(fx, fm, n) == fn[n]);
  }
}

TEST_CASE("reduction is compatible with composition") {
  auto p = shuffleize(zoo("Dend"));
  auto g = buchberger(p, Ordering::default_for(p.alphabet), 5);
  auto twos = enumerate(p.alphabet, 2);
  auto threes = enumerate(p.alphabet, 3);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    Term x(3), y(2);
    for (int k = 0; k < 3; ++k) x.add(threes[rng() % threes.size()], Rational(static_cast<long>(rng() % 5) + 1));
    y.add(twos[rng() % twos.size()], 1);
    y.add(twos[rng() % twos.size()], -2);
    auto blocks = subsets(4, 2);
    const auto& b = blocks[rng() % blocks.size()];
    CHECK(reduce(partial_compose(reduce(x, g), y, b), g) == reduce(partial_compose(x, y, b), g));
    auto outer_blocks = subsets(4, 3);
    const auto& ob = outer_blocks[rng() % outer_blocks.size()];
    CHECK(reduce(partial_compose(y, reduce(x, g), ob), g) == reduce(partial_compose(y, x, ob), g));
  }
}

TEST_CASE("morphisms commute with the right action") {
  for (const auto& [s, t] : std::vector<std::pair<std::string, std::string>>{{"Lie", "Ass"}, {"PreLie", "Dend"}, {"Lie", "PreLie"}}) {
    auto m = shuffleize(zoo_morphism(s, t));
    auto gbN = buchberger(m.target, Ordering::default_for(m.target.alphabet), 4);
    auto two = enumerate(m.source.alphabet, 2);
    auto three = enumerate(m.source.alphabet, 3);
    for (const auto& x : three)
      for (const auto& y : two)
        for (const auto& b : subsets(4, 2)) {
          Term lhs = reduce(apply_morphism(m, Term(partial_compose(x, y, b))), gbN);
          Term rhs = reduce(partial_compose(apply_morphism(m, x), apply_morphism(m, y), b), gbN);
          CHECK_MESSAGE(lhs == rhs, s << "->" << t);
        }
  }
}

TEST_CASE("bar homology in degree 0 recovers the generators") {
  struct Case {
    std::string s, t;
    int d;
    bool graded;
  };
  for (const auto& c : std::vector<Case>{{"Lie", "Ass", 5, false}, {"Lie", "PreLie", 4, false}, {"Lie", "Poisson", 4, false},
                                         {"PreLie", "Dend", 4, false}, {"Leib", "Dias", 4, true}, {"Perm", "Com", 4, false}}) {
    auto r = run(c.s, c.t, c.d, c.graded);
    CHECK_MESSAGE(r.bar_consistent, c.s << "->" << c.t);
    for (const auto& b : r.bar) {
      CHECK(Integer(b.homology[0]) == r.freeness.generator_dims.at(b.n));
      if (b.n <= r.freeness.free_up_to) CHECK(b.homology[1] == 0);
    }
    for (const auto& v : r.freeness.per_arity) CHECK(v.match == (v.dim_n == v.dim_free_model));
  }
}
