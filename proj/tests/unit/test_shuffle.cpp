#include <set>

#include "doctest.h"
#include "pbw/errors.hpp"
#include "pbw/shuffle.hpp"

using namespace pbw;

namespace {

Alphabet one_binary() { return Alphabet::plain({{"g", 2, Symmetry::None, 0}}); }

Monomial parse(const std::string& s, const Alphabet& a) { return parse_monomial(s, a); }

// Brute force: every labelled planar binary tree, filtered by the minima
// condition.
std::set<Monomial> brute_binary(int n) {
  std::vector<int> arities{2};
  std::set<Monomial> out;
  for (const auto& shape : enumerate_shapes(arities, n)) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i + 1;
    do {
      Monomial m = shape;
      std::size_t k = 0;
      for (Token& t : m.code)
        if (!is_vertex(t)) t = static_cast<Token>(labels[k++]);
      if (is_shuffle_monomial(m)) out.insert(m);
    } while (std::next_permutation(labels.begin(), labels.end()));
  }
  return out;
}

long double_factorial(int k) {
  long r = 1;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

}  // namespace

TEST_CASE("make_monomial checks the minima condition") {
  auto a = one_binary();
  Monomial left{{vertex_token(0, 2), vertex_token(0, 2), 0, 0, 0}};
  Monomial right{{vertex_token(0, 2), 0, vertex_token(0, 2), 0, 0}};
  std::vector<int> l123{1, 2, 3}, l213{2, 1, 3}, l132{1, 3, 2};
  CHECK(format_monomial(make_monomial(left, l123), a) == "g(g(1,2),3)");
  CHECK_THROWS_AS(make_monomial(right, l213), InvalidInput);
  CHECK(format_monomial(make_monomial(left, l132), a) == "g(g(1,3),2)");
}

TEST_CASE("enumerate counts") {
  auto a = one_binary();
  CHECK(enumerate(a, 1).size() == 1);
  CHECK(enumerate(a, 3).size() == 3);
  CHECK(enumerate(a, 4).size() == 15);
  for (int n = 2; n <= 6; ++n) {
    auto e = enumerate(a, n);
    CHECK(static_cast<long>(e.size()) == double_factorial(2 * n - 3));
    std::set<Monomial> s(e.begin(), e.end());
    CHECK(s == brute_binary(n));
  }
  CHECK_THROWS_AS(enumerate(a, 9), ResourceError);
  CHECK_THROWS_AS(enumerate(a, 0), InvalidInput);
}

TEST_CASE("compose") {
  auto a = one_binary();
  Monomial g = Monomial::corolla(0, 2);
  std::vector<Monomial> units{Monomial::identity(), Monomial::identity()};
  CHECK(compose(g, units, {{1}, {2}}) == g);
  std::vector<Monomial> inner{g, Monomial::identity()};
  CHECK(format_monomial(compose(g, inner, {{1, 3}, {2}}), a) == "g(g(1,3),2)");
  CHECK_THROWS_AS(compose(g, inner, {{2, 3}, {1}}), InvalidInput);
  CHECK(format_monomial(partial_compose(g, g, {2, 3}), a) == "g(1,g(2,3))");
}

TEST_CASE("divides") {
  auto a = one_binary();
  auto m = parse("g(g(1,3),2)", a);
  auto g = Monomial::corolla(0, 2);
  auto es = divides(g, m);
  CHECK(es.size() == 2);
  CHECK(divides(m, m).size() == 1);
  auto b = Alphabet::plain({{"g", 2, Symmetry::None, 0}, {"h", 2, Symmetry::None, 0}});
  CHECK(divides(Monomial::corolla(1, 2), parse("g(g(1,3),2)", b)).empty());
  for (const auto& e : es) {
    TreeView mv(m);
    CHECK(rewrite(m, mv, e, g) == m);
  }
}

TEST_CASE("relabel through the alphabet") {
  auto a = Alphabet::from_generators({{"g", 2, Symmetry::None, 0}});
  REQUIRE(a.size() == 2);
  CHECK(a[1].name == "gbar");
  auto m = parse("g(g(1,2),3)", a);
  std::vector<int> perm{3, 2, 1};
  auto [r, s] = relabel(m, perm, a);
  CHECK(s == 1);
  CHECK(format_monomial(r, a) == "gbar(1,gbar(2,3))");
  auto lie = Alphabet::from_generators({{"b", 2, Symmetry::Antisymmetric, 0}});
  auto [r2, s2] = relabel(parse("b(b(1,2),3)", lie), perm, lie);
  CHECK(s2 == 1);
  CHECK(format_monomial(r2, lie) == "b(1,b(2,3))");
}

TEST_CASE("set partitions and subsets") {
  CHECK(set_partitions(4, 2).size() == 7);
  CHECK(set_partitions(5, 3).size() == 25);
  CHECK(subsets(5, 2).size() == 10);
  CHECK(subsets(3, 0).size() == 1);
}
