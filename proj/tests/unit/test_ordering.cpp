#include <algorithm>

#include "doctest.h"
#include "pbw/errors.hpp"
#include "pbw/groebner.hpp"
#include "pbw/ordering.hpp"
#include "pbw/presentation.hpp"
#include "pbw/shuffle.hpp"

using namespace pbw;

namespace {

Alphabet circ_dot() { return shuffleize(zoo("PrePoisson")).alphabet; }

}  // namespace

TEST_CASE("path-lex on corollas follows the generator order") {
  Alphabet a = Alphabet::plain({{"g", 2, Symmetry::None, 0}, {"h", 2, Symmetry::None, 0}});
  Ordering o = Ordering::parse("pathlex:g,h", a);
  auto g = parse_monomial("g(1,2)", a);
  auto h = parse_monomial("h(1,2)", a);
  CHECK(o.compare(g, h) == -1);
  CHECK(o.compare(h, g) == 1);
  CHECK(o.compare(g, g) == 0);
  CHECK(Ordering::parse("h,g", a).compare(g, h) == 1);
  CHECK_THROWS_AS(o.compare(g, Monomial::identity()), InvalidInput);
}

TEST_CASE("root class layer puts dot-rooted mixed monomials first") {
  Alphabet a = circ_dot();
  Ordering o = Ordering::parse("weightfirst:circ=1,circbar=1;rootclass:dot,dotbar<circ,circbar;pathlex:dot,dotbar,circbar,circ", a);
  auto low = parse_monomial("dot(circ(1,2),3)", a);
  auto high = parse_monomial("circ(dot(1,2),3)", a);
  CHECK(o.compare(low, high) == -1);
}

TEST_CASE("compare is a total order on enumerated monomials") {
  Alphabet a = circ_dot();
  for (const auto& preset : {std::string("@prepoisson"), std::string("@prepoisson-weight"),
                             std::string("pathlex:circ,circbar,dot,dotbar")}) {
    Ordering o = Ordering::parse(preset, a);
    for (int n = 2; n <= 4; ++n) {
      auto mons = enumerate(a, n);
      std::vector<Monomial> sorted = mons;
      std::sort(sorted.begin(), sorted.end(), [&](const Monomial& x, const Monomial& y) { return o.less(x, y); });
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        CHECK(o.compare(sorted[i], sorted[i + 1]) == -1);
        CHECK(o.compare(sorted[i + 1], sorted[i]) == 1);
      }
      if (n == 3) {
        for (const auto& x : mons)
          for (const auto& y : mons) CHECK(o.compare(x, y) == -o.compare(y, x));
      }
    }
  }
}

TEST_CASE("preset parsing") {
  Alphabet a = circ_dot();
  CHECK(Ordering::parse("@prepoisson", a).layers().size() == 1);
  CHECK(Ordering::parse("@prepoisson", a).layers()[0].leaf_weights.size() == 4);
  CHECK_FALSE(Ordering::parse("@prepoisson", a).layers()[0].reverse_permutation);
  CHECK(Ordering::parse("weightfirst:auto;pathlex:circ,circbar,dot,dotbar", a).layers().size() == 2);
  CHECK_THROWS_AS(Ordering::parse("pathlex:circ,dot", a), InvalidInput);
  CHECK_THROWS_AS(Ordering::parse("pathlex:circ,circ,circbar,dot,dotbar", a), InvalidInput);
  CHECK_THROWS_AS(Ordering::parse("weightfirst:circ=1", a), InvalidInput);
  CHECK_THROWS_AS(Ordering::parse("weightfirst:circ=x;pathlex:circ,circbar,dot,dotbar", a), InvalidInput);
  CHECK_THROWS_AS(Ordering::parse("bogus:1;pathlex:circ,circbar,dot,dotbar", a), InvalidInput);
  CHECK_THROWS_AS(Ordering::parse("perm:sideways;pathlex:circ,circbar,dot,dotbar", a), InvalidInput);
  CHECK_THROWS_AS(Ordering::parse("@nothing", a), InvalidInput);
  CHECK_THROWS_AS(Ordering::parse("pathlex:circ,circbar,dot,dotbar;weightfirst:auto", a), InvalidInput);
}

TEST_CASE("random admissibility of path-lex and the shipped preset") {
  Alphabet one = Alphabet::plain({{"g", 2, Symmetry::None, 0}});
  auto r = check_admissibility_random(Ordering::default_for(one), one, 10000, 7);
  CHECK(r.checked > 0);
  CHECK(r.violations == 0);
  Alphabet a = circ_dot();
  auto r2 = check_admissibility_random(Ordering::parse("@prepoisson", a), a, 10000, 11);
  CHECK(r2.violations == 0);
}

TEST_CASE("a non-admissible order is caught") {
  Alphabet a = shuffleize(zoo("Ass")).alphabet;
  // Depth of leaf 1, ascending in arity 3 and descending above.
  OrderingLayer flip;
  flip.kind = OrderingLayer::Kind::Custom;
  flip.custom = [](const Monomial& m) {
    TreeView v(m);
    int depth = 0;
    for (int p = v.parent(v.leaf_position(1)); p >= 0; p = v.parent(p)) ++depth;
    return std::vector<int>{m.arity() == 3 ? depth : -depth};
  };
  Ordering bad({flip}, "flip");
  auto ex = check_admissibility_exhaustive(bad, a, 4);
  CHECK(ex.violations > 0);
  CHECK_FALSE(ex.example.empty());
  auto rnd = check_admissibility_random(bad, a, 2000, 3, 5);
  CHECK(rnd.violations > 0);
}

TEST_CASE("exhaustive admissibility of shipped presets to arity 4") {
  Alphabet a = circ_dot();
  for (const auto& [name, text] : Ordering::named_presets()) {
    if (name == "dend") continue;
    auto r = check_admissibility_exhaustive(Ordering::parse(text, a), a, 4);
    CHECK_MESSAGE(r.violations == 0, name << ": " << r.example);
  }
  Alphabet d = shuffleize(zoo("Dend")).alphabet;
  CHECK(check_admissibility_exhaustive(Ordering::parse("@dend", d), d, 4).violations == 0);
}
