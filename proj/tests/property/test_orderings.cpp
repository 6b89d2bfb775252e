#include <random>

#include "doctest.h"
#include "pbw/groebner.hpp"
#include "pbw/ordering.hpp"
#include "pbw/presentation.hpp"
#include "pbw/shuffle.hpp"

using namespace pbw;

namespace {

Alphabet alphabet_of(const std::string& operad) { return shuffleize(zoo(operad)).alphabet; }

std::vector<std::int64_t> dims_under(const std::string& operad, const std::string& preset, int d) {
  auto p = shuffleize(zoo(operad));
  auto o = preset.empty() ? Ordering::default_for(p.alphabet) : Ordering::parse(preset, p.alphabet);
  return normal_counts(buchberger(p, o, d), d);
}

}  // namespace

TEST_CASE("default path-lex is admissible on every zoo alphabet") {
  for (const auto& name : zoo_names()) {
    Alphabet a = alphabet_of(name);
    Ordering o = Ordering::default_for(a);
    auto ex = check_admissibility_exhaustive(o, a, 4);
    CHECK_MESSAGE(ex.violations == 0, name << ": " << ex.example);
    auto rnd = check_admissibility_random(o, a, 10000, 101);
    CHECK_MESSAGE(rnd.violations == 0, name << ": " << rnd.example);
  }
}

TEST_CASE("shipped presets are admissible") {
  const std::map<std::string, std::string> home{
      {"prepoisson", "PrePoisson"}, {"prepoisson-weight", "PrePoisson"}, {"dend", "Dend"}};
  for (const auto& [name, text] : Ordering::named_presets()) {
    REQUIRE(home.count(name));
    Alphabet a = alphabet_of(home.at(name));
    Ordering o = Ordering::parse(text, a);
    auto ex = check_admissibility_exhaustive(o, a, 4);
    CHECK_MESSAGE(ex.violations == 0, name << ": " << ex.example);
    auto rnd = check_admissibility_random(o, a, 10000, 202);
    CHECK_MESSAGE(rnd.violations == 0, name << ": " << rnd.example);
  }
  Alphabet a = alphabet_of("PrePoisson");
  for (const auto& text : {"weightfirst:circ=1,circbar=1;rootclass:dot,dotbar<circ,circbar;pathlex:dot,dotbar,circbar,circ",
                           "perm:forward;pathlex:circ,circbar,dot,dotbar"}) {
    auto rnd = check_admissibility_random(Ordering::parse(text, a), a, 10000, 303);
    CHECK_MESSAGE(rnd.violations == 0, text << ": " << rnd.example);
  }
}

TEST_CASE("dimensions do not depend on the ordering") {
  CHECK(dims_under("Ass", "", 5) == dims_under("Ass", "pathlex:mbar,m", 5));
  CHECK(dims_under("Ass", "", 5) == dims_under("Ass", "perm:forward;pathlex:m,mbar", 5));
  CHECK(dims_under("Lie", "", 5) == dims_under("Lie", "perm:forward;pathlex:b", 5));
  auto dend = dims_under("Dend", "", 4);
  CHECK(dend == dims_under("Dend", "@dend", 4));
  CHECK(dend == dims_under("Dend", "pathlex:succbar,succ,precbar,prec", 4));
  auto pp = dims_under("PrePoisson", "@prepoisson", 4);
  CHECK(pp == dims_under("PrePoisson", "", 4));
  CHECK(pp == dims_under("PrePoisson", "@prepoisson-weight", 4));
  CHECK(pp == dend);
}

TEST_CASE("randomized reduction is confluent") {
  struct Case {
    std::string operad, preset;
    int arity;
  };
  for (const auto& c : std::vector<Case>{{"Ass", "", 5}, {"Lie", "", 5}, {"Dend", "", 4}, {"Dias", "", 4},
                                         {"PrePoisson", "@prepoisson", 4}, {"Poisson", "", 4}}) {
    auto p = shuffleize(zoo(c.operad));
    auto o = c.preset.empty() ? Ordering::default_for(p.alphabet) : Ordering::parse(c.preset, p.alphabet);
    auto g = buchberger(p, o, c.arity);
    auto mons = enumerate(p.alphabet, c.arity);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      Term t(c.arity);
      for (int k = 0; k < 5; ++k) t.add(mons[rng() % mons.size()], Rational(static_cast<long>(rng() % 7) - 3));
      Term first = reduce_randomized(t, g, rng);
      Term second = reduce_randomized(t, g, rng);
      CHECK_MESSAGE(first == second, c.operad);
      CHECK_MESSAGE(first == reduce(t, g), c.operad);
    }
  }
}
