#include "doctest.h"
#include "pbw/dsl.hpp"
#include "pbw/errors.hpp"
#include "pbw/linalg.hpp"
#include "pbw/presentation.hpp"
#include "pbw/shuffle.hpp"

using namespace pbw;

namespace {

// Span comparison of two families of shuffle terms.
bool same_span(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::map<Monomial, int> index;
  auto row = [&](const Term& t) {
    SparseRow r;
    for (const auto& [m, c] : t) r[index.try_emplace(m, static_cast<int>(index.size())).first->second] = c;
    return r;
  };
  Echelon ea, eb, both;
  for (const auto& t : a) {
    ea.insert(row(t));
    both.insert(row(t));
  }
  for (const auto& t : b) {
    eb.insert(row(t));
    both.insert(row(t));
  }
  return ea.rank() == eb.rank() && eb.rank() == both.rank();
}

}  // namespace

TEST_CASE("parse a Leibniz presentation") {
  auto p = parse_presentation(R"(operad Leib {
    generators: b(2);
    relations: b(a1,b(a2,a3)) - b(b(a1,a2),a3) + b(b(a1,a3),a2) = 0;
  })");
  CHECK(p.generators.size() == 1);
  REQUIRE(p.relations.size() == 1);
  CHECK(p.relations[0].arity() == 3);
}

TEST_CASE("parse errors") {
  auto free = parse_presentation("operad F { generators: g(2); relations: }");
  CHECK(free.relations.empty());
  CHECK_THROWS_WITH_AS(parse_presentation("operad F { generators: g(2); relations: g(g(a1,a2),a3) - g(g(a1,a2),g(a3,a4)) = 0; }"),
                       doctest::Contains("arity-inhomogeneous relation"), ParseError);
  CHECK_THROWS_WITH_AS(parse_presentation("operad F { generators: g(2); relations: h(a1,a2) = 0; }"),
                       doctest::Contains("undeclared generator"), ParseError);
  CHECK_THROWS_WITH_AS(parse_presentation("operad F { generators: g(2); relations: g(a1,a2,a3) = 0; }"),
                       doctest::Contains("arity mismatch"), ParseError);
  CHECK_THROWS_WITH_AS(parse_presentation("operad F { generators: g(2); relations: g(a1,a1) = 0; }"),
                       doctest::Contains("used twice"), ParseError);
  try {
    parse_presentation("operad F {\n  generators: g(2);\n  relations: g(a1 a2) = 0; }");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 19);
  }
}

TEST_CASE("zoo round trip") {
  for (const auto& name : zoo_names()) {
    auto p = zoo(name);
    auto q = parse_presentation(print_presentation(p));
    CHECK(q.generators == p.generators);
    CHECK(q.relations == p.relations);
  }
  CHECK(zoo("PrePoisson").generators.size() == 2);
  CHECK(zoo("PrePoisson").relations.size() == 4);
  CHECK(zoo("Dias").relations.size() == 5);
  CHECK(zoo("Com").relations.size() == 1);
  CHECK(zoo("Com").generators[0].symmetry == Symmetry::Symmetric);
  CHECK_THROWS_AS(zoo("Nope"), InvalidInput);
}

TEST_CASE("shuffleize") {
  auto dend = shuffleize(zoo("Dend"));
  CHECK(dend.alphabet.size() == 4);
  auto lie = shuffleize(zoo("Lie"));
  CHECK(lie.alphabet.size() == 1);
  CHECK(lie.relations.size() == 1);
  CHECK(shuffleize(zoo("Ass")).relations.size() == 6);
  auto free = shuffleize(parse_presentation("operad F { generators: m(2) sym; }"));
  CHECK(free.alphabet.size() == 1);
  CHECK(free.relations.empty());
}

TEST_CASE("change of generators Dend -> circ, dot") {
  auto dend = zoo("Dend");
  std::vector<NewGenerator> gens{{"circ", parse_term("prec(a1,a2) - succ(a2,a1)", dend), 1},
                                 {"dot", parse_term("prec(a1,a2) + succ(a2,a1)", dend), 0}};
  auto changed = change_generators(dend, gens);
  auto target = zoo("DendCircDot");
  CHECK(changed.generators == target.generators);
  auto a = shuffleize(changed);
  auto b = shuffleize(target);
  CHECK(same_span(a.relations, b.relations));

  auto same = change_generators(dend, {{"prec", parse_term("prec(a1,a2)", dend), 0},
                                       {"succ", parse_term("succ(a1,a2)", dend), 0}});
  CHECK(same.relations == dend.relations);

  CHECK_THROWS_WITH_AS(change_generators(dend, {{"circ", parse_term("prec(a1,a2) - succ(a2,a1)", dend), 1},
                                                {"dot", parse_term("prec(a1,a2) - succ(a2,a1)", dend), 0}}),
                       "non-invertible substitution", MathError);
}

TEST_CASE("change of generators Ass -> bracket, symmetrizer") {
  auto ass = zoo("Ass");
  auto changed = change_generators(ass, {{"b", parse_term("m(a1,a2) - m(a2,a1)", ass), 1},
                                         {"m", parse_term("m(a1,a2) + m(a2,a1)", ass), 0}});
  CHECK(changed.generators[0].symmetry == Symmetry::Antisymmetric);
  CHECK(changed.generators[1].symmetry == Symmetry::Symmetric);
  // Inverse substitution restores the span of the original relations.
  auto back = change_generators(changed, {{"m", parse_term("1/2*b(a1,a2) + 1/2*m(a1,a2)", changed), 0}});
  CHECK(same_span(shuffleize(back).relations, shuffleize(ass).relations));
}
