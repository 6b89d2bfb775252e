// Acceptance gate: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "pbw/analysis.hpp"
#include "pbw/dsl.hpp"
#include "pbw/envelope.hpp"
#include "pbw/errors.hpp"
#include "pbw/pipeline.hpp"

using namespace pbw;

namespace {

std::string data(const std::string& file) { return std::string(PBW_DATA_DIR) + "/" + file; }

std::string join(const DimTable& d) {
  std::string s;
  for (const auto& v : d.dims) s += (s.empty() ? "" : ",") + v.get_str();
  return s;
}

std::string join(const std::vector<Integer>& d) {
  std::string s;
  for (const auto& v : d) s += (s.empty() ? "" : ",") + v.get_str();
  return s;
}

Integer fact(int n) {
  Integer r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

long rooted_trees(int n) {
  std::vector<int> parent(static_cast<std::size_t>(n), 0);
  long count = 0;
  while (true) {
    int roots = 0;
    for (int v = 0; v < n; ++v) roots += parent[static_cast<std::size_t>(v)] == n;
    if (roots == 1) {
      bool acyclic = true;
      for (int v = 0; v < n && acyclic; ++v) {
        int u = v;
        for (int step = 0; step <= n && u != n; ++step) u = parent[static_cast<std::size_t>(u)];
        acyclic = u == n;
      }
      count += acyclic;
    }
    int i = 0;
    while (i < n && parent[static_cast<std::size_t>(i)] == n) parent[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
    ++parent[static_cast<std::size_t>(i)];
  }
  return count;
}

struct Check {
  std::ostringstream log;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    failed: " << what << "\n";
    }
  }
  void note(const std::string& s) { log << "    " << s << "\n"; }
};

PipelineOptions options(int d, bool graded, const std::string& ordering = "") {
  PipelineOptions o;
  o.max_arity = d;
  o.graded = graded;
  o.target_ordering = ordering;
  return o;
}

// Reports shared between criteria.
struct Runs {
  std::optional<PipelineReport> prelie_dend, lie_ass, leib_dias, lie_prelie;
};

void criterion1(Check& c, Runs& runs) {
  auto resolve = default_resolver(PBW_DATA_DIR);
  auto m = parse_morphism(read_file(data("prelie_dend.morphism")), resolve);
  auto rep = pbw_check(m, options(4, true, "@prepoisson"));
  const auto& g = *rep.graded;
  auto pp = shuffleize(parse_presentation(read_file(data("prepoisson.operad"))));
  c.expect(g.relations.alphabet.names() == pp.alphabet.names(), "graded generators are circ, dot");
  c.expect(same_relation_span(g.relations, pp), "gr relations equal the four PrePoisson relations");
  c.note(std::string("gr relations span the four relations of prepoisson.operad (relation-wise lowest parts ") +
         (g.per_relation_agrees ? "suffice)" : "do not suffice, echelon construction)"));
  c.expect(rep.gbN.quadratic, "quadratic basis under @prepoisson");
  c.note("PP Groebner basis under @prepoisson: " + std::to_string(rep.gbN.elements.size()) + " quadratic elements");
  auto pp_dims = normal_counts(rep.gbN, 4);
  c.expect(pp_dims[3] == 336, "dim PP(4) = 336");
  auto dend = shuffleize(zoo("Dend"));
  auto dend_dims = normal_counts(buchberger(dend, Ordering::default_for(dend.alphabet), 4), 4);
  c.expect(dend_dims[3] == 336 && Integer(dend_dims[3]) == fact(4) * 14, "dim Dend(4) = 4!*14 = 336");
  c.expect(g.comparison.isomorphic, "graded and filtered dims agree");
  c.note("dim PP(4) = " + std::to_string(pp_dims[3]) + ", dim Dend(4) = " + std::to_string(dend_dims[3]));
  c.expect(rep.freeness.free_up_to == 4, "free up to arity 4");
  c.expect(rep.freeness.series_consistent, "integer generator dims");
  c.note("free up to arity " + std::to_string(rep.freeness.free_up_to) + ", X = " + join(rep.freeness.generator_dims));
  runs.prelie_dend = std::move(rep);
}

void criterion2(Check& c, Runs& runs) {
  auto rep = pbw_check(zoo_morphism("Lie", "Ass"), options(5, false));
  c.expect(rep.freeness.free_up_to == 5, "free up to arity 5");
  c.expect(rep.freeness.generator_dims == DimTable::from({1, 1, 1, 1, 1}), "X = 1,1,1,1,1");
  auto poisson = shuffleize(zoo("Poisson"));
  auto pd = normal_counts(buchberger(poisson, Ordering::default_for(poisson.alphabet), 5), 5);
  for (int n = 1; n <= 5; ++n) {
    c.expect(rep.freeness.dims_n.at(n) == fact(n), "dim Ass(" + std::to_string(n) + ") = n!");
    c.expect(Integer(pd[static_cast<std::size_t>(n - 1)]) == fact(n), "dim Poisson(" + std::to_string(n) + ") = n!");
  }
  auto gr = pbw_check(zoo_morphism("Lie", "Ass"), options(5, true));
  c.expect(gr.graded->comparison.isomorphic, "gr Ass has the dims of Ass");
  c.note("X = " + join(rep.freeness.generator_dims) + ", dim Ass = " + join(rep.freeness.dims_n));
  runs.lie_ass = std::move(rep);
}

void criterion3(Check& c, Runs& runs) {
  auto rep = pbw_check(zoo_morphism("Leib", "Dias"), options(4, true));
  const auto& f = rep.freeness;
  int defect = f.free_up_to + 1;
  c.expect(f.free_up_to < 4, "NOT free at some arity <= 4");
  c.expect(defect == 3, "defect arity is 3");
  c.note("defect at arity " + std::to_string(defect) + ": dim N = " + f.per_arity[2].dim_n.get_str() +
         ", dim XoM = " + f.per_arity[2].dim_free_model.get_str());
  c.expect(f.witness.has_value(), "witness present");
  if (f.witness) c.note("witness (arity " + std::to_string(f.witness->arity) + "): " + f.witness->text);

  FreeModel fm(rep.module, 4);
  const Alphabet& mixed = fm.mixed_alphabet();
  Term obstruction = Term(parse_monomial("dot(dot(1,src_b(2,4)),3)", mixed)) +
                     Term(parse_monomial("dot(dot(1,src_bbar(2,4)),3)", mixed));
  auto coords = fm.coordinates(obstruction);
  c.expect(!coords.empty(), "a1.[a2,a4].a3 + a1.[a4,a2].a3 is nonzero in X o M");
  c.expect(fm.evaluate(coords).empty(), "a1.[a2,a4].a3 + a1.[a4,a2].a3 vanishes in N(4)");
  c.expect(fm.kernel().size() > 0 && fm.size() > fm.rank(), "arity 4 kernel is nonzero");
  c.note("arity-4 obstruction a1.[a2,a4].a3 + a1.[a4,a2].a3 lies in the kernel of X o M -> N (kernel dim " +
         std::to_string(fm.kernel().size()) + ")");

  c.expect(f.series_consistent, "EGF-only test passes");
  TruncatedEGF expected(std::vector<Rational>{1, 2, 0, 0});
  c.expect(f.series_quotient == expected, "f_X = u + u^2");
  c.note("series quotient " + join(dims_of(f.series_quotient)) + " (f_X = u + u^2), EGF test passes, module not free");
  runs.leib_dias = std::move(rep);
}

void criterion4(Check& c, Runs& runs) {
  auto rep = pbw_check(zoo_morphism("Lie", "PreLie"), options(5, false));
  c.expect(rep.freeness.free_up_to == 5, "free up to arity 5");
  for (int n = 1; n <= 5; ++n) {
    Integer power = 1;
    for (int k = 1; k < n; ++k) power *= n;
    c.expect(rep.freeness.dims_n.at(n) == power, "dim PreLie(n) = n^(n-1)");
    c.expect(rep.freeness.dims_n.at(n) == rooted_trees(n), "dim PreLie(n) = rooted trees");
  }
  c.note("dim PreLie = " + join(rep.freeness.dims_n) + ", X = " + join(rep.freeness.generator_dims));
  runs.lie_prelie = std::move(rep);
}

void criterion5(Check& c, Runs& runs) {
  auto certified = [&](const char* label, const std::optional<PipelineReport>& r) {
    if (!r) {
      c.expect(false, std::string(label) + " not available");
      return;
    }
    c.expect(static_cast<int>(r->bar.size()) == r->bound, std::string(label) + " bar computed in every arity");
    std::string h;
    for (const auto& b : r->bar) {
      c.expect(b.homology[1] == 0, std::string(label) + " H1 = 0 in arity " + std::to_string(b.n));
      c.expect(Integer(b.homology[0]) == r->freeness.generator_dims.at(b.n),
               std::string(label) + " H0 = X in arity " + std::to_string(b.n));
      h += " " + std::to_string(b.homology[0]) + "/" + std::to_string(b.homology[1]);
    }
    c.note(std::string(label) + " H0/H1:" + h);
  };
  certified("PreLie -> Dend (gr)", runs.prelie_dend);
  certified("Lie -> Ass", runs.lie_ass);
  certified("Lie -> PreLie", runs.lie_prelie);
  if (!runs.leib_dias) {
    c.expect(false, "Leib -> Dias not available");
    return;
  }
  int defect = runs.leib_dias->freeness.free_up_to + 1;
  const auto& b = runs.leib_dias->bar.at(static_cast<std::size_t>(defect - 1));
  c.expect(b.homology[1] != 0, "H1 != 0 at the defect arity");
  c.note("Leib -> gr Dias H1 at arity " + std::to_string(defect) + " = " + std::to_string(b.homology[1]));
}

void criterion6(Check& c, Runs&) {
  PipelineOptions o = options(4, false);
  o.bar = false;
  auto rep = pbw_check(zoo_morphism("Lie", "Ass"), o);
  const auto& r = rep.module;
  auto load = [](const std::string& f) {
    return GradedAlgebra::from_source(parse_algebra(read_file(data(f))), zoo("Lie"));
  };
  auto to_ints = [](std::initializer_list<long> v) {
    std::vector<Integer> out;
    for (long x : v) out.emplace_back(x);
    return out;
  };

  auto ab = direct_image(r, load("abelian2.algebra"), 4);
  c.expect(ab == to_ints({2, 3, 4, 5}), "abelian 2-dim: S(V) dims 2,3,4,5");
  c.note("(i) abelian2: " + join(ab));

  auto derived = [](const GradedAlgebra& a) {
    Echelon e;
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < a.size(); ++j) e.insert(a.product(0, {i, j}));
    return e.rank();
  };
  for (const auto& [x, y] : std::vector<std::pair<std::string, std::string>>{
           {"heisenberg.algebra", "abelian_211.algebra"}, {"filiform.algebra", "abelian_1211.algebra"}}) {
    auto a = load(x), b = load(y);
    c.expect(a.dims(4) == b.dims(4), x + " and " + y + " have equal graded dims");
    c.expect(derived(a) != derived(b), x + " and " + y + " are not isomorphic");
    auto ea = direct_image(r, a, 4), eb = direct_image(r, b, 4);
    c.expect(ea == eb, x + " and " + y + " have equal envelope dims");
    c.note("(ii) " + a.name() + " " + join(ea) + " / " + b.name() + " " + join(eb) + ", derived dims " +
           std::to_string(derived(a)) + " vs " + std::to_string(derived(b)));
  }

  auto free3 = direct_image(r, load("free_lie_3.algebra"), 3);
  c.expect(free3 == to_ints({2, 4, 8}), "truncated free Lie: tensor dims 2,4,8");
  c.note("(iii) free Lie on 2 generators up to weight 3: " + join(free3));
}

void criterion7(Check& c, Runs&) {
  std::string cmd = std::string("\"") + PBW_PROPERTY_TESTS + "\" --minimal";
  int status = std::system(cmd.c_str());
  c.expect(status == 0, "property suite exits 0");
  c.note("property suite exit status " + std::to_string(status));
}

}  // namespace

int main() {
  Runs runs;
  const std::vector<std::pair<const char*, std::function<void(Check&, Runs&)>>> criteria{
      {"PreLie -> Dend: gr is PrePoisson, quadratic, 336, free to 4", criterion1},
      {"Lie -> Ass: free to 5, X = 1,1,1,1,1, dims n!", criterion2},
      {"Leib -> gr Dias: not free, obstruction, EGF test passes", criterion3},
      {"Lie -> PreLie: free to 5, n^(n-1)", criterion4},
      {"bar homology certificates", criterion5},
      {"envelopes along Lie -> Ass", criterion6},
      {"property suites", criterion7},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [title, run] : criteria) {
    ++index;
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      run(c, runs);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << index << ": " << title << " (" << std::fixed
              << std::setprecision(2) << secs << " s)\n"
              << c.log.str() << std::flush;
    failures += !c.ok;
  }
  return failures == 0 ? 0 : 1;
}
