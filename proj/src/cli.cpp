#include "pbw/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "pbw/analysis.hpp"
#include "pbw/dsl.hpp"
#include "pbw/envelope.hpp"
#include "pbw/errors.hpp"
#include "pbw/groebner.hpp"
#include "pbw/morphism.hpp"
#include "pbw/pipeline.hpp"
#include "pbw/presentation.hpp"
#include "pbw/series.hpp"

namespace pbw {

namespace {

using Json = nlohmann::ordered_json;

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

std::string rational_text(const Rational& q) { return q.get_str(); }

bool looks_like_path(const std::string& ref) {
  return ref.find('/') != std::string::npos || ref.find('.') != std::string::npos || std::filesystem::exists(ref);
}

SymmetricPresentation load_operad(const std::string& ref) {
  if (!looks_like_path(ref)) return zoo(ref);
  return parse_presentation(read_file(ref));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput("expected a comma separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      Rational q(item);
      q.canonicalize();
      out.push_back(q);
    } catch (const std::exception&) {
      throw InvalidInput("bad rational '" + item + "'");
    }
  }
  return out;
}

struct Common {
  std::string format = "text";
  int max_arity = 4;
  std::string ordering;
  std::size_t max_basis = 0;
};

struct MorphismArgs {
  std::string file;
  std::string source;
  std::string target;
  std::vector<std::string> maps;
  std::string source_ordering;
};

SymmetricMorphism load_morphism(const MorphismArgs& a) {
  if (!a.file.empty()) {
    if (!a.source.empty() || !a.target.empty() || !a.maps.empty())
      throw InvalidInput("--morphism excludes --source, --target and --map");
    std::string dir = std::filesystem::path(a.file).parent_path().string();
    return parse_morphism(read_file(a.file), default_resolver(dir));
  }
  if (a.source.empty() || a.target.empty()) throw InvalidInput("give --morphism FILE or both --source and --target");
  SymmetricMorphism m;
  if (a.maps.empty()) {
    if (looks_like_path(a.source) || looks_like_path(a.target))
      throw InvalidInput("operads read from files need explicit --map entries");
    return zoo_morphism(a.source, a.target);
  }
  m.source = load_operad(a.source);
  m.target = load_operad(a.target);
  m.name = m.source.name + "_to_" + m.target.name;
  m.images.assign(m.source.generators.size(), Term());
  std::vector<bool> given(m.source.generators.size(), false);
  for (const auto& entry : a.maps) {
    auto [idx, image] = parse_map_entry(entry, m.source, m.target);
    if (given[static_cast<std::size_t>(idx)]) throw InvalidInput("generator mapped twice: " + entry);
    given[static_cast<std::size_t>(idx)] = true;
    m.images[static_cast<std::size_t>(idx)] = std::move(image);
  }
  for (std::size_t i = 0; i < given.size(); ++i)
    if (!given[i]) throw InvalidInput("no --map entry for generator '" + m.source.generators[i].name + "'");
  return m;
}

Limits limits_of(const Common& c) {
  Limits l = Limits::from_environment();
  if (c.max_basis > 0) l.max_basis = c.max_basis;
  if (c.max_arity > l.max_arity)
    throw ResourceError("arity bound " + std::to_string(c.max_arity) + " exceeds the cap " + std::to_string(l.max_arity) +
                        " (PBW_MAX_ARITY)");
  return l;
}

Ordering ordering_of(const std::string& preset, const Alphabet& a) {
  return preset.empty() ? Ordering::default_for(a) : Ordering::parse(preset, a);
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string join(const std::vector<Integer>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x.get_str();
  return s;
}

Json dims_json(const std::vector<std::int64_t>& dims) {
  Json j = Json::object();
  for (std::size_t i = 0; i < dims.size(); ++i) j[std::to_string(i + 1)] = dims[i];
  return j;
}

Json dims_json(const std::vector<Integer>& dims) {
  Json j = Json::object();
  for (std::size_t i = 0; i < dims.size(); ++i) j[std::to_string(i + 1)] = integer_json(dims[i]);
  return j;
}

Json generators_json(const std::vector<GeneratorSpec>& gens) {
  Json arr = Json::array();
  for (const auto& g : gens)
    arr.push_back({{"name", g.name}, {"arity", g.arity}, {"symmetry", to_string(g.symmetry)}, {"weight", g.weight}});
  return arr;
}

Json relations_json(const SymmetricPresentation& p) {
  Json arr = Json::array();
  auto names = p.names();
  for (const auto& r : p.relations) arr.push_back(format_term(r, names, true));
  return arr;
}

Json shuffle_relations_json(const ShufflePresentation& p) {
  Json arr = Json::array();
  for (const auto& r : p.relations) arr.push_back(format_term(r, p.alphabet));
  return arr;
}

void emit(std::ostream& out, const Common& c, const Json& j, const std::string& text) {
  if (c.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

// ---------------------------------------------------------------------------

int cmd_parse(const Common& c, const std::string& operad, const std::string& morphism, const std::string& algebra,
              std::ostream& out) {
  const int given = !operad.empty() + !morphism.empty() + !algebra.empty();
  if (given != 1) throw InvalidInput("parse: give exactly one of --operad, --morphism, --algebra");
  Json j;
  std::ostringstream text;
  if (!operad.empty()) {
    SymmetricPresentation p = load_operad(operad);
    ShufflePresentation s = shuffleize(p);
    j["kind"] = "operad";
    j["name"] = p.name;
    j["generators"] = generators_json(p.generators);
    j["relations"] = relations_json(p);
    j["shuffle_generators"] = s.alphabet.names();
    j["shuffle_relations"] = shuffle_relations_json(s);
    text << print_presentation(p);
    text << "shuffle generators:";
    for (const auto& n : s.alphabet.names()) text << " " << n;
    text << "\nshuffle relations: " << s.relations.size() << "\n";
  } else if (!morphism.empty()) {
    SymmetricMorphism m = load_morphism(MorphismArgs{morphism, "", "", {}, ""});
    m.validate();
    j["kind"] = "morphism";
    j["name"] = m.name;
    j["source"] = m.source.name;
    j["target"] = m.target.name;
    Json maps = Json::object();
    auto tn = m.target.names();
    for (std::size_t i = 0; i < m.images.size(); ++i) maps[m.source.generators[i].name] = format_term(m.images[i], tn, true);
    j["map"] = maps;
    text << "morphism " << m.name << ": " << m.source.name << " -> " << m.target.name << "\n";
    for (std::size_t i = 0; i < m.images.size(); ++i)
      text << "  " << m.source.generators[i].name << " -> " << format_term(m.images[i], tn, true) << "\n";
  } else {
    AlgebraSource a = parse_algebra(read_file(algebra));
    std::string dir = std::filesystem::path(algebra).parent_path().string();
    SymmetricPresentation over = default_resolver(dir)(a.over, a.over_quoted);
    GradedAlgebra g = GradedAlgebra::from_source(a, over);
    j["kind"] = "algebra";
    j["name"] = g.name();
    j["over"] = over.name;
    Json basis = Json::array();
    for (int e = 0; e < g.size(); ++e) basis.push_back({{"name", g.names()[static_cast<std::size_t>(e)]}, {"weight", g.weight(e)}});
    j["basis"] = basis;
    j["dims"] = g.dims(g.max_weight());
    text << "algebra " << g.name() << " over " << over.name << ", dims by weight:";
    for (int d : g.dims(g.max_weight())) text << " " << d;
    text << "\n";
  }
  emit(out, c, j, text.str());
  return kExitOk;
}

int cmd_gb(const Common& c, const std::string& operad, int trials, std::uint64_t seed, std::ostream& out) {
  SymmetricPresentation p = load_operad(operad);
  ShufflePresentation s = shuffleize(p);
  const Limits limits = limits_of(c);
  GroebnerBasis g = buchberger(s, ordering_of(c.ordering, s.alphabet), c.max_arity, limits);
  auto dims = normal_counts(g, c.max_arity);
  Json j;
  j["operad"] = p.name;
  j["ordering"] = g.ordering.description();
  j["complete_to"] = g.complete_to;
  j["quadratic"] = g.quadratic;
  Json elems = Json::array();
  for (const auto& e : g.elements)
    elems.push_back({{"lead", format_monomial(e.lead, g.alphabet)}, {"term", format_term(e.term, g.alphabet)}});
  j["elements"] = elems;
  j["dims"] = dims_json(dims);
  std::ostringstream text;
  text << "operad " << p.name << ", ordering " << g.ordering.description() << "\n";
  text << "complete to arity " << g.complete_to << ", " << g.elements.size() << " elements, quadratic "
       << (g.quadratic ? "yes" : "no") << "\n";
  for (const auto& e : g.elements) text << "  " << format_term(e.term, g.alphabet) << "\n";
  text << "dims up to arity " << c.max_arity << ": " << join(dims) << "\n";
  if (trials > 0) {
    std::mt19937_64 rng(seed);
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
      const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(c.max_arity));
      auto mons = enumerate(g.alphabet, n, c.max_arity);
      Term term(n);
      for (int k = 0; k < 3 && !mons.empty(); ++k)
        term.add(mons[rng() % mons.size()], Rational(static_cast<long>(rng() % 7) - 3));
      if (reduce_randomized(term, g, rng) != reduce(term, g)) ++failures;
    }
    j["confluence"] = {{"trials", trials}, {"seed", seed}, {"failures", failures}};
    text << "randomized reduction: " << trials << " trials (seed " << seed << "), " << failures << " disagreements\n";
    if (failures > 0) {
      emit(out, c, j, text.str());
      return kExitMath;
    }
  }
  emit(out, c, j, text.str());
  return kExitOk;
}

int cmd_dims(const Common& c, const std::string& operad, std::ostream& out) {
  SymmetricPresentation p = load_operad(operad);
  ShufflePresentation s = shuffleize(p);
  GroebnerBasis g = buchberger(s, ordering_of(c.ordering, s.alphabet), c.max_arity, limits_of(c));
  auto dims = normal_counts(g, c.max_arity);
  Json j;
  j["operad"] = p.name;
  j["max_arity"] = c.max_arity;
  j["dims"] = dims_json(dims);
  std::ostringstream text;
  text << "operad " << p.name << " (arities 1.." << c.max_arity << ")\n";
  for (std::size_t i = 0; i < dims.size(); ++i) text << "  " << i + 1 << ": " << dims[i] << "\n";
  emit(out, c, j, text.str());
  return kExitOk;
}

int cmd_gr(const Common& c, const std::string& operad, const MorphismArgs& ma, const std::string& complement,
           std::ostream& out) {
  const Limits limits = limits_of(c);
  Json j;
  std::ostringstream text;
  ShufflePresentation filtered;
  ShufflePresentation graded;
  SymmetricPresentation symmetric_graded;
  if (!operad.empty()) {
    SymmetricPresentation p = load_operad(operad);
    FilteredPresentation f{shuffleize(p)};
    f.validate();
    filtered = f.base;
    graded = associated_graded(f);
    symmetric_graded = associated_graded(p);
  } else {
    SymmetricMorphism m = load_morphism(ma);
    std::optional<NewGenerator> comp;
    if (!complement.empty()) {
      auto eq = complement.find('=');
      if (eq == std::string::npos) throw InvalidInput("--complement looks like NAME = TERM");
      std::string name = complement.substr(0, eq);
      name.erase(std::remove(name.begin(), name.end(), ' '), name.end());
      comp = NewGenerator{name, parse_term(complement.substr(eq + 1), m.target), 0};
    }
    GradedTarget gt = graded_target(m, comp);
    filtered = shuffleize(gt.filtered);
    graded = associated_graded(FilteredPresentation{filtered});
    symmetric_graded = gt.graded;
    j["filtered"] = print_presentation(gt.filtered);
    text << "filtered target:\n" << print_presentation(gt.filtered);
  }
  const bool agrees = same_relation_span(graded, shuffleize(symmetric_graded));
  GroebnerBasis gf = buchberger(filtered, Ordering::default_for(filtered.alphabet), c.max_arity, limits);
  GroebnerBasis gg = buchberger(graded, ordering_of(c.ordering, graded.alphabet), c.max_arity, limits);
  DimensionComparison cmp = gr_is_isomorphic_check(gg, gf, c.max_arity);
  j["graded"] = {{"name", symmetric_graded.name},
                 {"generators", generators_json(symmetric_graded.generators)},
                 {"relations", relations_json(symmetric_graded)}};
  j["shuffle_relations"] = shuffle_relations_json(graded);
  j["per_relation_agrees"] = agrees;
  j["max_arity"] = c.max_arity;
  j["dims_graded"] = dims_json(cmp.candidate);
  j["dims_filtered"] = dims_json(cmp.base);
  j["isomorphic"] = cmp.isomorphic;
  j["graded_quadratic"] = gg.quadratic;
  text << "associated graded:\n" << print_presentation(symmetric_graded);
  text << "lowest-weight parts of the relations " << (agrees ? "span" : "do not span") << " the graded relation space\n";
  text << "dims up to arity " << c.max_arity << ": graded " << join(cmp.candidate) << ", filtered " << join(cmp.base)
       << (cmp.isomorphic ? " (isomorphic)" : " (differ at arity " + std::to_string(cmp.first_difference) + ")") << "\n";
  text << "graded basis quadratic under " << gg.ordering.description() << ": " << (gg.quadratic ? "yes" : "no") << "\n";
  emit(out, c, j, text.str());
  return kExitOk;
}

int cmd_morphism_check(const Common& c, const MorphismArgs& ma, std::ostream& out) {
  SymmetricMorphism m = load_morphism(ma);
  m.validate();
  OperadMorphism om = shuffleize(m);
  GroebnerBasis g = buchberger(om.target, ordering_of(c.ordering, om.target.alphabet), c.max_arity, limits_of(c));
  MorphismVerdict v = verify_morphism(om, g);
  Json j;
  j["morphism"] = m.name;
  j["max_arity"] = c.max_arity;
  j["valid"] = v.valid;
  j["failures"] = v.failures;
  std::ostringstream text;
  text << "morphism " << m.name << ": " << (v.valid ? "well defined" : "NOT well defined") << " (checked to arity "
       << c.max_arity << ")\n";
  for (const auto& f : v.failures) text << "  " << f << "\n";
  emit(out, c, j, text.str());
  return v.valid ? kExitOk : kExitMath;
}

int cmd_pbw_check(const Common& c, const MorphismArgs& ma, bool gr, const std::string& complement, bool bar,
                  std::ostream& out) {
  SymmetricMorphism m = load_morphism(ma);
  PipelineOptions o;
  o.max_arity = c.max_arity;
  o.graded = gr;
  o.target_ordering = c.ordering;
  o.source_ordering = ma.source_ordering;
  o.bar = bar;
  o.limits = limits_of(c);
  if (!complement.empty()) {
    auto eq = complement.find('=');
    if (eq == std::string::npos) throw InvalidInput("--complement looks like NAME = TERM");
    std::string name = complement.substr(0, eq);
    name.erase(std::remove(name.begin(), name.end(), ' '), name.end());
    o.complement = NewGenerator{name, parse_term(complement.substr(eq + 1), m.target), 0};
  }
  PipelineReport rep = pbw_check(m, o);
  const FreenessReport& f = rep.freeness;
  const bool free = f.free_up_to == f.bound;
  Json j;
  std::ostringstream text;
  j["morphism"] = m.name;
  j["source"] = m.source.name;
  j["target"] = rep.morphism.target.name;
  j["max_arity"] = rep.bound;
  text << "morphism " << m.name << ": " << m.source.name << " -> " << rep.morphism.target.name << " (bound: arity "
       << rep.bound << ")\n";
  if (rep.graded) {
    const auto& st = *rep.graded;
    j["graded"] = {{"relations", relations_json(st.target.graded)},
                   {"shuffle_relations", shuffle_relations_json(st.relations)},
                   {"per_relation_agrees", st.per_relation_agrees},
                   {"changed_generators", st.target.changed_generators},
                   {"quadratic", rep.gbN.quadratic},
                   {"ordering", rep.gbN.ordering.description()},
                   {"dims_graded", dims_json(st.comparison.candidate)},
                   {"dims_filtered", dims_json(st.comparison.base)},
                   {"isomorphic", st.comparison.isomorphic}};
    text << "associated graded target:\n" << print_presentation(st.target.graded);
    if (!st.per_relation_agrees) {
      text << "the lowest-weight parts above do not span the graded relation space; using " << st.relations.relations.size()
           << " shuffle relations:\n";
      for (const auto& r : st.relations.relations) text << "  " << format_term(r, st.relations.alphabet) << "\n";
    }
    text << "graded basis under " << rep.gbN.ordering.description() << ": quadratic "
         << (rep.gbN.quadratic ? "yes" : "no") << "\n";
    text << "dims graded " << join(st.comparison.candidate) << ", filtered " << join(st.comparison.base)
         << (st.comparison.isomorphic ? " (isomorphic)" : " (NOT isomorphic)") << "\n";
  }
  j["dims_source"] = dims_json(f.dims_m.dims);
  j["dims_target"] = dims_json(f.dims_n.dims);
  j["free"] = free;
  j["free_up_to"] = f.free_up_to;
  j["generator_dims"] = dims_json(f.generator_dims.dims);
  Json per = Json::array();
  for (const auto& v : f.per_arity)
    per.push_back({{"n", v.n},
                   {"dim_N", integer_json(v.dim_n)},
                   {"dim_free_model", integer_json(v.dim_free_model)},
                   {"verdict", v.match ? "match" : "defect"}});
  j["per_arity"] = per;
  text << "dims source " << join(f.dims_m.dims) << ", target " << join(f.dims_n.dims) << "\n";
  text << "generator dims " << join(f.generator_dims.dims) << "\n";
  for (const auto& v : f.per_arity)
    text << "  arity " << v.n << ": dim N " << v.dim_n.get_str() << ", dim XoM " << v.dim_free_model.get_str()
         << (v.match ? "" : "  <- defect") << "\n";
  if (f.witness) {
    j["witness"] = {{"arity", f.witness->arity}, {"kernel_dim", f.witness->kernel_dim}, {"term", f.witness->text}};
  }
  Json series = Json::array();
  for (const auto& q : f.series_quotient.coefficients()) series.push_back(rational_text(q));
  j["series"] = {{"quotient", series}, {"consistent", f.series_consistent}};
  if (bar) {
    Json b = Json::array();
    for (const auto& h : rep.bar) b.push_back({{"n", h.n}, {"chain_dims", h.chain_dims}, {"homology", h.homology}});
    j["bar"] = b;
    j["bar_consistent"] = rep.bar_consistent;
  }
  if (free)
    text << "verdict: free up to arity " << f.bound << ", generators dims " << join(f.generator_dims.dims) << "\n";
  else
    text << "verdict: NOT free; defect at arity " << f.free_up_to + 1 << " (checked up to arity " << f.bound << ")\n";
  if (f.witness)
    text << "witness (kernel dim " << f.witness->kernel_dim << " at arity " << f.witness->arity << "): " << f.witness->text
         << "\n";
  text << "generating series quotient: ";
  for (std::size_t i = 0; i < f.series_quotient.coefficients().size(); ++i)
    text << (i ? "," : "") << rational_text(f.series_quotient.coefficients()[i]);
  text << (f.series_consistent ? " (a dimension series)" : " (not a dimension series)") << "\n";
  if (bar) {
    text << "bar homology H0/H1:";
    for (const auto& h : rep.bar) text << " " << h.homology[0] << "/" << h.homology[1];
    text << (rep.bar_consistent ? " (consistent)" : " (inconsistent)") << "\n";
  }
  emit(out, c, j, text.str());
  return kExitOk;
}

int cmd_envelope(const Common& c, const std::string& operad, const std::string& space, const MorphismArgs& ma,
                 const std::string& algebra, int weight_bound, std::ostream& out) {
  Json j;
  std::ostringstream text;
  if (!operad.empty()) {
    if (space.empty()) throw InvalidInput("envelope --operad needs --space");
    std::vector<int> v = parse_int_list(space);
    const int d = weight_bound > 0 ? weight_bound : static_cast<int>(v.size());
    SymmetricPresentation p = load_operad(operad);
    ShufflePresentation s = shuffleize(p);
    Common cc = c;
    cc.max_arity = std::max(d, 1);
    GroebnerBasis g = buchberger(s, ordering_of(c.ordering, s.alphabet), cc.max_arity, limits_of(cc));
    auto dims = evaluate(g, v, d);
    j["operad"] = p.name;
    j["space"] = v;
    j["weight_bound"] = d;
    j["dims"] = dims_json(dims);
    text << "free " << p.name << "-algebra on dims " << space << ", weights 1.." << d << ": " << join(dims) << "\n";
    emit(out, c, j, text.str());
    return kExitOk;
  }
  if (algebra.empty()) throw InvalidInput("envelope needs --algebra (or --operad with --space)");
  SymmetricMorphism m = load_morphism(ma);
  AlgebraSource src = parse_algebra(read_file(algebra));
  GradedAlgebra a = GradedAlgebra::from_source(src, m.source);
  const int d = weight_bound > 0 ? weight_bound : a.max_weight();
  Common cc = c;
  cc.max_arity = std::max(d, 1);
  PipelineOptions o;
  o.max_arity = cc.max_arity;
  o.target_ordering = c.ordering;
  o.source_ordering = ma.source_ordering;
  o.bar = false;
  o.limits = limits_of(cc);
  PipelineReport rep = pbw_check(m, o);
  EnvelopeReport e = envelope_report(rep.module, a, d);
  j["morphism"] = m.name;
  j["algebra"] = a.name();
  j["weight_bound"] = d;
  j["algebra_dims"] = dims_json(std::vector<std::int64_t>(e.algebra_dims.begin(), e.algebra_dims.end()));
  j["envelope_dims"] = dims_json(e.envelope);
  j["free_up_to"] = rep.freeness.free_up_to;
  j["generator_prediction"] = dims_json(e.free_prediction);
  j["matches_prediction"] = e.matches;
  std::vector<std::int64_t> ad(e.algebra_dims.begin(), e.algebra_dims.end());
  text << "direct image of " << a.name() << " (dims " << join(ad) << ") along " << m.name << ", weights 1.." << d
       << ": " << join(e.envelope) << "\n";
  text << "prediction from generators X (free up to arity " << rep.freeness.free_up_to << "): " << join(e.free_prediction)
       << (e.matches ? " (equal)" : " (different)") << "\n";
  emit(out, c, j, text.str());
  return kExitOk;
}

int cmd_egf(const Common& c, const std::string& operad, const std::string& dims, const std::string& compose,
            const std::string& solve, std::ostream& out) {
  TruncatedEGF f;
  std::string label;
  if (!operad.empty()) {
    SymmetricPresentation p = load_operad(operad);
    ShufflePresentation s = shuffleize(p);
    GroebnerBasis g = buchberger(s, ordering_of(c.ordering, s.alphabet), c.max_arity, limits_of(c));
    f = egf_of(DimTable::from(normal_counts(g, c.max_arity)));
    label = p.name;
  } else if (!dims.empty()) {
    f = TruncatedEGF(parse_rational_list(dims));
    label = "input";
  } else {
    throw InvalidInput("egf needs --operad or --dims");
  }
  auto other = [&](const std::string& list) {
    TruncatedEGF g(parse_rational_list(list));
    if (g.order() < f.order()) throw InvalidInput("series orders differ");
    std::vector<Rational> cut(g.coefficients().begin(), g.coefficients().begin() + f.order());
    return TruncatedEGF(cut);
  };
  TruncatedEGF result = f;
  std::string what = "series of " + label;
  if (!compose.empty() && !solve.empty()) throw InvalidInput("--compose and --solve are exclusive");
  if (!compose.empty()) {
    result = egf_compose(f, other(compose));
    what = label + " composed with " + compose;
  } else if (!solve.empty()) {
    result = egf_solve_left(f, other(solve));
    what = "x with x(" + solve + ") = " + label;
  }
  Json j;
  j["series"] = what;
  j["order"] = result.order();
  Json coeffs = Json::array();
  Json pairs = Json::array();
  for (int n = 1; n <= result.order(); ++n) {
    coeffs.push_back(rational_text(result[n]));
    Rational o = result.ordinary(n);
    pairs.push_back({integer_json(o.get_num()), integer_json(o.get_den())});
  }
  j["dims"] = coeffs;
  j["egf_num_den_pairs"] = pairs;
  j["is_dimension_series"] = is_dimension_series(result);
  std::ostringstream text;
  text << what << " (order " << result.order() << ")\n";
  for (int n = 1; n <= result.order(); ++n)
    text << "  " << n << ": " << rational_text(result[n]) << "  (t^" << n << " coefficient "
         << rational_text(result.ordinary(n)) << ")\n";
  emit(out, c, j, text.str());
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gröbner bases of shuffle operads, freeness of right modules and envelopes", "pbw"};
  app.require_subcommand(1);
  Common c;
  MorphismArgs ma;
  std::string operad, morphism_file, algebra, complement, space, dims, compose, solve;
  int trials = 0, weight_bound = 0;
  std::uint64_t seed = 1;
  bool gr = false, no_bar = false;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--max-arity,-D", c.max_arity, "arity bound")->check(CLI::PositiveNumber);
    s->add_option("--ordering", c.ordering, "ordering preset (target side for morphisms)");
    s->add_option("--max-basis", c.max_basis, "cap on Gröbner basis size")->check(CLI::PositiveNumber);
  };
  auto add_morphism = [&](CLI::App* s) {
    s->add_option("--morphism", ma.file, "morphism file");
    s->add_option("--source", ma.source, "source operad (zoo name or file)");
    s->add_option("--target", ma.target, "target operad (zoo name or file)");
    s->add_option("--map", ma.maps, "generator image, 'g -> TERM'; repeatable");
    s->add_option("--source-ordering", ma.source_ordering, "ordering preset for the source");
  };

  auto* parse = app.add_subcommand("parse", "read and normalize an operad, morphism or algebra file");
  add_common(parse);
  parse->add_option("--operad", operad, "zoo name or operad file");
  parse->add_option("--morphism", morphism_file, "morphism file");
  parse->add_option("--algebra", algebra, "algebra file");

  auto* gb = app.add_subcommand("gb", "Gröbner basis of an operad");
  add_common(gb);
  gb->add_option("--operad", operad, "zoo name or operad file")->required();
  gb->add_option("--confluence-trials", trials, "randomized reduction trials")->check(CLI::NonNegativeNumber);
  gb->add_option("--seed", seed, "seed for randomized checks");

  auto* dm = app.add_subcommand("dims", "component dimensions via normal monomials");
  add_common(dm);
  dm->add_option("--operad", operad, "zoo name or operad file")->required();

  auto* grc = app.add_subcommand("gr", "associated graded presentation");
  add_common(grc);
  grc->add_option("--operad", operad, "operad whose generator weights define the filtration");
  add_morphism(grc);
  grc->add_option("--complement", complement, "complementary generator 'NAME = TERM'");

  auto* mc = app.add_subcommand("morphism-check", "check that a morphism respects relations");
  add_common(mc);
  add_morphism(mc);

  auto* pc = app.add_subcommand("pbw-check", "freeness of the target as a right module over the source");
  add_common(pc);
  add_morphism(pc);
  pc->add_flag("--gr", gr, "use the associated graded target");
  pc->add_option("--complement", complement, "complementary generator 'NAME = TERM'");
  pc->add_flag("--no-bar", no_bar, "skip the bar homology cross-check");

  auto* env = app.add_subcommand("envelope", "free algebras and direct images of graded algebras");
  add_common(env);
  add_morphism(env);
  env->add_option("--algebra", algebra, "algebra file over the source operad");
  env->add_option("--operad", operad, "evaluate this operad on a graded space");
  env->add_option("--space", space, "dims of the graded space by weight, e.g. 2,1");
  env->add_option("--weight-bound,-d", weight_bound, "weight bound")->check(CLI::PositiveNumber);

  auto* eg = app.add_subcommand("egf", "exponential generating series");
  add_common(eg);
  eg->add_option("--operad", operad, "series of an operad");
  eg->add_option("--dims", dims, "coefficients a_1,a_2,... of t^n/n!");
  eg->add_option("--compose", compose, "compose with the series of these coefficients");
  eg->add_option("--solve", solve, "solve x(m) = f for the series m of these coefficients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*parse) return cmd_parse(c, operad, morphism_file, algebra, out);
    if (*gb) return cmd_gb(c, operad, trials, seed, out);
    if (*dm) return cmd_dims(c, operad, out);
    if (*grc) {
      if (operad.empty() == (ma.file.empty() && ma.source.empty()))
        throw InvalidInput("gr: give --operad or a morphism");
      return cmd_gr(c, operad, ma, complement, out);
    }
    if (*mc) return cmd_morphism_check(c, ma, out);
    if (*pc) return cmd_pbw_check(c, ma, gr, complement, !no_bar, out);
    if (*env) return cmd_envelope(c, operad, space, ma, algebra, weight_bound, out);
    if (*eg) return cmd_egf(c, operad, dims, compose, solve, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const MathError& e) {
    err << "mathematical failure: " << e.what() << "\n";
    return kExitMath;
  } catch (const InvalidInput& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pbw
