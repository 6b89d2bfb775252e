#include "pbw/pipeline.hpp"

#include "pbw/errors.hpp"

namespace pbw {

namespace {

Ordering ordering_for(const std::string& preset, const Alphabet& a) {
  return preset.empty() ? Ordering::default_for(a) : Ordering::parse(preset, a);
}

}  // namespace

PipelineReport pbw_check(const SymmetricMorphism& m, const PipelineOptions& o) {
  if (o.max_arity < 1) throw InvalidInput("pbw-check: arity bound must be positive");
  m.validate();
  PipelineReport rep;
  rep.bound = o.max_arity;
  rep.input = m;
  rep.morphism = shuffleize(m);
  if (o.graded) {
    GradedStage st;
    st.target = graded_target(m, o.complement);
    const ShufflePresentation filtered = shuffleize(st.target.filtered);
    st.relations = associated_graded(FilteredPresentation{filtered});
    rep.morphism = shuffleize(st.target.morphism);
    st.per_relation_agrees = same_relation_span(st.relations, rep.morphism.target);
    rep.morphism.target = st.relations;
    const GroebnerBasis gbF = buchberger(filtered, Ordering::default_for(filtered.alphabet), o.max_arity, o.limits);
    const GroebnerBasis gbG =
        buchberger(st.relations, ordering_for(o.target_ordering, st.relations.alphabet), o.max_arity, o.limits);
    st.comparison = gr_is_isomorphic_check(gbG, gbF, o.max_arity);
    rep.gbN = gbG;
    rep.graded = std::move(st);
  } else {
    rep.gbN = buchberger(rep.morphism.target, ordering_for(o.target_ordering, rep.morphism.target.alphabet),
                         o.max_arity, o.limits);
  }
  rep.gbM = buchberger(rep.morphism.source, ordering_for(o.source_ordering, rep.morphism.source.alphabet),
                       o.max_arity, o.limits);
  rep.verdict = verify_morphism(rep.morphism, rep.gbN);
  if (!rep.verdict.valid) {
    std::string why;
    for (const auto& f : rep.verdict.failures) why += "\n  " + f;
    throw MathError("morphism " + m.name + " is not well defined:" + why);
  }
  rep.module = right_module(rep.morphism, rep.gbM, rep.gbN, o.max_arity);
  rep.freeness = freeness_check(rep.module);
  if (o.bar) {
    rep.bar_consistent = true;
    for (int n = 1; n <= o.max_arity; ++n) {
      BarHomology b = bar_homology(rep.module, n, 1);
      if (Integer(b.homology[0]) != rep.freeness.generator_dims.at(n)) rep.bar_consistent = false;
      if (n <= rep.freeness.free_up_to && b.homology[1] != 0) rep.bar_consistent = false;
      rep.bar.push_back(std::move(b));
    }
  }
  return rep;
}

}  // namespace pbw
