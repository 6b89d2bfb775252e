#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbw/analysis.hpp"
#include "pbw/groebner.hpp"
#include "pbw/morphism.hpp"

namespace pbw {

struct PipelineOptions {
  int max_arity = 4;
  /// Replace the target by its associated graded for the filtration making
  /// the images of the source generators weight 1.
  bool graded = false;
  std::optional<NewGenerator> complement;
  /// Ordering presets; empty means path-lex by alphabet order.
  std::string source_ordering;
  std::string target_ordering;
  /// Degree-1 bar homology in every arity up to max_arity.
  bool bar = true;
  Limits limits;
};

struct GradedStage {
  GradedTarget target;
  /// Relations of the graded target, from the echelon construction.
  ShufflePresentation relations;
  /// The per-relation lowest-weight parts span the same relation space.
  bool per_relation_agrees = false;
  /// Dims of the graded target against the filtered one.
  DimensionComparison comparison;
};

struct PipelineReport {
  int bound = 0;
  SymmetricMorphism input;
  std::optional<GradedStage> graded;
  OperadMorphism morphism;  // as analysed, with the graded target when requested
  GroebnerBasis gbM;
  GroebnerBasis gbN;
  MorphismVerdict verdict;
  RightModuleData module;
  FreenessReport freeness;
  std::vector<BarHomology> bar;
  /// H_0 equals the generator dims in every arity, and H_1 vanishes up to
  /// the freeness bound.
  bool bar_consistent = false;
};

/// shuffleize, Gröbner bases on both sides, optional associated graded,
/// morphism check, freeness check, bar homology cross-check. Throws MathError
/// when the morphism is not well defined.
PipelineReport pbw_check(const SymmetricMorphism& m, const PipelineOptions& options);

}  // namespace pbw
