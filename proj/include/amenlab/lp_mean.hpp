#pragma once

#include <stdexcept>

#include "amenlab/mean.hpp"

namespace amenlab {

// raised when an LP instance exceeds the configured variable budget
struct SizeLimitError : std::length_error {
  using std::length_error::length_error;
};

struct LPMeanResult {
  MeanCandidate m;
  double optimum = 0.0;
  double recomputed_defect = 0.0;
  int iterations = 0;
};

// Minimize the per-generator sup-l1 invariance defect over all means
// supported in the window: min t subject to each m(x) in the simplex over W
// and, for every generator and evaluation site, the l1 distance between
// m(g.x) and the shifted m(x) at most t.  Deterministic dense simplex.
LPMeanResult lp_optimal_mean(const SpacePtr& space, const std::vector<Word>& window,
                             const std::vector<Word>& gens, int depth = 0,
                             int max_variables = 20000);

// same LP solved in exact rational arithmetic; returns the optimum as a
// double plus its exact numerator/denominator rendering
struct ExactLPResult {
  double optimum = 0.0;
  std::string exact;
  int iterations = 0;
};
ExactLPResult lp_optimal_mean_exact(const SpacePtr& space,
                                    const std::vector<Word>& window,
                                    const std::vector<Word>& gens, int depth = 0,
                                    int max_variables = 20000);

}  // namespace amenlab
