#pragma once

// Constraint ranking: normalises impacts into importance weights, attenuates
// constraints whose absolute impact is negligible, applies memory weighting,
// and discards anything below the drop threshold.

#include <algorithm>
#include <vector>

#include "greencg/errors.hpp"
#include "greencg/model.hpp"

namespace greencg {

struct RankerConfig {
  double min_impact_f = 100.0;  // gCO2eq; below this the weight is attenuated
  double lambda_low = 0.75;     // attenuation factor for low-absolute-impact constraints
  double drop_weight = 0.1;     // constraints with w below this are discarded
};

inline double max_em(const std::vector<Constraint>& constraints) {
  if (constraints.empty())
    throw PipelineError("max_em over an empty constraint set");
  double m = constraints.front().em;
  for (const auto& c : constraints) m = std::max(m, c.em);
  return m;
}

// w_i = em_i / max em, then lambda attenuation when em_i < F, then the memory
// weight. Output is sorted by weight descending with a lexicographic identity
// tie-break so emitted files are byte-stable.
inline std::vector<Constraint> rank(std::vector<Constraint> constraints,
                                    const RankerConfig& config) {
  if (constraints.empty()) return {};
  const double denominator = max_em(constraints);

  std::vector<Constraint> out;
  out.reserve(constraints.size());
  for (auto& c : constraints) {
    double w = denominator > 0 ? c.em / denominator : 0.0;
    if (c.em < config.min_impact_f) w *= config.lambda_low;
    w *= c.mu;
    if (w < config.drop_weight) continue;
    c.weight = w;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Constraint& a, const Constraint& b) {
    if (*a.weight != *b.weight) return *a.weight > *b.weight;
    return a.identity() < b.identity();
  });
  return out;
}

}  // namespace greencg
