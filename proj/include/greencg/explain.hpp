#pragma once

// Explainability: per-constraint emission-savings ranges and the
// human-readable report. A savings range bounds the expected gCO2eq reduction
// if the constraint is enforced.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "greencg/engine.hpp"
#include "greencg/errors.hpp"
#include "greencg/estimation.hpp"
#include "greencg/model.hpp"

namespace greencg {

struct SavingsRange {
  double lower = 0.0;  // gCO2eq
  double upper = 0.0;  // gCO2eq

  bool operator==(const SavingsRange&) const = default;
};

// Bounds for an avoidNode constraint: the upper bound compares the avoided
// node against the cleanest compatible alternative, the lower bound against
// the next-worse alternative (the realistic fallback placement: the highest
// carbon intensity strictly below the avoided node's). Negative differences
// clamp to zero.
inline SavingsRange avoid_savings_range(const Constraint& c,
                                        const EnrichedApplication& app,
                                        const EnrichedInfrastructure& infra) {
  const Service* service = app.app.find_service(c.service);
  if (!service)
    throw PipelineError("avoid savings: unknown service '" + c.service + "'");
  auto profile = app.flavour_energy.find({c.service, c.flavour});
  if (profile == app.flavour_energy.end())
    throw PipelineError("avoid savings: no energy profile for '" + c.service + "/" +
                        c.flavour + "'");
  auto avoided = infra.carbon.find(c.target);
  if (avoided == infra.carbon.end())
    throw PipelineError("avoid savings: no carbon profile for node '" + c.target + "'");

  const double ci_avoided = avoided->second.avg;
  std::optional<double> ci_best;
  std::optional<double> ci_next_worse;
  for (const auto& node : infra.infra.nodes) {
    if (node.id == c.target) continue;
    if (!placement_compatible(*service, node)) continue;
    auto it = infra.carbon.find(node.id);
    if (it == infra.carbon.end()) continue;
    const double ci = it->second.avg;
    if (!ci_best || ci < *ci_best) ci_best = ci;
    if (ci < ci_avoided && (!ci_next_worse || ci > *ci_next_worse)) ci_next_worse = ci;
  }
  if (!ci_best)
    throw PipelineError("avoid savings: no compatible alternative node for '" +
                        c.service + "/" + c.flavour + "'");
  if (!ci_next_worse) ci_next_worse = *ci_best;

  const double energy = profile->second.profile.avg;
  SavingsRange r;
  r.upper = std::max(0.0, (ci_avoided - *ci_best) * energy);
  r.lower = std::max(0.0, (ci_avoided - *ci_next_worse) * energy);
  return r;
}

// Bounds for an affinity constraint: separating the services would burn the
// communication energy at some node's carbon intensity, so the range spans
// the cleanest and dirtiest node in the infrastructure.
inline SavingsRange affinity_savings_range(const Constraint& c,
                                           const EnrichedApplication& app,
                                           const EnrichedInfrastructure& infra) {
  auto profile = app.link_energy.find({c.service, c.flavour, c.target});
  if (profile == app.link_energy.end())
    throw PipelineError("affinity savings: no communication profile for '" + c.service +
                        "/" + c.flavour + "' -> '" + c.target + "'");
  if (infra.carbon.empty())
    throw PipelineError("affinity savings: no carbon profiles available");
  double ci_min = 0.0, ci_max = 0.0;
  bool first = true;
  for (const auto& [_, p] : infra.carbon) {
    if (first) {
      ci_min = ci_max = p.avg;
      first = false;
    } else {
      ci_min = std::min(ci_min, p.avg);
      ci_max = std::max(ci_max, p.avg);
    }
  }
  const double energy = profile->second.avg;
  return SavingsRange{energy * ci_min, energy * ci_max};
}

// Computes a range per ranked constraint where one is derivable; custom kinds
// and constraints whose profiles are gone yield nothing rather than aborting
// the report.
inline std::vector<std::optional<SavingsRange>> compute_savings(
    const std::vector<Constraint>& ranked, const EnrichedApplication& app,
    const EnrichedInfrastructure& infra) {
  std::vector<std::optional<SavingsRange>> out;
  out.reserve(ranked.size());
  for (const auto& c : ranked) {
    try {
      if (c.kind == kAvoidNode)
        out.push_back(avoid_savings_range(c, app, infra));
      else if (c.kind == kAffinity)
        out.push_back(affinity_savings_range(c, app, infra));
      else
        out.push_back(std::nullopt);
    } catch (const PipelineError&) {
      out.push_back(std::nullopt);
    }
  }
  return out;
}

enum class ReportFormat { Text, Markdown };

namespace detail {

inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string headline(const Constraint& c) {
  if (c.kind == kAvoidNode)
    return "keep service \"" + c.service + "\" (flavour \"" + c.flavour +
           "\") off node \"" + c.target + "\"";
  if (c.kind == kAffinity)
    return "co-locate service \"" + c.service + "\" (flavour \"" + c.flavour +
           "\") with service \"" + c.target + "\"";
  return "recommendation for service \"" + c.service + "\" (flavour \"" + c.flavour +
         "\") targeting \"" + c.target + "\"";
}

}  // namespace detail

// One paragraph per constraint, in ranker order: what the constraint asks,
// why it was generated, and the expected savings range. Rendering is
// deterministic; identical inputs yield byte-identical documents.
inline std::string render_report(const std::vector<Constraint>& ranked,
                                 const std::vector<std::optional<SavingsRange>>& ranges,
                                 const ConstraintLibrary& library,
                                 ReportFormat format = ReportFormat::Markdown) {
  const bool md = format == ReportFormat::Markdown;
  std::string out;
  out += md ? "# Green deployment constraint report\n\n"
            : "GREEN DEPLOYMENT CONSTRAINT REPORT\n\n";
  if (ranked.empty()) {
    out += "No constraints were generated for this run.\n";
    return out;
  }
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const Constraint& c = ranked[i];
    const std::string index = std::to_string(i + 1);
    if (md)
      out += "## " + index + ". " + c.kind + ": " + detail::headline(c) + "\n\n";
    else
      out += index + ". " + c.kind + ": " + detail::headline(c) + "\n";

    const ConstraintKind* kind = library.find(c.kind);
    const std::string rationale =
        kind ? kind->explain(c) : "generated by the '" + c.kind + "' constraint kind";
    out += md ? "Why: " + rationale + ".\n\n" : "   Why: " + rationale + ".\n";

    std::string line = "Estimated impact " + detail::fixed2(c.em) + " gCO2eq, weight " +
                       detail::fixed2(c.weight.value_or(0.0)) + ", memory weight " +
                       detail::fixed2(c.mu) + ".";
    out += md ? line + "\n\n" : "   " + line + "\n";

    if (i < ranges.size() && ranges[i]) {
      // Saving figures are printed both in raw gCO2eq and kilo-scaled.
      const SavingsRange& r = *ranges[i];
      std::string s = "Expected emission savings if enforced: between " +
                      detail::fixed2(r.lower / 1000.0) + " and " +
                      detail::fixed2(r.upper / 1000.0) + " kgCO2eq per interval (" +
                      detail::fixed2(r.lower) + " to " + detail::fixed2(r.upper) +
                      " gCO2eq).";
      out += md ? s + "\n\n" : "   " + s + "\n";
    } else {
      const std::string s = "No savings estimate is available for this constraint.";
      out += md ? s + "\n\n" : "   " + s + "\n";
    }
    if (!md) out += "\n";
  }
  return out;
}

}  // namespace greencg
