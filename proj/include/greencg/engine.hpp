#pragma once

// Constraint library and generator. Each constraint kind contributes an
// evaluator that enumerates candidate constraints with their estimated impact
// (gCO2eq); the generator pools all impacts, derives an adaptive quantile
// threshold, and emits the candidates that strictly exceed it.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greencg/errors.hpp"
#include "greencg/estimation.hpp"
#include "greencg/model.hpp"

namespace greencg {

struct GeneratorConfig {
  double alpha = 0.8;  // retained fraction cutoff: tau = q_alpha, 0 < alpha < 1
};

struct CandidateConstraint {
  std::string kind;
  ServiceId service;
  FlavourId flavour;
  std::string target;
  double em = 0.0;
};

using KindEvaluator = std::function<std::vector<CandidateConstraint>(
    const EnrichedApplication&, const EnrichedInfrastructure&)>;
using KindExplainer = std::function<std::string(const Constraint&)>;

struct ConstraintKind {
  std::string name;
  KindEvaluator evaluate;
  KindExplainer explain;
};

// A service bound to a private subnet cannot run on a public node; everything
// else is allowed.
inline bool placement_compatible(const Service& service, const Node& node) {
  return !(service.placement == Placement::Private && node.subnet == Placement::Public);
}

// Impact of deploying (service, flavour) on node: mean energy consumption
// times the node's mean carbon intensity. Empty when the flavour has no
// measured profile or the node no carbon profile.
inline std::optional<double> avoid_node_impact(const EnrichedApplication& app,
                                               const ServiceId& service,
                                               const FlavourId& flavour,
                                               const EnrichedInfrastructure& infra,
                                               const NodeId& node) {
  auto p = app.flavour_energy.find({service, flavour});
  if (p == app.flavour_energy.end() || p->second.origin != ProfileOrigin::Measured)
    return std::nullopt;
  auto c = infra.carbon.find(node);
  if (c == infra.carbon.end()) return std::nullopt;
  return p->second.profile.avg * c->second.avg;
}

// Impact of keeping (service, flavour) and its peer on separate nodes. The
// landing node is unknown at generation time, so the communication energy is
// weighted by the mean carbon intensity across the infrastructure.
inline std::optional<double> affinity_impact(const EnrichedApplication& app,
                                             const ServiceId& service,
                                             const FlavourId& flavour,
                                             const ServiceId& peer,
                                             const EnrichedInfrastructure& infra) {
  auto p = app.link_energy.find({service, flavour, peer});
  if (p == app.link_energy.end()) return std::nullopt;
  return p->second.avg * infra.mean_carbon();
}

// tau = q_alpha = inf { x observed | F(x) >= alpha } over the pooled impact
// multiset, with F the empirical CDF.
inline double compute_threshold(std::vector<double> impacts, double alpha) {
  if (impacts.empty())
    throw PipelineError("no candidate impacts: cannot derive a threshold");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("alpha must lie strictly between 0 and 1");
  std::sort(impacts.begin(), impacts.end());
  const std::size_t n = impacts.size();
  auto rank_ok = [&](std::size_t j) {
    return static_cast<double>(j) / static_cast<double>(n) >= alpha;
  };
  std::size_t j = static_cast<std::size_t>(
      std::ceil(alpha * static_cast<double>(n)));
  j = std::clamp<std::size_t>(j, 1, n);
  while (j > 1 && rank_ok(j - 1)) --j;
  while (j < n && !rank_ok(j)) ++j;
  return impacts[j - 1];
}

class ConstraintLibrary {
public:
  void add(ConstraintKind kind) {
    if (kinds_.count(kind.name))
      throw ValidationError("constraint kind '" + kind.name + "' already registered");
    kinds_.emplace(kind.name, std::move(kind));
  }

  const ConstraintKind* find(const std::string& name) const {
    auto it = kinds_.find(name);
    return it == kinds_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, ConstraintKind>& kinds() const { return kinds_; }

  // The two built-in kinds: avoidNode over every placement-compatible
  // (service, flavour, node) combination with a measured profile, and
  // affinity over every profiled communication link between distinct
  // services.
  static ConstraintLibrary standard() {
    ConstraintLibrary lib;
    lib.add(ConstraintKind{
        kAvoidNode,
        [](const EnrichedApplication& app, const EnrichedInfrastructure& infra) {
          std::vector<CandidateConstraint> out;
          for (const auto& service : app.app.services) {
            if (app.unprofiled_services.count(service.component_id)) continue;
            for (const auto& flavour : service.flavours) {
              for (const auto& node : infra.infra.nodes) {
                if (!placement_compatible(service, node)) continue;
                auto em = avoid_node_impact(app, service.component_id, flavour.id,
                                            infra, node.id);
                if (!em) continue;
                out.push_back({kAvoidNode, service.component_id, flavour.id,
                               node.id, *em});
              }
            }
          }
          return out;
        },
        [](const Constraint& c) {
          return "the '" + c.flavour + "' flavour of '" + c.service +
                 "' draws a lot of energy and node '" + c.target +
                 "' runs on a carbon-heavy energy mix";
        }});
    lib.add(ConstraintKind{
        kAffinity,
        [](const EnrichedApplication& app, const EnrichedInfrastructure& infra) {
          std::vector<CandidateConstraint> out;
          for (const auto& [key, profile] : app.link_energy) {
            const auto& [source, flavour, destination] = key;
            if (source == destination) continue;
            // Profiles may cover ids from superseded application versions;
            // only declared entities yield constraints.
            const Service* src = app.app.find_service(source);
            if (!src || !src->find_flavour(flavour) ||
                !app.app.find_service(destination))
              continue;
            auto em = affinity_impact(app, source, flavour, destination, infra);
            if (!em) continue;
            out.push_back({kAffinity, source, flavour, destination, *em});
          }
          return out;
        },
        [](const Constraint& c) {
          return "the traffic from '" + c.service + "' ('" + c.flavour +
                 "') to '" + c.target +
                 "' is energy-expensive when it crosses nodes; co-locating the two "
                 "services removes that cost";
        }});
    return lib;
  }

private:
  std::map<std::string, ConstraintKind> kinds_;
};

// Evaluates every registered kind, pools the impact distribution, and emits
// one constraint per combination whose impact strictly exceeds tau. Fresh
// constraints carry em = impact and mu = 1.
inline std::vector<Constraint> generate(const EnrichedApplication& app,
                                        const EnrichedInfrastructure& infra,
                                        const GeneratorConfig& config,
                                        const ConstraintLibrary& library,
                                        Timestamp now) {
  std::vector<CandidateConstraint> candidates;
  for (const auto& [_, kind] : library.kinds()) {
    auto batch = kind.evaluate(app, infra);
    candidates.insert(candidates.end(), batch.begin(), batch.end());
  }
  if (candidates.empty())
    throw PipelineError("no profiled services or communications: nothing to generate");

  std::vector<double> impacts;
  impacts.reserve(candidates.size());
  for (const auto& c : candidates) impacts.push_back(c.em);
  const double tau = compute_threshold(std::move(impacts), config.alpha);

  std::vector<Constraint> out;
  for (const auto& c : candidates) {
    if (!(c.em > tau)) continue;
    Constraint k;
    k.kind = c.kind;
    k.service = c.service;
    k.flavour = c.flavour;
    k.target = c.target;
    k.em = c.em;
    k.mu = 1.0;
    k.generated_at = now;
    out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end(), [](const Constraint& a, const Constraint& b) {
    if (a.em != b.em) return a.em > b.em;
    return a.identity() < b.identity();
  });
  return out;
}

}  // namespace greencg
