#pragma once

// Energy estimation and energy-mix gathering: turns sample series into
// per-(service, flavour) and per-link energy profiles plus per-node carbon
// profiles, and enriches the application / infrastructure descriptions with
// them. All functions are pure over immutable inputs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "greencg/errors.hpp"
#include "greencg/ingest.hpp"
#include "greencg/model.hpp"

namespace greencg {

// avg/min/max consumption in kWh per observation interval over `samples`
// measurements. Profiles are hardware-agnostic: one distribution per key,
// independent of where the service actually ran.
struct EnergyProfile {
  double avg = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t samples = 0;

  bool operator==(const EnergyProfile&) const = default;
};

enum class CarbonSource { Measured, OperatorOverride, Inferred };

inline const char* to_string(CarbonSource s) {
  switch (s) {
    case CarbonSource::Measured: return "measured";
    case CarbonSource::OperatorOverride: return "operator_override";
    default: return "inferred";
  }
}

struct CarbonProfile {
  double avg = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::chrono::seconds window{0};
  CarbonSource source = CarbonSource::Measured;
  std::size_t samples = 0;

  bool operator==(const CarbonProfile&) const = default;
};

struct EstimationConfig {
  double k_kwh_per_gb = 0.002;     // transmission network electricity intensity
  double carbon_window_hours = 24; // trailing observation window for CI averaging
};

namespace detail {

// Summing in value order makes the statistics bitwise permutation-invariant.
inline EnergyProfile profile_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  EnergyProfile p;
  p.samples = values.size();
  p.min = values.front();
  p.max = values.back();
  double sum = 0.0;
  for (const double v : values) sum += v;
  p.avg = sum / static_cast<double>(p.samples);
  return p;
}

}  // namespace detail

inline EnergyProfile computation_profile(std::span<const EnergySample> series) {
  if (series.empty())
    throw PipelineError("computation profile requested for an empty sample series");
  std::vector<double> values;
  values.reserve(series.size());
  for (const auto& s : series) values.push_back(s.energy_kwh);
  return detail::profile_of(std::move(values));
}

// kWh consumed by the sample's traffic over its interval:
// requestVolume * requestSize * k.
inline double traffic_to_energy(const TrafficSample& sample, double k) {
  return sample.request_volume_per_hour * sample.request_size_gb * k;
}

inline EnergyProfile communication_profile(std::span<const TrafficSample> series,
                                           double k) {
  if (series.empty())
    throw PipelineError("communication profile requested for an empty sample series");
  std::vector<double> values;
  values.reserve(series.size());
  for (const auto& s : series) values.push_back(traffic_to_energy(s, k));
  return detail::profile_of(std::move(values));
}

// Average carbon intensity over the trailing window, anchored at the latest
// sample. An operator override wins unconditionally and is independent of the
// series.
inline CarbonProfile average_carbon(std::span<const CarbonSample> series,
                                    std::chrono::seconds window,
                                    std::optional<double> override_ci = std::nullopt) {
  CarbonProfile p;
  p.window = window;
  if (override_ci) {
    p.avg = p.min = p.max = *override_ci;
    p.source = CarbonSource::OperatorOverride;
    p.samples = 1;
    return p;
  }
  if (series.empty())
    throw PipelineError("no carbon samples in window and no operator override");
  Timestamp latest = series.front().t;
  for (const auto& s : series) latest = std::max(latest, s.t);
  const Timestamp from = latest - window;
  std::vector<double> values;
  for (const auto& s : series)
    if (s.t >= from) values.push_back(s.ci);
  if (values.empty())
    throw PipelineError("no carbon samples in window and no operator override");
  const EnergyProfile stats = detail::profile_of(std::move(values));
  p.avg = stats.avg;
  p.min = stats.min;
  p.max = stats.max;
  p.samples = stats.samples;
  p.source = CarbonSource::Measured;
  return p;
}

// Measured profiles derived from the loaded series.
struct ProfileSet {
  std::map<ProfileKey, EnergyProfile> computation;
  std::map<LinkKey, EnergyProfile> communication;
};

inline ProfileSet build_profiles(const EnergySeries& energy, const TrafficSeries& traffic,
                                 double k) {
  ProfileSet out;
  for (const auto& [key, samples] : energy)
    out.computation[key] = computation_profile(samples);
  for (const auto& [key, samples] : traffic)
    out.communication[key] = communication_profile(samples, k);
  return out;
}

// One carbon profile per declared node. A node with neither samples nor an
// operator-supplied carbon value cannot be scored.
inline std::map<NodeId, CarbonProfile> build_carbon_profiles(
    const InfrastructureDescription& infra, const CarbonSeries& series,
    std::chrono::seconds window) {
  std::map<NodeId, CarbonProfile> out;
  for (const auto& node : infra.nodes) {
    if (node.carbon) {
      out[node.id] = average_carbon({}, window, node.carbon);
      continue;
    }
    auto it = series.find(node.id);
    if (it == series.end() || it->second.empty())
      throw PipelineError("node '" + node.id +
                          "' has neither carbon samples nor an operator override");
    out[node.id] = average_carbon(it->second, window);
  }
  return out;
}

enum class ProfileOrigin { Measured, Inferred };

struct FlavourEnergy {
  EnergyProfile profile;
  ProfileOrigin origin = ProfileOrigin::Measured;

  bool operator==(const FlavourEnergy&) const = default;
};

struct EnrichedApplication {
  ApplicationDescription app;  // flavour/link energy fields filled in
  std::map<ProfileKey, FlavourEnergy> flavour_energy;
  std::map<LinkKey, EnergyProfile> link_energy;
  std::set<ServiceId> unprofiled_services;  // nothing observed for any flavour
};

struct EnrichedInfrastructure {
  InfrastructureDescription infra;  // node carbon fields filled in
  std::map<NodeId, CarbonProfile> carbon;

  double mean_carbon() const {
    double sum = 0.0;
    for (const auto& [_, p] : carbon) sum += p.avg;
    return carbon.empty() ? 0.0 : sum / static_cast<double>(carbon.size());
  }
};

namespace detail {

// A flavour that was never deployed has no measurements; estimate it from the
// observed sibling with the closest declared cpu requirement, scaled by the
// cpu ratio. Flavours without comparable cpu figures stay unannotated.
inline std::optional<EnergyProfile> infer_flavour_profile(
    const Service& service, const Flavour& flavour,
    const std::map<ProfileKey, EnergyProfile>& measured) {
  auto cpu_of = [](const Flavour& f) -> std::optional<double> {
    auto it = f.resources.find("cpu");
    if (it == f.resources.end() || it->second <= 0) return std::nullopt;
    return it->second;
  };
  const auto cpu = cpu_of(flavour);
  if (!cpu) return std::nullopt;

  const Flavour* nearest = nullptr;
  double nearest_cpu = 0.0;
  for (const auto& sibling : service.flavours) {
    if (sibling.id == flavour.id) continue;
    if (!measured.count({service.component_id, sibling.id})) continue;
    const auto sibling_cpu = cpu_of(sibling);
    if (!sibling_cpu) continue;
    if (!nearest || std::abs(*sibling_cpu - *cpu) < std::abs(nearest_cpu - *cpu)) {
      nearest = &sibling;
      nearest_cpu = *sibling_cpu;
    }
  }
  if (!nearest) return std::nullopt;

  const double ratio = *cpu / nearest_cpu;
  EnergyProfile base = measured.at({service.component_id, nearest->id});
  base.avg *= ratio;
  base.min *= ratio;
  base.max *= ratio;
  return base;
}

}  // namespace detail

// Associates energy profiles with flavours and links and carbon profiles with
// nodes. Services with no observed flavour are listed as unprofiled and take
// no part in constraint generation; their declared flavours keep whatever
// energy annotation the description already carried.
inline std::pair<EnrichedApplication, EnrichedInfrastructure> enrich(
    const ApplicationDescription& app, const InfrastructureDescription& infra,
    const ProfileSet& profiles, const std::map<NodeId, CarbonProfile>& carbon) {
  EnrichedApplication ea;
  ea.app = app;

  for (auto& service : ea.app.services) {
    bool any_measured = false;
    for (auto& flavour : service.flavours) {
      auto it = profiles.computation.find({service.component_id, flavour.id});
      if (it != profiles.computation.end()) {
        ea.flavour_energy[{service.component_id, flavour.id}] =
            FlavourEnergy{it->second, ProfileOrigin::Measured};
        flavour.energy = it->second.avg;
        any_measured = true;
      }
    }
    if (!any_measured) {
      ea.unprofiled_services.insert(service.component_id);
      continue;
    }
    for (auto& flavour : service.flavours) {
      if (ea.flavour_energy.count({service.component_id, flavour.id})) continue;
      auto inferred =
          detail::infer_flavour_profile(service, flavour, profiles.computation);
      if (inferred) {
        ea.flavour_energy[{service.component_id, flavour.id}] =
            FlavourEnergy{*inferred, ProfileOrigin::Inferred};
        flavour.energy = inferred->avg;
      }
    }
  }

  for (auto& link : ea.app.links) {
    auto it = profiles.communication.find(
        {link.source, link.source_flavour, link.destination});
    if (it != profiles.communication.end()) {
      ea.link_energy[{link.source, link.source_flavour, link.destination}] = it->second;
      link.energy = it->second.avg;
    }
  }
  // Keep profiles for links the current description no longer declares; the
  // knowledge base still wants them.
  for (const auto& [key, profile] : profiles.communication)
    ea.link_energy.emplace(key, profile);

  EnrichedInfrastructure ei;
  ei.infra = infra;
  ei.carbon = carbon;
  for (auto& node : ei.infra.nodes) {
    auto it = carbon.find(node.id);
    if (it == carbon.end())
      throw PipelineError("node '" + node.id + "' has no carbon profile");
    node.carbon = it->second.avg;
  }
  return {std::move(ea), std::move(ei)};
}

}  // namespace greencg
