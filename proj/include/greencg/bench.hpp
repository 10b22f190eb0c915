#pragma once

// Scalability and threshold benchmark: synthesises seeded, realistically
// distributed profiles for |S| services on |N| nodes, runs constraint
// generation, and records wall time plus constraint counts across quantile
// levels. Fully deterministic for a given seed.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "greencg/engine.hpp"
#include "greencg/estimation.hpp"

namespace greencg {

namespace detail {

// mt19937_64 output mapped to [0,1); identical on every platform, unlike the
// standard distributions.
struct UniformSource {
  std::mt19937_64 rng;
  explicit UniformSource(std::uint64_t seed) : rng(seed) {}
  double next() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + next() * (hi - lo); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(next() * static_cast<double>(n));
  }
};

inline std::string padded_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, i);
  return buf;
}

}  // namespace detail

struct SyntheticInstance {
  EnrichedApplication app;
  EnrichedInfrastructure infra;
  std::size_t flavour_count = 0;
};

// Energies span 10..2000 kWh log-uniformly and carbon intensities 16..600
// gCO2eq/kWh uniformly, i.e. the ranges seen across real regional grids and
// service footprints. Roughly a third of the services get a monitored link to
// their predecessor.
inline SyntheticInstance synthesize_instance(std::size_t services, std::size_t nodes,
                                             std::uint64_t seed) {
  detail::UniformSource random(seed ^ (0x9e3779b97f4a7c15ULL * (services * 1024 + nodes + 1)));
  SyntheticInstance inst;
  inst.app.app.name = "synthetic";

  for (std::size_t i = 0; i < services; ++i) {
    Service s;
    s.component_id = detail::padded_id("svc", i);
    const std::size_t flavour_count = 1 + random.index(3);
    for (std::size_t f = 0; f < flavour_count; ++f) {
      Flavour fl;
      fl.id = "f" + std::to_string(f);
      fl.resources["cpu"] = 100.0 * static_cast<double>(f + 1);
      s.flavours.push_back(fl);
      s.flavours_order.push_back(fl.id);

      EnergyProfile p;
      p.avg = random.log_uniform(10.0, 2000.0);
      p.min = p.avg * 0.9;
      p.max = p.avg * 1.1;
      p.samples = 24;
      inst.app.flavour_energy[{s.component_id, fl.id}] =
          FlavourEnergy{p, ProfileOrigin::Measured};
      ++inst.flavour_count;
    }
    inst.app.app.services.push_back(std::move(s));
  }

  for (std::size_t i = 1; i < services; ++i) {
    if (random.next() >= 0.33) continue;
    const auto& src = inst.app.app.services[i];
    const auto& dst = inst.app.app.services[i - 1];
    CommunicationLink link;
    link.source = src.component_id;
    link.source_flavour = src.flavours.front().id;
    link.destination = dst.component_id;
    EnergyProfile p;
    p.avg = random.log_uniform(0.01, 100.0);
    p.min = p.avg;
    p.max = p.avg;
    p.samples = 24;
    inst.app.link_energy[{link.source, link.source_flavour, link.destination}] = p;
    inst.app.app.links.push_back(std::move(link));
  }

  for (std::size_t i = 0; i < nodes; ++i) {
    Node n;
    n.id = detail::padded_id("node", i);
    n.capabilities["cpu"] = 16000;
    CarbonProfile p;
    p.avg = random.uniform(16.0, 600.0);
    p.min = p.avg;
    p.max = p.avg;
    p.samples = 24;
    p.source = CarbonSource::Measured;
    n.carbon = p.avg;
    inst.infra.carbon[n.id] = p;
    inst.infra.infra.nodes.push_back(std::move(n));
  }
  return inst;
}

inline std::vector<double> default_bench_quantiles() {
  return {0.90, 0.85, 0.80, 0.75, 0.70, 0.65, 0.60, 0.55, 0.50};
}

struct BenchRow {
  std::size_t services = 0;
  std::size_t nodes = 0;
  std::size_t flavours = 0;
  std::size_t candidates = 0;
  double wall_ms = 0.0;
  std::vector<std::size_t> counts;  // one per quantile level
};

inline BenchRow bench_size(std::size_t services, std::size_t nodes, std::uint64_t seed,
                           const std::vector<double>& quantiles = default_bench_quantiles()) {
  BenchRow row;
  row.services = services;
  row.nodes = nodes;
  if (services == 0 || nodes == 0) {
    row.counts.assign(quantiles.size(), 0);
    return row;
  }
  const SyntheticInstance inst = synthesize_instance(services, nodes, seed);
  row.flavours = inst.flavour_count;

  const ConstraintLibrary library = ConstraintLibrary::standard();
  const auto started = std::chrono::steady_clock::now();
  std::vector<CandidateConstraint> candidates;
  for (const auto& [_, kind] : library.kinds()) {
    auto batch = kind.evaluate(inst.app, inst.infra);
    candidates.insert(candidates.end(), batch.begin(), batch.end());
  }
  std::vector<double> impacts;
  impacts.reserve(candidates.size());
  for (const auto& c : candidates) impacts.push_back(c.em);
  for (const double q : quantiles) {
    const double tau = compute_threshold(impacts, q);
    std::size_t count = 0;
    for (const double em : impacts)
      if (em > tau) ++count;
    row.counts.push_back(count);
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started)
                    .count();
  row.candidates = candidates.size();
  return row;
}

inline std::string render_bench_table(const std::vector<BenchRow>& rows,
                                      const std::vector<double>& quantiles =
                                          default_bench_quantiles()) {
  std::string out = "services  nodes  flavours  candidates  wall_ms";
  for (const double q : quantiles) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "  q%.2f", q);
    out += buf;
  }
  out += "\n";
  for (const auto& r : rows) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%8zu  %5zu  %8zu  %10zu  %7.1f", r.services,
                  r.nodes, r.flavours, r.candidates, r.wall_ms);
    out += buf;
    for (const std::size_t c : r.counts) {
      std::snprintf(buf, sizeof(buf), "  %5zu", c);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace greencg
