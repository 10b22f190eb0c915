#pragma once

// Bundled demo scenarios. Each scenario ships a self-contained fixture set
// (application, infrastructure, metric files) plus the expected constraint
// weights; the runner materialises the fixtures, drives the regular pipeline
// on them, and diffs the emitted facts against the expectations. No run mode
// touches the network.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "greencg/adapter.hpp"
#include "greencg/pipeline.hpp"

namespace greencg {

struct GoldenFact {
  std::string kind;
  std::string service;
  std::string flavour;
  std::string target;
  double weight = 0.0;
};

struct ScenarioDefinition {
  std::string name;
  std::string title;
  std::string app_yaml;
  std::string infra_yaml;
  std::string energy_csv;
  std::string traffic_csv;
  std::string carbon_csv;
  std::vector<GoldenFact> golden;
  bool exact_set = false;  // the emitted fact set must equal the golden set
};

namespace fixtures {

inline constexpr double kGoldenTolerance = 0.005;

// Ten-service web shop demo: four services come in multiple flavours that
// trade resources and functionality for energy.
inline std::string boutique_app_yaml(bool frontend_v2) {
  std::string frontend_description =
      frontend_v2 ? "Web UI, v2 build rolled out this window; no monitoring "
                    "history accumulated yet"
                  : "Web UI serving the storefront";
  return std::string("name: onlineboutique\n") +
         "services:\n"
         "  - componentID: frontend\n"
         "    description: " + frontend_description + "\n"
         "    mustDeploy: true\n"
         "    placement: public\n"
         "    security: [ssl]\n"
         "    flavours:\n"
         "      - id: large\n"
         "        resources: {cpu: 1000, ram: 2048, storage: 4096}\n"
         "        qos: {availability: 0.999}\n"
         "      - id: medium\n"
         "        resources: {cpu: 750, ram: 1536, storage: 4096}\n"
         "        qos: {availability: 0.995}\n"
         "      - id: tiny\n"
         "        resources: {cpu: 500, ram: 1024, storage: 2048}\n"
         "        qos: {availability: 0.99}\n"
         "    flavoursOrder: [large, medium, tiny]\n"
         "  - componentID: checkout\n"
         "    description: Order checkout workflow\n"
         "    mustDeploy: true\n"
         "    flavours:\n"
         "      - id: large\n"
         "        resources: {cpu: 500, ram: 1024}\n"
         "      - id: tiny\n"
         "        resources: {cpu: 250, ram: 512}\n"
         "    flavoursOrder: [large, tiny]\n"
         "  - componentID: recommendation\n"
         "    description: Product recommendations, optional\n"
         "    mustDeploy: false\n"
         "    flavours:\n"
         "      - id: large\n"
         "        resources: {cpu: 400, ram: 1024}\n"
         "      - id: tiny\n"
         "        resources: {cpu: 200, ram: 512}\n"
         "    flavoursOrder: [large, tiny]\n"
         "  - componentID: productcatalog\n"
         "    description: Catalog lookup and search\n"
         "    mustDeploy: true\n"
         "    flavours:\n"
         "      - id: large\n"
         "        resources: {cpu: 600, ram: 1024}\n"
         "      - id: tiny\n"
         "        resources: {cpu: 300, ram: 512}\n"
         "    flavoursOrder: [large, tiny]\n"
         "  - componentID: ad\n"
         "    description: Contextual ads, optional\n"
         "    mustDeploy: false\n"
         "    flavours:\n"
         "      - id: tiny\n"
         "        resources: {cpu: 200, ram: 256}\n"
         "    flavoursOrder: [tiny]\n"
         "  - componentID: cart\n"
         "    description: Shopping cart state\n"
         "    mustDeploy: true\n"
         "    flavours:\n"
         "      - id: tiny\n"
         "        resources: {cpu: 300, ram: 512}\n"
         "    flavoursOrder: [tiny]\n"
         "  - componentID: shipping\n"
         "    description: Shipping cost estimation\n"
         "    mustDeploy: true\n"
         "    flavours:\n"
         "      - id: tiny\n"
         "        resources: {cpu: 100, ram: 256}\n"
         "    flavoursOrder: [tiny]\n"
         "  - componentID: currency\n"
         "    description: Currency conversion\n"
         "    mustDeploy: true\n"
         "    flavours:\n"
         "      - id: tiny\n"
         "        resources: {cpu: 300, ram: 512}\n"
         "    flavoursOrder: [tiny]\n"
         "  - componentID: payment\n"
         "    description: Payment processing\n"
         "    mustDeploy: true\n"
         "    placement: private\n"
         "    security: [firewall, ssl, encryption]\n"
         "    flavours:\n"
         "      - id: tiny\n"
         "        resources: {cpu: 100, ram: 256}\n"
         "    flavoursOrder: [tiny]\n"
         "  - componentID: email\n"
         "    description: Order confirmation mail, optional\n"
         "    mustDeploy: false\n"
         "    flavours:\n"
         "      - id: tiny\n"
         "        resources: {cpu: 100, ram: 256}\n"
         "    flavoursOrder: [tiny]\n"
         "links:\n"
         "  - {source: frontend, sourceFlavour: large, destination: productcatalog, qos: {latency: 50, availability: 0.99}}\n"
         "  - {source: frontend, sourceFlavour: large, destination: recommendation, qos: {latency: 80, availability: 0.95}}\n"
         "  - {source: frontend, sourceFlavour: large, destination: cart, qos: {latency: 50, availability: 0.99}}\n"
         "  - {source: frontend, sourceFlavour: large, destination: currency, qos: {latency: 60, availability: 0.99}}\n"
         "  - {source: frontend, sourceFlavour: large, destination: checkout, qos: {latency: 100, availability: 0.99}}\n"
         "  - {source: checkout, sourceFlavour: large, destination: payment, qos: {latency: 150, availability: 0.999}}\n"
         "  - {source: checkout, sourceFlavour: large, destination: email, qos: {latency: 500, availability: 0.9}}\n";
}

// Note: the payment service is bound to a private subnet, so every fixture
// infrastructure needs at least one private node for it.
inline std::string eu_infra_yaml(bool france_override) {
  std::string france_profile =
      france_override ? "profile: {cost: 14, carbon: 376}" : "profile: {cost: 14}";
  return std::string("nodes:\n") +
         "  - id: france\n"
         "    capabilities: {cpu: 16000, ram: 65536, storage: 1048576, bandwidth_in: 1000, bandwidth_out: 1000, availability: 0.999, security: [firewall, ssl, encryption], subnet: private}\n"
         "    " + france_profile + "\n"
         "  - id: spain\n"
         "    capabilities: {cpu: 16000, ram: 65536, storage: 1048576, bandwidth_in: 1000, bandwidth_out: 1000, availability: 0.999, security: [firewall, ssl], subnet: public}\n"
         "    profile: {cost: 11}\n"
         "  - id: germany\n"
         "    capabilities: {cpu: 32000, ram: 131072, storage: 2097152, bandwidth_in: 2000, bandwidth_out: 2000, availability: 0.9995, security: [firewall, ssl, encryption], subnet: public}\n"
         "    profile: {cost: 16}\n"
         "  - id: greatbritain\n"
         "    capabilities: {cpu: 16000, ram: 65536, storage: 1048576, bandwidth_in: 1000, bandwidth_out: 1000, availability: 0.999, security: [firewall, ssl], subnet: public}\n"
         "    profile: {cost: 13}\n"
         "  - id: italy\n"
         "    capabilities: {cpu: 16000, ram: 65536, storage: 1048576, bandwidth_in: 1000, bandwidth_out: 1000, availability: 0.999, security: [firewall, ssl], subnet: public}\n"
         "    profile: {cost: 9}\n";
}

inline std::string us_infra_yaml() {
  auto node = [](const char* id, const char* subnet, int cost) {
    return std::string("  - id: ") + id + "\n" +
           "    capabilities: {cpu: 16000, ram: 65536, storage: 1048576, bandwidth_in: 1000, bandwidth_out: 1000, availability: 0.999, security: [firewall, ssl, encryption], subnet: " +
           subnet + "}\n" + "    profile: {cost: " + std::to_string(cost) + "}\n";
  };
  return "nodes:\n" + node("washington", "private", 15) + node("california", "public", 17) +
         node("texas", "public", 12) + node("florida", "public", 10) +
         node("newyork", "public", 18) + node("arizona", "public", 11);
}

struct EnergyRow {
  const char* service;
  const char* flavour;
  const char* kwh;
};

struct TrafficRow {
  const char* source;
  const char* flavour;
  const char* destination;
  const char* volume_per_hour;
  const char* size_gb;
};

struct CarbonRow {
  const char* node;
  const char* ci;
};

inline std::string hourly_timestamp(int hour) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "2025-03-01T%02d:00:00Z", hour);
  return buf;
}

inline std::string energy_csv(const std::vector<EnergyRow>& rows) {
  std::string out = std::string(kEnergyCsvHeader) + "\n";
  for (int hour = 0; hour < 24; ++hour)
    for (const auto& r : rows)
      out += std::string(r.service) + "," + r.flavour + "," + hourly_timestamp(hour) +
             "," + r.kwh + "\n";
  return out;
}

inline std::string traffic_csv(const std::vector<TrafficRow>& rows) {
  std::string out = std::string(kTrafficCsvHeader) + "\n";
  for (int hour = 0; hour < 24; ++hour)
    for (const auto& r : rows)
      out += std::string(r.source) + "," + r.flavour + "," + r.destination + "," +
             hourly_timestamp(hour) + "," + r.volume_per_hour + "," + r.size_gb + "\n";
  return out;
}

inline std::string carbon_csv(const std::vector<CarbonRow>& rows) {
  std::string out = std::string(kCarbonCsvHeader) + "\n";
  for (int hour = 0; hour < 24; ++hour)
    for (const auto& r : rows)
      out += std::string(r.node) + "," + hourly_timestamp(hour) + "," + r.ci + "\n";
  return out;
}

// Monitored consumption per (service, flavour), kWh per hourly interval.
inline std::vector<EnergyRow> baseline_energy_rows() {
  return {{"frontend", "large", "1981.6"}, {"frontend", "medium", "1585"},
          {"frontend", "tiny", "1189"},    {"checkout", "large", "134"},
          {"checkout", "tiny", "107"},     {"recommendation", "large", "539"},
          {"recommendation", "tiny", "431"}, {"productcatalog", "large", "884.5"},
          {"productcatalog", "tiny", "791"}, {"ad", "tiny", "251"},
          {"cart", "tiny", "546"},         {"shipping", "tiny", "98"},
          {"currency", "tiny", "881"},     {"payment", "tiny", "34"},
          {"email", "tiny", "50"}};
}

// The service-update window: only the catalog and currency services kept
// their monitoring history; the new frontend build has none yet.
inline std::vector<EnergyRow> service_update_energy_rows() {
  return {{"productcatalog", "large", "989"}, {"currency", "tiny", "881"}};
}

// With k = 0.002 kWh/GB these yield hourly communication energies of
// 42.336, 8.468, 12.702 and 29.636 kWh.
inline std::vector<TrafficRow> baseline_traffic_rows() {
  return {{"frontend", "large", "productcatalog", "21168", "1.0"},
          {"frontend", "large", "recommendation", "4234", "1.0"},
          {"frontend", "large", "cart", "6351", "1.0"},
          {"frontend", "large", "currency", "14818", "1.0"}};
}

// Traffic surge: the catalog and currency exchanges carry streaming-scale
// volume (2421.6 and 1613.0 kWh per interval).
inline std::vector<TrafficRow> surge_traffic_rows() {
  return {{"frontend", "large", "productcatalog", "1210800", "1.0"},
          {"frontend", "large", "recommendation", "4234", "1.0"},
          {"frontend", "large", "cart", "6351", "1.0"},
          {"frontend", "large", "currency", "806500", "1.0"}};
}

inline std::vector<CarbonRow> eu_carbon_rows() {
  return {{"france", "16"},
          {"spain", "88"},
          {"germany", "132"},
          {"greatbritain", "213"},
          {"italy", "335"}};
}

inline std::vector<CarbonRow> us_carbon_rows() {
  return {{"washington", "244"}, {"california", "235"}, {"texas", "231"},
          {"florida", "570"},    {"newyork", "236"},    {"arizona", "229"}};
}

}  // namespace fixtures

inline std::vector<std::string> scenario_names() {
  return {"s1", "s2", "s3", "s4", "s5"};
}

inline ScenarioDefinition scenario_definition(const std::string& name) {
  using namespace fixtures;
  ScenarioDefinition def;
  def.name = name;
  if (name == "s1") {
    def.title = "baseline: boutique on the EU infrastructure";
    def.app_yaml = boutique_app_yaml(false);
    def.infra_yaml = eu_infra_yaml(false);
    def.energy_csv = energy_csv(baseline_energy_rows());
    def.traffic_csv = traffic_csv(baseline_traffic_rows());
    def.carbon_csv = carbon_csv(eu_carbon_rows());
    def.golden = {{kAvoidNode, "frontend", "large", "greatbritain", 0.636},
                  {kAvoidNode, "frontend", "large", "italy", 1.0},
                  {kAvoidNode, "productcatalog", "large", "italy", 0.446}};
  } else if (name == "s2") {
    def.title = "infrastructure change: boutique on the US infrastructure";
    def.app_yaml = boutique_app_yaml(false);
    def.infra_yaml = us_infra_yaml();
    def.energy_csv = energy_csv(baseline_energy_rows());
    def.traffic_csv = traffic_csv(baseline_traffic_rows());
    def.carbon_csv = carbon_csv(us_carbon_rows());
    def.golden = {{kAvoidNode, "frontend", "large", "washington", 0.428},
                  {kAvoidNode, "frontend", "large", "california", 0.412},
                  {kAvoidNode, "frontend", "large", "florida", 1.0},
                  {kAvoidNode, "frontend", "large", "newyork", 0.414},
                  {kAvoidNode, "productcatalog", "large", "florida", 0.446}};
  } else if (name == "s3") {
    def.title = "carbon degradation: the france node loses its clean supply";
    def.app_yaml = boutique_app_yaml(false);
    def.infra_yaml = eu_infra_yaml(true);  // operator override: carbon 376
    def.energy_csv = energy_csv(baseline_energy_rows());
    def.traffic_csv = traffic_csv(baseline_traffic_rows());
    def.carbon_csv = carbon_csv(eu_carbon_rows());
    def.golden = {{kAvoidNode, "frontend", "large", "france", 1.0},
                  {kAvoidNode, "frontend", "large", "greatbritain", 0.566},
                  {kAvoidNode, "frontend", "large", "italy", 0.891},
                  {kAvoidNode, "productcatalog", "large", "france", 0.446}};
  } else if (name == "s4") {
    def.title = "application update: an efficient frontend build ships";
    def.app_yaml = boutique_app_yaml(true);
    def.infra_yaml = eu_infra_yaml(false);
    def.energy_csv = energy_csv(service_update_energy_rows());
    def.traffic_csv = traffic_csv(baseline_traffic_rows());
    def.carbon_csv = carbon_csv(eu_carbon_rows());
    def.golden = {{kAvoidNode, "productcatalog", "large", "italy", 1.0},
                  {kAvoidNode, "currency", "tiny", "italy", 0.89}};
    def.exact_set = true;
  } else if (name == "s5") {
    def.title = "traffic surge: streaming-scale data exchange";
    def.app_yaml = boutique_app_yaml(false);
    def.infra_yaml = eu_infra_yaml(false);
    def.energy_csv = energy_csv(baseline_energy_rows());
    def.traffic_csv = traffic_csv(surge_traffic_rows());
    def.carbon_csv = carbon_csv(eu_carbon_rows());
    def.golden = {{kAffinity, "frontend", "large", "productcatalog", 0.572},
                  {kAffinity, "frontend", "large", "currency", 0.381},
                  {kAvoidNode, "frontend", "large", "greatbritain", 0.636},
                  {kAvoidNode, "frontend", "large", "italy", 1.0},
                  {kAvoidNode, "productcatalog", "large", "italy", 0.446}};
  } else {
    throw ValidationError("unknown scenario '" + name + "' (expected s1..s5)");
  }
  return def;
}

struct ScenarioCheck {
  std::string line;
  bool ok = false;
};

struct ScenarioOutcome {
  std::string name;
  std::string title;
  bool passed = false;
  double wall_ms = 0.0;
  std::vector<ScenarioCheck> checks;
  RunResult run;
  std::filesystem::path fixture_dir;
};

// Materialises the scenario fixtures under workdir, runs the pipeline on them
// with a fresh knowledge base, and diffs constraints.pl against the golden
// weights.
inline ScenarioOutcome run_scenario(const std::string& name,
                                    const std::filesystem::path& workdir,
                                    Config config = {}) {
  namespace fs = std::filesystem;
  config.output_format = OutputFormat::Both;  // the diff below reads the facts back
  const ScenarioDefinition def = scenario_definition(name);

  const fs::path fixture_dir = workdir / "fixtures" / def.name;
  fs::create_directories(fixture_dir);
  detail::write_text_file(fixture_dir / "application.yaml", def.app_yaml);
  detail::write_text_file(fixture_dir / "infrastructure.yaml", def.infra_yaml);
  detail::write_text_file(fixture_dir / "energy.csv", def.energy_csv);
  detail::write_text_file(fixture_dir / "traffic.csv", def.traffic_csv);
  detail::write_text_file(fixture_dir / "carbon.csv", def.carbon_csv);

  RunManifest manifest;
  manifest.app_path = fixture_dir / "application.yaml";
  manifest.infra_path = fixture_dir / "infrastructure.yaml";
  manifest.energy_path = fixture_dir / "energy.csv";
  manifest.traffic_path = fixture_dir / "traffic.csv";
  manifest.carbon_path = fixture_dir / "carbon.csv";
  manifest.kb_dir = workdir / "kb" / def.name;
  manifest.out_dir = workdir / def.name;
  manifest.config = config;
  fs::remove_all(manifest.kb_dir);  // replays start from a clean knowledge base

  ScenarioOutcome outcome;
  outcome.name = def.name;
  outcome.title = def.title;
  outcome.fixture_dir = fixture_dir;

  const auto started = std::chrono::steady_clock::now();
  outcome.run = run_generate(manifest);
  outcome.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - started)
                        .count();

  std::ifstream in(outcome.run.prolog_path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const std::vector<ParsedFact> facts = parse_prolog(text);

  outcome.passed = true;
  for (const auto& g : def.golden) {
    const ParsedFact* found = nullptr;
    for (const auto& f : facts) {
      if (f.kind == g.kind && f.service == sanitise_atom(g.service) &&
          f.flavour == sanitise_atom(g.flavour) && f.target == sanitise_atom(g.target)) {
        found = &f;
        break;
      }
    }
    ScenarioCheck check;
    const std::string label = g.kind + "(" + g.service + "/" + g.flavour + " -> " +
                              g.target + ")";
    if (!found) {
      check.ok = false;
      check.line = label + ": missing (expected weight " + format_weight(g.weight) + ")";
    } else {
      check.ok = std::abs(found->weight - g.weight) <= fixtures::kGoldenTolerance;
      check.line = label + ": weight " + format_weight(found->weight) + " vs expected " +
                   format_weight(g.weight) + (check.ok ? "" : " (out of tolerance)");
    }
    outcome.passed = outcome.passed && check.ok;
    outcome.checks.push_back(std::move(check));
  }
  if (def.exact_set) {
    ScenarioCheck check;
    check.ok = facts.size() == def.golden.size();
    check.line = "exact constraint set: " + std::to_string(facts.size()) +
                 " facts emitted, " + std::to_string(def.golden.size()) + " expected";
    outcome.passed = outcome.passed && check.ok;
    outcome.checks.push_back(std::move(check));
  }
  return outcome;
}

}  // namespace greencg
