#pragma once

// End-to-end pipeline: gather carbon data, estimate energy, generate
// candidate constraints, fold observations and constraints into the knowledge
// base (exactly once per run), rank what is still valid, explain, and adapt
// for the scheduler.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "greencg/adapter.hpp"
#include "greencg/engine.hpp"
#include "greencg/errors.hpp"
#include "greencg/estimation.hpp"
#include "greencg/explain.hpp"
#include "greencg/ingest.hpp"
#include "greencg/kb.hpp"
#include "greencg/model.hpp"
#include "greencg/model_io.hpp"
#include "greencg/ranker.hpp"

namespace greencg {

enum class OutputFormat { Prolog, Structured, Both };

struct Config {
  EstimationConfig estimation;
  GeneratorConfig generator;
  KbConfig kb;
  RankerConfig ranker;
  OutputFormat output_format = OutputFormat::Both;
  ReportFormat report_format = ReportFormat::Markdown;
};

struct RunManifest {
  std::filesystem::path app_path;
  std::filesystem::path infra_path;
  std::optional<std::filesystem::path> energy_path;
  std::optional<std::filesystem::path> traffic_path;
  std::optional<std::filesystem::path> carbon_path;
  std::filesystem::path kb_dir = "kb";
  std::filesystem::path out_dir = "out";
  Config config;
};

struct RunResult {
  std::vector<Constraint> ranked;
  std::vector<std::optional<SavingsRange>> ranges;
  std::vector<std::string> warnings;
  std::filesystem::path prolog_path;
  std::filesystem::path structured_path;
  std::filesystem::path report_path;
  std::uint64_t kb_iteration = 0;
};

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw PipelineError("cannot write file: " + path.string());
  out << text;
}

}  // namespace detail

inline void validate_config(const Config& cfg) {
  std::string v;
  if (!(cfg.generator.alpha > 0 && cfg.generator.alpha < 1))
    v += "\n  - alpha must lie strictly between 0 and 1";
  if (cfg.estimation.k_kwh_per_gb < 0) v += "\n  - k_kwh_per_gb must be >= 0";
  if (cfg.estimation.carbon_window_hours <= 0)
    v += "\n  - carbon_window_hours must be positive";
  if (!(cfg.kb.decay_delta > 0 && cfg.kb.decay_delta <= 1))
    v += "\n  - decay_delta must lie in (0,1]";
  if (!(cfg.kb.mu_drop >= 0 && cfg.kb.mu_drop <= 1)) v += "\n  - mu_drop must lie in [0,1]";
  if (cfg.ranker.min_impact_f < 0) v += "\n  - min_impact_f must be >= 0";
  if (!(cfg.ranker.lambda_low > 0 && cfg.ranker.lambda_low <= 1))
    v += "\n  - lambda_low must lie in (0,1]";
  if (!(cfg.ranker.drop_weight >= 0 && cfg.ranker.drop_weight < 1))
    v += "\n  - drop_weight must lie in [0,1)";
  if (!v.empty()) throw ValidationError("invalid configuration:" + v);
}

inline RunResult run_generate(const RunManifest& manifest,
                              const ConstraintLibrary& library = ConstraintLibrary::standard(),
                              Timestamp now = now_utc()) {
  namespace fs = std::filesystem;
  const Config& cfg = manifest.config;
  validate_config(cfg);

  const ApplicationDescription app = load_application(manifest.app_path);
  const InfrastructureDescription infra = load_infrastructure(manifest.infra_path);
  {
    std::string failures;
    for (const auto& v : validate_application(app)) failures += "\n  - " + v;
    for (const auto& v : validate_infrastructure(infra)) failures += "\n  - " + v;
    if (!failures.empty())
      throw ValidationError("input validation failed:" + failures);
  }

  EnergySeries energy;
  if (manifest.energy_path) energy = load_energy_samples(*manifest.energy_path);
  TrafficSeries traffic;
  if (manifest.traffic_path) traffic = load_traffic_samples(*manifest.traffic_path);
  CarbonSeries carbon_samples;
  if (manifest.carbon_path) carbon_samples = load_carbon_samples(*manifest.carbon_path);

  RunResult result;
  result.warnings =
      unknown_id_warnings(app, infra, energy, traffic, carbon_samples);

  const auto window = std::chrono::seconds(
      static_cast<long long>(cfg.estimation.carbon_window_hours * 3600.0));
  const ProfileSet profiles =
      build_profiles(energy, traffic, cfg.estimation.k_kwh_per_gb);
  const auto carbon = build_carbon_profiles(infra, carbon_samples, window);

  auto [enriched_app, enriched_infra] = enrich(app, infra, profiles, carbon);

  // Constraint generation happens before any knowledge base mutation, so a
  // failed run never touches the store.
  const std::vector<Constraint> fresh =
      generate(enriched_app, enriched_infra, cfg.generator, library, now);

  KnowledgeBase kb = load_kb(manifest.kb_dir);
  merge_observations(kb, profiles, carbon, now);
  upsert_constraints(kb, fresh, cfg.kb, now);
  persist(kb, manifest.kb_dir, cfg.kb);
  result.kb_iteration = kb.iteration;

  result.ranked = rank(valid_constraints(kb, cfg.kb), cfg.ranker);
  result.ranges = compute_savings(result.ranked, enriched_app, enriched_infra);

  fs::create_directories(manifest.out_dir);
  if (cfg.output_format != OutputFormat::Structured) {
    result.prolog_path = manifest.out_dir / "constraints.pl";
    detail::write_text_file(result.prolog_path, to_prolog(result.ranked));
  }
  if (cfg.output_format != OutputFormat::Prolog) {
    result.structured_path = manifest.out_dir / "constraints.json";
    detail::write_text_file(result.structured_path,
                            to_structured(result.ranked, result.ranges).dump(2) + "\n");
  }
  const bool md = cfg.report_format == ReportFormat::Markdown;
  result.report_path = manifest.out_dir / (md ? "report.md" : "report.txt");
  detail::write_text_file(
      result.report_path,
      render_report(result.ranked, result.ranges, library, cfg.report_format));
  return result;
}

}  // namespace greencg
