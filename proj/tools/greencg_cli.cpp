// greencg CLI: derives carbon-aware placement constraints (node avoidance
// and service affinity) from monitoring and carbon-intensity data and writes
// scheduler-consumable constraint files plus a report explaining each
// recommendation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "greencg/greencg.hpp"

namespace {

using namespace greencg;

void add_config_options(CLI::App* cmd, Config& config) {
  cmd->add_option("--alpha", config.generator.alpha,
                  "Quantile level for the impact threshold tau (0,1)");
  cmd->add_option("--k-kwh-per-gb", config.estimation.k_kwh_per_gb,
                  "Transmission network electricity intensity (kWh/GB)");
  cmd->add_option("--carbon-window-hours", config.estimation.carbon_window_hours,
                  "Trailing window for carbon intensity averaging");
  cmd->add_option("--min-impact-f", config.ranker.min_impact_f,
                  "Minimum absolute impact (gCO2eq) before lambda attenuation");
  cmd->add_option("--decay-delta", config.kb.decay_delta,
                  "Memory weight multiplier per iteration a constraint is absent");
  cmd->add_option("--mu-drop", config.kb.mu_drop,
                  "Memory weight under which a stored constraint is forgotten");
  cmd->add_option("--drop-weight", config.ranker.drop_weight,
                  "Rank weight under which a constraint is discarded");
  cmd->add_option("--output-format", [&config](const std::vector<std::string>& vals) {
        const std::string& v = vals.front();
        if (v == "prolog") config.output_format = OutputFormat::Prolog;
        else if (v == "structured") config.output_format = OutputFormat::Structured;
        else if (v == "both") config.output_format = OutputFormat::Both;
        else return false;
        return true;
      },
      "Constraint files to write: prolog|structured|both");
  cmd->add_option("--report-format", [&config](const std::vector<std::string>& vals) {
        const std::string& v = vals.front();
        if (v == "text") config.report_format = ReportFormat::Text;
        else if (v == "md") config.report_format = ReportFormat::Markdown;
        else return false;
        return true;
      },
      "Explainability report format: text|md");
}

int do_generate(const RunManifest& manifest) {
  const RunResult result = run_generate(manifest);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << result.ranked.size() << " constraint(s) written\n";
  for (const auto& c : result.ranked)
    std::cout << "  " << c.kind << "(" << c.service << "/" << c.flavour << " -> "
              << c.target << ") weight " << format_weight(c.weight.value_or(0.0))
              << "\n";
  if (!result.prolog_path.empty())
    std::cout << "prolog:     " << result.prolog_path.string() << "\n";
  if (!result.structured_path.empty())
    std::cout << "structured: " << result.structured_path.string() << "\n";
  std::cout << "report:     " << result.report_path.string() << "\n";
  std::cout << "kb:         " << manifest.kb_dir.string() << " (iteration "
            << result.kb_iteration << ")\n";
  return 0;
}

int do_scenario(const std::string& name, const std::filesystem::path& out_dir,
                const Config& config) {
  std::vector<std::string> names;
  if (name == "all")
    names = scenario_names();
  else
    names.push_back(name);

  bool all_passed = true;
  for (const auto& n : names) {
    const ScenarioOutcome outcome = run_scenario(n, out_dir, config);
    std::cout << outcome.name << ": " << outcome.title << "\n";
    for (const auto& check : outcome.checks)
      std::cout << "  [" << (check.ok ? "ok" : "FAIL") << "] " << check.line << "\n";
    std::printf("  %s in %.1f ms, outputs under %s\n",
                outcome.passed ? "PASS" : "FAIL", outcome.wall_ms,
                (out_dir / outcome.name).string().c_str());
    all_passed = all_passed && outcome.passed;
  }
  return all_passed ? 0 : 2;
}

int do_kb_show(const std::filesystem::path& kb_dir) {
  const KnowledgeBase kb = load_kb(kb_dir);
  std::cout << "knowledge base at " << kb_dir.string() << "\n"
            << "  iteration: " << kb.iteration << "\n"
            << "  service knowledge (SK):     " << kb.sk.size() << " entr"
            << (kb.sk.size() == 1 ? "y" : "ies") << "\n"
            << "  interaction knowledge (IK): " << kb.ik.size() << "\n"
            << "  node knowledge (NK):        " << kb.nk.size() << "\n"
            << "  constraint knowledge (CK):  " << kb.ck.size() << "\n";
  for (const auto& [id, entry] : kb.ck) {
    const auto& [kind, service, flavour, target] = id;
    std::printf("    %s(%s/%s -> %s): em %.2f, mu %.4f, updated %s\n", kind.c_str(),
                service.c_str(), flavour.c_str(), target.c_str(), entry.em, entry.mu,
                format_rfc3339(entry.updated_at).c_str());
  }
  return 0;
}

int do_kb_reset(const std::filesystem::path& kb_dir) {
  namespace fs = std::filesystem;
  std::size_t removed = 0;
  for (const char* file : {"sk.json", "ik.json", "nk.json", "ck.json", "meta.json"}) {
    std::error_code ec;
    if (fs::remove(kb_dir / file, ec)) ++removed;
  }
  std::cout << "removed " << removed << " knowledge base file(s) from "
            << kb_dir.string() << "\n";
  return 0;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(const std::string& arg) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  while (start <= arg.size()) {
    const auto comma = arg.find(',', start);
    const std::string item =
        arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    start = comma == std::string::npos ? arg.size() + 1 : comma + 1;
    if (item.empty()) continue;
    const auto x = item.find('x');
    if (x == std::string::npos)
      throw ValidationError("bad --sizes entry '" + item + "': expected SERVICESxNODES");
    try {
      out.emplace_back(std::stoul(item.substr(0, x)), std::stoul(item.substr(x + 1)));
    } catch (const std::exception&) {
      throw ValidationError("bad --sizes entry '" + item + "': expected SERVICESxNODES");
    }
  }
  return out;
}

int do_bench(const std::string& sizes_arg, std::uint64_t seed) {
  const auto sizes = parse_sizes(sizes_arg);
  std::vector<BenchRow> rows;
  for (const auto& [services, nodes] : sizes)
    rows.push_back(bench_size(services, nodes, seed));
  std::cout << render_bench_table(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"carbon-aware deployment constraint generator"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::string scenario_name;
  std::filesystem::path scenario_out = "out";
  Config scenario_config;
  std::filesystem::path kb_dir = "kb";
  std::string sizes = "100x100";
  std::uint64_t seed = 42;

  CLI::App* generate = app.add_subcommand("generate", "Run the constraint pipeline");
  generate->add_option("--app", manifest.app_path, "Application description (YAML/JSON)")
      ->required();
  generate->add_option("--infra", manifest.infra_path, "Infrastructure description (YAML/JSON)")
      ->required();
  generate->add_option("--energy-metrics", manifest.energy_path,
                       "Per-service energy samples (CSV)");
  generate->add_option("--traffic-metrics", manifest.traffic_path,
                       "Inter-service traffic samples (CSV)");
  generate->add_option("--carbon", manifest.carbon_path,
                       "Per-node carbon intensity samples (CSV)");
  generate->add_option("--kb-dir", manifest.kb_dir, "Knowledge base directory");
  generate->add_option("--out-dir", manifest.out_dir, "Output directory");
  add_config_options(generate, manifest.config);

  CLI::App* scenario = app.add_subcommand("scenario", "Replay a bundled scenario");
  scenario->add_option("name", scenario_name, "s1..s5, or 'all'")->required();
  scenario->add_option("--out-dir", scenario_out, "Working/output directory");
  add_config_options(scenario, scenario_config);

  CLI::App* kb = app.add_subcommand("kb", "Inspect or reset the knowledge base");
  kb->require_subcommand(1);
  CLI::App* kb_show = kb->add_subcommand("show", "Print a knowledge base summary");
  kb_show->add_option("--kb-dir", kb_dir, "Knowledge base directory");
  CLI::App* kb_reset = kb->add_subcommand("reset", "Delete the stored knowledge base");
  kb_reset->add_option("--kb-dir", kb_dir, "Knowledge base directory");

  CLI::App* bench = app.add_subcommand("bench", "Run the scalability benchmark");
  bench->add_option("--sizes", sizes, "Comma-separated SERVICESxNODES list");
  bench->add_option("--seed", seed, "Seed for the synthetic profiles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (generate->parsed()) return do_generate(manifest);
    if (scenario->parsed()) return do_scenario(scenario_name, scenario_out, scenario_config);
    if (kb_show->parsed()) return do_kb_show(kb_dir);
    if (kb_reset->parsed()) return do_kb_reset(kb_dir);
    if (bench->parsed()) return do_bench(sizes, seed);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const PipelineError& e) {
    std::cerr << "pipeline error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
