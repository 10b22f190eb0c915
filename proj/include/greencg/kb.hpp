#pragma once

// Persistent knowledge base: service knowledge (SK), interaction knowledge
// (IK), node knowledge (NK) and constraint knowledge (CK). Observations merge
// in with monotone extremes and sample-count-weighted averages; constraints
// that stop being regenerated lose memory weight geometrically until they are
// dropped. Persisted as a directory of JSON files.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "greencg/engine.hpp"
#include "greencg/errors.hpp"
#include "greencg/estimation.hpp"
#include "greencg/time.hpp"

namespace greencg {

struct KbConfig {
  double decay_delta = 0.8;  // mu multiplier per iteration a constraint is absent
  double mu_drop = 0.4;      // entries below this memory weight are forgotten
};

// Aggregated statistics for one SK/IK key (kWh) or NK node (gCO2eq/kWh).
// `samples` weights future average merges; it is persisted alongside.
struct KbStats {
  double max = 0.0;
  double min = 0.0;
  double avg = 0.0;
  std::uint64_t samples = 0;
  Timestamp updated_at{};

  bool operator==(const KbStats&) const = default;
};

struct KbConstraint {
  double em = 0.0;
  double mu = 1.0;
  Timestamp updated_at{};

  bool operator==(const KbConstraint&) const = default;
};

struct KnowledgeBase {
  std::map<ProfileKey, KbStats> sk;
  std::map<LinkKey, KbStats> ik;
  std::map<NodeId, KbStats> nk;
  std::map<Constraint::Identity, KbConstraint> ck;
  std::uint64_t iteration = 0;

  bool operator==(const KnowledgeBase&) const = default;
};

namespace detail {

inline void merge_stats(KbStats& entry, double new_max, double new_min, double new_avg,
                        std::uint64_t new_samples, Timestamp now) {
  if (entry.samples == 0) {
    entry.max = new_max;
    entry.min = new_min;
    entry.avg = new_avg;
    entry.samples = new_samples;
  } else {
    entry.max = std::max(entry.max, new_max);
    entry.min = std::min(entry.min, new_min);
    const double total =
        static_cast<double>(entry.samples) + static_cast<double>(new_samples);
    entry.avg = (entry.avg * static_cast<double>(entry.samples) +
                 new_avg * static_cast<double>(new_samples)) /
                total;
    entry.samples += new_samples;
  }
  entry.updated_at = std::max(entry.updated_at, now);
}

}  // namespace detail

inline void merge_observations(KnowledgeBase& kb, const ProfileSet& profiles,
                               const std::map<NodeId, CarbonProfile>& carbon,
                               Timestamp now) {
  for (const auto& [key, p] : profiles.computation)
    detail::merge_stats(kb.sk[key], p.max, p.min, p.avg, p.samples, now);
  for (const auto& [key, p] : profiles.communication)
    detail::merge_stats(kb.ik[key], p.max, p.min, p.avg, p.samples, now);
  for (const auto& [node, p] : carbon)
    detail::merge_stats(kb.nk[node], p.max, p.min, p.avg, p.samples, now);
}

// Fresh constraints reset to mu = 1 and overwrite the stored impact (latest
// estimate wins). Everything not regenerated decays; entries falling under
// mu_drop are deleted. Counts as one iteration.
inline void upsert_constraints(KnowledgeBase& kb, const std::vector<Constraint>& fresh,
                               const KbConfig& config, Timestamp now) {
  std::map<Constraint::Identity, const Constraint*> fresh_by_id;
  for (const auto& c : fresh) fresh_by_id[c.identity()] = &c;

  for (auto it = kb.ck.begin(); it != kb.ck.end();) {
    if (fresh_by_id.count(it->first)) {
      ++it;
      continue;
    }
    it->second.mu *= config.decay_delta;
    if (it->second.mu < config.mu_drop) {
      it = kb.ck.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& [id, c] : fresh_by_id) {
    KbConstraint& entry = kb.ck[id];
    entry.em = c->em;
    entry.mu = 1.0;
    entry.updated_at = std::max(entry.updated_at, now);
  }
  ++kb.iteration;
}

// Materialises every still-valid CK entry as a constraint carrying its stored
// impact and memory weight.
inline std::vector<Constraint> valid_constraints(const KnowledgeBase& kb,
                                                 const KbConfig& config) {
  std::vector<Constraint> out;
  for (const auto& [id, entry] : kb.ck) {
    if (entry.mu < config.mu_drop) continue;
    Constraint c;
    std::tie(c.kind, c.service, c.flavour, c.target) = id;
    c.em = entry.em;
    c.mu = entry.mu;
    c.generated_at = entry.updated_at;
    out.push_back(std::move(c));
  }
  return out;
}

namespace detail {

inline nlohmann::json stats_to_json(const KbStats& s) {
  return {{"max", s.max},
          {"min", s.min},
          {"avg", s.avg},
          {"samples", s.samples},
          {"updated_at", format_rfc3339(s.updated_at)}};
}

inline KbStats stats_from_json(const nlohmann::json& j) {
  KbStats s;
  s.max = j.at("max").get<double>();
  s.min = j.at("min").get<double>();
  s.avg = j.at("avg").get<double>();
  s.samples = j.at("samples").get<std::uint64_t>();
  s.updated_at = parse_rfc3339(j.at("updated_at").get<std::string>());
  return s;
}

inline void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw PipelineError("cannot write file: " + path.string());
  out << j.dump(2) << '\n';
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("corrupt knowledge base file " + path.string() + ": " +
                          e.what());
  }
}

}  // namespace detail

inline constexpr const char* kKbFormatTag = "greencg-kb/1";

inline void persist(const KnowledgeBase& kb, const std::filesystem::path& dir,
                    const KbConfig& config = {}) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  nlohmann::json sk = nlohmann::json::array();
  for (const auto& [key, s] : kb.sk) {
    auto j = detail::stats_to_json(s);
    j["service"] = key.first;
    j["flavour"] = key.second;
    sk.push_back(std::move(j));
  }
  nlohmann::json ik = nlohmann::json::array();
  for (const auto& [key, s] : kb.ik) {
    auto j = detail::stats_to_json(s);
    j["service"] = std::get<0>(key);
    j["flavour"] = std::get<1>(key);
    j["destination"] = std::get<2>(key);
    ik.push_back(std::move(j));
  }
  nlohmann::json nk = nlohmann::json::array();
  for (const auto& [node, s] : kb.nk) {
    auto j = detail::stats_to_json(s);
    j["node"] = node;
    nk.push_back(std::move(j));
  }
  nlohmann::json ck = nlohmann::json::array();
  for (const auto& [id, entry] : kb.ck) {
    ck.push_back({{"kind", std::get<0>(id)},
                  {"service", std::get<1>(id)},
                  {"flavour", std::get<2>(id)},
                  {"target", std::get<3>(id)},
                  {"em", entry.em},
                  {"mu", entry.mu},
                  {"updated_at", format_rfc3339(entry.updated_at)}});
  }
  nlohmann::json meta{{"format", kKbFormatTag},
                      {"iteration", kb.iteration},
                      {"config",
                       {{"decay_delta", config.decay_delta},
                        {"mu_drop", config.mu_drop}}}};

  detail::write_json_file(dir / "sk.json", sk);
  detail::write_json_file(dir / "ik.json", ik);
  detail::write_json_file(dir / "nk.json", nk);
  detail::write_json_file(dir / "ck.json", ck);
  detail::write_json_file(dir / "meta.json", meta);
}

// A missing directory is a first run and loads as an empty knowledge base.
inline KnowledgeBase load_kb(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  KnowledgeBase kb;
  if (!fs::exists(dir)) return kb;

  try {
    if (fs::exists(dir / "sk.json")) {
      for (const auto& j : detail::read_json_file(dir / "sk.json"))
        kb.sk[{j.at("service").get<std::string>(), j.at("flavour").get<std::string>()}] =
            detail::stats_from_json(j);
    }
    if (fs::exists(dir / "ik.json")) {
      for (const auto& j : detail::read_json_file(dir / "ik.json"))
        kb.ik[{j.at("service").get<std::string>(), j.at("flavour").get<std::string>(),
               j.at("destination").get<std::string>()}] = detail::stats_from_json(j);
    }
    if (fs::exists(dir / "nk.json")) {
      for (const auto& j : detail::read_json_file(dir / "nk.json"))
        kb.nk[j.at("node").get<std::string>()] = detail::stats_from_json(j);
    }
    if (fs::exists(dir / "ck.json")) {
      for (const auto& j : detail::read_json_file(dir / "ck.json")) {
        Constraint::Identity id{
            j.at("kind").get<std::string>(), j.at("service").get<std::string>(),
            j.at("flavour").get<std::string>(), j.at("target").get<std::string>()};
        KbConstraint entry;
        entry.em = j.at("em").get<double>();
        entry.mu = j.at("mu").get<double>();
        entry.updated_at = parse_rfc3339(j.at("updated_at").get<std::string>());
        kb.ck[id] = entry;
      }
    }
    if (fs::exists(dir / "meta.json")) {
      const auto meta = detail::read_json_file(dir / "meta.json");
      kb.iteration = meta.at("iteration").get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("corrupt knowledge base in " + dir.string() + ": " + e.what());
  }
  return kb;
}

}  // namespace greencg
