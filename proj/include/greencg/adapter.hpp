#pragma once

// Scheduler-facing serialisation of ranked constraints: Prolog facts and a
// structured JSON export. Both carry exactly the ranker's ordering and
// weights.

#include <cctype>
#include <cstdio>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "greencg/errors.hpp"
#include "greencg/explain.hpp"
#include "greencg/model.hpp"

namespace greencg {

// Prolog atoms: lower-case, anything non-alphanumeric becomes '_'.
// Idempotent.
inline std::string sanitise_atom(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const unsigned char c : s)
    out += std::isalnum(c) ? static_cast<char>(std::tolower(c)) : '_';
  return out;
}

// Up to three decimals with trailing zeros trimmed, always keeping one
// decimal digit: 1 -> "1.0", 0.6360 -> "0.636", 0.5 -> "0.5".
inline std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", w);
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

// One fact per line:
//   avoidNode(d(service,flavour),node,weight).
//   affinity(d(service,flavour),d(peer,_),weight).
// The affinity peer flavour is always the anonymous variable: the
// recommendation holds whatever flavour the peer runs in.
inline std::string to_prolog(const std::vector<Constraint>& ranked) {
  std::string out;
  for (const auto& c : ranked) {
    if (!c.weight)
      throw PipelineError("constraint without a weight cannot be exported: " + c.kind +
                          "(" + c.service + "/" + c.flavour + " -> " + c.target + ")");
    out += c.kind + "(d(" + sanitise_atom(c.service) + "," + sanitise_atom(c.flavour) + "),";
    if (c.kind == kAffinity)
      out += "d(" + sanitise_atom(c.target) + ",_),";
    else
      out += sanitise_atom(c.target) + ",";
    out += format_weight(*c.weight) + ").\n";
  }
  return out;
}

struct ParsedFact {
  std::string kind;
  std::string service;
  std::string flavour;
  std::string target;
  double weight = 0.0;

  bool operator==(const ParsedFact&) const = default;
};

// Grammar for the two fact shapes emitted above; used for round-trip checks
// and by the scenario runner.
inline std::vector<ParsedFact> parse_prolog(const std::string& text) {
  static const std::regex avoid_re(
      R"(^\s*(\w+)\(d\((\w+),(\w+)\),(\w+),([0-9.]+)\)\.\s*$)");
  static const std::regex affinity_re(
      R"(^\s*(\w+)\(d\((\w+),(\w+)\),d\((\w+),_\),([0-9.]+)\)\.\s*$)");

  std::vector<ParsedFact> out;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const std::string line =
        text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    start = end == std::string::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::smatch m;
    if (std::regex_match(line, m, affinity_re)) {
      out.push_back({m[1], m[2], m[3], m[4], std::stod(m[5])});
    } else if (std::regex_match(line, m, avoid_re)) {
      out.push_back({m[1], m[2], m[3], m[4], std::stod(m[5])});
    } else {
      throw ValidationError("unparseable constraint fact at line " +
                            std::to_string(line_no) + ": '" + line + "'");
    }
  }
  return out;
}

// Machine-readable export mirroring the Prolog facts, with impact, memory
// weight and the savings range attached.
inline nlohmann::json to_structured(
    const std::vector<Constraint>& ranked,
    const std::vector<std::optional<SavingsRange>>& ranges = {}) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const Constraint& c = ranked[i];
    if (!c.weight)
      throw PipelineError("constraint without a weight cannot be exported");
    nlohmann::json j{{"kind", c.kind},       {"service", c.service},
                     {"flavour", c.flavour}, {"target", c.target},
                     {"em", c.em},           {"weight", *c.weight},
                     {"mu", c.mu}};
    if (i < ranges.size() && ranges[i]) {
      j["savings_lower"] = ranges[i]->lower;
      j["savings_upper"] = ranges[i]->upper;
    } else {
      j["savings_lower"] = nullptr;
      j["savings_upper"] = nullptr;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

inline std::vector<Constraint> from_structured(const nlohmann::json& arr) {
  std::vector<Constraint> out;
  for (const auto& j : arr) {
    Constraint c;
    c.kind = j.at("kind").get<std::string>();
    c.service = j.at("service").get<std::string>();
    c.flavour = j.at("flavour").get<std::string>();
    c.target = j.at("target").get<std::string>();
    c.em = j.at("em").get<double>();
    c.weight = j.at("weight").get<double>();
    c.mu = j.at("mu").get<double>();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace greencg
