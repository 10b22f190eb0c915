#pragma once

// File-based metric ingestion. Monitoring and carbon-intensity samples are
// read from CSV files with fixed headers and normalised into per-key series
// sorted by timestamp. Loading is pure given file contents and
// order-insensitive over rows.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "greencg/errors.hpp"
#include "greencg/model.hpp"
#include "greencg/time.hpp"

namespace greencg {

struct EnergySample {
  ServiceId service;
  FlavourId flavour;
  Timestamp t;
  double energy_kwh = 0.0;

  bool operator==(const EnergySample&) const = default;
};

struct TrafficSample {
  ServiceId source;
  FlavourId source_flavour;
  ServiceId destination;
  Timestamp t;
  double request_volume_per_hour = 0.0;
  double request_size_gb = 0.0;

  bool operator==(const TrafficSample&) const = default;
};

struct CarbonSample {
  NodeId node;
  Timestamp t;
  double ci = 0.0;  // gCO2eq/kWh

  bool operator==(const CarbonSample&) const = default;
};

using ProfileKey = std::pair<ServiceId, FlavourId>;
using LinkKey = std::tuple<ServiceId, FlavourId, ServiceId>;

using EnergySeries = std::map<ProfileKey, std::vector<EnergySample>>;
using TrafficSeries = std::map<LinkKey, std::vector<TrafficSample>>;
using CarbonSeries = std::map<NodeId, std::vector<CarbonSample>>;

inline constexpr const char* kEnergyCsvHeader = "service,flavour,timestamp,energy_kwh";
inline constexpr const char* kTrafficCsvHeader =
    "source,source_flavour,destination,timestamp,request_volume_per_hour,request_size_gb";
inline constexpr const char* kCarbonCsvHeader = "node,timestamp,ci_gco2_per_kwh";

namespace detail {

struct CsvReader {
  std::filesystem::path path;
  std::ifstream in;
  std::size_t line_no = 0;

  explicit CsvReader(const std::filesystem::path& p, const char* header) : path(p), in(p) {
    if (!in) throw ValidationError("cannot open file: " + p.string());
    std::string first;
    if (!std::getline(in, first)) return;  // empty file: no samples
    ++line_no;
    if (!first.empty() && first.back() == '\r') first.pop_back();
    if (first != header)
      throw ValidationError(where() + ": expected header '" + std::string(header) +
                            "', got '" + first + "'");
  }

  std::string where() const { return path.string() + ":" + std::to_string(line_no); }

  bool next(std::vector<std::string>& fields, std::size_t expected) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fields.clear();
      std::size_t start = 0;
      while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (fields.size() != expected)
        throw ValidationError(where() + ": expected " + std::to_string(expected) +
                              " fields, got " + std::to_string(fields.size()));
      return true;
    }
    return false;
  }

  double number(const std::string& field, const char* what) const {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
      throw ValidationError(where() + ": " + what + " is not a number: '" + field + "'");
    return v;
  }

  Timestamp time(const std::string& field) const {
    try {
      return parse_rfc3339(field);
    } catch (const ValidationError& e) {
      throw ValidationError(where() + ": " + e.what());
    }
  }

  std::string id(const std::string& field, const char* what) const {
    if (field.empty())
      throw ValidationError(where() + ": " + what + " is empty");
    return field;
  }
};

template <typename SeriesMap>
void sort_and_check(SeriesMap& series, const std::filesystem::path& path,
                    const std::map<typename SeriesMap::key_type,
                                   std::map<Timestamp, std::size_t>>& lines) {
  for (auto& [key, samples] : series) {
    std::stable_sort(samples.begin(), samples.end(),
                     [](const auto& a, const auto& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].t == samples[i - 1].t) {
        const auto& per_key = lines.at(key);
        throw ValidationError(path.string() + ":" +
                              std::to_string(per_key.at(samples[i].t)) +
                              ": duplicate timestamp for this series key");
      }
    }
  }
}

}  // namespace detail

inline EnergySeries load_energy_samples(const std::filesystem::path& path) {
  detail::CsvReader reader(path, kEnergyCsvHeader);
  EnergySeries series;
  std::map<ProfileKey, std::map<Timestamp, std::size_t>> lines;
  std::vector<std::string> f;
  while (reader.next(f, 4)) {
    EnergySample s;
    s.service = reader.id(f[0], "service");
    s.flavour = reader.id(f[1], "flavour");
    s.t = reader.time(f[2]);
    s.energy_kwh = reader.number(f[3], "energy_kwh");
    if (s.energy_kwh < 0)
      throw ValidationError(reader.where() + ": energy_kwh is negative");
    lines[{s.service, s.flavour}].emplace(s.t, reader.line_no);
    series[{s.service, s.flavour}].push_back(std::move(s));
  }
  detail::sort_and_check(series, path, lines);
  return series;
}

inline TrafficSeries load_traffic_samples(const std::filesystem::path& path) {
  detail::CsvReader reader(path, kTrafficCsvHeader);
  TrafficSeries series;
  std::map<LinkKey, std::map<Timestamp, std::size_t>> lines;
  std::vector<std::string> f;
  while (reader.next(f, 6)) {
    TrafficSample s;
    s.source = reader.id(f[0], "source");
    s.source_flavour = reader.id(f[1], "source_flavour");
    s.destination = reader.id(f[2], "destination");
    s.t = reader.time(f[3]);
    s.request_volume_per_hour = reader.number(f[4], "request_volume_per_hour");
    s.request_size_gb = reader.number(f[5], "request_size_gb");
    if (s.source == s.destination)
      throw ValidationError(reader.where() + ": source equals destination");
    if (s.request_volume_per_hour < 0)
      throw ValidationError(reader.where() + ": request_volume_per_hour is negative");
    if (s.request_size_gb < 0)
      throw ValidationError(reader.where() + ": request_size_gb is negative");
    LinkKey key{s.source, s.source_flavour, s.destination};
    lines[key].emplace(s.t, reader.line_no);
    series[key].push_back(std::move(s));
  }
  detail::sort_and_check(series, path, lines);
  return series;
}

inline CarbonSeries load_carbon_samples(const std::filesystem::path& path) {
  detail::CsvReader reader(path, kCarbonCsvHeader);
  CarbonSeries series;
  std::map<NodeId, std::map<Timestamp, std::size_t>> lines;
  std::vector<std::string> f;
  while (reader.next(f, 3)) {
    CarbonSample s;
    s.node = reader.id(f[0], "node");
    s.t = reader.time(f[1]);
    s.ci = reader.number(f[2], "ci_gco2_per_kwh");
    if (s.ci < 0)
      throw ValidationError(reader.where() + ": ci_gco2_per_kwh is negative");
    lines[s.node].emplace(s.t, reader.line_no);
    series[s.node].push_back(std::move(s));
  }
  detail::sort_and_check(series, path, lines);
  return series;
}

// Metric rows may cover ids the current application or infrastructure no
// longer declares (e.g. replays of superseded versions). Such rows are kept;
// this reports them so the operator can tell.
inline std::vector<std::string> unknown_id_warnings(
    const ApplicationDescription& app, const InfrastructureDescription& infra,
    const EnergySeries& energy, const TrafficSeries& traffic,
    const CarbonSeries& carbon) {
  std::vector<std::string> out;
  for (const auto& [key, _] : energy) {
    const auto& [service, flavour] = key;
    const Service* s = app.find_service(service);
    if (!s)
      out.push_back("energy metrics: unknown service '" + service + "'");
    else if (!s->find_flavour(flavour))
      out.push_back("energy metrics: unknown flavour '" + flavour + "' of service '" +
                    service + "'");
  }
  for (const auto& [key, _] : traffic) {
    const auto& [source, source_flavour, destination] = key;
    const Service* s = app.find_service(source);
    if (!s)
      out.push_back("traffic metrics: unknown source service '" + source + "'");
    else if (!s->find_flavour(source_flavour))
      out.push_back("traffic metrics: unknown flavour '" + source_flavour +
                    "' of service '" + source + "'");
    if (!app.find_service(destination))
      out.push_back("traffic metrics: unknown destination service '" + destination + "'");
  }
  for (const auto& [node, _] : carbon) {
    if (!infra.find_node(node))
      out.push_back("carbon metrics: unknown node '" + node + "'");
  }
  return out;
}

}  // namespace greencg
