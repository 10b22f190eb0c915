#pragma once

// Domain types shared across the pipeline. Values are immutable after
// construction and safe to share between concurrent readers; validation is a
// separate pass that reports violations as data instead of throwing.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "greencg/time.hpp"

namespace greencg {

using ServiceId = std::string;
using FlavourId = std::string;
using NodeId = std::string;

// Network placement of a service / subnet of a node.
enum class Placement { Private, Public };

inline const char* to_string(Placement p) {
  return p == Placement::Private ? "private" : "public";
}

// One of the interchangeable implementations of a service. `energy` is the
// consumption in kWh per observation interval, filled in by enrichment.
struct Flavour {
  FlavourId id;
  std::map<std::string, double> resources;  // cpu (millicores), ram/storage (MiB), ...
  std::map<std::string, double> qos;        // availability in [0,1], ...
  std::optional<double> energy;             // kWh per interval

  bool operator==(const Flavour&) const = default;
};

struct Service {
  ServiceId component_id;
  std::string description;
  bool must_deploy = true;
  std::vector<Flavour> flavours;
  std::vector<FlavourId> flavours_order;  // preference order, permutation of flavour ids
  Placement placement = Placement::Public;
  std::set<std::string> security;  // firewall, ssl, encryption, ...

  const Flavour* find_flavour(const FlavourId& id) const {
    for (const auto& f : flavours)
      if (f.id == id) return &f;
    return nullptr;
  }

  bool operator==(const Service&) const = default;
};

// Directed communication dependency; the energy cost of the exchange depends
// on the source flavour only.
struct CommunicationLink {
  ServiceId source;
  FlavourId source_flavour;
  ServiceId destination;
  std::map<std::string, double> qos;  // latency (ms), availability in [0,1]
  std::optional<double> energy;       // kWh per interval

  bool operator==(const CommunicationLink&) const = default;
};

struct ApplicationDescription {
  std::string name;
  std::vector<Service> services;
  std::vector<CommunicationLink> links;

  const Service* find_service(const ServiceId& id) const {
    for (const auto& s : services)
      if (s.component_id == id) return &s;
    return nullptr;
  }

  bool operator==(const ApplicationDescription&) const = default;
};

struct Node {
  NodeId id;
  std::map<std::string, double> capabilities;  // cpu, ram, storage, bandwidth_in/out, availability
  std::set<std::string> security;
  Placement subnet = Placement::Public;
  double cost = 0.0;              // currency units per interval
  std::optional<double> carbon;   // gCO2eq/kWh, operator override or enrichment

  bool operator==(const Node&) const = default;
};

struct InfrastructureDescription {
  std::vector<Node> nodes;

  const Node* find_node(const NodeId& id) const {
    for (const auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }

  bool operator==(const InfrastructureDescription&) const = default;
};

// Built-in constraint kind names. The set is open: additional kinds register
// with the ConstraintLibrary by name.
inline constexpr const char* kAvoidNode = "avoidNode";
inline constexpr const char* kAffinity = "affinity";

// A typed deployment recommendation. `target` is a node id for avoidNode and
// a peer service id for affinity. `em` estimates the gCO2eq footprint the
// constraint addresses; `weight` is set by the ranker; `mu` is the memory
// weight that decays while the constraint is not regenerated.
struct Constraint {
  std::string kind;
  ServiceId service;
  FlavourId flavour;
  std::string target;
  double em = 0.0;
  std::optional<double> weight;
  double mu = 1.0;
  Timestamp generated_at{};

  using Identity = std::tuple<std::string, ServiceId, FlavourId, std::string>;
  Identity identity() const { return {kind, service, flavour, target}; }

  bool operator==(const Constraint&) const = default;
};

namespace detail {

inline void check_requirement_map(const std::map<std::string, double>& m,
                                  const std::string& ctx, const char* what,
                                  std::vector<std::string>& out) {
  for (const auto& [key, value] : m) {
    if (value < 0)
      out.push_back(ctx + ": " + what + " '" + key + "' is negative");
    if (key == "availability" && (value < 0 || value > 1))
      out.push_back(ctx + ": availability " + std::to_string(value) +
                    " outside [0,1]");
  }
}

}  // namespace detail

// Returns one message per violated invariant; empty means the description is
// well formed. Never throws: violations are data.
inline std::vector<std::string> validate_application(
    const ApplicationDescription& app) {
  std::vector<std::string> out;
  std::set<ServiceId> seen;
  for (const auto& s : app.services) {
    const std::string ctx = "service '" + s.component_id + "'";
    if (s.component_id.empty()) {
      out.push_back("application '" + app.name + "': service with empty componentID");
      continue;
    }
    if (!seen.insert(s.component_id).second)
      out.push_back(ctx + ": duplicate componentID");
    if (s.flavours.empty()) out.push_back(ctx + ": no flavours declared");

    std::set<FlavourId> flavour_ids;
    for (const auto& f : s.flavours) {
      const std::string fctx = ctx + ", flavour '" + f.id + "'";
      if (f.id.empty()) out.push_back(ctx + ": flavour with empty id");
      if (!f.id.empty() && !flavour_ids.insert(f.id).second)
        out.push_back(fctx + ": duplicate flavour id");
      detail::check_requirement_map(f.resources, fctx, "resource", out);
      detail::check_requirement_map(f.qos, fctx, "qos bound", out);
      if (f.energy && *f.energy < 0) out.push_back(fctx + ": energy is negative");
    }

    std::multiset<FlavourId> order(s.flavours_order.begin(), s.flavours_order.end());
    std::multiset<FlavourId> declared(flavour_ids.begin(), flavour_ids.end());
    if (order != declared) {
      for (const auto& id : flavour_ids)
        if (order.count(id) == 0)
          out.push_back(ctx + ": flavoursOrder is missing flavour '" + id + "'");
      for (const auto& id : s.flavours_order)
        if (flavour_ids.count(id) == 0)
          out.push_back(ctx + ": flavoursOrder names undeclared flavour '" + id + "'");
      if (order.size() != declared.size() &&
          std::set<FlavourId>(order.begin(), order.end()).size() != order.size())
        out.push_back(ctx + ": flavoursOrder repeats a flavour id");
    }
  }

  for (const auto& l : app.links) {
    const std::string ctx = "link '" + l.source + "' -> '" + l.destination + "'";
    if (l.source == l.destination)
      out.push_back(ctx + ": source equals destination");
    const Service* src = app.find_service(l.source);
    if (!src) out.push_back(ctx + ": source service not declared");
    if (!app.find_service(l.destination))
      out.push_back(ctx + ": destination service not declared");
    if (src && !src->find_flavour(l.source_flavour))
      out.push_back(ctx + ": sourceFlavour '" + l.source_flavour +
                    "' not declared on '" + l.source + "'");
    detail::check_requirement_map(l.qos, ctx, "qos bound", out);
    if (l.energy && *l.energy < 0) out.push_back(ctx + ": energy is negative");
  }
  return out;
}

inline std::vector<std::string> validate_infrastructure(
    const InfrastructureDescription& infra) {
  std::vector<std::string> out;
  if (infra.nodes.empty()) out.push_back("infrastructure: no nodes declared");
  std::set<NodeId> seen;
  for (const auto& n : infra.nodes) {
    const std::string ctx = "node '" + n.id + "'";
    if (n.id.empty()) {
      out.push_back("infrastructure: node with empty id");
      continue;
    }
    if (!seen.insert(n.id).second) out.push_back(ctx + ": duplicate id");
    detail::check_requirement_map(n.capabilities, ctx, "capability", out);
    if (n.carbon && *n.carbon < 0) out.push_back(ctx + ": carbon is negative");
  }
  return out;
}

}  // namespace greencg
