#pragma once

// Reading application / infrastructure descriptions from YAML or JSON
// documents and serialising them back to JSON. Key names follow the document
// schema exactly (componentID, mustDeploy, flavoursOrder, profile.cost, ...).

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "greencg/errors.hpp"
#include "greencg/model.hpp"

namespace greencg {

using json = nlohmann::json;

namespace detail {

// YAML scalars arrive untyped; resolve them with core-schema rules unless the
// scalar was quoted (yaml-cpp tags quoted scalars with "!").
inline json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
      return nullptr;
    case YAML::NodeType::Scalar: {
      const std::string& s = node.Scalar();
      if (node.Tag() != "!") {
        if (s == "null" || s == "~" || s == "Null" || s == "NULL") return nullptr;
        if (s == "true" || s == "True" || s == "TRUE") return true;
        if (s == "false" || s == "False" || s == "FALSE") return false;
        try {
          std::size_t pos = 0;
          long long v = std::stoll(s, &pos);
          if (pos == s.size()) return v;
        } catch (...) {
        }
        try {
          std::size_t pos = 0;
          double v = std::stod(s, &pos);
          if (pos == s.size()) return v;
        } catch (...) {
        }
      }
      return s;
    }
    case YAML::NodeType::Sequence: {
      json arr = json::array();
      for (const auto& item : node) arr.push_back(yaml_to_json(item));
      return arr;
    }
    case YAML::NodeType::Map: {
      json obj = json::object();
      for (const auto& kv : node)
        obj[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return obj;
    }
    default:
      return nullptr;
  }
}

inline const json& require(const json& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(ctx + ": missing required key '" + key + "'");
  return *it;
}

inline std::string get_string(const json& j, const char* key, const std::string& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_string())
    throw ValidationError(ctx + ": key '" + key + "' must be a string");
  return v.get<std::string>();
}

inline double as_number(const json& v, const std::string& ctx) {
  if (!v.is_number())
    throw ValidationError(ctx + ": expected a number, got " + v.dump());
  return v.get<double>();
}

inline std::map<std::string, double> get_number_map(const json& j, const char* key,
                                                    const std::string& ctx) {
  std::map<std::string, double> out;
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return out;
  if (!it->is_object())
    throw ValidationError(ctx + ": key '" + key + "' must be a mapping");
  for (const auto& [k, v] : it->items())
    out[k] = as_number(v, ctx + "." + std::string(key) + "." + k);
  return out;
}

inline std::set<std::string> get_string_set(const json& j, const char* key,
                                            const std::string& ctx) {
  std::set<std::string> out;
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return out;
  if (!it->is_array())
    throw ValidationError(ctx + ": key '" + key + "' must be a list");
  for (const auto& v : *it) {
    if (!v.is_string())
      throw ValidationError(ctx + ": entries of '" + key + "' must be strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

inline Placement parse_placement(const std::string& s, const std::string& ctx) {
  std::string lower = s;
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "private") return Placement::Private;
  if (lower == "public") return Placement::Public;
  throw ValidationError(ctx + ": placement must be 'private' or 'public', got '" + s + "'");
}

}  // namespace detail

inline Flavour parse_flavour(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ValidationError(ctx + ": flavour must be a mapping");
  Flavour f;
  f.id = detail::get_string(j, "id", ctx);
  f.resources = detail::get_number_map(j, "resources", ctx);
  f.qos = detail::get_number_map(j, "qos", ctx);
  if (auto it = j.find("energy"); it != j.end() && !it->is_null())
    f.energy = detail::as_number(*it, ctx + ".energy");
  return f;
}

inline Service parse_service(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ValidationError(ctx + ": service must be a mapping");
  Service s;
  s.component_id = detail::get_string(j, "componentID", ctx);
  if (auto it = j.find("description"); it != j.end() && it->is_string())
    s.description = it->get<std::string>();
  if (auto it = j.find("mustDeploy"); it != j.end()) {
    if (!it->is_boolean())
      throw ValidationError(ctx + ": mustDeploy must be a boolean");
    s.must_deploy = it->get<bool>();
  }
  const json& flavours = detail::require(j, "flavours", ctx);
  if (!flavours.is_array())
    throw ValidationError(ctx + ": flavours must be a list");
  std::size_t i = 0;
  for (const auto& fj : flavours)
    s.flavours.push_back(parse_flavour(fj, ctx + ".flavours[" + std::to_string(i++) + "]"));
  if (auto it = j.find("flavoursOrder"); it != j.end()) {
    if (!it->is_array())
      throw ValidationError(ctx + ": flavoursOrder must be a list");
    for (const auto& v : *it) {
      if (!v.is_string())
        throw ValidationError(ctx + ": flavoursOrder entries must be strings");
      s.flavours_order.push_back(v.get<std::string>());
    }
  } else {
    for (const auto& f : s.flavours) s.flavours_order.push_back(f.id);
  }
  // Public is the least-restrictive default when the key is absent.
  if (auto it = j.find("placement"); it != j.end() && !it->is_null())
    s.placement = detail::parse_placement(it->get<std::string>(), ctx);
  s.security = detail::get_string_set(j, "security", ctx);
  return s;
}

inline CommunicationLink parse_link(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ValidationError(ctx + ": link must be a mapping");
  CommunicationLink l;
  l.source = detail::get_string(j, "source", ctx);
  l.source_flavour = detail::get_string(j, "sourceFlavour", ctx);
  l.destination = detail::get_string(j, "destination", ctx);
  l.qos = detail::get_number_map(j, "qos", ctx);
  if (auto it = j.find("energy"); it != j.end() && !it->is_null())
    l.energy = detail::as_number(*it, ctx + ".energy");
  return l;
}

inline ApplicationDescription parse_application(const json& j,
                                                const std::string& where = "application") {
  if (!j.is_object()) throw ValidationError(where + ": document root must be a mapping");
  ApplicationDescription app;
  app.name = detail::get_string(j, "name", where);
  const json& services = detail::require(j, "services", where);
  if (!services.is_array())
    throw ValidationError(where + ": services must be a list");
  std::size_t i = 0;
  for (const auto& sj : services)
    app.services.push_back(
        parse_service(sj, where + ".services[" + std::to_string(i++) + "]"));
  if (auto it = j.find("links"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw ValidationError(where + ": links must be a list");
    i = 0;
    for (const auto& lj : *it)
      app.links.push_back(parse_link(lj, where + ".links[" + std::to_string(i++) + "]"));
  }
  return app;
}

inline Node parse_node(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ValidationError(ctx + ": node must be a mapping");
  Node n;
  n.id = detail::get_string(j, "id", ctx);
  if (auto it = j.find("capabilities"); it != j.end() && !it->is_null()) {
    if (!it->is_object())
      throw ValidationError(ctx + ": capabilities must be a mapping");
    for (const auto& [k, v] : it->items()) {
      if (k == "security") {
        n.security = detail::get_string_set(*it, "security", ctx);
      } else if (k == "subnet") {
        if (!v.is_string())
          throw ValidationError(ctx + ": capabilities.subnet must be a string");
        n.subnet = detail::parse_placement(v.get<std::string>(), ctx);
      } else {
        n.capabilities[k] = detail::as_number(v, ctx + ".capabilities." + k);
      }
    }
  }
  if (auto it = j.find("profile"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw ValidationError(ctx + ": profile must be a mapping");
    if (auto c = it->find("cost"); c != it->end() && !c->is_null())
      n.cost = detail::as_number(*c, ctx + ".profile.cost");
    if (auto c = it->find("carbon"); c != it->end() && !c->is_null())
      n.carbon = detail::as_number(*c, ctx + ".profile.carbon");
  }
  return n;
}

inline InfrastructureDescription parse_infrastructure(
    const json& j, const std::string& where = "infrastructure") {
  if (!j.is_object()) throw ValidationError(where + ": document root must be a mapping");
  InfrastructureDescription infra;
  const json& nodes = detail::require(j, "nodes", where);
  if (!nodes.is_array()) throw ValidationError(where + ": nodes must be a list");
  std::size_t i = 0;
  for (const auto& nj : nodes)
    infra.nodes.push_back(parse_node(nj, where + ".nodes[" + std::to_string(i++) + "]"));
  return infra;
}

inline json flavour_to_json(const Flavour& f) {
  json j{{"id", f.id}, {"resources", f.resources}, {"qos", f.qos}};
  if (f.energy) j["energy"] = *f.energy;
  return j;
}

inline json service_to_json(const Service& s) {
  json flavours = json::array();
  for (const auto& f : s.flavours) flavours.push_back(flavour_to_json(f));
  return json{{"componentID", s.component_id},
              {"description", s.description},
              {"mustDeploy", s.must_deploy},
              {"flavours", flavours},
              {"flavoursOrder", s.flavours_order},
              {"placement", to_string(s.placement)},
              {"security", s.security}};
}

inline json link_to_json(const CommunicationLink& l) {
  json j{{"source", l.source},
         {"sourceFlavour", l.source_flavour},
         {"destination", l.destination},
         {"qos", l.qos}};
  if (l.energy) j["energy"] = *l.energy;
  return j;
}

inline json application_to_json(const ApplicationDescription& app) {
  json services = json::array();
  for (const auto& s : app.services) services.push_back(service_to_json(s));
  json links = json::array();
  for (const auto& l : app.links) links.push_back(link_to_json(l));
  return json{{"name", app.name}, {"services", services}, {"links", links}};
}

inline json node_to_json(const Node& n) {
  json caps = json::object();
  for (const auto& [k, v] : n.capabilities) caps[k] = v;
  caps["security"] = n.security;
  caps["subnet"] = to_string(n.subnet);
  json profile{{"cost", n.cost}};
  if (n.carbon) profile["carbon"] = *n.carbon;
  return json{{"id", n.id}, {"capabilities", caps}, {"profile", profile}};
}

inline json infrastructure_to_json(const InfrastructureDescription& infra) {
  json nodes = json::array();
  for (const auto& n : infra.nodes) nodes.push_back(node_to_json(n));
  return json{{"nodes", nodes}};
}

// Loads a document as JSON regardless of the on-disk syntax. Anything that is
// not valid JSON is handed to the YAML parser (YAML is a JSON superset, so a
// plain `.txt` of JSON still loads).
inline json load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const auto ext = path.extension().string();
  if (ext == ".json") {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
  }
  try {
    return detail::yaml_to_json(YAML::Load(text));
  } catch (const YAML::Exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

inline ApplicationDescription load_application(const std::filesystem::path& path) {
  return parse_application(load_document(path), path.string());
}

inline InfrastructureDescription load_infrastructure(const std::filesystem::path& path) {
  return parse_infrastructure(load_document(path), path.string());
}

}  // namespace greencg
