#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "greencg/greencg.hpp"
#include "support/test_support.hpp"

using namespace greencg;
namespace fs = std::filesystem;

namespace {

ApplicationDescription boutique() {
  return parse_application(
      detail::yaml_to_json(YAML::Load(fixtures::boutique_app_yaml(false))));
}

InfrastructureDescription eu_infra() {
  return parse_infrastructure(
      detail::yaml_to_json(YAML::Load(fixtures::eu_infra_yaml(false))));
}

}  // namespace

TEST_CASE("well-formed boutique application validates cleanly") {
  const auto app = boutique();
  REQUIRE(app.services.size() == 10);
  CHECK(validate_application(app).empty());
}

TEST_CASE("link with undeclared destination yields one named violation") {
  auto app = boutique();
  app.links.push_back({"frontend", "large", "warehouse", {}, {}});
  const auto violations = validate_application(app);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("warehouse") != std::string::npos);
  CHECK(violations[0].find("destination") != std::string::npos);
}

TEST_CASE("flavoursOrder missing a flavour id yields one named violation") {
  auto app = boutique();
  for (auto& s : app.services)
    if (s.component_id == "frontend") s.flavours_order = {"large", "medium"};
  const auto violations = validate_application(app);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("frontend") != std::string::npos);
  CHECK(violations[0].find("tiny") != std::string::npos);
}

TEST_CASE("five-node EU infrastructure validates cleanly") {
  const auto infra = eu_infra();
  REQUIRE(infra.nodes.size() == 5);
  CHECK(validate_infrastructure(infra).empty());
}

TEST_CASE("duplicate node id yields a violation") {
  auto infra = eu_infra();
  infra.nodes.push_back(infra.nodes.front());
  const auto violations = validate_infrastructure(infra);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("duplicate") != std::string::npos);
}

TEST_CASE("negative carbon value yields a violation") {
  auto infra = eu_infra();
  infra.nodes[0].carbon = -3.0;
  const auto violations = validate_infrastructure(infra);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find(infra.nodes[0].id) != std::string::npos);
}

TEST_CASE("further invariant violations are all named") {
  auto app = boutique();
  app.services[0].flavours[0].resources["cpu"] = -1;
  app.services[1].flavours[0].qos["availability"] = 1.5;
  app.services[2].flavours[0].energy = -2.0;
  app.links.push_back({"cart", "tiny", "cart", {}, {}});
  const auto violations = validate_application(app);
  CHECK(violations.size() == 4);
}

TEST_CASE("model JSON round-trip is identity", "[property]") {
  testsupport::Rng rng(2024);
  for (int i = 0; i < 150; ++i) {
    const auto app = testsupport::random_application(rng);
    CHECK(parse_application(application_to_json(app)) == app);
    const auto infra = testsupport::random_infrastructure(rng);
    CHECK(parse_infrastructure(infrastructure_to_json(infra)) == infra);
  }
}

TEST_CASE("YAML and JSON spellings of a document parse identically") {
  const auto from_yaml = boutique();
  const auto from_json = parse_application(
      nlohmann::json::parse(application_to_json(from_yaml).dump()));
  CHECK(from_yaml == from_json);
}

TEST_CASE("placement defaults to public when absent") {
  const auto j = nlohmann::json::parse(R"({
    "name": "a",
    "services": [{"componentID": "x", "flavours": [{"id": "f"}]}]
  })");
  const auto app = parse_application(j);
  CHECK(app.services[0].placement == Placement::Public);
  CHECK(app.services[0].flavours_order == std::vector<FlavourId>{"f"});
}

TEST_CASE("unrecognised requirement keys are preserved verbatim") {
  const auto j = nlohmann::json::parse(R"({
    "name": "a",
    "services": [{"componentID": "x",
                  "flavours": [{"id": "f", "resources": {"gpu_slices": 4},
                                "qos": {"p99_latency": 120}}]}]
  })");
  const auto app = parse_application(j);
  CHECK(app.services[0].flavours[0].resources.at("gpu_slices") == 4);
  CHECK(app.services[0].flavours[0].qos.at("p99_latency") == 120);
  CHECK(parse_application(application_to_json(app)) == app);
}

TEST_CASE("malformed documents raise named parse errors, never crash") {
  CHECK_THROWS_AS(parse_application(nlohmann::json::parse("{}")), ValidationError);
  CHECK_THROWS_AS(parse_application(nlohmann::json::parse(R"({"name": 3, "services": []})")),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_application(nlohmann::json::parse(
          R"({"name": "a", "services": [{"componentID": "x", "flavours": [{"id": "f"}], "mustDeploy": "yes"}]})")),
      ValidationError);
  CHECK_THROWS_AS(
      parse_infrastructure(nlohmann::json::parse(R"({"nodes": [{"id": "n", "capabilities": {"subnet": "dmz"}}]})")),
      ValidationError);

  const fs::path dir = fs::temp_directory_path() / "greencg_model_io";
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "broken.json");
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_application(dir / "broken.json"), ValidationError);
  CHECK_THROWS_AS(load_application(dir / "missing.yaml"), ValidationError);
}

TEST_CASE("documents load from disk in either syntax") {
  const fs::path dir = fs::temp_directory_path() / "greencg_model_io";
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "app.yaml");
    out << fixtures::boutique_app_yaml(false);
  }
  {
    std::ofstream out(dir / "app.json");
    out << application_to_json(boutique()).dump(2);
  }
  CHECK(load_application(dir / "app.yaml") == load_application(dir / "app.json"));
}
