#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "greencg/greencg.hpp"
#include "support/test_support.hpp"

using namespace greencg;
using Catch::Approx;

namespace {

Constraint ranked(const std::string& kind, const std::string& service,
                  const std::string& flavour, const std::string& target, double weight,
                  double em = 1000.0) {
  Constraint c;
  c.kind = kind;
  c.service = service;
  c.flavour = flavour;
  c.target = target;
  c.em = em;
  c.weight = weight;
  c.mu = 1.0;
  return c;
}

}  // namespace

TEST_CASE("avoid facts print as avoidNode(d(service,flavour),node,weight)") {
  const auto text = to_prolog({ranked(kAvoidNode, "frontend", "large", "italy", 1.0)});
  CHECK(text == "avoidNode(d(frontend,large),italy,1.0).\n");
}

TEST_CASE("affinity facts keep the peer flavour anonymous") {
  const auto text =
      to_prolog({ranked(kAffinity, "frontend", "large", "productcatalog", 0.572)});
  CHECK(text == "affinity(d(frontend,large),d(productcatalog,_),0.572).\n");
}

TEST_CASE("an empty ranked set prints an empty file") {
  CHECK(to_prolog({}).empty());
}

TEST_CASE("an unranked constraint cannot be exported") {
  Constraint c = ranked(kAvoidNode, "a", "f", "n", 0.5);
  c.weight.reset();
  CHECK_THROWS_AS(to_prolog({c}), PipelineError);
  CHECK_THROWS_AS(to_structured({c}), PipelineError);
}

TEST_CASE("atoms are sanitised to lower-case alphanumerics and underscores") {
  CHECK(sanitise_atom("GreatBritain") == "greatbritain");
  CHECK(sanitise_atom("new york!") == "new_york_");
  CHECK(sanitise_atom("Node-7.eu") == "node_7_eu");
}

TEST_CASE("sanitisation is idempotent", "[property]") {
  testsupport::Rng rng(151);
  for (int i = 0; i < 200; ++i) {
    const std::string s = testsupport::random_identifier(rng);
    CHECK(sanitise_atom(sanitise_atom(s)) == sanitise_atom(s));
  }
}

TEST_CASE("weights format with up to three decimals, trailing zeros trimmed") {
  CHECK(format_weight(1.0) == "1.0");
  CHECK(format_weight(0.636) == "0.636");
  CHECK(format_weight(0.5) == "0.5");
  CHECK(format_weight(0.8908) == "0.891");
  CHECK(format_weight(0.25) == "0.25");
  CHECK(format_weight(0.1) == "0.1");
  CHECK(format_weight(0.0001) == "0.0");
}

TEST_CASE("prolog output re-parses to the same facts", "[property]") {
  testsupport::Rng rng(161);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Constraint> constraints;
    const std::size_t n = rng.index(12);
    for (std::size_t i = 0; i < n; ++i) {
      const bool affinity = rng.chance(0.4);
      constraints.push_back(ranked(affinity ? kAffinity : kAvoidNode,
                                   testsupport::random_identifier(rng),
                                   testsupport::random_identifier(rng),
                                   testsupport::random_identifier(rng),
                                   std::round(rng.uniform(0.1, 1.0) * 1000.0) / 1000.0,
                                   rng.uniform(1, 1e6)));
    }
    const auto facts = parse_prolog(to_prolog(constraints));
    REQUIRE(facts.size() == constraints.size());
    for (std::size_t i = 0; i < facts.size(); ++i) {
      CHECK(facts[i].kind == constraints[i].kind);
      CHECK(facts[i].service == sanitise_atom(constraints[i].service));
      CHECK(facts[i].flavour == sanitise_atom(constraints[i].flavour));
      CHECK(facts[i].target == sanitise_atom(constraints[i].target));
      CHECK(facts[i].weight == Approx(*constraints[i].weight).margin(5e-4));
    }
  }
}

TEST_CASE("garbage lines fail the fact parser") {
  CHECK_THROWS_AS(parse_prolog("hello world\n"), ValidationError);
  CHECK_THROWS_AS(parse_prolog("avoidNode(d(a),b,0.5).\n"), ValidationError);
}

TEST_CASE("the structured export mirrors the facts and round-trips") {
  const auto inst_ranges = std::vector<std::optional<SavingsRange>>{
      SavingsRange{160509.6, 390375.2}, std::nullopt};
  const std::vector<Constraint> constraints{
      ranked(kAvoidNode, "frontend", "large", "greatbritain", 0.636, 422080.8),
      ranked(kAffinity, "frontend", "large", "currency", 0.381, 252918.4)};

  const auto doc = to_structured(constraints, inst_ranges);
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["weight"] == 0.636);
  CHECK(doc[0]["savings_lower"] == 160509.6);
  CHECK(doc[1]["savings_upper"].is_null());

  const auto recovered = from_structured(doc);
  REQUIRE(recovered.size() == 2);
  CHECK(recovered[0].em == constraints[0].em);
  CHECK(*recovered[1].weight == *constraints[1].weight);
  CHECK(recovered[1].target == "currency");

  // Weights in both exports come from the same source values.
  const auto facts = parse_prolog(to_prolog(constraints));
  for (std::size_t i = 0; i < facts.size(); ++i)
    CHECK(format_weight(doc[i]["weight"].get<double>()) ==
          format_weight(facts[i].weight));
}
