#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "greencg/greencg.hpp"
#include "support/test_support.hpp"

using namespace greencg;
using Catch::Approx;

namespace {

// EU fixture with the recovered monitored energies.
testsupport::Instance eu_instance() {
  testsupport::Instance inst;
  const std::vector<std::pair<std::string, double>> nodes = {
      {"france", 16}, {"spain", 88}, {"germany", 132}, {"greatbritain", 213}, {"italy", 335}};
  for (const auto& [id, ci] : nodes) {
    Node n;
    n.id = id;
    n.subnet = Placement::Public;
    CarbonProfile p;
    p.avg = p.min = p.max = ci;
    p.samples = 24;
    n.carbon = ci;
    inst.infra.carbon[id] = p;
    inst.infra.infra.nodes.push_back(n);
  }
  const std::vector<std::pair<std::string, double>> services = {{"frontend", 1981.6},
                                                                {"productcatalog", 884.5}};
  for (const auto& [id, kwh] : services) {
    Service s;
    s.component_id = id;
    s.placement = Placement::Public;
    Flavour f;
    f.id = "large";
    f.energy = kwh;
    s.flavours = {f};
    s.flavours_order = {"large"};
    EnergyProfile p;
    p.avg = p.min = p.max = kwh;
    p.samples = 24;
    inst.app.flavour_energy[{id, "large"}] = {p, ProfileOrigin::Measured};
    inst.app.app.services.push_back(s);
  }
  return inst;
}

Constraint ranked_avoid(const std::string& service, const std::string& target, double em,
                        double weight) {
  Constraint c;
  c.kind = kAvoidNode;
  c.service = service;
  c.flavour = "large";
  c.target = target;
  c.em = em;
  c.weight = weight;
  c.mu = 1.0;
  return c;
}

}  // namespace

TEST_CASE("avoid savings compare against best and next-worse alternatives") {
  const auto inst = eu_instance();

  SECTION("frontend/large avoiding greatbritain") {
    const auto r = avoid_savings_range(ranked_avoid("frontend", "greatbritain", 0, 0),
                                       inst.app, inst.infra);
    // upper: move to france (213-16); lower: move to germany (213-132)
    CHECK(r.upper == Approx(390375.2).epsilon(1e-9));
    CHECK(r.lower == Approx(160509.6).epsilon(1e-9));
    CHECK(r.upper / 1000.0 == Approx(390.38).epsilon(0.001));
    CHECK(r.lower / 1000.0 == Approx(160.51).epsilon(0.001));
  }
  SECTION("frontend/large avoiding italy") {
    const auto r =
        avoid_savings_range(ranked_avoid("frontend", "italy", 0, 0), inst.app, inst.infra);
    CHECK(r.upper / 1000.0 == Approx(632.14).epsilon(0.001));
    CHECK(r.lower / 1000.0 == Approx(241.76).epsilon(0.001));
  }
  SECTION("productcatalog/large avoiding italy") {
    const auto r = avoid_savings_range(ranked_avoid("productcatalog", "italy", 0, 0),
                                       inst.app, inst.infra);
    CHECK(r.upper / 1000.0 == Approx(282.17).epsilon(0.001));
    CHECK(r.lower / 1000.0 == Approx(107.91).epsilon(0.001));
  }
}

TEST_CASE("avoiding the cleanest compatible node saves nothing") {
  const auto inst = eu_instance();
  const auto r =
      avoid_savings_range(ranked_avoid("frontend", "france", 0, 0), inst.app, inst.infra);
  CHECK(r.lower == 0.0);
  CHECK(r.upper == 0.0);
}

TEST_CASE("compatibility restricts the alternative set") {
  auto inst = eu_instance();
  inst.app.app.services[0].placement = Placement::Private;
  for (auto& n : inst.infra.infra.nodes)
    if (n.id == "italy" || n.id == "germany") n.subnet = Placement::Private;
  // frontend is private; alternatives to italy are only germany now
  const auto r =
      avoid_savings_range(ranked_avoid("frontend", "italy", 0, 0), inst.app, inst.infra);
  CHECK(r.upper == Approx((335 - 132) * 1981.6));
  CHECK(r.lower == Approx((335 - 132) * 1981.6));

  // no alternative at all: only italy is private
  for (auto& n : inst.infra.infra.nodes)
    if (n.id == "germany") n.subnet = Placement::Public;
  CHECK_THROWS_AS(
      avoid_savings_range(ranked_avoid("frontend", "italy", 0, 0), inst.app, inst.infra),
      PipelineError);
}

TEST_CASE("affinity savings span the carbon range of the infrastructure") {
  auto inst = eu_instance();
  Constraint c;
  c.kind = kAffinity;
  c.service = "frontend";
  c.flavour = "large";
  c.target = "productcatalog";
  c.weight = 0.5;

  SECTION("unprofiled link is an error") {
    CHECK_THROWS_AS(affinity_savings_range(c, inst.app, inst.infra), PipelineError);
  }
  SECTION("one kWh spans min..max node CI") {
    inst.app.link_energy[{"frontend", "large", "productcatalog"}] = {1.0, 1.0, 1.0, 24};
    const auto r = affinity_savings_range(c, inst.app, inst.infra);
    CHECK(r.lower == Approx(16.0));
    CHECK(r.upper == Approx(335.0));
  }
  SECTION("zero communication energy saves nothing, doubling doubles") {
    inst.app.link_energy[{"frontend", "large", "productcatalog"}] = {0.0, 0.0, 0.0, 24};
    auto r = affinity_savings_range(c, inst.app, inst.infra);
    CHECK(r.lower == 0.0);
    CHECK(r.upper == 0.0);
    inst.app.link_energy[{"frontend", "large", "productcatalog"}] = {3.0, 3.0, 3.0, 24};
    r = affinity_savings_range(c, inst.app, inst.infra);
    inst.app.link_energy[{"frontend", "large", "productcatalog"}] = {6.0, 6.0, 6.0, 24};
    const auto doubled = affinity_savings_range(c, inst.app, inst.infra);
    CHECK(doubled.lower == Approx(2 * r.lower));
    CHECK(doubled.upper == Approx(2 * r.upper));
  }
}

TEST_CASE("ranges never invert and both bounds clamp at zero", "[property]") {
  testsupport::Rng rng(141);
  for (int iter = 0; iter < 100; ++iter) {
    const auto inst = testsupport::random_instance(rng, 8, 6);
    for (const auto& [key, fe] : inst.app.flavour_energy) {
      if (fe.origin != ProfileOrigin::Measured) continue;
      for (const auto& node : inst.infra.infra.nodes) {
        Constraint c;
        c.kind = kAvoidNode;
        c.service = key.first;
        c.flavour = key.second;
        c.target = node.id;
        try {
          const auto r = avoid_savings_range(c, inst.app, inst.infra);
          CHECK(r.lower >= 0.0);
          CHECK(r.upper >= r.lower);
        } catch (const PipelineError&) {
          // no compatible alternative; fine
        }
      }
    }
  }
}

TEST_CASE("the report names each constraint's entities with its savings range") {
  const auto inst = eu_instance();
  std::vector<Constraint> ranked{
      ranked_avoid("frontend", "italy", 663836.0, 1.0),
      ranked_avoid("frontend", "greatbritain", 422080.8, 0.636),
      ranked_avoid("productcatalog", "italy", 296307.5, 0.446)};
  const auto ranges = compute_savings(ranked, inst.app, inst.infra);
  REQUIRE(ranges.size() == 3);
  REQUIRE(ranges[0].has_value());

  const std::string report =
      render_report(ranked, ranges, ConstraintLibrary::standard(), ReportFormat::Markdown);
  CHECK(report.find("frontend") != std::string::npos);
  CHECK(report.find("greatbritain") != std::string::npos);
  CHECK(report.find("productcatalog") != std::string::npos);
  CHECK(report.find("632.13") != std::string::npos);
  CHECK(report.find("390.38") != std::string::npos);
  CHECK(report.find("282.16") != std::string::npos);

  const std::string again =
      render_report(ranked, ranges, ConstraintLibrary::standard(), ReportFormat::Markdown);
  CHECK(report == again);  // byte-identical

  const std::string text =
      render_report(ranked, ranges, ConstraintLibrary::standard(), ReportFormat::Text);
  CHECK(text.find("##") == std::string::npos);
  CHECK(text.find("frontend") != std::string::npos);
}

TEST_CASE("an empty constraint set reports that nothing was generated") {
  const std::string report =
      render_report({}, {}, ConstraintLibrary::standard(), ReportFormat::Markdown);
  CHECK(report.find("No constraints were generated") != std::string::npos);
}

TEST_CASE("affinity paragraphs explain the communication rationale") {
  Constraint c;
  c.kind = kAffinity;
  c.service = "frontend";
  c.flavour = "large";
  c.target = "productcatalog";
  c.em = 379706.88;
  c.weight = 0.572;
  const std::string report = render_report({c}, {std::nullopt},
                                           ConstraintLibrary::standard(),
                                           ReportFormat::Markdown);
  CHECK(report.find("co-locat") != std::string::npos);
  CHECK(report.find("No savings estimate") != std::string::npos);
}

TEST_CASE("paragraphs keep their entities under input permutation") {
  const auto inst = eu_instance();
  std::vector<Constraint> ranked{
      ranked_avoid("frontend", "greatbritain", 422080.8, 0.636),
      ranked_avoid("productcatalog", "italy", 296307.5, 0.446)};
  auto ranges = compute_savings(ranked, inst.app, inst.infra);
  const std::string a =
      render_report(ranked, ranges, ConstraintLibrary::standard(), ReportFormat::Text);

  std::reverse(ranked.begin(), ranked.end());
  ranges = compute_savings(ranked, inst.app, inst.infra);
  const std::string b =
      render_report(ranked, ranges, ConstraintLibrary::standard(), ReportFormat::Text);

  // Paragraph 1 of `a` and paragraph 2 of `b` describe the same constraint.
  const auto para = [](const std::string& text, int index) {
    std::size_t pos = text.find(std::to_string(index) + ". ");
    std::size_t end = text.find("\n\n", pos);
    return text.substr(pos, end - pos);
  };
  CHECK(para(a, 1).find("greatbritain") != std::string::npos);
  CHECK(para(a, 1).find("productcatalog") == std::string::npos);
  CHECK(para(b, 2).find("greatbritain") != std::string::npos);
  CHECK(para(b, 1).find("productcatalog") != std::string::npos);
}
