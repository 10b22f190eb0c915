#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "greencg/greencg.hpp"
#include "support/test_support.hpp"

using namespace greencg;

TEST_CASE("the same seed reproduces the benchmark exactly") {
  const auto a = bench_size(60, 15, 1234);
  const auto b = bench_size(60, 15, 1234);
  CHECK(a.candidates == b.candidates);
  CHECK(a.counts == b.counts);
  const auto c = bench_size(60, 15, 99);
  CHECK(a.counts != c.counts);
}

TEST_CASE("zero services or nodes produce an immediate empty row") {
  const auto row = bench_size(0, 100, 1);
  CHECK(row.candidates == 0);
  for (const auto count : row.counts) CHECK(count == 0);
  CHECK(bench_size(10, 0, 1).candidates == 0);
}

TEST_CASE("candidate volume follows services x flavours x nodes plus links") {
  const auto inst = synthesize_instance(40, 8, 7);
  std::size_t measured = inst.app.flavour_energy.size();
  const auto row = bench_size(40, 8, 7);
  CHECK(row.flavours == measured);
  CHECK(row.candidates == measured * 8 + inst.app.link_energy.size());
}

TEST_CASE("counts are non-decreasing as the quantile level drops and match the oracle") {
  const auto quantiles = default_bench_quantiles();
  const auto row = bench_size(100, 100, 42, quantiles);
  REQUIRE(row.counts.size() == quantiles.size());
  for (std::size_t i = 1; i < row.counts.size(); ++i)
    CHECK(row.counts[i] >= row.counts[i - 1]);

  // independent sort-and-cut oracle over the same synthetic instance
  const auto inst = synthesize_instance(100, 100, 42);
  std::vector<double> impacts;
  double ci_sum = 0;
  for (const auto& [_, p] : inst.infra.carbon) ci_sum += p.avg;
  const double ci_mean = ci_sum / static_cast<double>(inst.infra.carbon.size());
  for (const auto& [key, fe] : inst.app.flavour_energy)
    for (const auto& [node, cp] : inst.infra.carbon)
      impacts.push_back(fe.profile.avg * cp.avg);
  for (const auto& [key, p] : inst.app.link_energy)
    impacts.push_back(p.avg * ci_mean);

  for (std::size_t i = 0; i < quantiles.size(); ++i) {
    const double tau = testsupport::oracle_threshold(impacts, quantiles[i]);
    std::size_t expected = 0;
    for (const double em : impacts)
      if (em > tau) ++expected;
    CHECK(row.counts[i] == expected);
  }
}

TEST_CASE("the rendered table carries one row per size") {
  const std::vector<BenchRow> rows{bench_size(10, 5, 1), bench_size(20, 5, 1)};
  const std::string table = render_bench_table(rows);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);  // header + 2 rows
  CHECK(table.find("q0.90") != std::string::npos);
  CHECK(table.find("q0.50") != std::string::npos);
}
