#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nvqaoa/errors.hpp"
#include "nvqaoa/experiment.hpp"
#include "nvqaoa/readout.hpp"
#include "oracle.hpp"

using namespace nvqaoa;
using std::numbers::pi;

namespace {

ScanConfig sampled_k2(std::uint64_t shots, std::uint64_t seed) {
  auto cfg = ScanConfig::standard(complete_graph(2));
  cfg.mode = ScanMode::sampled;
  cfg.shots = shots;
  cfg.master_seed = seed;
  cfg.realizations = 1;
  return cfg;
}

std::vector<std::vector<double>> adjacency_of(const Graph& g) {
  std::vector<std::vector<double>> adj(g.num_vertices(), std::vector<double>(g.num_vertices(), 0.0));
  for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = e.weight;
  return adj;
}

}  // namespace

TEST_CASE("ranges") {
  CHECK(default_beta_range().count() == 21);
  CHECK(default_gamma_range().count() == 41);
  CHECK(default_beta_range().values().back() == doctest::Approx(0.6 * pi).epsilon(1e-14));
  CHECK(default_gamma_range().values().back() == doctest::Approx(2.1 * pi).epsilon(1e-14));
  CHECK(Range{0.5, 0.5, 0.1}.count() == 1);
  CHECK_THROWS_AS((Range{0.0, 1.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((Range{1.0, 0.0, 0.1}.validate()), DomainError);
}

TEST_CASE("closed form examples") {
  CHECK(closed_form_cost_k2(pi / 8, 3 * pi / 2) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(closed_form_cost_k2(pi / 8, pi / 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(closed_form_cost_k2(0.3, 0.0) == -0.5);
  const auto g = complete_graph(2);
  CHECK(ideal_cost(g, QaoaParams::uniform(pi / 8, 3 * pi / 2)) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(ideal_cost(g, QaoaParams::uniform(0.0, 1.0)) + 0.5) < 1e-12);
  CHECK(std::abs(ideal_cost(g, QaoaParams::uniform(pi / 4, 1.0)) + 0.5) < 1e-12);
}

TEST_CASE("ideal scan of the two-vertex graph") {
  auto cfg = ScanConfig::standard(complete_graph(2));
  const auto grid = run_scan(cfg);
  CHECK(grid.n_beta == 21);
  CHECK(grid.n_gamma == 41);
  CHECK(grid.realizations == 1);
  REQUIRE(grid.points.size() == 861);
  CHECK(grid.cost_range == 1.0);
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const auto& pt = grid.points[i];
    CHECK(pt.beta == cfg.beta.at(i / 41));
    CHECK(pt.gamma == cfg.gamma.at(i % 41));
    CHECK(std::abs(pt.F_measured - closed_form_cost_k2(pt.beta, pt.gamma)) < 1e-9);
    CHECK(pt.norm == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(landscape_error(grid) == 0.0);
}

TEST_CASE("expected cost equals enumerated costs against populations") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> angle(0.0, 2 * pi);
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 3) edges.push_back({i, j, weight(rng)});
    const auto g = Graph::from_edges(n, edges);
    const QaoaParams params{{angle(rng), angle(rng)}, {angle(rng), angle(rng)}};
    const auto adj = adjacency_of(g);
    const auto psi = oracle::ansatz_state(adj, params.betas, params.gammas);
    double want = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) want += oracle::cost_of_index(adj, k) * std::norm(psi[k]);
    CHECK(std::abs(ideal_cost(g, params) - want) < 1e-10);
  }
}

TEST_CASE("sampled point at 3e5 shots") {
  const auto params = QaoaParams::uniform(0.15 * pi, 1.5 * pi);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto cfg = sampled_k2(300000, seed);
    const auto m = measure_point(cfg, params, 0, 0);
    CHECK(m.record.valid);
    CHECK(std::abs(m.record.F_measured - closed_form_cost_k2(0.15 * pi, 1.5 * pi)) < 0.02);
    CHECK(m.record.norm >= 0.97);
    CHECK(m.record.norm <= 1.03);
    CHECK(m.trace.empty());
  }
}

TEST_CASE("measure_point trace and determinism") {
  auto cfg = sampled_k2(10500, 4);
  const auto params = QaoaParams::uniform(0.3, 1.0);
  const auto a = measure_point(cfg, params, 7, 1, true);
  const auto b = measure_point(cfg, params, 7, 1, true);
  CHECK(a.trace.size() == 10);
  CHECK(a.trace.back().shots == 10000);
  CHECK(a.record.pops == b.record.pops);
  CHECK(a.record.F_measured == b.record.F_measured);
  const auto c = measure_point(cfg, params, 7, 2, false);
  CHECK(c.record.F_measured != a.record.F_measured);
  // The trace does not perturb the random stream.
  CHECK(measure_point(cfg, params, 7, 1, false).record.pops == a.record.pops);

  cfg.exact_calibration = true;
  const auto exact = measure_point(cfg, params, 7, 1);
  CHECK(exact.record.valid);
  CHECK(std::abs(exact.record.F_measured - ideal_cost(cfg.graph, params)) < 0.1);

  auto ideal = cfg;
  ideal.mode = ScanMode::ideal;
  CHECK_THROWS_AS(measure_point(ideal, params, 0, 0), DomainError);
}

TEST_CASE("flip patterns permute populations") {
  const auto g = complete_graph(3);
  const auto c = build_ansatz(g, QaoaParams::uniform(0.4, 2.2));
  const auto pops = populations(simulate(c));
  for (std::size_t x = 0; x < 8; ++x) {
    const auto flipped = populations(simulate(append_flips(c, FlipPattern::from_index(x, 3))));
    for (std::size_t s = 0; s < 8; ++s) CHECK(std::abs(flipped[s ^ x] - pops[s]) < 1e-14);
  }
}

TEST_CASE("degenerate measured calibration makes a point invalid") {
  auto cfg = sampled_k2(2000, 1);
  cfg.calibration = CalibrationTable({3, 3, 3, 3});
  cfg.exact_calibration = true;
  cfg.beta = Range{0.1, 0.2, 0.1};
  cfg.gamma = Range{0.1, 0.1, 0.1};
  const auto grid = run_scan(cfg);
  CHECK(grid.invalid_count() == 2);
  CHECK(std::isnan(grid.points[0].F_measured));
  CHECK(grid.points[0].error.find("t=01") != std::string::npos);
  const auto summary = nlohmann::json::parse(summary_json(cfg, grid));
  CHECK(summary["invalid_points"] == 2);
  CHECK(summary["landscape_error"].is_null());
  CHECK(summary["failures"].size() == 2);
}

TEST_CASE("landscape_error") {
  LandscapeGrid grid;
  grid.n_beta = 1;
  grid.n_gamma = 2;
  grid.realizations = 2;
  grid.cost_range = 2.0;
  auto pt = [](double measured, double ideal, std::size_t r) {
    PointRecord rec;
    rec.F_measured = measured;
    rec.F_ideal = ideal;
    rec.realization = r;
    return rec;
  };
  grid.points = {pt(-0.5, -0.5, 0), pt(-0.5, -0.5, 1), pt(-0.7, -0.5, 0), pt(-0.3, -0.5, 1)};
  CHECK(landscape_error(grid) == 0.0);
  grid.points = {pt(-0.3, -0.5, 0), pt(-0.3, -0.5, 1), pt(-0.5, -0.5, 0), pt(-0.5, -0.5, 1)};
  CHECK(landscape_error(grid) == doctest::Approx(0.05).epsilon(1e-12));
  grid.points[3].valid = false;
  grid.points[3].F_measured = std::nan("");
  CHECK(landscape_error(grid) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("small sampled scan is independent of thread count") {
  auto cfg = sampled_k2(3000, 9);
  cfg.realizations = 2;
  cfg.beta = Range{0.1 * pi, 0.2 * pi, 0.05 * pi};
  cfg.gamma = Range{0.5 * pi, 1.5 * pi, 0.5 * pi};
  cfg.threads = 1;
  const auto one = run_scan(cfg);
  cfg.threads = 3;
  const auto three = run_scan(cfg);
  REQUIRE(one.points.size() == 18);
  std::ostringstream a, b;
  write_landscape_csv(one, a);
  write_landscape_csv(three, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("beta,gamma,realization,F_measured,F_ideal,abs_diff,norm,pops\n", 0) == 0);
  CHECK(summary_json(cfg, one) == summary_json(cfg, three));
}

TEST_CASE("one-point grid") {
  auto cfg = ScanConfig::standard(complete_graph(2));
  cfg.beta = Range{pi / 8, pi / 8, 0.1};
  cfg.gamma = Range{1.5 * pi, 1.5 * pi, 0.1};
  const auto grid = run_scan(cfg);
  REQUIRE(grid.points.size() == 1);
  CHECK(grid.points[0].F_measured == doctest::Approx(-1.0).epsilon(1e-12));
  std::ostringstream csv;
  write_landscape_csv(grid, csv);
  CHECK(csv.str().find("|") != std::string::npos);
}

TEST_CASE("optimize") {
  auto k2 = ScanConfig::standard(complete_graph(2));
  const auto r = optimize(k2, Strategy::grid_then_refine);
  CHECK(std::abs(r.best_F + 1.0) < 1e-6);
  CHECK(r.trace.size() > 861);
  const auto s = optimize(k2, Strategy::simplex);
  CHECK(std::abs(s.best_F + 1.0) < 1e-6);

  const auto empty = optimize(ScanConfig::standard(Graph(3)), Strategy::grid_then_refine);
  CHECK(empty.best_F == 0.0);
  CHECK(empty.best_params.betas.front() <= default_beta_range().start);

  // Dense-grid oracle minimum for the triangle at p = 1.
  const auto k3 = optimize(ScanConfig::standard(complete_graph(3)), Strategy::grid_then_refine);
  CHECK(std::abs(k3.best_F - (-1.999777767512)) < 1e-3);

  auto deep = ScanConfig::standard(complete_graph(2));
  deep.p = 2;
  deep.beta = Range{0.1 * pi, 0.6 * pi, 0.1 * pi};
  deep.gamma = Range{0.1 * pi, 2.1 * pi, 0.2 * pi};
  const auto d = optimize(deep, Strategy::simplex);
  CHECK(d.best_params.depth() == 2);
  CHECK(d.best_F < -0.999);
}

TEST_CASE("scan config validation") {
  auto cfg = sampled_k2(1000, 0);
  cfg.calibration.reset();
  CHECK_THROWS(cfg.validate());
  cfg = sampled_k2(1000, 0);
  cfg.calibration = CalibrationTable({1, 2, 3, 4, 5, 6, 7, 8});
  CHECK_THROWS_AS(cfg.validate(), DimensionError);
  cfg = sampled_k2(0, 0);
  CHECK_THROWS(cfg.validate());
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(std::nan("")) == "nan");
  CHECK(format_real(-1.0 / 3.0) == "-0.3333333333");
}
