#include <doctest.h>

#include <cmath>
#include <random>

#include "nvqaoa/errors.hpp"
#include "nvqaoa/readout.hpp"
#include "nvqaoa/reconstruction.hpp"
#include "oracle.hpp"

using namespace nvqaoa;

namespace {

const CalibrationTable kCal({5, 3, 2, 1});

// c_t straight from the signed-sum definition with an explicit parity loop.
std::vector<double> walsh_by_definition(const std::vector<double>& I) {
  const std::size_t d = I.size();
  std::vector<double> c(d, 0.0);
  for (std::size_t t = 0; t < d; ++t) {
    for (std::size_t s = 0; s < d; ++s) {
      int parity = 0;
      for (std::size_t b = s & t; b; b >>= 1U) parity ^= static_cast<int>(b & 1U);
      c[t] += (parity ? -1.0 : 1.0) * I[s];
    }
    c[t] /= static_cast<double>(d);
  }
  return c;
}

CalibrationTable random_nondegenerate(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (;;) {
    std::vector<double> I(std::size_t{1} << n);
    for (auto& v : I) v = u(rng);
    bool ok = true;
    for (double c : walsh_by_definition(I)) ok = ok && std::abs(c) > 1e-3;
    if (ok) return CalibrationTable(I);
  }
}

}  // namespace

TEST_CASE("walsh_coefficients examples") {
  CHECK(walsh_coefficients(kCal).c == std::vector<double>{2.75, 0.75, 1.25, 0.25});
  CHECK(walsh_coefficients(CalibrationTable({4, 3, 2, 1})).c == std::vector<double>{2.5, 0.5, 1.0, 0.0});
  CHECK(walsh_coefficients(CalibrationTable({3, 3, 3, 3, 3, 3, 3, 3})).c == std::vector<double>{3, 0, 0, 0, 0, 0, 0, 0});
  std::mt19937_64 rng(1);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto cal = random_nondegenerate(n, rng);
    const std::vector<double> I(cal.intensities().begin(), cal.intensities().end());
    const auto want = walsh_by_definition(I);
    const auto got = walsh_coefficients(cal).c;
    for (std::size_t t = 0; t < want.size(); ++t) CHECK(got[t] == doctest::Approx(want[t]).epsilon(1e-14));
    double mean = 0.0;
    for (double v : I) mean += v / static_cast<double>(I.size());
    CHECK(got[0] == doctest::Approx(mean).epsilon(1e-14));
  }
}

TEST_CASE("forward_means examples") {
  CHECK(forward_means(kCal, std::vector<double>{1, 0, 0, 0}) == std::vector<double>{5, 3, 2, 1});
  CHECK(forward_means(kCal, std::vector<double>(4, 0.25)) == std::vector<double>{2.75, 2.75, 2.75, 2.75});
  CHECK(forward_means(kCal, std::vector<double>{0, 0, 0, 1}) == std::vector<double>{1, 2, 3, 5});
  CHECK_THROWS_AS(forward_means(kCal, std::vector<double>{1, 0}), DimensionError);
}

TEST_CASE("reconstruct examples") {
  const auto est = reconstruct(kCal, std::vector<double>{5, 3, 2, 1});
  CHECK(est.pops[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t s = 1; s < 4; ++s) CHECK(std::abs(est.pops[s]) < 1e-15);
  CHECK(est.norm == doctest::Approx(1.0).epsilon(1e-15));

  const double m = 3.3;
  const auto flat = reconstruct(kCal, std::vector<double>(4, m));
  for (double p : flat.pops) CHECK(p == doctest::Approx(m / 2.75 / 4.0).epsilon(1e-14));
  CHECK(flat.norm == doctest::Approx(m / 2.75).epsilon(1e-14));
  const auto exact_dc = reconstruct(kCal, std::vector<double>(4, 2.75));
  for (double p : exact_dc.pops) CHECK(p == doctest::Approx(0.25).epsilon(1e-14));

  try {
    reconstruct(CalibrationTable({4, 3, 2, 1}), std::vector<double>{1, 2, 3, 4});
    FAIL("expected a degenerate-calibration error");
  } catch (const DegenerateCalibrationError& e) {
    CHECK(e.t_index() == 3);
    CHECK(std::string(e.what()).find("t=11") != std::string::npos);
  }
  CHECK_THROWS_AS(reconstruct(CalibrationTable({2, 2}), std::vector<double>{2, 2}), DegenerateCalibrationError);
  CHECK_THROWS_AS(reconstruct(kCal, std::vector<double>{1, 2}), DimensionError);
}

TEST_CASE("round trip, norm and sum of populations") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto cal = random_nondegenerate(n, rng);
    const auto p = oracle::random_distribution(cal.size(), rng);
    const auto est = reconstruct(cal, forward_means(cal, p));
    for (std::size_t s = 0; s < p.size(); ++s) CHECK(std::abs(est.pops[s] - p[s]) < 1e-12);
    CHECK(std::abs(est.norm - 1.0) < 1e-12);
    double sum = 0.0;
    for (double v : est.pops) sum += v;
    CHECK(std::abs(sum - est.norm) < 1e-12);
  }
}

TEST_CASE("reconstruction is linear in the means") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto cal = random_nondegenerate(n, rng);
    std::vector<double> m1(cal.size()), m2(cal.size()), mix(cal.size());
    const double a = u(rng), b = u(rng);
    for (std::size_t k = 0; k < cal.size(); ++k) {
      m1[k] = u(rng);
      m2[k] = u(rng);
      mix[k] = a * m1[k] + b * m2[k];
    }
    const auto e1 = reconstruct(cal, m1), e2 = reconstruct(cal, m2), em = reconstruct(cal, mix);
    for (std::size_t k = 0; k < cal.size(); ++k) {
      CHECK(std::abs(em.pops[k] - (a * e1.pops[k] + b * e2.pops[k])) < 1e-12);
      CHECK(std::abs(em.correlators[k] - (a * e1.correlators[k] + b * e2.correlators[k])) < 1e-12);
    }
  }
}

TEST_CASE("two-qubit reconstruction agrees with Gaussian elimination") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto cal = random_nondegenerate(2, rng);
    std::vector<double> means(4);
    for (auto& m : means) m = u(rng);
    std::vector<std::vector<double>> M(4, std::vector<double>(4));
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t s = 0; s < 4; ++s) M[x][s] = cal[s ^ x];
    const auto want = oracle::solve(M, means);
    const auto got = reconstruct(cal, means).pops;
    for (std::size_t s = 0; s < 4; ++s) CHECK(std::abs(got[s] - want[s]) < 1e-10);
  }
}

TEST_CASE("sampled means reconstruct a norm near one") {
  // Default calibration, 3e5 shots per flip pattern.
  const std::vector<double> pops = {0.012, 0.488, 0.488, 0.012};
  int inside = 0;
  const int trials = 40;
  for (int seed = 0; seed < trials; ++seed) {
    std::vector<double> means(4);
    for (std::size_t x = 0; x < 4; ++x) {
      std::vector<double> flipped(4);
      for (std::size_t s = 0; s < 4; ++s) flipped[s ^ x] = pops[s];
      means[x] = sample_shots(kCal, flipped, 300000, static_cast<std::uint64_t>(seed * 4 + x)).running_mean;
    }
    const double norm = reconstruct(kCal, means).norm;
    if (norm >= 0.97 && norm <= 1.03) ++inside;
  }
  CHECK(inside >= 0.95 * trials);
}
