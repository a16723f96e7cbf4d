#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ladderlab/constants.hpp"
#include "ladderlab/ladder.hpp"

using namespace ladderlab;

TEST_CASE("phi1 solves the main-term equation below T") {
  HLEngine eng;
  LadderConfig cfg;
  for (double T : {1e3, 1e4, 1e5}) {
    const double y = phi1(eng, T, cfg);
    CHECK(y < T);
    CHECK(std::abs(g_main(y) - (eng.j(T) - cfg.c0)) <=
          10.0 * cfg.tol * eng.j(T));
    // gap law shape for the forward map
    const double ratio = (T - y) * std::log(T) / (kOneMinusGamma * T);
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.2);
  }
  CHECK(phi1(eng, 1e4, cfg) < phi1(eng, 1e4 + 100.0, cfg));
  CHECK_THROWS_AS(phi1(eng, 100.0, cfg), std::domain_error);
}

TEST_CASE("phi1_iter composes and guards its floor") {
  HLEngine eng;
  LadderConfig cfg;
  CHECK(phi1_iter(eng, 1e5, 0, cfg) == 1e5);
  const double two = phi1_iter(eng, 1e5, 2, cfg);
  CHECK(two < phi1(eng, 1e5, cfg));
  CHECK(std::abs(two - phi1(eng, phi1(eng, 1e5, cfg), cfg)) <= 1e-9 * two);
  // iterates of a barely-admissible point fall below T0 quickly
  CHECK_THROWS_AS(phi1_iter(eng, 1050.0, 5, cfg), std::runtime_error);
}

TEST_CASE("reverse_step satisfies its defining equations") {
  HLEngine eng;
  LadderConfig cfg;
  const double T = 1e4;

  const double xi = reverse_step(eng, T, cfg, ReverseMethod::increment_solve);
  const double lhs = eng.hl_integral(T, xi, 1e-9).value;
  CHECK(std::abs(lhs / (kOneMinusGamma * T) - 1.0) <= 10.0 * cfg.tol);

  const double xm = reverse_step(eng, T, cfg, ReverseMethod::mainterm_invert);
  CHECK(std::abs(phi1(eng, xm, cfg) - T) <= 1e-6 * T);

  // the two methods differ only by the Ingham error
  CHECK(std::abs(xi - xm) <= 0.05 * (xi - T));

  const double gap = (xm - T) * std::log(T) / (kOneMinusGamma * T);
  CHECK(gap > 0.8);
  CHECK(gap < 1.2);
}

TEST_CASE("inverse pair holds for 20 random base points") {
  HLEngine eng;
  LadderConfig cfg;
  std::mt19937 rng(8191);
  std::uniform_real_distribution<double> pick(3.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    const double T = std::pow(10.0, pick(rng));
    const double X = reverse_step(eng, T, cfg);
    CHECK(std::abs(phi1(eng, X, cfg) - T) <= 1e-6 * T);
  }
}

TEST_CASE("build_chain structure and increment law") {
  HLEngine eng;
  LadderConfig cfg;
  const double T = 1e4;
  const auto chain = build_chain(eng, T, 3, cfg);
  REQUIRE(chain.points.size() == 3);

  SUBCASE("k = 1 reduces to reverse_step") {
    const auto one = build_chain(eng, T, 1, cfg);
    CHECK(one.points[0] == chain.points[0]);
  }

  SUBCASE("strictly increasing with T^k ~ T") {
    double prev = T;
    for (double p : chain.points) {
      CHECK(p > prev);
      prev = p;
    }
    CHECK(chain.point(3) / T - 1.0 <=
          3.0 * kOneMinusGamma * 1.3 / std::log(T));
  }

  SUBCASE("increments near (1-c) T^{r-1}") {
    for (int r = 1; r <= 3; ++r) {
      const double scaled =
          chain.increments[r - 1].value / (kOneMinusGamma * chain.point(r - 1));
      CHECK(std::abs(scaled - 1.0) <= 0.05);
    }
  }

  SUBCASE("invalid depth rejected") {
    CHECK_THROWS_AS(build_chain(eng, T, 0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(build_chain(eng, T, cfg.k_max + 1, cfg),
                    std::invalid_argument);
  }
}

TEST_CASE("omega and tilde_z_sq") {
  HLEngine eng;
  LadderConfig cfg;
  CHECK(omega(eng, 1e5, cfg) / std::log(1e5) > 0.95);
  CHECK(omega(eng, 1e5, cfg) / std::log(1e5) < 1.05);

  for (double t : {1e3, 2.5e4, 9e4}) CHECK(tilde_z_sq(eng, t, cfg) >= 0.0);

  // fundamental-theorem check: tilde_z_sq integrates to a phi1 difference
  const double T = 1e4, delta = 50.0;
  auto f = [&](double t) { return tilde_z_sq(eng, t, cfg); };
  const double lhs = integrate(f, T, T + delta, 1e-8).value;
  const double rhs = phi1(eng, T + delta, cfg) - phi1(eng, T, cfg);
  CHECK(std::abs(lhs - rhs) <= 1e-5 * rhs);
}
