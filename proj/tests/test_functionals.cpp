#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ladderlab/constants.hpp"
#include "ladderlab/functionals.hpp"

using namespace ladderlab;

namespace {

HLEngine& eng() {
  static HLEngine e;
  return e;
}

const FunctionalConfig kCfg{};

}  // namespace

TEST_CASE("admissibility thresholds") {
  CHECK(f1_tau_min(1.0, kCfg) ==
        doctest::Approx(kOneMinusGamma * kCfg.ladder.T0));
  CHECK_THROWS_AS(f1_estimate(eng(), 1.0, 10.0, kCfg), std::domain_error);
  CHECK_THROWS_AS(f2_estimate(eng(), 1.3, 5.0, kCfg), std::domain_error);
  CHECK_THROWS_AS(f3_estimate(eng(), 2.0, 10.0, kCfg), std::domain_error);
  CHECK_THROWS_AS(f1_estimate(eng(), -1.0, 1e4, kCfg), std::domain_error);
  CHECK_THROWS_AS(f2_estimate(eng(), 0.9, 30.0, kCfg), std::domain_error);
}

TEST_CASE("range-cap errors are explicit") {
  CHECK_THROWS_AS(f2_estimate(eng(), 1.3, 80.0, kCfg), std::domain_error);
  CHECK_THROWS_AS(f3_estimate(eng(), 3.0, 200.0, kCfg), std::domain_error);
}

TEST_CASE("F1 with increment-solve is exact by construction") {
  FunctionalConfig cfg = kCfg;
  cfg.method = ReverseMethod::increment_solve;
  for (double x : {0.7, 1.0, 2.1}) {
    const double est = f1_estimate(eng(), x, 1e4, cfg);
    CHECK(std::abs(est - x) <= 10.0 * cfg.ladder.tol * x + 1e-6);
  }
}

TEST_CASE("F1 with mainterm-invert recovers x at tau = 1e4") {
  CHECK(std::abs(f1_estimate(eng(), 1.0, 1e4, kCfg) - 1.0) <= 0.02);
  CHECK(std::abs(f1_estimate(eng(), 2.0, 1e4, kCfg) - 2.0) <= 0.04);
}

TEST_CASE("f1_limit trend over the spec grid") {
  const auto est = f1_limit(eng(), 1.0, {1e3, 1e4, 3e4}, kCfg);
  CHECK(est.converged);
  CHECK(est.final_residual <= kCfg.tol_conv);
  // residual shrinks across the window
  CHECK(std::abs(est.raw.back() - 1.0) < std::abs(est.raw.front() - 1.0));

  SUBCASE("slope-ray association reproduces x") {
    // the stored ray parameter y(tau;x)/tau * (1-c) recovers x exactly
    const double x = 1.0, tau = 1e4;
    const double ray = x / kOneMinusGamma * tau;
    CHECK(ray / tau * kOneMinusGamma == doctest::Approx(x));
    CHECK(std::atan(x / kOneMinusGamma) > 0.0);
    CHECK(std::atan(x / kOneMinusGamma) < kPi / 2.0);
  }

  SUBCASE("empty grid rejected") {
    CHECK_THROWS_AS(f1_limit(eng(), 1.0, {}, kCfg), std::invalid_argument);
  }
}

TEST_CASE("F1 algebra (4.10)-(4.12)") {
  const double tau = 1e4;
  CHECK(f1_algebra_check(eng(), {1.0, 1.0}, AlgebraMode::sum, tau, kCfg).pass);
  CHECK(f1_algebra_check(eng(), {2.0, 3.0}, AlgebraMode::product, tau, kCfg)
            .pass);
  const auto quot =
      f1_algebra_check(eng(), {2.0, 2.0}, AlgebraMode::quotient, tau, kCfg);
  CHECK(quot.pass);
  CHECK(std::abs(quot.rhs - 1.0) <= 0.02);

  SUBCASE("additivity for a split of one argument") {
    const double whole = f1_estimate(eng(), 2.0, tau, kCfg);
    const double parts = f1_estimate(eng(), 0.7, tau, kCfg) +
                         f1_estimate(eng(), 1.3, tau, kCfg);
    CHECK(std::abs(whole - parts) <= 0.05);
  }

  SUBCASE("random tuples stay within combined tolerances") {
    std::mt19937 rng(424243);
    std::uniform_real_distribution<double> pick(0.3, 3.0);
    for (int i = 0; i < 10; ++i) {
      const std::vector<double> xs{pick(rng), pick(rng)};
      CHECK(f1_algebra_check(eng(), xs, AlgebraMode::sum, tau, kCfg).pass);
    }
  }

  SUBCASE("quotient arity enforced") {
    CHECK_THROWS_AS(
        f1_algebra_check(eng(), {1.0, 2.0, 3.0}, AlgebraMode::quotient, tau,
                         kCfg),
        std::invalid_argument);
  }
}

TEST_CASE("F2 raw and corrected series at x = 1.3") {
  for (double tau : {25.0, 30.0, 35.0}) {
    const auto [raw, corrected] = f2_estimate(eng(), 1.3, tau, kCfg);
    // dominant correction is (1-c)^{1/tau}
    CHECK(std::abs(raw / 1.3 - std::pow(kOneMinusGamma, 1.0 / tau)) <= 0.01);
    CHECK(std::abs(corrected - 1.0) <= 0.02);
  }

  SUBCASE("raw approaches x monotonically along the grid") {
    const auto est = f2_limit(eng(), 1.3, {25.0, 30.0, 35.0}, kCfg);
    CHECK(std::abs(est.raw[2] - 1.3) < std::abs(est.raw[1] - 1.3));
    CHECK(std::abs(est.raw[1] - 1.3) < std::abs(est.raw[0] - 1.3));
    CHECK(est.converged);
  }
}

TEST_CASE("F3 raw and corrected at x = 2") {
  const auto [raw, corrected] = f3_estimate(eng(), 2.0, 300.0, kCfg);
  CHECK(std::abs(corrected - 2.0) <= 0.05);

  SUBCASE("raw - x tracks the (6.7) correction at tau = 200") {
    const auto [r200, c200] = f3_estimate(eng(), 2.0, 200.0, kCfg);
    const double predicted = std::log(kOneMinusGamma) / std::log(200.0);
    CHECK(std::abs((r200 - 2.0) - predicted) <= 0.25 * std::abs(predicted));
    (void)c200;
  }

  SUBCASE("x-recovery separation at equal tau") {
    const double lo = f3_estimate(eng(), 1.5, 80.0, kCfg).second;
    const double hi = f3_estimate(eng(), 2.5, 80.0, kCfg).second;
    CHECK(hi - lo >= 0.7);
  }
}

TEST_CASE("fermat_rational exact arithmetic") {
  CHECK(fermat_rational({3, 4, 5, 2}) == 1.0);
  CHECK(fermat_rational({1, 1, 1, 3}) == 2.0);
  CHECK(fermat_rational({2, 3, 4, 3}) == doctest::Approx(35.0 / 64.0));
  // huge exponent: exact big-integer powers, never wraps
  CHECK(fermat_rational({2, 2, 2, 100}) == 2.0);
  CHECK_THROWS_AS(fermat_rational({0, 1, 1, 3}), std::invalid_argument);
}

TEST_CASE("fermat discriminator variants") {
  const FermatTriple cube{1, 1, 1, 3};
  const FermatTriple pyth{3, 4, 5, 2};

  const auto v1 = fermat_zeta_test(eng(), cube, 1, {1e4}, kCfg);
  CHECK(v1.distance >= 0.9);
  CHECK(v1.pass);

  const auto p1 = fermat_zeta_test(eng(), pyth, 1, {1e4}, kCfg);
  CHECK(p1.distance <= 0.03);
  CHECK(p1.pass);

  const auto v2 = fermat_zeta_test(eng(), cube, 2, {1e3}, kCfg);
  CHECK(std::abs(v2.estimate - 2.0) <= 0.1);
  CHECK(v2.distance >= 0.9);

  const auto v3 = fermat_zeta_test(eng(), cube, 3, {300.0}, kCfg);
  CHECK(std::abs(v3.estimate - 2.0) <= 0.05);

  const auto v4 = fermat_zeta_test(eng(), cube, 4, {500.0}, kCfg);
  CHECK(std::abs(v4.estimate - 2.0) <= 0.1);

  SUBCASE("variant 4 cap guard") {
    CHECK_THROWS_AS(fermat_zeta_test(eng(), pyth, 4, {10.0}, kCfg),
                    std::domain_error);
  }
  SUBCASE("variant range guard") {
    CHECK_THROWS_AS(fermat_zeta_test(eng(), cube, 5, {1e4}, kCfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(fermat_zeta_test(eng(), cube, 1, {}, kCfg),
                    std::invalid_argument);
  }
}
