#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ladderlab/constants.hpp"
#include "ladderlab/phase_track.hpp"
#include "ladderlab/quadrature.hpp"
#include "ladderlab/zeta.hpp"

using namespace ladderlab;

namespace {

// Independent fixed-grid Simpson oracle for J on short ranges.
double simpson_j(double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = zeta_mod_sq(a) + zeta_mod_sq(b);
  for (int i = 1; i < n; ++i)
    acc += zeta_mod_sq(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double ingham_main(double T) {
  return T * std::log(T / kTwoPi) + (2.0 * kEulerGamma - 1.0) * T;
}

}  // namespace

TEST_CASE("integrate handles closed forms") {
  auto one = [](double) { return 1.0; };
  const auto r = integrate(one, 0.0, 10.0, 1e-12);
  CHECK(r.value == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(r.converged);

  auto inv = [](double t) { return 1.0 / t; };
  const auto l = integrate(inv, 1.0, 100.0, 1e-10);
  CHECK(std::abs(l.value - std::log(100.0)) <= 1e-8);
}

TEST_CASE("integrate degenerate interval and ordering guard") {
  auto f = [](double t) { return t; };
  const auto r = integrate(f, 3.0, 3.0, 1e-8);
  CHECK(r.value == 0.0);
  CHECK(r.err_est == 0.0);
  CHECK_THROWS_AS(integrate(f, 2.0, 1.0, 1e-8), std::invalid_argument);
}

TEST_CASE("integrate interval additivity") {
  auto f = [](double t) { return std::sin(t) * std::exp(-t / 50.0); };
  const double whole = integrate(f, 0.0, 40.0, 1e-10).value;
  const double split =
      integrate(f, 0.0, 17.3, 1e-10).value + integrate(f, 17.3, 40.0, 1e-10).value;
  CHECK(std::abs(whole - split) <= 2e-9);
}

TEST_CASE("hl_integral against a brute-force Simpson oracle") {
  HLEngine eng;
  const double j100 = eng.j(100.0, 1e-9);
  const double oracle = simpson_j(0.0, 100.0, 40000);
  CHECK(std::abs(j100 - oracle) <= 1e-6 * oracle);

  const double inc = eng.hl_integral(100.0, 150.0, 1e-9).value;
  const double inc_oracle = simpson_j(100.0, 150.0, 30000);
  CHECK(std::abs(inc - inc_oracle) <= 1e-6 * inc_oracle);
}

TEST_CASE("hl_integral degenerate and domain guards") {
  HLEngine eng;
  const auto r = eng.hl_integral(1000.0, 1000.0);
  CHECK(r.value == 0.0);
  CHECK(r.err_est == 0.0);
  CHECK_THROWS_AS(eng.hl_integral(-1.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(eng.hl_integral(0.0, 2e6), std::domain_error);
}

TEST_CASE("hl_integral additivity over random subdivisions") {
  HLEngine eng;
  std::mt19937 rng(20260823);
  std::uniform_real_distribution<double> pick(100.0, 2000.0);
  for (int it = 0; it < 5; ++it) {
    double a = pick(rng), b = pick(rng), m = pick(rng);
    if (a > b) std::swap(a, b);
    m = std::clamp(m, a, b);
    const double whole = eng.hl_integral(a, b, 1e-9).value;
    const double split = eng.hl_integral(a, m, 1e-9).value +
                         eng.hl_integral(m, b, 1e-9).value;
    CHECK(std::abs(whole - split) <= 1e-6 * std::max(1.0, whole));
  }
}

TEST_CASE("Ingham envelope and mean-value bounds at T = 1e4") {
  HLEngine eng;
  const double T = 1e4;
  const double resid = eng.j(T) - ingham_main(T);
  CHECK(std::abs(resid) <= 5.0 * std::sqrt(T));

  const double inc = eng.hl_integral(T, 2.0 * T).value;
  CHECK(inc > 0.9 * T * std::log(T));
  // mean of |zeta|^2 over [T, 2T] tracks ln T within 10%
  CHECK(std::abs(inc / T / std::log(T) - 1.0) <= 0.1);
}

TEST_CASE("s1_moment basics on a short track") {
  const auto track = build_phase_track(10.0, 200.0, 1e-4);
  const auto zero = s1_moment(track, 50.0, 50.0, 1);
  CHECK(zero.value == 0.0);

  const double m1 = s1_moment(track, 20.0, 180.0, 1).value;
  const double m2 = s1_moment(track, 20.0, 180.0, 2).value;
  CHECK(m1 > 0.0);
  CHECK(m2 > 0.0);
  // Cauchy-Schwarz: (int |S1|)^2 <= (b - a) int S1^2
  CHECK(m1 * m1 <= 160.0 * m2 * (1.0 + 1e-12));

  CHECK_THROWS_AS(s1_moment(track, 20.0, 500.0, 1), std::out_of_range);
  CHECK_THROWS_AS(s1_moment(track, 20.0, 180.0, 0), std::invalid_argument);
}

TEST_CASE("panel width follows the oscillation scale") {
  CHECK(HLEngine::panel_width(10.0) == doctest::Approx(2.0));
  CHECK(HLEngine::panel_width(1e5) ==
        doctest::Approx(1.5 * kTwoPi / std::log(1e5)));
  CHECK(HLEngine::panel_width(1e300) == doctest::Approx(0.35));
}
