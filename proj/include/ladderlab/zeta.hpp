#pragma once

#include <complex>
#include <cstdint>

namespace ladderlab {

// One evaluation point on the critical line.
struct CriticalSample {
  double t = 0.0;       // height
  double theta = 0.0;   // Riemann-Siegel phase theta(t)
  double z = 0.0;       // Hardy Z(t)
  double mod_sq = 0.0;  // |zeta(1/2+it)|^2 == z^2
};

// Riemann-Siegel phase theta(t).
// Asymptotic series (four correction terms) for t >= 10, direct complex
// log-Gamma below. Absolute error <= 1e-10 for t >= 10.
// Throws std::domain_error for t < 1.
double theta(double t);

// Hardy's Z(t). Euler-Maclaurin branch below kRsSwitch, Riemann-Siegel main
// sum with correction terms C0..C4 above. |error| <= 1e-8 on [10, 1e6].
// Throws std::domain_error for t < 0.
double hardy_z(double t);

// Z(t)^2 = |zeta(1/2+it)|^2.
double zeta_mod_sq(double t);

CriticalSample critical_sample(double t);

// Branch switch height for hardy_z. Both branches stay usable on a wide
// overlap window for cross-checks.
inline constexpr double kRsSwitch = 300.0;

namespace detail {

// theta(t) for any t >= 0 (no domain guard); needed by the phase-track head.
double theta_any(double t);

// zeta(1/2+it) by Euler-Maclaurin summation; accurate to ~1e-12 up to
// t ~ 1000 (cost grows linearly with t).
std::complex<double> zeta_half_em(double t);

// Riemann-Siegel branch alone (main sum + C0..C4); valid for t where the
// main sum is nonempty (t >= 2*pi).
double hardy_z_rs(double t);

// Euler-Maclaurin branch alone.
double hardy_z_em(double t);

// Global count of Z evaluations (diagnostics only).
std::int64_t z_eval_count();

}  // namespace detail

}  // namespace ladderlab
