#include "ladderlab/zeta.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ladderlab/constants.hpp"

namespace ladderlab {
namespace {

std::atomic<std::int64_t> g_z_evals{0};

// ---------------------------------------------------------------------------
// Complex log-Gamma (Lanczos, g = 7, 9 terms).
// ---------------------------------------------------------------------------

std::complex<double> log_gamma(std::complex<double> z) {
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
      771.32342877765313,     -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  std::complex<double> x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  std::complex<double> t = z + 7.5;
  return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double theta_asymptotic(double t) {
  const double lg = std::log(t / kTwoPi);
  return 0.5 * t * lg - 0.5 * t - kPi / 8 + 1.0 / (48 * t) +
         7.0 / (5760 * t * t * t) + 31.0 / (80640 * std::pow(t, 5)) +
         127.0 / (430080 * std::pow(t, 7));
}

double theta_loggamma(double t) {
  const std::complex<double> lg = log_gamma({0.25, 0.5 * t});
  return lg.imag() - 0.5 * t * std::log(kPi);
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin zeta(1/2+it).
// ---------------------------------------------------------------------------

// B_{2k}/(2k)! for k = 1..12.
constexpr std::array<double, 12> kBernFac = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812522e-19};

std::complex<double> zeta_half_em_impl(double t) {
  const std::complex<double> s(0.5, t);
  const int n_cut = std::max(24, static_cast<int>(std::ceil(0.65 * t)) + 1);
  std::complex<double> acc(0.0, 0.0);
  for (int n = 1; n < n_cut; ++n) {
    const double ln = std::log(static_cast<double>(n));
    acc += std::exp(-0.5 * ln) * std::polar(1.0, -t * ln);
  }
  const double lnn = std::log(static_cast<double>(n_cut));
  acc += std::exp((1.0 - s) * lnn) / (s - 1.0);
  acc += 0.5 * std::exp(-s * lnn);
  std::complex<double> poch = s;
  for (int k = 1; k <= 12; ++k) {
    acc += kBernFac[k - 1] * poch *
           std::exp((-s - static_cast<double>(2 * k - 1)) * lnn);
    poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Riemann-Siegel remainder coefficients C0..C4.
//
// C_j are built from derivatives of the entire function
//   Psi(p) = cos(2*pi*(p^2 - p - 1/16)) / cos(2*pi*p),
// evaluated by a Cauchy-integral trapezoid rule on a complex circle (the
// removable singularities of the quotient never meet the off-axis nodes).
// Each C_j is then frozen into a Chebyshev interpolant on p in [0,1].
// ---------------------------------------------------------------------------

std::complex<double> psi_entire(std::complex<double> z) {
  return std::cos(kTwoPi * (z * z - z - 1.0 / 16.0)) / std::cos(kTwoPi * z);
}

// Derivatives Psi^(0..12)(p) for real p.
std::array<double, 13> psi_derivs(double p) {
  constexpr int m = 64;
  constexpr double r = 0.3;
  std::array<std::complex<double>, m> vals;
  for (int j = 0; j < m; ++j) {
    const double phi = kTwoPi * (j + 0.5) / m;
    vals[j] = psi_entire({p + r * std::cos(phi), r * std::sin(phi)});
  }
  std::array<double, 13> out{};
  double fact = 1.0, rk = 1.0;
  for (int k = 0; k <= 12; ++k) {
    std::complex<double> s(0.0, 0.0);
    for (int j = 0; j < m; ++j) {
      const double phi = kTwoPi * (j + 0.5) * k / m;
      s += vals[j] * std::complex<double>(std::cos(phi), -std::sin(phi));
    }
    out[k] = s.real() / m * fact / rk;
    if (k < 12) {
      fact *= (k + 1);
      rk *= r;
    }
  }
  return out;
}

std::array<double, 5> rs_coeffs_direct(double p) {
  const auto d = psi_derivs(p);
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;
  const double pi6 = pi4 * pi2;
  const double pi8 = pi4 * pi4;
  return {
      d[0],
      -d[3] / (96 * pi2),
      d[6] / (18432 * pi4) + d[2] / (64 * pi2),
      -d[9] / (5308416 * pi6) - d[5] / (3840 * pi4) - d[1] / (64 * pi2),
      d[12] / (2038431744.0 * pi8) + 11 * d[8] / (5898240 * pi6) +
          19 * d[4] / (24576 * pi4) + d[0] / (128 * pi2),
  };
}

struct ChebFit {
  static constexpr int kDeg = 60;
  std::array<double, kDeg + 1> coef{};

  double eval(double p) const {
    // p in [0,1] -> x in [-1,1], Clenshaw.
    const double x = 2.0 * p - 1.0;
    double b1 = 0.0, b2 = 0.0;
    for (int k = kDeg; k >= 1; --k) {
      const double b0 = 2.0 * x * b1 - b2 + coef[k];
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + coef[0];
  }
};

struct RsTables {
  std::array<ChebFit, 5> c;

  RsTables() {
    constexpr int n = ChebFit::kDeg + 1;
    std::array<std::array<double, 5>, n> samples;
    std::array<double, n> xs;
    for (int i = 0; i < n; ++i) {
      xs[i] = std::cos(kPi * (i + 0.5) / n);
      samples[i] = rs_coeffs_direct(0.5 * (xs[i] + 1.0));
    }
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          s += samples[i][j] * std::cos(kPi * k * (i + 0.5) / n);
        c[j].coef[k] = (k == 0 ? 1.0 : 2.0) * s / n;
      }
    }
  }
};

const RsTables& rs_tables() {
  static const RsTables tables;
  return tables;
}

double hardy_z_rs_impl(double t) {
  const double tau = t / kTwoPi;
  const double a = std::sqrt(tau);
  const int n_main = static_cast<int>(a);
  const double p = a - n_main;
  const double th = theta_asymptotic(t);
  double sum = 0.0;
  for (int n = 1; n <= n_main; ++n) {
    const double ln = std::log(static_cast<double>(n));
    sum += std::cos(th - t * ln) / std::sqrt(static_cast<double>(n));
  }
  sum *= 2.0;
  const auto& tab = rs_tables();
  const double inv = 1.0 / a;
  double rem = 0.0, scale = 1.0;
  for (int j = 0; j < 5; ++j) {
    rem += tab.c[j].eval(p) * scale;
    scale *= inv;
  }
  const double sign = (n_main % 2 == 0) ? -1.0 : 1.0;
  return sum + sign * rem / std::sqrt(a);
}

}  // namespace

double theta(double t) {
  if (t < 1.0) throw std::domain_error("theta: requires t >= 1");
  return detail::theta_any(t);
}

double hardy_z(double t) {
  if (t < 0.0) throw std::domain_error("hardy_z: requires t >= 0");
  g_z_evals.fetch_add(1, std::memory_order_relaxed);
  return t < kRsSwitch ? detail::hardy_z_em(t) : hardy_z_rs_impl(t);
}

double zeta_mod_sq(double t) {
  const double z = hardy_z(t);
  return z * z;
}

CriticalSample critical_sample(double t) {
  const double z = hardy_z(t);
  return {t, detail::theta_any(t), z, z * z};
}

namespace detail {

double theta_any(double t) {
  return t >= 10.0 ? theta_asymptotic(t) : theta_loggamma(t);
}

std::complex<double> zeta_half_em(double t) { return zeta_half_em_impl(t); }

double hardy_z_em(double t) {
  const std::complex<double> zeta = zeta_half_em_impl(t);
  return (std::polar(1.0, theta_any(t)) * zeta).real();
}

double hardy_z_rs(double t) {
  if (t < kTwoPi) throw std::domain_error("hardy_z_rs: empty main sum");
  return hardy_z_rs_impl(t);
}

std::int64_t z_eval_count() { return g_z_evals.load(std::memory_order_relaxed); }

}  // namespace detail

}  // namespace ladderlab
