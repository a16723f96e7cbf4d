#include "ladderlab/ladder.hpp"

#include <cmath>
#include <stdexcept>

#include "ladderlab/constants.hpp"

namespace ladderlab {
namespace {

constexpr double kIterFloor = 100.0;

// Monotone root refinement on an increasing objective: bracketed secant with
// bisection safeguard.
template <typename F>
double solve_increasing(const F& f, double lo, double hi, double f_lo,
                        double f_hi, double f_tol) {
  double x = lo, fx = f_lo;
  for (int it = 0; it < 200; ++it) {
    if (std::abs(fx) <= f_tol || hi - lo <= 1e-13 * std::max(1.0, hi)) return x;
    double cand = lo + (hi - lo) * (-f_lo) / (f_hi - f_lo);  // secant
    const double margin = 0.01 * (hi - lo);
    if (!(cand > lo + margin && cand < hi - margin)) cand = 0.5 * (lo + hi);
    const double fc = f(cand);
    if (fc < 0.0) {
      lo = cand;
      f_lo = fc;
    } else {
      hi = cand;
      f_hi = fc;
    }
    x = cand;
    fx = fc;
  }
  return x;
}

}  // namespace

std::string to_string(ReverseMethod m) {
  return m == ReverseMethod::increment_solve ? "increment-solve"
                                             : "mainterm-invert";
}

double LadderChain::point(int r) const {
  if (r == 0) return base;
  return points.at(static_cast<std::size_t>(r) - 1);
}

double g_main(double y) {
  return y * std::log(y) + (kEulerGamma - kLnTwoPi) * y;
}

double g_main_prime(double y) {
  return std::log(y) + 1.0 + kEulerGamma - kLnTwoPi;
}

double phi1(HLEngine& eng, double T, const LadderConfig& cfg) {
  if (T < cfg.T0) throw std::domain_error("phi1: T below cfg.T0");
  const double target = eng.j(T) - cfg.c0;
  if (target <= g_main(kIterFloor))
    throw std::runtime_error("phi1: bracket failure (c0 out of range?)");
  // Newton from the expected offset T - (1-c) T / ln T.
  double y = T * (1.0 - kOneMinusGamma / std::max(std::log(T), 2.0));
  const double f_tol = cfg.tol * std::max(1.0, std::abs(target));
  for (int it = 0; it < 100; ++it) {
    const double res = g_main(y) - target;
    if (std::abs(res) <= f_tol) break;
    y -= res / g_main_prime(y);
    if (!(y > kIterFloor)) throw std::runtime_error("phi1: iterate left domain");
  }
  return y;
}

double phi1_iter(HLEngine& eng, double T, int k, const LadderConfig& cfg) {
  if (k < 0) throw std::invalid_argument("phi1_iter: k >= 0");
  double y = T;
  for (int step = 1; step <= k; ++step) {
    if (y < cfg.T0)
      throw std::runtime_error("phi1_iter: iterate " + std::to_string(step - 1) +
                               " fell below the ladder floor");
    y = phi1(eng, y, cfg);
  }
  return y;
}

double reverse_step(HLEngine& eng, double T, const LadderConfig& cfg,
                    ReverseMethod method) {
  if (T < cfg.T0) throw std::domain_error("reverse_step: T below cfg.T0");
  const double slope = kOneMinusGamma * T;
  const double gap0 = slope / std::log(T);

  const double target = method == ReverseMethod::increment_solve
                            ? slope
                            : g_main(T) + cfg.c0;
  auto objective = [&](double x) {
    return method == ReverseMethod::increment_solve
               ? eng.hl_integral(T, x, 1e-8).value - target
               : eng.j(x) - target;
  };

  // Gap-law bracket, widened geometrically on failure.
  double lo = T + 0.5 * gap0;
  double hi = T + 2.0 * gap0;
  double f_lo = objective(lo);
  double f_hi = objective(hi);
  while (f_lo > 0.0 && lo > T + 1e-9 * T) {
    hi = lo;
    f_hi = f_lo;
    lo = T + 0.5 * (lo - T);
    f_lo = objective(lo);
  }
  int widen = 0;
  while (f_hi < 0.0) {
    if (++widen > 40 || hi > eng.t_cap())
      throw std::runtime_error(
          "reverse_step: no bracket in [" + std::to_string(lo) + ", " +
          std::to_string(hi) + "]");
    lo = hi;
    f_lo = f_hi;
    hi = T + 1.6 * (hi - T);
    f_hi = objective(hi);
  }
  const double f_tol = cfg.tol * slope;
  return solve_increasing(objective, lo, hi, f_lo, f_hi, f_tol);
}

LadderChain build_chain(HLEngine& eng, double T, int k,
                        const LadderConfig& cfg, ReverseMethod method) {
  if (k < 1 || k > cfg.k_max)
    throw std::invalid_argument("build_chain: requires 1 <= k <= k_max");
  LadderChain chain;
  chain.base = T;
  chain.method = method;
  double prev = T;
  for (int r = 1; r <= k; ++r) {
    const double next = reverse_step(eng, prev, cfg, method);
    chain.points.push_back(next);
    chain.gaps.push_back(next - prev);
    chain.increments.push_back(eng.hl_integral(prev, next, 1e-8));
    prev = next;
  }
  return chain;
}

double omega(HLEngine& eng, double t, const LadderConfig& cfg) {
  return g_main_prime(phi1(eng, t, cfg));
}

double tilde_z_sq(HLEngine& eng, double t, const LadderConfig& cfg) {
  if (t < cfg.T0) throw std::domain_error("tilde_z_sq: t below cfg.T0");
  return eng.mod_sq(t) / omega(eng, t, cfg);
}

}  // namespace ladderlab
