#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ladderlab/sample_cache.hpp"

namespace ladderlab {

struct PhaseTrack;

struct IntegralResult {
  double value = 0.0;
  double err_est = 0.0;
  std::int64_t evals = 0;
  std::pair<double, double> interval{0.0, 0.0};
  bool converged = true;
};

// Adaptive Gauss-Kronrod (15|7) integration.
// |value - true| <= max(tol*|value|, tol) with high confidence. Exhausting
// `max_evals` returns the partial result with converged = false.
IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, double tol,
                         std::int64_t max_evals = 50'000'000);

// moment integral of |S1|^{2l} over [a,b]; see PhaseTrack for coverage rules.
IntegralResult s1_moment(const PhaseTrack& track, double a, double b, int l,
                         double tol = 1e-4);

// Evaluates J(T) = int_0^T |zeta(1/2+it)|^2 dt and its increments.
//
// The axis is cut into a fixed ladder of panels whose width follows the local
// oscillation scale 2*pi/ln t; per-panel GK15 values are accumulated into
// memoized prefix sums, so repeated J queries cost only the partial panel at
// the endpoint. Panel layout is a pure function of nothing but the rule, so
// results are bit-reproducible and the node set is cacheable on disk.
class HLEngine {
 public:
  explicit HLEngine(double t_cap = 1e6, SampleCache* cache = nullptr);

  double t_cap() const { return t_cap_; }

  // J(b) - J(a), relative error <= tol. Requires 0 <= a <= b <= t_cap.
  IntegralResult hl_integral(double a, double b, double tol = 1e-6);

  double j(double t, double tol = 1e-6);

  // Cache-aware |zeta(1/2+it)|^2.
  double mod_sq(double t);

  // Deterministic first-level GK15 node positions covering [a, b]
  // (for cache warming).
  std::vector<double> panel_nodes(double a, double b) const;

  std::int64_t evals() const { return evals_; }
  SampleCache* cache() const { return cache_; }

  static double panel_width(double t);

 private:
  struct PanelValue {
    double value;
    double err;
  };

  void ensure_bounds(double t);
  std::size_t panel_index(double t) const;
  // Prefix J(0 .. bounds_[k]).
  double prefix(std::size_t k, double* err_acc);
  PanelValue adaptive_panel(double a, double b, double tol_abs, int depth);
  PanelValue gk15(double a, double b);

  double t_cap_;
  SampleCache* cache_;
  std::vector<double> bounds_;      // bounds_[0] = 0
  std::vector<double> panel_vals_;  // integral over [bounds_[k], bounds_[k+1]]
  std::vector<double> panel_errs_;
  std::vector<double> cum_;  // cum_[k] = J(bounds_[k])
  std::vector<double> cum_errs_;
  std::int64_t evals_ = 0;
};

}  // namespace ladderlab
