#include "ladderlab/phase_track.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ladderlab/constants.hpp"
#include "ladderlab/zeta.hpp"

namespace ladderlab {
namespace {

// Gauss-Legendre 5 on [-1,1].
constexpr double kGlx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                            0.5384693101056831, 0.9061798459386640};
constexpr double kGlw[5] = {0.2369268850561891, 0.4786286704993665,
                            0.5688888888888889, 0.4786286704993665,
                            0.2369268850561891};

double gl5_theta(double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += kGlw[i] * detail::theta_any(mid + half * kGlx[i]);
  return s * half;
}

double theta_prime(double t) {
  return 0.5 * std::log(std::max(t, kTwoPi + 1.0) / kTwoPi);
}

struct ZeroScanner {
  std::int64_t evals = 0;
  std::int64_t budget = 0;
  std::vector<double> zeros;

  double z(double t) {
    if (++evals > budget)
      throw std::runtime_error(
          "phase track: zero-scan evaluation budget exceeded");
    return hardy_z(t);
  }

  void refine(double a, double b, double fa) {
    // [a, b] brackets a sign change; fa fixes the orientation
    while (b - a > 1e-10 * std::max(1.0, a)) {
      const double m = 0.5 * (a + b);
      const double fm = z(m);
      if ((fa < 0.0) != (fm < 0.0)) {
        b = m;
      } else {
        a = m;
        fa = fm;
      }
    }
    zeros.push_back(0.5 * (a + b));
  }

  // Looks for sign changes on [a,b]; recurses where |Z| dips suspiciously
  // low without changing sign (close zero pairs).
  void scan(double a, double b, double fa, double fb, int depth) {
    const double q = 0.25 * (b - a);
    const double m1 = a + q, m2 = a + 2 * q, m3 = a + 3 * q;
    const double f1 = z(m1), f2 = z(m2), f3 = z(m3);
    const double ts[5] = {a, m1, m2, m3, b};
    const double fs[5] = {fa, f1, f2, f3, fb};
    bool any_change = false;
    for (int i = 0; i < 4; ++i) {
      if ((fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
        any_change = true;
        if (depth < 10 && ts[i + 1] - ts[i] > 2e-3)
          scan(ts[i], ts[i + 1], fs[i], fs[i + 1], depth + 1);
        else
          refine(ts[i], ts[i + 1], fs[i]);
      }
    }
    if (any_change) return;
    const double dip =
        std::min({std::abs(f1), std::abs(f2), std::abs(f3)});
    if (depth < 10 && dip < 1.0 && b - a > 2e-3)
      for (int i = 0; i < 4; ++i) scan(ts[i], ts[i + 1], fs[i], fs[i + 1], depth + 1);
  }

  void run(double t_end) {
    double t = 0.0;
    double ft = z(1e-3);  // Z(0) = zeta(1/2) < 0; avoid the t=0 corner
    while (t < t_end) {
      const double h =
          std::clamp(kPi / (2.0 * std::max(theta_prime(t), 0.8)), 0.05, 0.5);
      const double u = std::min(t + h, t_end);
      const double fu = z(u);
      scan(t, u, ft, fu, 0);
      t = u;
      ft = fu;
    }
    std::sort(zeros.begin(), zeros.end());
    zeros.erase(std::unique(zeros.begin(), zeros.end(),
                            [](double x, double y) { return y - x < 1e-9; }),
                zeros.end());
  }
};

}  // namespace

std::int64_t PhaseTrack::n_of(double t) const {
  return std::upper_bound(zeros.begin(), zeros.end(), t) - zeros.begin();
}

double PhaseTrack::s(double t) const {
  const double lo = has_head() ? 0.0 : anchor_t;
  if (t < lo || t > end_t)
    throw std::out_of_range("PhaseTrack::s: t outside track");
  auto it = std::upper_bound(zeros.begin(), zeros.end(), t);
  double n = static_cast<double>(it - zeros.begin());
  if (it != zeros.begin() && *(it - 1) == t) n -= 0.5;  // midpoint convention
  return n - 1.0 - detail::theta_any(t) / kPi;
}

double PhaseTrack::s1(double t) const {
  const double lo = has_head() ? 0.0 : anchor_t;
  if (t < lo || t > end_t)
    throw std::out_of_range("PhaseTrack::s1: t outside track");
  if (t < anchor_t) {
    const double step = anchor_t / (head_grid_.size() - 1);
    const auto i = static_cast<std::size_t>(t / step);
    const double a = head_grid_[i];
    return head_s1_[i] - (t - a) - gl5_theta(a, t) / kPi;
  }
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  const auto i = static_cast<std::size_t>(it - grid.begin()) - 1;
  const double a = grid[i];
  if (a == t) return s1_values[i];
  const double n = static_cast<double>(n_of(a));
  return s1_values[i] + (n - 1.0) * (t - a) - gl5_theta(a, t) / kPi;
}

PhaseTrack build_phase_track(double t_start, double t_end, double tol,
                             std::int64_t budget) {
  if (!(t_start >= 10.0 && t_start <= t_end))
    throw std::domain_error("build_phase_track: requires 10 <= t_start <= t_end");
  if (!(tol > 0.0)) throw std::invalid_argument("build_phase_track: tol > 0");

  PhaseTrack track;
  track.anchor_t = t_start;
  track.end_t = t_end;

  ZeroScanner scanner;
  scanner.budget = budget;
  scanner.run(t_end);
  track.zeros = std::move(scanner.zeros);
  track.z_evals = scanner.evals;

  // Head prefix table on [0, 10] (no zeros there; S = -1 - theta/pi).
  {
    constexpr int n = 200;
    track.head_grid_.resize(n + 1);
    track.head_s1_.resize(n + 1);
    double acc = 0.0;
    track.head_grid_[0] = 0.0;
    track.head_s1_[0] = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double a = 10.0 * (i - 1) / n;
      const double b = 10.0 * i / n;
      acc += -(b - a) - gl5_theta(a, b) / kPi;
      track.head_grid_[i] = b;
      track.head_s1_[i] = acc;
    }
  }

  // Mandatory grid points on [10, t_end]: zeros, midpoints between
  // consecutive zeros, the anchor, the ends.
  std::vector<double> pts{10.0, t_start, t_end};
  for (std::size_t i = 0; i < track.zeros.size(); ++i) {
    const double zi = track.zeros[i];
    if (zi < 10.0 || zi > t_end) continue;
    pts.push_back(zi);
    if (i + 1 < track.zeros.size() && track.zeros[i + 1] <= t_end)
      pts.push_back(0.5 * (zi + track.zeros[i + 1]));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Fill so steps stay below both the tol-linked cap and the phase-drift
  // bound |delta theta| <= 0.4*pi.
  std::vector<double> full;
  const double h_tol = std::clamp(2000.0 * tol, 0.05, 2.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    full.push_back(a);
    const double h_cap = std::min(h_tol, 0.4 * kPi / std::max(theta_prime(b), 0.5));
    const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / h_cap)));
    for (int k = 1; k < parts; ++k) full.push_back(a + (b - a) * k / parts);
  }
  full.push_back(pts.back());

  // Prefix S1 along the full grid from t = 10.
  std::vector<double> s1(full.size());
  s1[0] = track.head_s1_.back();  // S1(10)
  for (std::size_t i = 0; i + 1 < full.size(); ++i) {
    const double a = full[i];
    const double b = full[i + 1];
    const double n = static_cast<double>(track.n_of(a));
    s1[i + 1] = s1[i] + (n - 1.0) * (b - a) - gl5_theta(a, b) / kPi;
  }

  const auto a_it = std::lower_bound(full.begin(), full.end(), t_start);
  const auto a_idx = static_cast<std::size_t>(a_it - full.begin());
  track.grid.assign(full.begin() + a_idx, full.end());
  track.s1_values.assign(s1.begin() + a_idx, s1.end());
  track.s_values.resize(track.grid.size());
  for (std::size_t i = 0; i < track.grid.size(); ++i)
    track.s_values[i] = track.s(track.grid[i]);

  // Step-control and branch-integrity guards; never silent.
  for (std::size_t i = 0; i + 1 < track.s_values.size(); ++i)
    if (std::abs(track.s_values[i + 1] - track.s_values[i]) >= 0.5 + 1e-9)
      throw std::runtime_error("phase track: branch loss (|dS| >= 1/2)");
  for (double sv : track.s_values)
    if (std::abs(sv) > 2.8)
      throw std::runtime_error("phase track: suspected zero miscount (|S| > 2.8)");

  return track;
}

}  // namespace ladderlab
