#include "ladderlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ladderlab/constants.hpp"
#include "ladderlab/phase_track.hpp"
#include "ladderlab/zeta.hpp"

namespace ladderlab {
namespace {

// QUADPACK dqk15 abscissae/weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Gk15Out {
  double value;
  double err;
};

template <typename F>
Gk15Out gk15_apply(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    resk += kWgk[i] * fsum;
    if (i % 2 == 1) resg += kWg[i / 2] * fsum;
  }
  return {resk * half, std::abs(resk - resg) * half};
}

struct AdaptiveState {
  const std::function<double(double)>* f;
  std::int64_t evals = 0;
  std::int64_t max_evals = 0;
  bool converged = true;
};

void adaptive_recurse(AdaptiveState& st, double a, double b, double tol_abs,
                      int depth, double& value, double& err) {
  auto wrapped = [&st](double x) {
    ++st.evals;
    return (*st.f)(x);
  };
  const Gk15Out g = gk15_apply(wrapped, a, b);
  if (g.err <= tol_abs || depth >= 52 || b - a < 1e-14 * std::abs(b) + 1e-300) {
    value += g.value;
    err += g.err;
    return;
  }
  if (st.evals > st.max_evals) {
    st.converged = false;
    value += g.value;
    err += g.err;
    return;
  }
  const double mid = 0.5 * (a + b);
  adaptive_recurse(st, a, mid, 0.5 * tol_abs, depth + 1, value, err);
  adaptive_recurse(st, mid, b, 0.5 * tol_abs, depth + 1, value, err);
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, double tol, std::int64_t max_evals) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  IntegralResult out;
  out.interval = {a, b};
  if (a == b) return out;

  AdaptiveState st;
  st.f = &f;
  st.max_evals = max_evals;
  auto wrapped = [&st](double x) {
    ++st.evals;
    return (*st.f)(x);
  };
  const Gk15Out first = gk15_apply(wrapped, a, b);
  const double tol_abs = std::max(tol * std::abs(first.value), tol);
  if (first.err <= tol_abs) {
    out.value = first.value;
    out.err_est = first.err;
  } else {
    adaptive_recurse(st, a, b, tol_abs, 0, out.value, out.err_est);
  }
  out.evals = st.evals;
  out.converged = st.converged;
  return out;
}

// ---------------------------------------------------------------------------
// HLEngine
// ---------------------------------------------------------------------------

double HLEngine::panel_width(double t) {
  const double w = 1.5 * kTwoPi / std::log(std::max(t, 40.0));
  return std::clamp(w, 0.35, 2.0);
}

HLEngine::HLEngine(double t_cap, SampleCache* cache)
    : t_cap_(t_cap), cache_(cache) {
  bounds_.push_back(0.0);
  cum_.push_back(0.0);
  cum_errs_.push_back(0.0);
}

double HLEngine::mod_sq(double t) {
  ++evals_;
  if (cache_) {
    if (auto z = cache_->lookup_z(t)) {
      ++cache_->hits;
      return *z * *z;
    }
    ++cache_->misses;
    const double z = hardy_z(t);
    cache_->insert(t, z);
    return z * z;
  }
  return zeta_mod_sq(t);
}

void HLEngine::ensure_bounds(double t) {
  while (bounds_.back() < t)
    bounds_.push_back(bounds_.back() + panel_width(bounds_.back()));
}

std::size_t HLEngine::panel_index(double t) const {
  const auto it = std::upper_bound(bounds_.begin(), bounds_.end(), t);
  return static_cast<std::size_t>(it - bounds_.begin()) - 1;
}

HLEngine::PanelValue HLEngine::gk15(double a, double b) {
  const Gk15Out g = gk15_apply([this](double x) { return mod_sq(x); }, a, b);
  return {g.value, g.err};
}

HLEngine::PanelValue HLEngine::adaptive_panel(double a, double b,
                                              double tol_abs, int depth) {
  const PanelValue v = gk15(a, b);
  if (v.err <= tol_abs || depth >= 40) return v;
  const double mid = 0.5 * (a + b);
  const PanelValue l = adaptive_panel(a, mid, 0.5 * tol_abs, depth + 1);
  const PanelValue r = adaptive_panel(mid, b, 0.5 * tol_abs, depth + 1);
  return {l.value + r.value, l.err + r.err};
}

double HLEngine::prefix(std::size_t k, double* err_acc) {
  while (panel_vals_.size() < k) {
    const std::size_t i = panel_vals_.size();
    const double a = bounds_[i];
    const double b = bounds_[i + 1];
    // Tight per-panel tolerance so accumulated prefix error stays far below
    // every envelope the toolkit asserts against.
    const double tol_abs = 1e-9 * std::max(1.0, (b - a) * std::log(b + 10.0));
    const PanelValue v = adaptive_panel(a, b, tol_abs, 0);
    panel_vals_.push_back(v.value);
    panel_errs_.push_back(v.err);
    cum_.push_back(cum_.back() + v.value);
    cum_errs_.push_back(cum_errs_.back() + v.err);
  }
  if (err_acc) *err_acc = cum_errs_[k];
  return cum_[k];
}

double HLEngine::j(double t, double tol) {
  return hl_integral(0.0, t, tol).value;
}

IntegralResult HLEngine::hl_integral(double a, double b, double tol) {
  if (!(0.0 <= a && a <= b))
    throw std::invalid_argument("hl_integral: requires 0 <= a <= b");
  if (b > t_cap_)
    throw std::domain_error("hl_integral: endpoint exceeds the T cap");
  IntegralResult out;
  out.interval = {a, b};
  if (a == b) return out;

  const std::int64_t evals0 = evals_;
  ensure_bounds(b);

  auto j_of = [&](double x, double& prefix_err, double& part_err) {
    const std::size_t k = panel_index(x);
    const double base = prefix(k, &prefix_err);
    if (x == bounds_[k]) {
      part_err = 0.0;
      return base;
    }
    const double tol_abs =
        std::max(tol, tol * (x - bounds_[k]) * std::log(x + 10.0));
    const PanelValue part = adaptive_panel(bounds_[k], x, tol_abs, 0);
    part_err = part.err;
    return base + part.value;
  };

  double pre_a = 0.0, part_a = 0.0, pre_b = 0.0, part_b = 0.0;
  const double ja = j_of(a, pre_a, part_a);
  const double jb = j_of(b, pre_b, part_b);
  out.value = jb - ja;
  out.err_est = (pre_b - pre_a) + part_a + part_b;
  out.evals = evals_ - evals0;
  return out;
}

std::vector<double> HLEngine::panel_nodes(double a, double b) const {
  std::vector<double> nodes;
  double p = 0.0;
  while (p < b) {
    const double q = p + panel_width(p);
    if (q > a) {
      const double mid = 0.5 * (p + q);
      const double half = 0.5 * (q - p);
      nodes.push_back(mid);
      for (int i = 0; i < 7; ++i) {
        nodes.push_back(mid - half * kXgk[i]);
        nodes.push_back(mid + half * kXgk[i]);
      }
    }
    p = q;
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

IntegralResult s1_moment(const PhaseTrack& track, double a, double b, int l,
                         double tol) {
  if (l < 1) throw std::invalid_argument("s1_moment: requires l >= 1");
  const double lo = track.has_head() ? 0.0 : track.anchor_t;
  if (a < lo || b > track.end_t)
    throw std::out_of_range("s1_moment: interval exits the phase track");
  auto f = [&track, l](double t) {
    const double s1 = track.s1(t);
    return std::pow(s1 * s1, l);
  };
  return integrate(f, a, b, tol);
}

}  // namespace ladderlab
