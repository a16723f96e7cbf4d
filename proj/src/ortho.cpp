#include "ladderlab/ortho.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

namespace ladderlab {
namespace {

// Gauss-Legendre 5 on [-1,1]; composite panels resolve the smooth
// automorphism-weighted polynomials far beyond the 1e-3 Gram target.
constexpr double kGlx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                            0.5384693101056831, 0.9061798459386640};
constexpr double kGlw[5] = {0.2369268850561891, 0.4786286704993665,
                            0.5688888888888889, 0.4786286704993665,
                            0.2369268850561891};
constexpr int kGramPanels = 64;

// One generation step: pull t through the affine map onto the p-th reverse
// interval, then climb back down with phi1, collecting the |Z~| factors.
struct GenStep {
  double u;       // automorphism image in [-1,1]
  double weight;  // prod_{r=0}^{p-1} |Z~(v_p^r)|
};

GenStep apply_generation(const LadderMap& map, double T, int p, double t) {
  double x = affine_to_iterated(map, T, p, t);
  double w = 1.0;
  for (int r = 0; r < p; ++r) {
    w *= std::sqrt(map.dphi1(x));
    x = map.phi1(x);
  }
  return {x - T - 1.0, w};
}

void validate_spec(const GenerationSpec& spec) {
  if (spec.T < spec.cfg.T0)
    throw std::invalid_argument("ortho: T below the ladder cutoff T0");
  if (spec.p_list.empty() || spec.p_list.size() > 3)
    throw std::invalid_argument("ortho: p_list must have length 1..3");
  for (int p : spec.p_list)
    if (p < 1 || p > spec.cfg.k_max)
      throw std::invalid_argument("ortho: p_list entries must lie in 1..k_max");
  if (spec.n_max < 0) throw std::invalid_argument("ortho: n_max >= 0");
}

}  // namespace

LadderMap make_ladder_map(HLEngine& eng, const LadderConfig& cfg,
                          ReverseMethod method) {
  auto memo = std::make_shared<std::map<std::pair<double, int>, double>>();
  LadderMap map;
  map.phi1 = [&eng, cfg](double t) { return phi1(eng, t, cfg); };
  map.dphi1 = [&eng, cfg](double t) { return tilde_z_sq(eng, t, cfg); };
  map.reverse = [&eng, cfg, method, memo](double T, int p) {
    if (p < 0) throw std::invalid_argument("ladder map: p >= 0");
    double x = T;
    for (int r = 1; r <= p; ++r) {
      const auto key = std::pair{T, r};
      if (auto it = memo->find(key); it != memo->end()) {
        x = it->second;
        continue;
      }
      x = reverse_step(eng, x, cfg, method);
      (*memo)[key] = x;
    }
    return x;
  };
  return map;
}

LadderMap identity_ladder_map() {
  LadderMap map;
  map.phi1 = [](double t) { return t; };
  map.dphi1 = [](double) { return 1.0; };
  map.reverse = [](double T, int) { return T; };
  return map;
}

double GramReport::at(int n, int m) const {
  return matrix[static_cast<std::size_t>(n) * (n_max + 1) + m];
}

double legendre_p(int n, double x) {
  if (n == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2 * j + 1) * x * p - j * pm1) / (j + 1);
    pm1 = p;
    p = next;
  }
  return p;
}

double affine_to_iterated(const LadderMap& map, double T, int p, double t) {
  const double lo = map.reverse(T, p);
  const double hi = map.reverse(T + 2.0, p);
  return 0.5 * (hi - lo) * (t + 1.0) + lo;
}

double u_p(const LadderMap& map, double T, int p, double t) {
  return apply_generation(map, T, p, t).u;
}

double v_p_r(const LadderMap& map, double T, int p, int r, double t) {
  if (r < 0 || r >= p)
    throw std::invalid_argument("v_p_r: requires 0 <= r <= p-1");
  double x = affine_to_iterated(map, T, p, t);
  for (int i = 0; i < r; ++i) x = map.phi1(x);
  const double lo = map.reverse(T, p - r);
  const double hi = map.reverse(T + 2.0, p - r);
  const double slack = 1e-6 * std::max(1.0, hi);
  if (x < lo - slack || x > hi + slack)
    throw std::runtime_error(
        "v_p_r: ladder-consistency failure (image left its reverse interval)");
  return x;
}

double generated_member(const LadderMap& map, double T,
                        const std::vector<int>& p_list, int n, double t) {
  double w = t;
  double weight = 1.0;
  for (auto it = p_list.rbegin(); it != p_list.rend(); ++it) {
    const GenStep step = apply_generation(map, T, *it, w);
    weight *= step.weight;
    w = step.u;
  }
  return legendre_p(n, w) * weight;
}

GramReport gram_matrix(const LadderMap& map, const GenerationSpec& spec) {
  validate_spec(spec);
  const int dim = spec.n_max + 1;
  GramReport rep;
  rep.n_max = spec.n_max;
  rep.matrix.assign(static_cast<std::size_t>(dim) * dim, 0.0);

  std::vector<double> members(dim);
  for (int panel = 0; panel < kGramPanels; ++panel) {
    const double a = -1.0 + 2.0 * panel / kGramPanels;
    const double half = 1.0 / kGramPanels;
    const double mid = a + half;
    for (int q = 0; q < 5; ++q) {
      const double t = mid + half * kGlx[q];
      // Shared chain evaluation: all degrees reuse one (u, weight) pass.
      double w = t;
      double weight = 1.0;
      for (auto it = spec.p_list.rbegin(); it != spec.p_list.rend(); ++it) {
        const GenStep step = apply_generation(map, spec.T, *it, w);
        weight *= step.weight;
        w = step.u;
      }
      for (int n = 0; n < dim; ++n) members[n] = legendre_p(n, w) * weight;
      const double wq = kGlw[q] * half;
      for (int n = 0; n < dim; ++n)
        for (int m = n; m < dim; ++m)
          rep.matrix[static_cast<std::size_t>(n) * dim + m] +=
              wq * members[n] * members[m];
    }
  }
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < n; ++m)
      rep.matrix[static_cast<std::size_t>(n) * dim + m] = rep.at(m, n);

  double scale = 0.0;
  for (int n = 0; n < dim; ++n) scale += rep.at(n, n) * (2 * n + 1) / 2.0;
  rep.diag_scale = scale / dim;
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m)
      if (n != m)
        rep.max_offdiag_rel =
            std::max(rep.max_offdiag_rel,
                     std::abs(rep.at(n, m)) /
                         std::sqrt(rep.at(n, n) * rep.at(m, m)));
  return rep;
}

}  // namespace ladderlab
