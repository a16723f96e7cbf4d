#pragma once

#include <functional>
#include <vector>

#include "ladderlab/ladder.hpp"

namespace ladderlab {

// Minimal ladder interface the generated systems need; the production map
// wraps HLEngine, the identity map is the classical-Legendre test double.
struct LadderMap {
  std::function<double(double)> phi1;       // one forward application
  std::function<double(double)> dphi1;      // d phi1/dt = |Z~|^2
  std::function<double(double, int)> reverse;  // p-fold reverse iteration
};

LadderMap make_ladder_map(HLEngine& eng, const LadderConfig& cfg = {},
                          ReverseMethod method = ReverseMethod::mainterm_invert);

// phi1 = identity, |Z~| = 1: generation collapses to classical Legendre.
LadderMap identity_ladder_map();

struct GenerationSpec {
  double T = 10000.0;          // base of the interval [T, T+2]
  std::vector<int> p_list{1};  // length 1..3, entries in 1..k_max
  int n_max = 4;
  LadderConfig cfg{};
};

struct GramReport {
  int n_max = 0;
  std::vector<double> matrix;  // row-major (n_max+1)^2 inner products
  double diag_scale = 0.0;     // common scale: mean of G_nn (2n+1)/2
  double max_offdiag_rel = 0.0;
  double at(int n, int m) const;
};

// Legendre P_n by the three-term recurrence.
double legendre_p(int n, double x);

// Affine image of [-1,1] onto [T^p, (T+2)^p] (reverse iterations of the
// endpoints); endpoints map to endpoints.
double affine_to_iterated(const LadderMap& map, double T, int p, double t);

// u_p(t) = phi1^p(affine image) - T - 1, an automorphism of [-1,1].
double u_p(const LadderMap& map, double T, int p, double t);

// v_p^r(t) = phi1^r(affine image) in [T^{p-r}, (T+2)^{p-r}]; containment
// is asserted and a violation reported as a ladder-consistency failure.
double v_p_r(const LadderMap& map, double T, int p, int r, double t);

// Generated member (2.4)-style for p_list of length 1..3.
double generated_member(const LadderMap& map, double T,
                        const std::vector<int>& p_list, int n, double t);

GramReport gram_matrix(const LadderMap& map, const GenerationSpec& spec);

}  // namespace ladderlab
