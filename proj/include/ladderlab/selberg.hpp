#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ladderlab/ladder.hpp"
#include "ladderlab/phase_track.hpp"
#include "ladderlab/quadrature.hpp"

namespace ladderlab {

// Empirical estimate of Selberg's moment constant d(l) from
// (1/T) int_0^T |S1|^{2l} dt.
struct SelbergEstimate {
  int l = 1;
  double T = 0.0;
  double d_hat = 0.0;
  // (T_i, (1/T_i) int_0^{T_i} |S1|^{2l} - d_hat) at T_i = T/4, T/2, T.
  std::vector<std::pair<double, double>> residual_trend;
};

// One verified asymptotic identity: |lhs - rhs| against an explicit
// kappa-scaled envelope.
struct TheoremReport {
  std::string theorem_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double envelope = 0.0;
  double kappa = 10.0;
  bool pass = false;
};

// d_hat > 0 from the cumulative moment; track must reach down to 0
// (i.e. carry the low-t head) and up to T.
SelbergEstimate estimate_d(int l, double T, const PhaseTrack& track);

// (1/d_hat) int_{T^{r-1}}^{T^r} |S1|^{2l} = T^r - T^{r-1} + O(T/ln^2 T).
// r = 0 is the degenerate vacuous check.
TheoremReport lemma_3_9_check(const LadderChain& chain, int r, int l,
                              double d_hat, const PhaseTrack& track,
                              double kappa = 10.0);

// Lift identity: the s-step zeta increment equals the r-step one plus
// ((1-c)/d_hat) int_{T^{r-1}}^{T^{s-1}} |S1|^{2l}, up to O(T/ln^2 T).
// Requires 1 <= r <= s-1 <= k-1.
TheoremReport theorem1_check(const LadderChain& chain, int r, int s, int l,
                             double d_hat, const PhaseTrack& track,
                             double kappa = 10.0);

// Conservation law: (1/T^r) int {d_hat |zeta|^2 + (1-c)|S1|^{2l}}
// = (1-c) d_hat + O(1/ln^2 T).
TheoremReport theorem2_check(const LadderChain& chain, int r, int l,
                             double d_hat, const PhaseTrack& track,
                             double kappa = 10.0);

// Complementary pair: int_0^{T^{r-1}} |S1|^{2l} vs the r-step zeta
// increment, both arrangements, at the O(T/ln T) envelope. The intervals
// [0, T^{r-1}) and (T^{r-1}, T^r] are disjoint by construction.
TheoremReport theorem3_check(const LadderChain& chain, int r, int l,
                             double d_hat, const PhaseTrack& track,
                             double kappa = 10.0);

}  // namespace ladderlab
