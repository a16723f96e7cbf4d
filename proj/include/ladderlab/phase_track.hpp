#pragma once

#include <cstdint>
#include <vector>

namespace ladderlab {

// Continuously unwrapped argument of zeta along the critical line.
//
// S(t) = N(t) - 1 - theta(t)/pi with N counted by tracked sign changes of
// Z; every zero ordinate is a grid point (with the midpoint convention
// S(gamma) = S(gamma-) + 1/2), and a grid point sits strictly between any
// two zeros, so |S(t_{i+1}) - S(t_i)| < 1/2 holds on the whole grid.
// S1(t) = int_0^t S is carried as prefix values over the grid; the head
// [0, anchor] (available when anchor == 10, below the first zero) is kept
// as a separate prefix table so moments can genuinely start at 0.
struct PhaseTrack {
  double anchor_t = 0.0;
  double end_t = 0.0;
  std::vector<double> grid;
  std::vector<double> s_values;
  std::vector<double> s1_values;  // s1_values[0] = S1(anchor_t), offset from 0
  std::vector<double> zeros;      // ordinates in (0, end_t], refined
  std::int64_t z_evals = 0;

  bool has_head() const { return anchor_t == 10.0; }

  // Zero count N(t); t in [0, end_t].
  std::int64_t n_of(double t) const;

  // S(t); t in [anchor_t, end_t], or [0, end_t] when the head is present.
  double s(double t) const;

  // S1(t) = int_0^t S; same domain as s().
  double s1(double t) const;

 private:
  friend PhaseTrack build_phase_track(double, double, double, std::int64_t);
  std::vector<double> head_grid_;  // uniform prefix table on [0, anchor]
  std::vector<double> head_s1_;
};

// Builds the track on [t_start, t_end] with adaptive step control.
// Requires 10 <= t_start <= t_end. `tol` bounds the S1 quadrature error per
// unit length and caps the grid step. Throws on evaluation-budget
// exhaustion or on a suspected branch loss.
PhaseTrack build_phase_track(double t_start, double t_end, double tol = 1e-4,
                             std::int64_t budget = 400'000'000);

}  // namespace ladderlab
