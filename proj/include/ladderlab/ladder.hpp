#pragma once

#include <string>
#include <vector>

#include "ladderlab/quadrature.hpp"

namespace ladderlab {

struct LadderConfig {
  double T0 = 1000.0;  // lower validity cutoff
  double c0 = 0.0;     // calibration shift in the main-term inversion
  int k_max = 10;
  double tol = 1e-9;           // root residual, relative to the target scale
  double a_exponent = 1.0 / 3.0;  // reported error-term exponent
  double delta = 0.01;
};

enum class ReverseMethod { increment_solve, mainterm_invert };

std::string to_string(ReverseMethod m);

struct LadderChain {
  double base = 0.0;
  std::vector<double> points;  // T^1 < T^2 < ... < T^k
  std::vector<double> gaps;    // points[r] - points[r-1]
  std::vector<IntegralResult> increments;  // int |zeta|^2 over each step
  ReverseMethod method = ReverseMethod::mainterm_invert;

  double point(int r) const;  // r = 0 gives the base
};

// Main term of J: g(y) = y ln y + (c - ln 2pi) y, and its derivative.
double g_main(double y);
double g_main_prime(double y);

// Operational ladder: the unique y < T with g(y) = J(T) - c0.
double phi1(HLEngine& eng, double T, const LadderConfig& cfg = {});

// k-fold direct iteration; phi1^0(T) = T.
double phi1_iter(HLEngine& eng, double T, int k, const LadderConfig& cfg = {});

// One reverse iteration [T]^1: the X > T with
//   increment_solve:  int_T^X |zeta|^2 = (1-c) T
//   mainterm_invert:  phi1(X) = T
double reverse_step(HLEngine& eng, double T, const LadderConfig& cfg = {},
                    ReverseMethod method = ReverseMethod::mainterm_invert);

LadderChain build_chain(HLEngine& eng, double T, int k,
                        const LadderConfig& cfg = {},
                        ReverseMethod method = ReverseMethod::mainterm_invert);

// omega(t) = ln phi1(t) + 1 + c - ln 2pi  (= g'(phi1(t))).
double omega(HLEngine& eng, double t, const LadderConfig& cfg = {});

// d phi1/dt = |zeta(1/2+it)|^2 / omega(t).
double tilde_z_sq(HLEngine& eng, double t, const LadderConfig& cfg = {});

}  // namespace ladderlab
