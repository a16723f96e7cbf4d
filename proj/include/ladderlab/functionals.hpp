#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ladderlab/ladder.hpp"
#include "ladderlab/selberg.hpp"  // TheoremReport

namespace ladderlab {

// The zeta-functionals recover a parameter x from one reverse-step
// increment of the Hardy-Littlewood integral built over a ray (F1),
// an exponential (F2), or a power (F3) parametrization of the base point.
enum class FunctionalKind { F1, F2, F3 };

std::string to_string(FunctionalKind k);

struct FunctionalConfig {
  LadderConfig ladder{.T0 = 300.0};
  ReverseMethod method = ReverseMethod::mainterm_invert;
  double tol = 1e-8;       // relative tolerance of the increment integrals
  double tol_conv = 0.05;  // convergence verdict threshold
};

struct FunctionalEstimate {
  FunctionalKind kind = FunctionalKind::F1;
  double x = 0.0;
  std::vector<double> tau_grid;
  std::vector<double> raw;
  std::vector<double> corrected;
  bool converged = false;
  double final_residual = 0.0;
};

// Admissibility thresholds: smallest admissible tau for each functional.
// These are the preimage conditions T = (parametrization at tau) > T0
// together with the x-only lower bounds of the lemmas.
double f1_tau_min(double x, const FunctionalConfig& cfg = {});
double f2_tau_min(double x, const FunctionalConfig& cfg = {});
double f3_tau_min(double x, const FunctionalConfig& cfg = {});

// F1: (1/tau) int_{x tau/(1-c)}^{[x tau/(1-c)]^1} |zeta|^2 -> x.
double f1_estimate(HLEngine& eng, double x, double tau,
                   const FunctionalConfig& cfg = {});

// Trend-certified limits over a tau grid. "Corrected" series:
//   F1: same as raw (no known leading correction),   target x
//   F2: raw / ((1-c)^{1/tau} x),                     target 1
//   F3: raw - ln(1-c)/ln tau,                        target x
FunctionalEstimate f1_limit(HLEngine& eng, double x, std::vector<double> grid,
                            const FunctionalConfig& cfg = {});
FunctionalEstimate f2_limit(HLEngine& eng, double x, std::vector<double> grid,
                            const FunctionalConfig& cfg = {});
FunctionalEstimate f3_limit(HLEngine& eng, double x, std::vector<double> grid,
                            const FunctionalConfig& cfg = {});

enum class AlgebraMode { sum, product, quotient };

std::string to_string(AlgebraMode m);

// Properties (4.10)-(4.12): the functional of the combined argument vs the
// same combination of per-x functionals at matched tau.
TheoremReport f1_algebra_check(HLEngine& eng, const std::vector<double>& xs,
                               AlgebraMode mode, double tau,
                               const FunctionalConfig& cfg = {},
                               double envelope = 0.05);

// F2: {int_{x^tau}^{[x^tau]^1} |zeta|^2}^{1/tau} -> x, for x > 1.
// Returns (raw, corrected).
std::pair<double, double> f2_estimate(HLEngine& eng, double x, double tau,
                                      const FunctionalConfig& cfg = {});

// F3: (1/ln tau) ln int_{tau^x}^{[tau^x]^1} |zeta|^2 -> x.
std::pair<double, double> f3_estimate(HLEngine& eng, double x, double tau,
                                      const FunctionalConfig& cfg = {});

struct FermatTriple {
  std::int64_t x = 1, y = 1, z = 1, n = 1;
};

// (x^n + y^n)/z^n evaluated in exact big-integer arithmetic before the
// final division; never wraps.
double fermat_rational(const FermatTriple& triple);

struct FermatReport {
  FermatTriple triple;
  int variant = 1;
  double tau = 0.0;       // largest grid point actually used
  double rational = 0.0;  // exact value as real
  double estimate = 0.0;  // functional estimate of the rational
  double distance = 0.0;  // |estimate - 1|, the zeta-condition quantity
  double tolerance = 0.05;
  bool pass = false;  // distance consistent with |rational - 1|
};

// The four Fermat-Wiles zeta-equivalents: variant 1 (5.3) via F1,
// variant 2 (5.4) via the quotient form, variant 3 (6.12) via F3,
// variant 4 (6.13) via the log-ratio form.
FermatReport fermat_zeta_test(HLEngine& eng, const FermatTriple& triple,
                              int variant,
                              const std::vector<double>& tau_grid,
                              const FunctionalConfig& cfg = {});

}  // namespace ladderlab
