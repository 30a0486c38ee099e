#pragma once

// Coherence quantifiers derived from filtration.
//
//   C_s(rho) = lambda_max(B) / d          (optimal filtration fidelity)
//   R(rho || Delta rho) = d * C_s(rho)     (Delta-robustness)
//   C_m(rho) = C_s(rho) - 1/d

#include <cstddef>

#include "cohfilt/states.hpp"

namespace cohfilt {

inline constexpr double kMeasureTol = 1e-9;

struct MeasureReport {
  double c_s;
  double c_m;
  double robustness;
  double robustness_bisect;
  bool is_incoherent;
  bool is_max_extremal;
  std::size_t dim;
};

// lambda_max(B), in [1, d].
double delta_robustness(const DensityMatrix& rho);

struct BisectionOptions {
  double tol = 1e-8;
  // Slack on min eigenvalue when testing lambda * Delta rho - rho >= 0.
  double psd_tol = 1e-13;
};

// min{lambda : rho <= lambda Delta rho} by bisection on [1, d], testing
// feasibility with the eigensolver directly on lambda * Delta rho - rho.
// Throws InfeasibleAtUpperBound if lambda = d + tol is infeasible.
double delta_robustness_bisection(const DensityMatrix& rho, const BisectionOptions& options = {});

double c_s(const DensityMatrix& rho);
double c_m(const DensityMatrix& rho);

MeasureReport report(const DensityMatrix& rho, double measure_tol = kMeasureTol,
                     const BisectionOptions& bisection = {});

}  // namespace cohfilt
