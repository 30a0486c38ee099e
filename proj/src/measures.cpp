#include "cohfilt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cohfilt/error.hpp"
#include "cohfilt/filtration.hpp"

namespace cohfilt {

double delta_robustness(const DensityMatrix& rho) {
  const double d = static_cast<double>(rho.dim());
  const double lambda = hermitian_eig_max(filtration_matrix(rho).matrix()).value;
  return std::clamp(lambda, 1.0, d);
}

double delta_robustness_bisection(const DensityMatrix& rho, const BisectionOptions& options) {
  const std::size_t d = rho.dim();
  auto feasible = [&](double lambda) {
    ComplexMatrix gap = Complex(-1.0) * rho.matrix();
    for (std::size_t i = 0; i < d; ++i) gap(i, i) += lambda * rho(i, i).real();
    return hermitian_eig(gap).min_value() >= -options.psd_tol;
  };

  double lo = 1.0;
  double hi = static_cast<double>(d);
  if (!feasible(hi + options.tol)) {
    std::ostringstream msg;
    msg << "rho <= lambda Delta rho fails at lambda = " << hi + options.tol;
    throw Error(ErrorCode::InfeasibleAtUpperBound, msg.str());
  }
  if (!feasible(hi)) return hi + options.tol;
  if (feasible(lo)) return lo;
  while (hi - lo > options.tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

double c_s(const DensityMatrix& rho) { return max_fidelity(rho); }

double c_m(const DensityMatrix& rho) {
  return std::max(0.0, max_fidelity(rho) - 1.0 / static_cast<double>(rho.dim()));
}

MeasureReport report(const DensityMatrix& rho, double measure_tol, const BisectionOptions& bisection) {
  const double d = static_cast<double>(rho.dim());
  const double cs = c_s(rho);
  const double cm = std::max(0.0, cs - 1.0 / d);
  return MeasureReport{
      .c_s = cs,
      .c_m = cm,
      .robustness = d * cs,
      .robustness_bisect = delta_robustness_bisection(rho, bisection),
      .is_incoherent = cm <= measure_tol,
      .is_max_extremal = std::abs(cs - 1.0) <= measure_tol,
      .dim = rho.dim(),
  };
}

}  // namespace cohfilt
