#include "suite.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cohfilt/battery.hpp"
#include "cohfilt/error.hpp"
#include "cohfilt/filtration.hpp"
#include "cohfilt/io.hpp"
#include "cohfilt/measures.hpp"
#include "cohfilt/oracle.hpp"
#include "cohfilt/sio.hpp"

namespace cohfilt::cli {

void PropertyTally::record(double margin) {
  ++trials;
  if (margin < 0.0) ++violations;
  worst_margin = std::min(worst_margin, margin);
}

nlohmann::json PropertyTally::to_json() const {
  return {{"name", name},
          {"passed", passed()},
          {"trials", trials},
          {"violations", violations},
          {"worst_margin", trials ? round_sig15(worst_margin) : 0.0}};
}

std::string PropertyTally::summary_line() const {
  std::ostringstream line;
  line << (passed() ? "[PASS] " : "[FAIL] ") << name << ": " << violations << "/" << trials
       << " violations, worst margin " << worst_margin;
  return line.str();
}

namespace {

double max_off_diagonal(const DensityMatrix& rho) {
  double m = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      if (i != j) m = std::max(m, std::abs(rho(i, j)));
  return m;
}

// sum_k P_k c_m(outcome_k) over a partition of a trace-preserving instrument.
double split_average(const DensityMatrix& rho, const SIOInstrument& full,
                     const std::vector<std::vector<std::size_t>>& parts) {
  double total = 0.0;
  for (const auto& part : parts) {
    std::vector<SIOKraus> kraus;
    for (auto k : part) kraus.push_back(full.kraus()[k]);
    const SIOInstrument sub(std::move(kraus));
    ComplexMatrix unnormalized(rho.dim());
    for (const auto& k : sub.kraus()) unnormalized += k.matrix() * rho.matrix() * k.matrix().adjoint();
    const double p = unnormalized.trace().real();
    if (p <= 1e-12) continue;
    total += p * c_m(apply_instrument(rho, sub).state);
  }
  return total;
}

}  // namespace

std::vector<PropertyTally> run_suite(std::size_t d, std::uint64_t seed, std::size_t n_states, const Tolerances& tol) {
  if (d == 0) throw Error(ErrorCode::InvalidDimension, "suite needs --dim >= 1");
  if (n_states == 0) throw Error(ErrorCode::InvalidDimension, "suite needs at least one state");
  const double dd = static_cast<double>(d);
  std::mt19937_64 rng(seed);
  const auto battery = make_state_battery(d, n_states, seed);
  const BisectionOptions bisect{tol.bisect_tol, tol.bisect_psd_tol};

  PropertyTally bounds{"fidelity_bounds"}, robust_range{"robustness_range"}, two_route{"robustness_two_route"},
      achieve{"achievability"}, incoherent_min{"incoherent_minimum"}, mcs_max{"maximally_coherent_maximum"},
      dominance{"oracle_dominance"}, multi{"multi_kraus_reduction"}, mono{"ssio_monotonicity"}, c1{"c1_faithfulness"},
      c2a{"c2a_monotonicity"}, c2b{"c2b_strong_monotonicity"}, c3{"c3_convexity"}, quasi{"quasi_convexity"}, qubit{"qubit_closed_form"};

  const PureState target = mcs(d);
  for (std::size_t n = 0; n < battery.size(); ++n) {
    const DensityMatrix& rho = battery[n].state;
    const double f = max_fidelity(rho);
    const double lambda = hermitian_eig_max(filtration_matrix(rho).matrix()).value;
    bounds.record(std::min(f - (1.0 / dd - 1e-12), (1.0 + 1e-12) - f));
    const double r = delta_robustness(rho);
    robust_range.record(std::min(r - (1.0 - 1e-12), (dd + 1e-12) - r));
    two_route.record(1e-7 - std::abs(r - delta_robustness_bisection(rho, bisect)));

    const FiltrationResult res = filtrate(rho);
    achieve.record(1e-9 - std::abs(fidelity_with_pure(res.output_state, target) - lambda / dd));

    if (n < 50) {
      const OracleResult o = random_search_fidelity(rho, 2000, seed + n, 1);
      dominance.record(f + 1e-9 - o.best_fidelity);
    }

    const double cm = c_m(rho);
    c1.record(cm + 1e-12);
    if (cm <= tol.measure_tol) c1.record(1e-5 - max_off_diagonal(rho));

    if (d == 2 && rho(0, 0).real() > kZeroTol && rho(1, 1).real() > kZeroTol) {
      qubit.record(1e-10 - std::abs(qubit_closed_form(rho) - f));
    }
  }

  for (std::size_t n = 0; n < std::max<std::size_t>(n_states / 2, 1); ++n) {
    const DensityMatrix diag = random_diagonal(d, rng);
    incoherent_min.record(1e-10 - std::abs(max_fidelity(diag) - 1.0 / dd));
    c1.record(1e-12 - c_m(diag));
  }

  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  mcs_max.record(1e-10 - std::abs(max_fidelity(target.density()) - 1.0));
  for (std::size_t n = 0; n < 20; ++n) {
    std::vector<double> phases(d);
    for (auto& p : phases) p = angle(rng);
    mcs_max.record(1e-10 - std::abs(max_fidelity(rotate_phases(target.density(), phases)) - 1.0));
  }

  std::uniform_int_distribution<std::size_t> pick(0, battery.size() - 1);
  std::uniform_int_distribution<std::size_t> n_kraus(1, 4);
  for (std::size_t t = 0; t < 5 * n_states; ++t) {
    const DensityMatrix& rho = battery[pick(rng)].state;
    const SIOInstrument ins = random_instrument(d, n_kraus(rng), rng);
    const double f = max_fidelity(rho);
    try {
      const InstrumentOutcome out = apply_instrument(rho, ins);
      multi.record(f + 1e-9 - fidelity_with_pure(out.state, target));
      mono.record(f + 1e-9 - max_fidelity(out.state));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroProbability) throw;
    }
  }

  for (std::size_t t = 0; t < n_states; ++t) {
    const DensityMatrix& rho = battery[pick(rng)].state;
    const SIOInstrument full = complete(random_instrument(d, n_kraus(rng), rng));
    const double cm = c_m(rho);
    c2a.record(cm + 1e-9 - c_m(apply_instrument(rho, full).state));

    std::vector<std::vector<std::size_t>> singletons;
    for (std::size_t k = 0; k < full.size(); ++k) singletons.push_back({k});
    c2b.record(cm + 1e-9 - split_average(rho, full, singletons));

    std::vector<std::vector<std::size_t>> coarse(2);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t k = 0; k < full.size(); ++k) coarse[coin(rng) ? 1 : 0].push_back(k);
    std::erase_if(coarse, [](const auto& part) { return part.empty(); });
    c2b.record(cm + 1e-9 - split_average(rho, full, coarse));
  }

  const std::size_t pairs = std::max<std::size_t>(n_states / 9 + 1, 1);
  for (std::size_t t = 0; t < pairs; ++t) {
    const DensityMatrix& a = battery[pick(rng)].state;
    const DensityMatrix& b = battery[pick(rng)].state;
    const double ca = c_m(a), cb = c_m(b);
    for (int step = 1; step <= 9; ++step) {
      const double p = step / 10.0;
      const double mixed = c_m(mix(a, b, p));
      c3.record(p * ca + (1.0 - p) * cb + 1e-9 - mixed);
      quasi.record(std::max(ca, cb) + 1e-9 - mixed);
    }
  }

  std::vector<PropertyTally> out{bounds, robust_range, two_route, achieve, incoherent_min, mcs_max, dominance,
                                 multi,  mono,         c1,        c2a,     c2b,            c3,        quasi};
  if (d == 2) out.push_back(qubit);
  return out;
}

}  // namespace cohfilt::cli
