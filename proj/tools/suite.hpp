#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"

namespace cohfilt::cli {

// Pass/fail tally for one property. A margin is (allowed - observed): negative
// margins are violations.
struct PropertyTally {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();

  void record(double margin);
  bool passed() const { return trials > 0 && violations == 0; }
  nlohmann::json to_json() const;
  std::string summary_line() const;
};

std::vector<PropertyTally> run_suite(std::size_t d, std::uint64_t seed, std::size_t n_states, const Tolerances& tol);

}  // namespace cohfilt::cli
