#pragma once

// JSON file formats.
//
//   matrix:     {"dim": d, "re": [[...], ...], "im": [[...], ...]}
//   instrument: {"dim": d, "kraus": [{"re": [[...]], "im": [[...]]}, ...]}
//
// "im" may be omitted for real matrices. Ragged or mis-sized arrays are
// ParseError; physical constraints (PSD, SIO structure) are checked by the
// caller's validation step.

#include <string>
#include <string_view>

#include <json.hpp>

#include "cohfilt/linalg.hpp"
#include "cohfilt/measures.hpp"
#include "cohfilt/sio.hpp"

namespace cohfilt {

// Rounds to 15 significant digits; reports serialize every number through this.
double round_sig15(double x);

ComplexMatrix parse_matrix_json(const nlohmann::json& j);
ComplexMatrix parse_matrix_json(std::string_view text);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

// Structural problems are ParseError; SIO violations propagate from validate_sio.
SIOInstrument parse_instrument_json(const nlohmann::json& j);
nlohmann::json instrument_to_json(const SIOInstrument& instrument);

nlohmann::json to_json(const MeasureReport& r);

std::string sha256_hex(std::string_view bytes);
// Digest of the canonical (15-digit, compact) serialization of `m`.
std::string matrix_hash(const ComplexMatrix& m);

}  // namespace cohfilt
