#include "cohfilt/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "cohfilt/error.hpp"

namespace cohfilt {

using nlohmann::json;

double round_sig15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

namespace {

std::vector<std::vector<double>> parse_square(const json& j, const char* field, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) {
    throw Error(ErrorCode::ParseError, std::string("\"") + field + "\" must be an array of " + std::to_string(dim) + " rows");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != dim) {
      throw Error(ErrorCode::ParseError, std::string("\"") + field + "\" row " + std::to_string(i + 1) +
                                             " must have " + std::to_string(dim) + " entries");
    }
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) throw Error(ErrorCode::ParseError, std::string("\"") + field + "\" has a non-numeric entry");
      r.push_back(x.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::size_t parse_dim(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw Error(ErrorCode::ParseError, "expected an object with a positive integer \"dim\"");
  }
  return j["dim"].get<std::size_t>();
}

ComplexMatrix parse_block(const json& j, std::size_t dim) {
  if (!j.is_object() || !j.contains("re")) throw Error(ErrorCode::ParseError, "matrix needs a \"re\" array");
  const auto re = parse_square(j["re"], "re", dim);
  std::vector<std::vector<double>> im(dim, std::vector<double>(dim, 0.0));
  if (j.contains("im")) im = parse_square(j["im"], "im", dim);
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  if (!m.all_finite()) throw Error(ErrorCode::ParseError, "matrix has non-finite entries");
  return m;
}

json block_to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json rr = json::array(), ii = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      rr.push_back(round_sig15(m(r, c).real()));
      ii.push_back(round_sig15(m(r, c).imag()));
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

}  // namespace

ComplexMatrix parse_matrix_json(const json& j) { return parse_block(j, parse_dim(j)); }

ComplexMatrix parse_matrix_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return parse_matrix_json(j);
}

json matrix_to_json(const ComplexMatrix& m) {
  json out = block_to_json(m);
  out["dim"] = m.dim();
  return out;
}

SIOInstrument parse_instrument_json(const json& j) {
  const std::size_t dim = parse_dim(j);
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    throw Error(ErrorCode::ParseError, "instrument needs a nonempty \"kraus\" array");
  }
  std::vector<SIOKraus> kraus;
  for (const auto& k : j["kraus"]) kraus.push_back(validate_sio(parse_block(k, dim)));
  return SIOInstrument(std::move(kraus));
}

json instrument_to_json(const SIOInstrument& instrument) {
  json kraus = json::array();
  for (const auto& k : instrument.kraus()) kraus.push_back(block_to_json(k.matrix()));
  return json{{"dim", instrument.dim()}, {"kraus", std::move(kraus)}};
}

json to_json(const MeasureReport& r) {
  return json{
      {"c_s", round_sig15(r.c_s)},
      {"c_m", round_sig15(r.c_m)},
      {"robustness", round_sig15(r.robustness)},
      {"robustness_bisect", round_sig15(r.robustness_bisect)},
      {"is_incoherent", r.is_incoherent},
      {"is_max_extremal", r.is_max_extremal},
      {"dim", r.dim},
  };
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::ParseError, "SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

std::string matrix_hash(const ComplexMatrix& m) { return sha256_hex(matrix_to_json(m).dump()); }

}  // namespace cohfilt
