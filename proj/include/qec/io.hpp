// Copyright 2026 The qec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEC_IO_HPP
#define QEC_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qec/qstate.hpp"

namespace qec {

using Json = nlohmann::json;

/// Either kind of state read from a file.
struct LoadedState {
  std::variant<PureState, DensityMatrix> value;

  bool is_pure() const { return std::holds_alternative<PureState>(value); }
  const PureState& pure() const { return std::get<PureState>(value); }
  const DensityMatrix& mixed() const { return std::get<DensityMatrix>(value); }
  const PartyDims& dims() const { return is_pure() ? pure().dims() : mixed().dims(); }
};

namespace detail {

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("field '" + field + "' must be a [re, im] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<std::size_t> dims_from_json(const Json& doc) {
  if (!doc.contains("dims")) throw InputError("missing field 'dims'");
  const Json& d = doc["dims"];
  if (!d.is_array() || d.empty()) throw InputError("field 'dims' must be a non-empty integer array");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!d[i].is_number_integer() || d[i].get<long long>() < 1)
      throw InputError("field 'dims[" + std::to_string(i) + "]' must be a positive integer");
    dims.push_back(d[i].get<std::size_t>());
  }
  return dims;
}

}  // namespace detail

inline Json to_json(const PureState& psi) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) amps.push_back(detail::complex_to_json(psi.amplitudes()[i]));
  return {{"dims", psi.dims().values()}, {"amplitudes", std::move(amps)}};
}

inline Json to_json(const DensityMatrix& rho) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) row.push_back(detail::complex_to_json(rho.matrix()(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"dims", rho.dims().values()}, {"matrix", std::move(rows)}};
}

/// Parses {"dims", "amplitudes"} or {"dims", "matrix"}. Diagnostics name the
/// offending field.
inline LoadedState state_from_json(const Json& doc, std::size_t cap = kDefaultDimensionCap) {
  if (!doc.is_object()) throw InputError("state document must be a JSON object");
  const PartyDims dims(detail::dims_from_json(doc), cap);
  const bool has_amps = doc.contains("amplitudes");
  const bool has_matrix = doc.contains("matrix");
  if (has_amps == has_matrix) throw InputError("state needs exactly one of the fields 'amplitudes' and 'matrix'");
  const auto total = dims.total();
  if (has_amps) {
    const Json& a = doc["amplitudes"];
    if (!a.is_array()) throw InputError("field 'amplitudes' must be an array");
    if (a.size() != total)
      throw InputError("field 'amplitudes' has " + std::to_string(a.size()) + " entries, dims require " +
                       std::to_string(total));
    CVector v(static_cast<Eigen::Index>(total));
    for (std::size_t i = 0; i < total; ++i)
      v[static_cast<Eigen::Index>(i)] = detail::complex_from_json(a[i], "amplitudes[" + std::to_string(i) + "]");
    return {PureState(dims, std::move(v))};
  }
  const Json& m = doc["matrix"];
  if (!m.is_array() || m.size() != total)
    throw InputError("field 'matrix' must have " + std::to_string(total) + " rows");
  CMatrix rho(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t r = 0; r < total; ++r) {
    if (!m[r].is_array() || m[r].size() != total)
      throw InputError("field 'matrix[" + std::to_string(r) + "]' must have " + std::to_string(total) + " entries");
    for (std::size_t c = 0; c < total; ++c)
      rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          detail::complex_from_json(m[r][c], "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return {DensityMatrix(dims, std::move(rho))};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline LoadedState load_state(const std::string& path, std::size_t cap = kDefaultDimensionCap) {
  return state_from_json(read_json_file(path), cap);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

inline void save_state(const std::string& path, const PureState& psi) { write_text_file(path, to_json(psi).dump(2) + "\n"); }

}  // namespace qec

#endif  // QEC_IO_HPP
