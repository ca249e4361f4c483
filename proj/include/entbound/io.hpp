#pragma once

// JSON interchange for states and subspaces. Complex numbers are [re, im].
//
//   state:    { "dim_a": m, "dim_b": n, "kind": "pure" | "density",
//               "data": [[re, im], ...] }   flat for pure, row-major for density
//   subspace: { "dim_a": m, "dim_b": n, "basis": [[[re, im], ...], ...] }

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "entbound/states.hpp"
#include "entbound/subspace.hpp"
#include "entbound/tensor_core.hpp"

namespace entbound::io {

using json = nlohmann::ordered_json;
using LoadedState = std::variant<PureState, DensityOperator>;

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

inline ComplexVector vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of [re, im] pairs");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

inline json matrix_to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out.push_back(complex_to_json(m(r, c)));
  return out;
}

namespace detail {

inline Index dimension_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) throw ParseError(std::string("field \"") + key + "\" must be a positive integer");
  return static_cast<Index>(v.get<long long>());
}

}  // namespace detail

inline json state_to_json(const PureState& psi) {
  json j;
  j["dim_a"] = psi.dim_a();
  j["dim_b"] = psi.dim_b();
  j["kind"] = "pure";
  j["data"] = vector_to_json(psi.amplitudes());
  return j;
}

inline json state_to_json(const DensityOperator& rho) {
  json j;
  j["dim_a"] = rho.dim_a();
  j["dim_b"] = rho.dim_b();
  j["kind"] = "density";
  j["data"] = matrix_to_json(rho.matrix());
  return j;
}

inline LoadedState state_from_json(const json& j) {
  const Index m = detail::dimension_field(j, "dim_a");
  const Index n = detail::dimension_field(j, "dim_b");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw ParseError("missing string field \"kind\"");
  if (!j.contains("data")) throw ParseError("missing field \"data\"");
  const std::string kind = j.at("kind").get<std::string>();
  const ComplexVector data = vector_from_json(j.at("data"));
  if (kind == "pure") {
    if (data.size() != m * n) throw DimensionError("pure state data has " + std::to_string(data.size()) + " entries, expected " + std::to_string(m * n));
    return PureState(m, n, data);
  }
  if (kind == "density") {
    const Index side = m * n;
    if (data.size() != side * side) {
      throw DimensionError("density data has " + std::to_string(data.size()) + " entries, expected " + std::to_string(side * side));
    }
    ComplexMatrix rho(side, side);
    for (Index r = 0; r < side; ++r)
      for (Index c = 0; c < side; ++c) rho(r, c) = data(r * side + c);
    return DensityOperator(m, n, rho);
  }
  throw ParseError("unknown state kind \"" + kind + "\"");
}

/// Pure states become their projector.
inline DensityOperator density_from_json(const json& j) {
  LoadedState s = state_from_json(j);
  if (auto* psi = std::get_if<PureState>(&s)) return psi->density();
  return std::get<DensityOperator>(std::move(s));
}

inline json subspace_to_json(const Subspace& v) {
  json j;
  j["dim_a"] = v.dim_a();
  j["dim_b"] = v.dim_b();
  json basis = json::array();
  for (const auto& psi : v.basis()) basis.push_back(vector_to_json(psi.amplitudes()));
  j["basis"] = basis;
  return j;
}

inline Subspace subspace_from_json(const json& j) {
  const Index m = detail::dimension_field(j, "dim_a");
  const Index n = detail::dimension_field(j, "dim_b");
  if (!j.contains("basis") || !j.at("basis").is_array()) throw ParseError("missing array field \"basis\"");
  std::vector<PureState> basis;
  for (const auto& entry : j.at("basis")) {
    const ComplexVector v = vector_from_json(entry);
    if (v.size() != m * n) throw DimensionError("basis vector has " + std::to_string(v.size()) + " entries, expected " + std::to_string(m * n));
    basis.emplace_back(m, n, v);
  }
  return {m, n, std::move(basis)};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace entbound::io
