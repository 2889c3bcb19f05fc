// Copyright 2026 The ptree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PTREE_IO_HPP_
#define PTREE_IO_HPP_

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ptree/counting.hpp"
#include "ptree/errors.hpp"
#include "ptree/graph.hpp"
#include "ptree/matrix.hpp"
#include "ptree/periodic.hpp"
#include "ptree/rational.hpp"

namespace ptree {

using Json = nlohmann::json;

namespace detail {

// JSON numbers are taken at their shortest decimal text, so 0.1 reads as 1/10.
inline Rational weight_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return parse_rational(j.dump());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError(where + ": weight must be a number or a \"p/q\" string");
}

inline std::size_t vertex_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": vertex must be an integer");
  const long long v = j.get<long long>();
  if (v < 1) throw InvalidInput(where + ": vertex " + std::to_string(v) + " is not positive");
  return static_cast<std::size_t>(v);
}

inline std::size_t count_from_json(const Json& obj, const char* key, std::size_t fallback, bool required) {
  if (!obj.contains(key)) {
    if (required) throw ParseError(std::string("missing field \"") + key + "\"");
    return fallback;
  }
  const Json& j = obj.at(key);
  if (!j.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  const long long v = j.get<long long>();
  if (v < 0) throw InvalidInput(std::string("field \"") + key + "\" must be non-negative");
  return static_cast<std::size_t>(v);
}

inline std::vector<Edge> edges_from_json(const Json& obj, const char* key) {
  std::vector<Edge> edges;
  if (!obj.contains(key)) return edges;
  const Json& list = obj.at(key);
  if (!list.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Json& e = list[i];
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw ParseError(where + ": expected [u, v] or [u, v, w]");
    Rational w = e.size() == 3 ? weight_from_json(e[2], where) : Rational(1);
    edges.push_back({vertex_from_json(e[0], where), vertex_from_json(e[1], where), std::move(w)});
  }
  return edges;
}

inline RationalMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array of rows");
  if (j.empty()) return RationalMatrix(0, 0);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  RationalMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError(where + ": rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = weight_from_json(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

inline Json weight_to_json(const Rational& w) {
  if (is_integer(w) && w.get_num().fits_slong_p()) return Json(w.get_num().get_si());
  return Json(to_string(w));
}

inline Json edges_to_json(const std::vector<Edge>& edges) {
  Json list = Json::array();
  for (const Edge& e : edges) list.push_back(Json::array({e.u, e.v, weight_to_json(e.w)}));
  return list;
}

inline Json matrix_to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(weight_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string format_float(long double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

inline std::string format_float(double v) { return format_float(static_cast<long double>(v)); }

}  // namespace detail

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

// {"n": int, "edges": [[u, v, w], ...]}
inline WeightedGraph graph_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("graph JSON must be an object");
  const std::size_t n = detail::count_from_json(j, "n", 0, true);
  return WeightedGraph(n, detail::edges_from_json(j, "edges"));
}

// {"N", "m", "k", "H0_edges", "S_edges", "R": {"t": matrix}, "B": matrix}.
// The result is not validated; run validate() before counting.
inline PeriodicPresentation presentation_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("presentation JSON must be an object");
  PeriodicPresentation p;
  if (!j.contains("N") || !j.at("N").is_number_integer()) throw ParseError("field \"N\" must be an integer");
  p.order = j.at("N").get<long>();
  p.cell_size = detail::count_from_json(j, "m", 0, true);
  p.fixed_size = detail::count_from_json(j, "k", 0, false);
  p.cell_edges = detail::edges_from_json(j, "H0_edges");
  p.fixed_edges = detail::edges_from_json(j, "S_edges");
  if (j.contains("R")) {
    const Json& r = j.at("R");
    if (!r.is_object()) throw ParseError("field \"R\" must be an object keyed by t");
    for (const auto& [key, value] : r.items()) {
      long t = 0;
      try {
        std::size_t used = 0;
        t = std::stol(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::logic_error&) {
        throw ParseError("R key \"" + key + "\" is not an integer");
      }
      p.couplings[t] = detail::matrix_from_json(value, "R[" + key + "]");
    }
  }
  if (j.contains("B")) {
    p.fixed_to_cell = detail::matrix_from_json(j.at("B"), "B");
    if (p.fixed_to_cell.rows() == 0) p.fixed_to_cell = RationalMatrix(0, p.cell_size);
  } else {
    p.fixed_to_cell = zero_rational(p.fixed_size, p.cell_size);
  }
  return p;
}

using CountInput = std::variant<WeightedGraph, PeriodicPresentation>;

// A presentation carries "N"; a raw graph carries "n".
inline CountInput input_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("input JSON must be an object");
  if (j.contains("N")) return presentation_from_json(j);
  if (j.contains("n")) return graph_from_json(j);
  throw ParseError("input is neither a presentation (\"N\") nor a graph (\"n\")");
}

inline Json graph_to_json(const WeightedGraph& g) {
  return Json{{"n", g.vertex_count()}, {"edges", detail::edges_to_json(g.edges())}};
}

inline Json presentation_to_json(const PeriodicPresentation& p) {
  Json j{{"N", p.order}, {"m", p.cell_size}, {"k", p.fixed_size}};
  j["H0_edges"] = detail::edges_to_json(p.cell_edges);
  j["S_edges"] = detail::edges_to_json(p.fixed_edges);
  Json r = Json::object();
  for (const auto& [t, m] : p.couplings) r[std::to_string(t)] = detail::matrix_to_json(m);
  j["R"] = std::move(r);
  if (p.fixed_size > 0) j["B"] = detail::matrix_to_json(p.fixed_to_cell);
  return j;
}

inline Json diagnostics_to_json(const std::vector<Diagnostic>& diags) {
  Json list = Json::array();
  for (const Diagnostic& d : diags) list.push_back(Json{{"code", d.code}, {"message", d.message}});
  return list;
}

// Written by hand so that huge rounded counts stay exact JSON integers.
inline std::string count_result_to_json(const CountResult& r) {
  std::string out = "{\"tau\": ";
  out += r.exact ? "\"" + to_string(*r.exact) + "\"" : detail::format_float(r.approx);
  if (r.rounded) out += ", \"tau_rounded\": " + to_string(*r.rounded);
  out += ", \"method\": \"";
  out += method_name(r.method);
  out += "\", \"imag_residual\": " + detail::format_float(r.imag_residual);
  out += ", \"round_residual\": " + detail::format_float(r.round_residual);
  out += ", \"millis\": " + detail::format_float(r.millis) + "}";
  return out;
}

inline std::string count_result_to_plain(const CountResult& r) {
  std::string out = method_name(r.method);
  out += " tau=" + (r.exact ? to_string(*r.exact) : detail::format_float(r.approx));
  if (r.rounded) out += " rounded=" + to_string(*r.rounded);
  out += " imag_residual=" + detail::format_float(r.imag_residual);
  out += " round_residual=" + detail::format_float(r.round_residual);
  out += " millis=" + detail::format_float(r.millis);
  return out;
}

}  // namespace ptree

#endif  // PTREE_IO_HPP_
