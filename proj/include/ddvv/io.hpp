#pragma once

// JSON ingestion of tuples, second fundamental forms and single matrices,
// and report emission with 17 significant digits.

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ddvv/ddvv.hpp"
#include "ddvv/error.hpp"
#include "ddvv/linalg.hpp"
#include "ddvv/report.hpp"

namespace ddvv {

using Json = nlohmann::ordered_json;

// Relative asymmetry tolerated as rounding noise. Any nonzero asymmetry is
// still reported; the message says whether it exceeds this level.
inline constexpr double kAsymmetryWarning = 1e-9;

template <typename T>
struct Parsed {
  T value;
  std::vector<std::string> warnings;
};

namespace detail {

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON", line, column);
  }
}

inline const Json& require_key(const Json& obj, const char* key) {
  if (!obj.is_object()) throw ValidationError("top-level value must be a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(std::string("missing key \"") + key + "\"");
  return *it;
}

inline std::size_t require_positive_int(const Json& obj, const char* key) {
  const Json& v = require_key(obj, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ValidationError(std::string("\"") + key + "\" must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

inline double require_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + " is not a number");
  return v.get<double>();
}

// An n x n array of numbers; `where` names it in error messages.
inline Matrix read_square(const Json& v, std::size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n) {
    throw ValidationError(where + " must be an array of " + std::to_string(n) + " rows");
  }
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = v[i];
    if (!row.is_array() || row.size() != n) {
      throw ValidationError(where + " row " + std::to_string(i) + " must have " +
                            std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      entries.push_back(require_number(row[j], where + "[" + std::to_string(i) + "][" +
                                                   std::to_string(j) + "]"));
    }
  }
  try {
    return Matrix(n, n, std::move(entries));
  } catch (const NumericalError&) {
    throw ValidationError(where + " has a non-finite entry");
  }
}

inline double relative_asymmetry(const Matrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  const double scale = a.norm();
  return scale > 0.0 ? worst / scale : 0.0;
}

inline Parsed<MatrixTuple> read_symmetric_list(const Json& list, std::size_t n, std::size_t m,
                                               const char* key) {
  if (!list.is_array()) throw ValidationError(std::string("\"") + key + "\" must be an array");
  if (list.size() != m) {
    throw ValidationError(std::string("\"") + key + "\" holds " + std::to_string(list.size()) +
                          " matrices but m = " + std::to_string(m));
  }
  std::vector<SymMatrix> mats;
  std::vector<std::string> warnings;
  for (std::size_t r = 0; r < m; ++r) {
    const std::string where = std::string(key) + "[" + std::to_string(r) + "]";
    const Matrix a = read_square(list[r], n, where);
    if (const double asym = relative_asymmetry(a); asym > 0.0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g", asym);
      const char* level = asym > kAsymmetryWarning ? "asymmetric" : "asymmetric within tolerance";
      warnings.push_back(where + " is " + level + " (relative " + buf + "); symmetrized");
    }
    mats.emplace_back(a);
  }
  return {MatrixTuple(std::move(mats)), std::move(warnings)};
}

inline void format_json(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ", ";
        first = false;
        out += Json(k).dump();
        out += ": ";
        format_json(v, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ", ";
        format_json(j[k], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

// {"n": n, "m": m, "matrices": [m row-major n x n arrays]}.
inline Parsed<MatrixTuple> parse_tuple_text(std::string_view text) {
  const Json j = detail::parse_json(text);
  const std::size_t n = detail::require_positive_int(j, "n");
  const std::size_t m = detail::require_positive_int(j, "m");
  return detail::read_symmetric_list(detail::require_key(j, "matrices"), n, m, "matrices");
}

// {"n": n, "m": m, "c": c, "h": [m row-major n x n arrays]}.
inline Parsed<SecondFundamentalForm> parse_sff_text(std::string_view text) {
  const Json j = detail::parse_json(text);
  const std::size_t n = detail::require_positive_int(j, "n");
  const std::size_t m = detail::require_positive_int(j, "m");
  const double c = detail::require_number(detail::require_key(j, "c"), "\"c\"");
  auto h = detail::read_symmetric_list(detail::require_key(j, "h"), n, m, "h");
  return {SecondFundamentalForm{c, std::move(h.value)}, std::move(h.warnings)};
}

// {"n": n, "matrix": row-major n x n array}; no symmetry assumed.
inline Matrix parse_matrix_text(std::string_view text) {
  const Json j = detail::parse_json(text);
  const std::size_t n = detail::require_positive_int(j, "n");
  return detail::read_square(detail::require_key(j, "matrix"), n, "matrix");
}

// Compact JSON; floating-point values with 17 significant digits.
inline std::string format_json(const Json& j) {
  std::string out;
  detail::format_json(j, out);
  return out;
}

inline Json matrix_to_json(const Matrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json tuple_to_json(const MatrixTuple& t) {
  Json j;
  j["n"] = t.n();
  j["m"] = t.m();
  Json mats = Json::array();
  for (const auto& a : t) mats.push_back(matrix_to_json(a));
  j["matrices"] = std::move(mats);
  return j;
}

inline std::string serialize_tuple(const MatrixTuple& t) { return format_json(tuple_to_json(t)); }

inline Json report_to_json(const InequalityReport& r) {
  Json j;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["margin"] = r.margin;
  j["pass"] = r.pass;
  j["tol"] = r.tol;
  return j;
}

}  // namespace ddvv
