#pragma once

// JSON input formats.
//
// Point set:   { "dim": d, "points": [["p/q", ...], ...] }
//   Rationals are strings "p/q" with 0 <= p < q and gcd(p, q) = 1; unreduced
//   or out-of-range values are rejected with the offending position.
//
// Matrix:      { "dim": d, "entries": [[[c0, c1, ..., ce], ...], ...] }
//   Row-major, coefficients in ascending degree; c0 must be 0 for every
//   entry (the dilation matrix has a_{r,s}(0) = 0).

#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "glasner/errors.hpp"
#include "glasner/poly_matrix.hpp"
#include "glasner/rational.hpp"
#include "glasner/torus.hpp"

namespace glasner {

inline Rat parse_rational(const std::string& text, const std::string& where) {
  const auto fail = [&](const std::string& why) -> Rat {
    throw parse_error(where + ": \"" + text + "\" " + why);
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size()) {
    return fail("is not of the form \"p/q\"");
  }
  const std::string num_text = text.substr(0, slash);
  const std::string den_text = text.substr(slash + 1);
  for (const std::string& part : {num_text, den_text}) {
    if (part.find_first_not_of("0123456789") != std::string::npos) {
      return fail("is not of the form \"p/q\" with decimal digits");
    }
    if (part.size() > 19) return fail("does not fit in 64 bits");
  }
  const auto num = static_cast<long long>(std::stoull(num_text));
  const auto den = static_cast<long long>(std::stoull(den_text));
  if (num < 0 || den <= 0) return fail("does not fit in 64 bits");
  if (num >= den) return fail("is out of range: need 0 <= p < q");
  if (std::gcd(num, den) != 1) {
    return fail("is not reduced (gcd " + std::to_string(std::gcd(num, den)) + ")");
  }
  Rat r;
  r.num = num;
  r.den = den;
  return r;
}

inline PointSet point_set_from_json(const nlohmann::json& j, const std::string& source) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("points")) {
    throw parse_error(source + ": expected an object with \"dim\" and \"points\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw parse_error(source + ": dim: expected a positive integer");
  }
  const int dim = j["dim"].get<int>();
  if (!j["points"].is_array() || j["points"].empty()) {
    throw parse_error(source + ": points: expected a non-empty array");
  }
  std::vector<TorusPoint> points;
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    const auto& row = j["points"][i];
    const std::string here = source + ": points[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw parse_error(here + ": expected an array of " + std::to_string(dim) +
                        " rationals");
    }
    TorusPoint p;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_string()) {
        throw parse_error(here + "[" + std::to_string(c) + "]: expected a string \"p/q\"");
      }
      p.coords.push_back(
          parse_rational(row[c].get<std::string>(), here + "[" + std::to_string(c) + "]"));
    }
    for (std::size_t prev = 0; prev < points.size(); ++prev) {
      if (points[prev] == p) {
        throw parse_error(here + ": duplicate of points[" + std::to_string(prev) + "]");
      }
    }
    points.push_back(std::move(p));
  }
  return make_point_set(dim, std::move(points));
}

inline nlohmann::json point_set_to_json(const PointSet& s) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : s.points) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : p.coords) row.push_back(c.str());
    points.push_back(row);
  }
  return {{"dim", s.dim}, {"points", points}};
}

inline PolyMatrix poly_matrix_from_json(const nlohmann::json& j, const std::string& source) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw parse_error(source + ": expected an object with \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw parse_error(source + ": dim: expected a positive integer");
  }
  const int dim = j["dim"].get<int>();
  if (!j["entries"].is_array() || static_cast<int>(j["entries"].size()) != dim) {
    throw parse_error(source + ": entries: expected " + std::to_string(dim) + " rows");
  }
  PolyMatrix a;
  a.dim = dim;
  a.entries.resize(dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j["entries"][r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw parse_error(source + ": entries[" + std::to_string(r) + "]: expected " +
                        std::to_string(dim) + " coefficient lists");
    }
    for (int s = 0; s < dim; ++s) {
      const auto& cell = row[s];
      const std::string here =
          source + ": entries[" + std::to_string(r) + "][" + std::to_string(s) + "]";
      if (!cell.is_array() || cell.empty()) {
        throw parse_error(here + ": expected a non-empty coefficient list [c0, c1, ...]");
      }
      IntPolynomial p;
      for (std::size_t k = 0; k < cell.size(); ++k) {
        if (!cell[k].is_number_integer()) {
          throw parse_error(here + "[" + std::to_string(k) + "]: expected an integer");
        }
        p.coeffs.push_back(cell[k].get<long long>());
      }
      if (p.constant_term() != 0) {
        throw parse_error(here + ": constant term must be zero (a_{r,s}(0) = 0)");
      }
      a.entries[r].push_back(std::move(p));
    }
  }
  return a;
}

inline nlohmann::json poly_matrix_to_json(const PolyMatrix& a) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& row : a.entries) {
    nlohmann::json jrow = nlohmann::json::array();
    for (const auto& p : row) jrow.push_back(p.coeffs);
    entries.push_back(jrow);
  }
  return {{"dim", a.dim}, {"entries", entries}};
}

namespace detail {

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

}  // namespace detail

inline PointSet load_point_set(const std::string& path) {
  return point_set_from_json(detail::load_json_file(path), path);
}

inline PolyMatrix load_poly_matrix(const std::string& path) {
  return poly_matrix_from_json(detail::load_json_file(path), path);
}

}  // namespace glasner
