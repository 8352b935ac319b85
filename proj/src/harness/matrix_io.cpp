#include "dynsub/matrix_io.hpp"

#include <cmath>
#include <fstream>

#include "dynsub/errors.hpp"

namespace dynsub::io {

namespace {

using nlohmann::json;

double finite_number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string(what) + ": non-finite entry");
  return x;
}

// Checks the envelope and returns the rows array with its shape.
const json& rows_of(const json& j, const char* kind, Eigen::Index& rows, Eigen::Index& cols) {
  if (!j.is_object()) throw ParseError("matrix file: expected an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError("matrix file: missing \"kind\"");
  const std::string k = j["kind"].get<std::string>();
  if (k != "complex" && k != "real") throw ParseError("matrix file: unknown kind '" + k + "'");
  if (std::string(kind) == "real" && k != "real")
    throw ParseError("matrix file: expected kind \"real\"");
  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty())
    throw ParseError("matrix file: \"rows\" must be a non-empty array");
  const json& r = j["rows"];
  rows = static_cast<Eigen::Index>(r.size());
  cols = -1;
  for (const auto& row : r) {
    if (!row.is_array() || row.empty()) throw ParseError("matrix file: every row must be a non-empty array");
    if (cols < 0) cols = static_cast<Eigen::Index>(row.size());
    if (static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("matrix file: ragged rows");
  }
  return r;
}

}  // namespace

ComplexMatrix complex_from_json(const json& j) {
  Eigen::Index rows = 0, cols = 0;
  const json& r = rows_of(j, "complex", rows, cols);
  const bool real_kind = j["kind"] == "real";
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      const json& e = r[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      if (e.is_array()) {
        if (real_kind || e.size() != 2) throw ParseError("matrix file: complex entries are [re, im]");
        m(i, k) = Complex(finite_number(e[0], "matrix file"), finite_number(e[1], "matrix file"));
      } else {
        m(i, k) = Complex(finite_number(e, "matrix file"), 0.0);
      }
    }
  }
  return m;
}

RealMatrix real_from_json(const json& j) {
  Eigen::Index rows = 0, cols = 0;
  const json& r = rows_of(j, "real", rows, cols);
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = finite_number(r[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], "matrix file");
  return m;
}

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return {{"kind", "complex"}, {"rows", std::move(rows)}};
}

json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return {{"kind", "real"}, {"rows", std::move(rows)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

ComplexMatrix read_complex(const std::string& path) { return complex_from_json(read_json_file(path)); }

RealMatrix read_real(const std::string& path) { return real_from_json(read_json_file(path)); }

}  // namespace dynsub::io
