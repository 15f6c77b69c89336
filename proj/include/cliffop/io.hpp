#pragma once

/**
 * @file io.hpp
 * @brief JSON forms of operators, grids, densities and boundary operators.
 * Complex numbers are [re, im] pairs; matrices are row-major nested arrays.
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "boundary_ops.hpp"

namespace cliffop {

using json = nlohmann::json;

inline json complex_json(cd v) { return json::array({v.real(), v.imag()}); }

inline cd complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json matrix_json(const MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatrixXcd matrix_from_json(const json& j) {
  const Eigen::Index rows = Eigen::Index(j.size());
  const Eigen::Index cols = rows ? Eigen::Index(j[0].size()) : 0;
  MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (Eigen::Index(j[r].size()) != cols) throw InvalidArgument("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

inline json to_json(const DiracOperator& op) {
  json a = json::array(), b = json::array();
  for (int j = 0; j < op.n(); ++j) {
    a.push_back(matrix_json(op.alpha(j)));
    b.push_back(matrix_json(op.beta(j)));
  }
  return {{"n", op.n()}, {"k", op.k()}, {"alpha", a}, {"beta", b}};
}

inline DiracOperator dirac_from_json(const json& j) {
  std::vector<MatrixXcd> a, b;
  for (const auto& m : j.at("alpha")) a.push_back(matrix_from_json(m));
  for (const auto& m : j.at("beta")) b.push_back(matrix_from_json(m));
  DiracOperator op(std::move(a), std::move(b));
  if (j.contains("n") && j["n"].get<int>() != op.n()) throw InvalidArgument("n does not match alpha");
  if (j.contains("k") && j["k"].get<int>() != op.k()) throw InvalidArgument("k does not match alpha");
  return op;
}

inline json to_json(const BoundaryGrid& g) {
  json nodes = json::array(), normals = json::array();
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    nodes.push_back(std::vector<double>(g.nodes.col(i).data(), g.nodes.col(i).data() + g.nodes.rows()));
    normals.push_back(std::vector<double>(g.normals.col(i).data(), g.normals.col(i).data() + g.normals.rows()));
  }
  return {{"type", g.kind == GridKind::Circle ? "circle" : "hopf"},
          {"params", g.params},
          {"radius", g.domain.radius},
          {"nodes", nodes},
          {"weights", std::vector<double>(g.weights.data(), g.weights.data() + g.weights.size())},
          {"normals", normals}};
}

inline json to_json(const Density& u) {
  json v = json::array();
  for (Eigen::Index i = 0; i < u.values.size(); ++i) v.push_back(complex_json(u.values(i)));
  return {{"k", u.k}, {"values", v}};
}

inline json to_json(const BoundaryOperator& op) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) entries.push_back(complex_json(op.matrix(r, c)));
  return {{"label", op.label}, {"N", op.grid ? op.grid->size() : op.dim() / op.k}, {"k", op.k}, {"entries", entries}};
}

/// Write text to path through a temporary file and a rename.
inline void write_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cliffop
