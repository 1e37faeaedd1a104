#include "conic/unit_row_matrix.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace conic {

namespace {

void check_shape(int m, int n, std::size_t size) {
  if (m < 2) throw InvalidInput("matrix: ambient dimension m must be >= 2");
  if (n < 1) throw InvalidInput("matrix: row count n must be >= 1");
  if (size != static_cast<std::size_t>(m) * n)
    throw InvalidInput("matrix: data size does not match m * n");
}

UnitRowMatrix normalize_with_warnings(int m, int n, std::vector<double> raw,
                                      const RowNormWarning& warn) {
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
      double x = raw[static_cast<std::size_t>(i) * m + j];
      s += x * x;
    }
    double nrm = std::sqrt(s);
    if (warn && std::abs(nrm - 1.0) > 1e-6) warn(i, std::abs(nrm - 1.0));
  }
  return UnitRowMatrix::normalize_rows(m, n, std::move(raw));
}

}  // namespace

UnitRowMatrix UnitRowMatrix::normalize_rows(int m, int n, std::vector<double> raw) {
  check_shape(m, n, raw.size());
  for (int i = 0; i < n; ++i) {
    double* r = raw.data() + static_cast<std::size_t>(i) * m;
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += r[j] * r[j];
    double nrm = std::sqrt(s);
    if (nrm <= 1e-12)
      throw DegenerateRow(i, "row " + std::to_string(i) + " has zero norm");
    for (int j = 0; j < m; ++j) r[j] /= nrm;
  }
  return UnitRowMatrix(m, n, std::move(raw));
}

UnitRowMatrix UnitRowMatrix::from_unit_rows(int m, int n, std::vector<double> data) {
  check_shape(m, n, data.size());
  for (int i = 0; i < n; ++i) {
    const double* r = data.data() + static_cast<std::size_t>(i) * m;
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += r[j] * r[j];
    if (std::abs(std::sqrt(s) - 1.0) > 1e-9)
      throw InvalidInput("row " + std::to_string(i) + " is not unit length");
  }
  return UnitRowMatrix(m, n, std::move(data));
}

UnitRowMatrix load_matrix_csv(std::istream& in, const RowNormWarning& warn) {
  std::vector<double> values;
  int m = -1, n = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    int cols = 0;
    while (std::getline(ss, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InvalidInput("csv: cannot parse '" + cell + "' on row " + std::to_string(n));
      }
      ++cols;
    }
    if (cols == 0) continue;
    if (m < 0) m = cols;
    if (cols != m)
      throw InvalidInput("csv: row " + std::to_string(n) + " has " +
                         std::to_string(cols) + " columns, expected " + std::to_string(m));
    ++n;
  }
  if (n == 0) throw InvalidInput("csv: no rows");
  return normalize_with_warnings(m, n, std::move(values), warn);
}

UnitRowMatrix load_matrix_json(std::istream& in, const RowNormWarning& warn) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("json: parse error: ") + e.what());
  }
  if (!j.contains("m") || !j.contains("n") || !j.contains("rows"))
    throw InvalidInput("json: expected fields m, n, rows");
  int m = j["m"].get<int>();
  int n = j["n"].get<int>();
  const auto& rows = j["rows"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw InvalidInput("json: rows array does not have n entries");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(m) * n);
  for (const auto& r : rows) {
    if (!r.is_array() || static_cast<int>(r.size()) != m)
      throw InvalidInput("json: each row must have m entries");
    for (const auto& x : r) values.push_back(x.get<double>());
  }
  return normalize_with_warnings(m, n, std::move(values), warn);
}

UnitRowMatrix load_matrix_file(const std::string& path, const RowNormWarning& warn) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file: " + path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
    return load_matrix_json(in, warn);
  return load_matrix_csv(in, warn);
}

}  // namespace conic
