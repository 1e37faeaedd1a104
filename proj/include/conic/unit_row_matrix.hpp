#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "conic/errors.hpp"

namespace conic {

// The system A of n unit rows in R^m, stored row-major.
class UnitRowMatrix {
 public:
  // Divides every row of `raw` by its norm (row order preserved).
  // A row with norm <= 1e-12 raises DegenerateRow.
  static UnitRowMatrix normalize_rows(int m, int n, std::vector<double> raw);

  // Accepts rows that are already unit length within 1e-9.
  static UnitRowMatrix from_unit_rows(int m, int n, std::vector<double> data);

  int dim() const noexcept { return m_; }
  int rows() const noexcept { return n_; }

  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * m_, static_cast<std::size_t>(m_)};
  }
  const std::vector<double>& data() const noexcept { return data_; }
  const double* raw() const noexcept { return data_.data(); }

 private:
  UnitRowMatrix(int m, int n, std::vector<double> data)
      : m_(m), n_(n), data_(std::move(data)) {}
  int m_;
  int n_;
  std::vector<double> data_;
};

// Callback receiving (row index, deviation |norm - 1|) for rows whose
// norm deviates from 1 by more than 1e-6 before normalisation.
using RowNormWarning = std::function<void(int, double)>;

// CSV: one row per line, comma-separated decimals.
UnitRowMatrix load_matrix_csv(std::istream& in, const RowNormWarning& warn = nullptr);

// JSON: {"m": ..., "n": ..., "rows": [[...], ...]}.
UnitRowMatrix load_matrix_json(std::istream& in, const RowNormWarning& warn = nullptr);

// Dispatches on extension (.json vs anything else -> CSV).
UnitRowMatrix load_matrix_file(const std::string& path, const RowNormWarning& warn = nullptr);

}  // namespace conic
