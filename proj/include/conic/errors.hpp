#pragma once

#include <stdexcept>
#include <string>

namespace conic {

// Error categories map onto the CLI exit-code contract:
//   InvalidInput -> 1, Numerical -> 2, Statistical -> 3.
enum class ErrorKind { InvalidInput = 1, Numerical = 2, Statistical = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& w) : Error(ErrorKind::InvalidInput, w) {}
};

// A row of the input matrix has (numerically) zero length.
struct DegenerateRow : Error {
  DegenerateRow(int row, const std::string& w)
      : Error(ErrorKind::InvalidInput, w), row_index(row) {}
  int row_index;
};

// The m x m row subset is singular; callers normally skip the subset.
struct SingularSubset : Error {
  explicit SingularSubset(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};

// Linearly dependent input to orthogonalisation.
struct DependentSet : Error {
  explicit DependentSet(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};

struct Unsupported : Error {
  explicit Unsupported(const std::string& w) : Error(ErrorKind::InvalidInput, w) {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};

// Moment of C(A) with exponent >= 1 does not exist.
struct MomentDivergent : Error {
  explicit MomentDivergent(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};

struct InsufficientTailData : Error {
  explicit InsufficientTailData(const std::string& w) : Error(ErrorKind::Statistical, w) {}
};

}  // namespace conic
