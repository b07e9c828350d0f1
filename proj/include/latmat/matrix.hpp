#pragma once

#include <cstddef>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

namespace latmat {

/// Row-major dense real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix ones(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix transpose() const;
  /// Columns [first, first + count).
  DenseMatrix columns(std::size_t first, std::size_t count) const;
  double max_abs() const;
  bool all_finite() const;
  /// |a_ij - a_ji| <= tol * max(1, max|a|).
  bool is_symmetric(double tol = 1e-12) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);
/// diag(left) * a * diag(right).
DenseMatrix scale_rows_cols(std::span<const double> left, const DenseMatrix& a, std::span<const double> right);

/// max|actual - expected| / max|expected| (absolute when expected is zero).
double relative_error(const DenseMatrix& actual, const DenseMatrix& expected);

/// One row per line, comma separated, 17 significant digits (reads back bit-exactly).
void write_csv(std::ostream& out, const DenseMatrix& m);
/// Right-aligned columns at 6 significant digits, for reading.
void write_pretty(std::ostream& out, const DenseMatrix& m);
/// Throws ParseError (with line number) on ragged or non-numeric input.
DenseMatrix read_csv(std::istream& in);

}  // namespace latmat
