#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "rkdual/parallel.hpp"
#include "rkdual/ring.hpp"

namespace rkdual {

/// Sparse matrix with integer entries, stored row-wise with columns in
/// increasing order. Entries outside the declared shape are an error.
class Matrix {
 public:
  using Row = std::map<std::size_t, Integer>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<Integer>& d);
  /// Builds from a dense row-major table (test and fixture convenience).
  static Matrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;

  Integer at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Integer& v);
  void add(std::size_t r, std::size_t c, const Integer& v);
  const Row& row(std::size_t r) const { return data_.at(r); }

  Matrix transpose() const;
  /// Submatrix on the given row and column positions (in the given order).
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  Matrix negated() const;
  Matrix scaled(const Integer& s) const;

  /// Entries reduced into the ring's canonical representatives.
  Matrix reduced(const Ring& ring) const;
  bool is_zero(const Ring& ring) const;
  bool equals(const Matrix& other, const Ring& ring) const;

  /// Vertical/horizontal block assembly helpers.
  void place(const Matrix& block, std::size_t row0, std::size_t col0);

  std::string to_string() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  void check_index(std::size_t r, std::size_t c) const;

  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

/// a * b. The parallel kernel splits over result rows.
Matrix multiply(const Matrix& a, const Matrix& b, Exec exec = Exec::serial);

}  // namespace rkdual
