#include "rkdual/matrix.hpp"

#include <sstream>

namespace rkdual {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace(i, 1);
  return m;
}

Matrix Matrix::diagonal(const std::vector<Integer>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("from_rows: ragged table");
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c] != 0) m.set(r, c, Integer(rows[r][c]));
  }
  return m;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

void Matrix::check_index(std::size_t r, std::size_t c) const {
  if (r >= rows() || c >= cols_) {
    std::ostringstream os;
    os << "matrix index (" << r << ", " << c << ") outside shape " << rows() << "x" << cols_;
    throw Error(os.str());
  }
}

Integer Matrix::at(std::size_t r, std::size_t c) const {
  check_index(r, c);
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Integer(0) : it->second;
}

void Matrix::set(std::size_t r, std::size_t c, const Integer& v) {
  check_index(r, c);
  if (sgn(v) == 0)
    data_[r].erase(c);
  else
    data_[r][c] = v;
}

void Matrix::add(std::size_t r, std::size_t c, const Integer& v) {
  check_index(r, c);
  if (sgn(v) == 0) return;
  auto [it, inserted] = data_[r].try_emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) data_[r].erase(it);
  }
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
  return t;
}

Matrix Matrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> col_pos(cols_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw Error("select: column out of range");
    col_pos[cols[j]] = j;
  }
  Matrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : data_.at(rows[i]))
      if (col_pos[c] < cols.size()) m.data_[i].emplace(col_pos[c], v);
  return m;
}

Matrix Matrix::negated() const { return scaled(-1); }

Matrix Matrix::scaled(const Integer& s) const {
  Matrix m(rows(), cols_);
  if (sgn(s) == 0) return m;
  for (std::size_t r = 0; r < rows(); ++r)
    for (const auto& [c, v] : data_[r]) m.data_[r].emplace(c, v * s);
  return m;
}

Matrix Matrix::reduced(const Ring& ring) const {
  Matrix m(rows(), cols_);
  for (std::size_t r = 0; r < rows(); ++r)
    for (const auto& [c, v] : data_[r]) m.set(r, c, ring.reduce(v));
  return m;
}

bool Matrix::is_zero(const Ring& ring) const {
  for (const auto& row : data_)
    for (const auto& [c, v] : row)
      if (!ring.is_zero(v)) return false;
  return true;
}

bool Matrix::equals(const Matrix& other, const Ring& ring) const {
  if (rows() != other.rows() || cols_ != other.cols_) return false;
  return (*this - other).is_zero(ring);
}

void Matrix::place(const Matrix& block, std::size_t row0, std::size_t col0) {
  if (row0 + block.rows() > rows() || col0 + block.cols() > cols_)
    throw Error("place: block does not fit");
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (const auto& [c, v] : block.data_[r]) add(row0 + r, col0 + c, v);
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
    os << "]\n";
  }
  return os.str();
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix sum: shape mismatch");
  Matrix m = a;
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (const auto& [c, v] : b.data_[r]) m.add(r, c, v);
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix difference: shape mismatch");
  Matrix m = a;
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (const auto& [c, v] : b.data_[r]) m.add(r, c, -v);
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix multiply(const Matrix& a, const Matrix& b, Exec exec) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "matrix product: " << a.rows() << "x" << a.cols() << " times " << b.rows() << "x" << b.cols();
    throw Error(os.str());
  }
  Matrix out(a.rows(), b.cols());
  std::vector<Matrix::Row> rows(a.rows());
  for_each_index(exec, a.rows(), [&](std::size_t r) {
    Matrix::Row acc;
    for (const auto& [k, av] : a.row(r))
      for (const auto& [c, bv] : b.row(k)) {
        auto [it, inserted] = acc.try_emplace(c, av * bv);
        if (!inserted) it->second += av * bv;
      }
    std::erase_if(acc, [](const auto& kv) { return sgn(kv.second) == 0; });
    rows[r] = std::move(acc);
  });
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (auto& [c, v] : rows[r]) out.set(r, c, v);
  return out;
}

}  // namespace rkdual
