#include <sstream>
#include <stdexcept>

#include "bredonkit/zmod.hpp"

namespace bredonkit::zmod {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
  IntMatrix m(a.rows_, a.cols_ + b.cols_);
  m.add_block(0, 0, a);
  m.add_block(0, a.cols_, b);
  return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
  IntMatrix m(a.rows_ + b.rows_, a.cols_);
  m.add_block(0, 0, a);
  m.add_block(a.rows_, 0, b);
  return m;
}

IntMatrix IntMatrix::block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t r = 0;
  std::size_t c = 0;
  for (const auto& b : blocks) {
    r += b.rows_;
    c += b.cols_;
  }
  IntMatrix m(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    m.add_block(r, c, b);
    r += b.rows_;
    c += b.cols_;
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::set_col(std::size_t c, const IntVector& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

void IntMatrix::set_row(std::size_t r, const IntVector& v) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  IntMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(idx[r], c);
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = (*this)(r, idx[c]);
  return m;
}

void IntMatrix::add_block(std::size_t r0, std::size_t c0, const IntMatrix& block,
                          const Int& scale) {
  for (std::size_t r = 0; r < block.rows_; ++r)
    for (std::size_t c = 0; c < block.cols_; ++c) {
      const Int& v = block(r, c);
      if (!v.is_zero()) (*this)(r0 + r, c0 + c) += scale * v;
    }
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  IntVector out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Int& a = (*this)(r, c);
      if (!a.is_zero()) out[r] += a * v[c];
    }
  }
  return out;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Int& y = b(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("sum mismatch");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("difference mismatch");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

IntMatrix operator*(const Int& s, const IntMatrix& a) {
  IntMatrix m = a;
  for (auto& v : m.data_) v *= s;
  return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace bredonkit::zmod
