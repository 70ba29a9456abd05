#include <algorithm>
#include <utility>

#include "bredonkit/zmod.hpp"

namespace bredonkit::zmod {

namespace {

Int abs_value(const Int& v) { return v < 0 ? Int(-v) : v; }

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a - q * b) < 0) q -= 1;
  return q;
}

void axpy(IntVector& dst, const IntVector& src, const Int& q, std::size_t from) {
  if (q.is_zero()) return;
  for (std::size_t i = from; i < dst.size(); ++i)
    if (!src[i].is_zero()) dst[i] += q * src[i];
}

// Bring rows into echelon form on columns [0, key); rows keep their full
// length so trailing "passenger" columns record the combinations used.
// Returns the number of nonzero key rows, which come first.
std::size_t echelon_on_key(std::vector<IntVector>& rows, std::size_t key) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < key && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t k = r; k < rows.size(); ++k) {
        if (rows[k][c].is_zero()) continue;
        if (best == rows.size() || abs_value(rows[k][c]) < abs_value(rows[best][c])) best = k;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool others = false;
      for (std::size_t k = r + 1; k < rows.size(); ++k) {
        if (rows[k][c].is_zero()) continue;
        Int q = rows[k][c] / rows[r][c];
        axpy(rows[k], rows[r], -q, 0);
        if (!rows[k][c].is_zero()) others = true;
      }
      if (!others) break;
    }
    if (!rows[r][c].is_zero()) ++r;
  }
  return r;
}

}  // namespace

Lattice::Lattice(std::size_t dim, std::vector<IntVector> generators) : dim_(dim) {
  add(generators);
}

void Lattice::add(const std::vector<IntVector>& generators) {
  bool changed = false;
  for (const auto& g : generators) {
    if (g.size() != dim_) throw std::invalid_argument("lattice generator has wrong length");
    if (std::all_of(g.begin(), g.end(), [](const Int& x) { return x.is_zero(); })) continue;
    basis_.push_back(g);
    changed = true;
  }
  if (changed) reduce();
}

void Lattice::reduce() {
  auto& rows = basis_;
  pivots_.clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim_ && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t k = r; k < rows.size(); ++k) {
        if (rows[k][c].is_zero()) continue;
        if (best == rows.size() || abs_value(rows[k][c]) < abs_value(rows[best][c])) best = k;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool others = false;
      for (std::size_t k = r + 1; k < rows.size(); ++k) {
        if (rows[k][c].is_zero()) continue;
        Int q = rows[k][c] / rows[r][c];
        axpy(rows[k], rows[r], -q, c);
        if (!rows[k][c].is_zero()) others = true;
      }
      if (!others) break;
    }
    if (rows[r][c].is_zero()) continue;
    if (rows[r][c] < 0)
      for (std::size_t i = c; i < dim_; ++i) rows[r][i] = -rows[r][i];
    for (std::size_t k = 0; k < r; ++k) {
      Int q = floor_div(rows[k][c], rows[r][c]);
      axpy(rows[k], rows[r], -q, c);
    }
    pivots_.push_back(c);
    ++r;
  }
  rows.resize(r);
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
  if (v.size() != dim_) return std::nullopt;
  IntVector rest = v;
  IntVector coef(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    std::size_t c = pivots_[i];
    if (rest[c].is_zero()) continue;
    if (!(rest[c] % basis_[i][c]).is_zero()) return std::nullopt;
    coef[i] = rest[c] / basis_[i][c];
    axpy(rest, basis_[i], -coef[i], c);
  }
  for (const auto& x : rest)
    if (!x.is_zero()) return std::nullopt;
  return coef;
}

bool Lattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  if (other.dim_ != dim_) return false;
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

IntMatrix Lattice::basis_matrix() const { return IntMatrix::from_columns(basis_, dim_); }

Lattice integer_kernel(const IntMatrix& a) {
  return preimage_of_zero(a, FgAbelian::free(a.rows()));
}

Lattice preimage_of_zero(const IntMatrix& f, const FgAbelian& target) {
  return preimage_of_zero(f, target.moduli());
}

Lattice preimage_of_zero(const IntMatrix& f, const std::vector<Int>& moduli) {
  const std::size_t m = f.rows();
  const std::size_t n = f.cols();
  if (moduli.size() != m) throw std::invalid_argument("preimage_of_zero: size mismatch");
  std::vector<IntVector> rows;
  for (std::size_t j = 0; j < n; ++j) {
    IntVector row(m + n);
    for (std::size_t i = 0; i < m; ++i) row[i] = f(i, j);
    row[m + j] = 1;
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Int& d = moduli[i];
    if (d.is_zero()) continue;
    IntVector row(m + n);
    row[i] = d;
    rows.push_back(std::move(row));
  }
  std::size_t nonzero = echelon_on_key(rows, m);
  std::vector<IntVector> gens;
  for (std::size_t k = nonzero; k < rows.size(); ++k)
    gens.emplace_back(rows[k].begin() + static_cast<std::ptrdiff_t>(m), rows[k].end());
  return Lattice(n, std::move(gens));
}

}  // namespace bredonkit::zmod
