#include <algorithm>
#include <utility>

#include "bredonkit/zmod.hpp"

namespace bredonkit::zmod {

namespace {

Int abs_value(const Int& v) { return v < 0 ? Int(-v) : v; }

// Elimination state for Smith normal form. Row operations are mirrored on U
// and (inversely) on U^{-1}; column operations on V.
class SmithWorker {
 public:
  SmithWorker(const IntMatrix& a, SmithOptions opts)
      : a_(a), m_(a.rows()), n_(a.cols()), opts_(opts) {
    if (opts_.track_left) {
      u_ = IntMatrix::identity(m_);
      uinv_ = IntMatrix::identity(m_);
    }
    if (opts_.track_right) v_ = IntMatrix::identity(n_);
  }

  SmithForm run() {
    std::size_t t = 0;
    const std::size_t limit = std::min(m_, n_);
    for (; t < limit; ++t) {
      if (!bring_min_to(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m_; ++i) {
          if (a_(i, t).is_zero()) continue;
          Int q = a_(i, t) / a_(t, t);
          add_row(i, t, -q);
          if (!a_(i, t).is_zero()) clean = false;
        }
        for (std::size_t j = t + 1; j < n_; ++j) {
          if (a_(t, j).is_zero()) continue;
          Int q = a_(t, j) / a_(t, t);
          add_col(j, t, -q);
          if (!a_(t, j).is_zero()) clean = false;
        }
        if (!clean) {
          move_min_in_cross(t);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < m_ && !fixed; ++i)
          for (std::size_t j = t + 1; j < n_; ++j)
            if (!(a_(i, j) % a_(t, t)).is_zero()) {
              add_row(t, i, 1);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (a_(t, t) < 0) negate_row(t);
    }
    SmithForm out;
    out.rank = t;
    out.D = std::move(a_);
    out.U = std::move(u_);
    out.u_inverse = std::move(uinv_);
    out.V = std::move(v_);
    return out;
  }

 private:
  bool bring_min_to(std::size_t t) {
    std::size_t bi = m_;
    std::size_t bj = n_;
    Int best;
    for (std::size_t i = t; i < m_; ++i)
      for (std::size_t j = t; j < n_; ++j) {
        const Int& x = a_(i, j);
        if (x.is_zero()) continue;
        Int ax = abs_value(x);
        if (bi == m_ || ax < best) {
          best = ax;
          bi = i;
          bj = j;
          if (best == 1) break;
        }
      }
    if (bi == m_) return false;
    if (bi != t) swap_rows(t, bi);
    if (bj != t) swap_cols(t, bj);
    return true;
  }

  void move_min_in_cross(std::size_t t) {
    std::size_t bi = t;
    std::size_t bj = t;
    Int best = abs_value(a_(t, t));
    for (std::size_t i = t + 1; i < m_; ++i)
      if (!a_(i, t).is_zero() && abs_value(a_(i, t)) < best) {
        best = abs_value(a_(i, t));
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < n_; ++j)
      if (!a_(t, j).is_zero() && abs_value(a_(t, j)) < best) {
        best = abs_value(a_(t, j));
        bi = t;
        bj = j;
      }
    if (bi != t) swap_rows(t, bi);
    if (bj != t) swap_cols(t, bj);
  }

  void add_row(std::size_t dst, std::size_t src, const Int& q) {
    if (q.is_zero()) return;
    for (std::size_t c = 0; c < n_; ++c)
      if (!a_(src, c).is_zero()) a_(dst, c) += q * a_(src, c);
    if (opts_.track_left) {
      for (std::size_t c = 0; c < m_; ++c)
        if (!u_(src, c).is_zero()) u_(dst, c) += q * u_(src, c);
      for (std::size_t r = 0; r < m_; ++r)
        if (!uinv_(r, dst).is_zero()) uinv_(r, src) -= q * uinv_(r, dst);
    }
  }

  void add_col(std::size_t dst, std::size_t src, const Int& q) {
    if (q.is_zero()) return;
    for (std::size_t r = 0; r < m_; ++r)
      if (!a_(r, src).is_zero()) a_(r, dst) += q * a_(r, src);
    if (opts_.track_right)
      for (std::size_t r = 0; r < n_; ++r)
        if (!v_(r, src).is_zero()) v_(r, dst) += q * v_(r, src);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n_; ++c) std::swap(a_(i, c), a_(j, c));
    if (opts_.track_left) {
      for (std::size_t c = 0; c < m_; ++c) std::swap(u_(i, c), u_(j, c));
      for (std::size_t r = 0; r < m_; ++r) std::swap(uinv_(r, i), uinv_(r, j));
    }
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m_; ++r) std::swap(a_(r, i), a_(r, j));
    if (opts_.track_right)
      for (std::size_t r = 0; r < n_; ++r) std::swap(v_(r, i), v_(r, j));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < n_; ++c) a_(i, c) = -a_(i, c);
    if (opts_.track_left) {
      for (std::size_t c = 0; c < m_; ++c) u_(i, c) = -u_(i, c);
      for (std::size_t r = 0; r < m_; ++r) uinv_(r, i) = -uinv_(r, i);
    }
  }

  IntMatrix a_;
  std::size_t m_;
  std::size_t n_;
  SmithOptions opts_;
  IntMatrix u_;
  IntMatrix uinv_;
  IntMatrix v_;
};

}  // namespace

IntVector SmithForm::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& a, SmithOptions opts) {
  return SmithWorker(a, opts).run();
}

std::optional<IntVector> solve(const IntMatrix& a, const IntVector& y) {
  if (y.size() != a.rows()) return std::nullopt;
  SmithForm s = smith_normal_form(a, {true, true});
  IntVector z = s.U.apply(y);
  IntVector w(a.cols());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i < s.rank) {
      const Int& d = s.D(i, i);
      if (!(z[i] % d).is_zero()) return std::nullopt;
      w[i] = z[i] / d;
    } else if (!z[i].is_zero()) {
      return std::nullopt;
    }
  }
  return s.V.apply(w);
}

Presentation present(std::size_t generators, const IntMatrix& relations) {
  if (relations.rows() != generators) throw std::invalid_argument("present: row mismatch");
  SmithForm s = smith_normal_form(relations, {true, false});
  std::vector<std::size_t> keep;
  std::vector<Int> moduli;
  for (std::size_t i = 0; i < generators; ++i) {
    Int d = i < s.rank ? s.D(i, i) : Int(0);
    if (d == 1) continue;
    keep.push_back(i);
    moduli.push_back(d);
  }
  Presentation p;
  p.group = FgAbelian(std::move(moduli));
  p.projection = s.U.select_rows(keep);
  reduce_rows(p.projection, p.group);
  p.section = s.u_inverse.select_cols(keep);
  return p;
}

}  // namespace bredonkit::zmod
