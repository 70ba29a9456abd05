#include <numeric>

#include "bredonkit/errors.hpp"
#include "bredonkit/fmod.hpp"

namespace bredonkit::fmod {

namespace {

std::size_t codomain(const CatModule& mod, std::size_t m) {
  const Category& c = mod.category();
  return mod.variance() == Variance::right ? c.source(m) : c.target(m);
}

std::size_t domain(const CatModule& mod, std::size_t m) {
  const Category& c = mod.category();
  return mod.variance() == Variance::right ? c.target(m) : c.source(m);
}

void require_same(const CatModule& m, const CatModule& n) {
  if (m.category_ptr() != n.category_ptr()) throw ObjectMismatch("modules over different categories");
}

// Shrinks the lattice spanned by the columns of `basis` (inside Z^D) to the
// vectors x with rows * x in the given moduli.
IntMatrix impose(const IntMatrix& basis, const IntMatrix& rows, const std::vector<Int>& moduli) {
  IntMatrix f = rows * basis;
  bool trivial = true;
  for (std::size_t i = 0; i < f.rows() && trivial; ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const Int& e = moduli[i];
      if (e.is_zero() ? !f(i, j).is_zero() : !(f(i, j) % e).is_zero()) {
        trivial = false;
        break;
      }
    }
  if (trivial) return basis;
  zmod::Lattice sub = zmod::preimage_of_zero(f, moduli);
  IntMatrix next = basis * sub.basis_matrix();
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < next.cols(); ++j) cols.push_back(next.col(j));
  return zmod::Lattice(basis.rows(), std::move(cols)).basis_matrix();
}

IntMatrix unflatten(const IntVector& x, std::size_t offset, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = x[offset + i * cols + j];
  return m;
}

// The module c |-> Z_D[F c, d] (right) or Z_D[d, F c] (left) over the source of F.
CatModule pulled_representable(const cats::Functor& f, CategoryPtr source, std::size_t d, Variance v) {
  const Category& cs = *source;
  const Category& ct = *f.target;
  const bool right = v == Variance::right;
  auto basis = [&](std::size_t c) -> const std::vector<std::size_t>& {
    return right ? ct.hom(f.object_map[c], d) : ct.hom(d, f.object_map[c]);
  };
  std::vector<FgAbelian> values;
  for (std::size_t c = 0; c < cs.object_count(); ++c) values.push_back(FgAbelian::free(basis(c).size()));
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < cs.morphism_count(); ++x) {
    std::size_t from = right ? cs.target(x) : cs.source(x);
    std::size_t to = right ? cs.source(x) : cs.target(x);
    const auto& fb = basis(from);
    IntMatrix a(basis(to).size(), fb.size());
    for (std::size_t j = 0; j < fb.size(); ++j) {
      LinComb r = right ? ct.compose(f.morphism_map[x], cats::single(fb[j]))
                        : ct.compose(cats::single(fb[j]), f.morphism_map[x]);
      for (const auto& t : r) a(ct.hom_position(t.morphism), j) += t.coef;
    }
    actions.push_back(std::move(a));
  }
  return CatModule(std::move(source), std::move(values), std::move(actions), v);
}

void check_functor_target(const cats::Functor& f, const Category& target) {
  if (f.target != &target) throw ObjectMismatch("functor has a different target category");
}

void check_functor_source(const cats::Functor& f, const Category& source) {
  if (f.source != &source) throw ObjectMismatch("functor has a different source category");
}

}  // namespace

NatTrans HomSpace::element(const IntVector& coords) const {
  IntVector x = lattice.inclusion().apply(coords);
  std::vector<IntMatrix> comps;
  for (std::size_t c = 0; c < source.object_count(); ++c)
    comps.push_back(unflatten(x, offsets[c], target.value(c).ambient_rank(), source.value(c).ambient_rank()));
  return NatTrans(source, target, std::move(comps));
}

std::optional<IntVector> HomSpace::coordinates(const NatTrans& t) const {
  IntVector x(offsets.back());
  for (std::size_t c = 0; c < source.object_count(); ++c) {
    const IntMatrix& m = t.component(c);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) x[offsets[c] + i * m.cols() + j] = m(i, j);
  }
  return lattice.coordinates(x);
}

HomSpace hom_space(const CatModule& m, const CatModule& n) {
  require_same(m, n);
  if (m.variance() != n.variance()) throw ObjectMismatch("hom between modules of different variance");
  const Category& cat = m.category();
  const std::size_t objs = cat.object_count();
  std::vector<std::size_t> offsets(objs + 1, 0);
  for (std::size_t c = 0; c < objs; ++c)
    offsets[c + 1] = offsets[c] + n.value(c).ambient_rank() * m.value(c).ambient_rank();
  const std::size_t dim = offsets[objs];
  auto var = [&](std::size_t c, std::size_t i, std::size_t j) {
    return offsets[c] + i * m.value(c).ambient_rank() + j;
  };

  IntMatrix basis = IntMatrix::identity(dim);
  // Well-definedness of each component.
  for (std::size_t c = 0; c < objs; ++c) {
    const auto& dm = m.value(c).moduli();
    const auto& en = n.value(c).moduli();
    std::vector<IntVector> rows;
    std::vector<Int> mods;
    for (std::size_t j = 0; j < dm.size(); ++j) {
      if (dm[j].is_zero()) continue;
      for (std::size_t i = 0; i < en.size(); ++i) {
        IntVector r(dim);
        r[var(c, i, j)] = dm[j];
        rows.push_back(std::move(r));
        mods.push_back(en[i]);
      }
    }
    if (!rows.empty()) basis = impose(basis, IntMatrix::from_rows(rows, dim), mods);
  }
  // Naturality: X_to M(x) - N(x) X_from vanishes in N(to).
  for (std::size_t x = 0; x < cat.morphism_count(); ++x) {
    if (cat.is_identity(x)) continue;
    const std::size_t from = domain(m, x);
    const std::size_t to = codomain(m, x);
    const IntMatrix& ma = m.action(x);
    const IntMatrix& na = n.action(x);
    const std::size_t rows_to = n.value(to).ambient_rank();
    const std::size_t cols_from = m.value(from).ambient_rank();
    if (rows_to == 0 || cols_from == 0) continue;
    std::vector<IntVector> rows;
    std::vector<Int> mods;
    for (std::size_t i = 0; i < rows_to; ++i)
      for (std::size_t j = 0; j < cols_from; ++j) {
        IntVector r(dim);
        for (std::size_t k = 0; k < m.value(to).ambient_rank(); ++k) r[var(to, i, k)] += ma(k, j);
        for (std::size_t k = 0; k < n.value(from).ambient_rank(); ++k) r[var(from, k, j)] -= na(i, k);
        rows.push_back(std::move(r));
        mods.push_back(n.value(to).moduli()[i]);
      }
    basis = impose(basis, IntMatrix::from_rows(rows, dim), mods);
  }
  std::vector<IntVector> zcols;
  for (std::size_t j = 0; j < basis.cols(); ++j) zcols.push_back(basis.col(j));
  zmod::Lattice z(dim, std::move(zcols));
  std::vector<IntVector> w;
  for (std::size_t c = 0; c < objs; ++c)
    for (std::size_t i = 0; i < n.value(c).ambient_rank(); ++i) {
      const Int& e = n.value(c).moduli()[i];
      if (e.is_zero()) continue;
      for (std::size_t j = 0; j < m.value(c).ambient_rank(); ++j) {
        IntVector v(dim);
        v[var(c, i, j)] = e;
        w.push_back(std::move(v));
      }
    }
  zmod::Subquotient sq(z, w);
  return HomSpace{sq.group(), sq, offsets, m, n};
}

FgAbelian hom_over_category(const CatModule& m, const CatModule& n) { return hom_space(m, n).group; }

TensorSpace tensor_space(const CatModule& right, const CatModule& left) {
  require_same(right, left);
  if (right.variance() != Variance::right || left.variance() != Variance::left)
    throw PreconditionError("tensor product needs a right module and a left module");
  const Category& cat = right.category();
  const std::size_t objs = cat.object_count();
  std::vector<std::size_t> offsets(objs + 1, 0);
  for (std::size_t c = 0; c < objs; ++c)
    offsets[c + 1] = offsets[c] + right.value(c).ambient_rank() * left.value(c).ambient_rank();
  const std::size_t dim = offsets[objs];
  auto var = [&](std::size_t c, std::size_t i, std::size_t j) {
    return offsets[c] + i * left.value(c).ambient_rank() + j;
  };
  zmod::Lattice rel(dim);
  std::vector<IntVector> batch;
  for (std::size_t c = 0; c < objs; ++c)
    for (std::size_t i = 0; i < right.value(c).ambient_rank(); ++i)
      for (std::size_t j = 0; j < left.value(c).ambient_rank(); ++j) {
        Int g = boost::multiprecision::gcd(right.value(c).moduli()[i], left.value(c).moduli()[j]);
        if (g.is_zero()) continue;
        IntVector v(dim);
        v[var(c, i, j)] = g;
        batch.push_back(std::move(v));
      }
  rel.add(batch);
  for (std::size_t x = 0; x < cat.morphism_count(); ++x) {
    if (cat.is_identity(x)) continue;
    const std::size_t a = cat.source(x);
    const std::size_t b = cat.target(x);
    const IntMatrix& ra = right.action(x);  // R(b) -> R(a)
    const IntMatrix& la = left.action(x);   // L(a) -> L(b)
    batch.clear();
    for (std::size_t i = 0; i < right.value(b).ambient_rank(); ++i)
      for (std::size_t j = 0; j < left.value(a).ambient_rank(); ++j) {
        IntVector v(dim);
        for (std::size_t k = 0; k < right.value(a).ambient_rank(); ++k) v[var(a, k, j)] += ra(k, i);
        for (std::size_t k = 0; k < left.value(b).ambient_rank(); ++k) v[var(b, i, k)] -= la(k, j);
        batch.push_back(std::move(v));
      }
    rel.add(batch);
  }
  zmod::Presentation p = zmod::present(dim, rel.basis_matrix());
  return TensorSpace{p.group, p, offsets};
}

FgAbelian tensor_over_category(const CatModule& right, const CatModule& left) {
  return tensor_space(right, left).group;
}

CatModule restrict_along(const cats::Functor& f, CategoryPtr source, const CatModule& n) {
  check_functor_target(f, n.category());
  check_functor_source(f, *source);
  const Category& cs = *source;
  std::vector<FgAbelian> values;
  for (std::size_t c = 0; c < cs.object_count(); ++c) values.push_back(n.value(f.object_map[c]));
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < cs.morphism_count(); ++x)
    actions.push_back(n.act(f.morphism_map[x], f.object_map[cs.source(x)], f.object_map[cs.target(x)]));
  return CatModule(std::move(source), std::move(values), std::move(actions), n.variance());
}

Induction induction(const cats::Functor& f, CategoryPtr target, const CatModule& m) {
  check_functor_source(f, m.category());
  check_functor_target(f, *target);
  if (m.variance() != Variance::right) throw Unsupported("induction of left modules");
  const Category& cs = m.category();
  const Category& ct = *target;
  std::vector<TensorSpace> spaces;
  for (std::size_t d = 0; d < ct.object_count(); ++d)
    spaces.push_back(tensor_space(m, pulled_representable(f, m.category_ptr(), d, Variance::left)));
  std::vector<FgAbelian> values;
  for (const auto& s : spaces) values.push_back(s.group);
  std::vector<IntMatrix> actions;
  for (std::size_t delta = 0; delta < ct.morphism_count(); ++delta) {
    const std::size_t d1 = ct.source(delta);
    const std::size_t d = ct.target(delta);
    // Generators (c, i, psi) with psi: d -> F c go to (c, i, psi ∘ delta).
    IntMatrix t(spaces[d1].offsets.back(), spaces[d].offsets.back());
    for (std::size_t c = 0; c < cs.object_count(); ++c) {
      const std::size_t fc = f.object_map[c];
      const auto& from = ct.hom(d, fc);
      const std::size_t width_from = from.size();
      const std::size_t width_to = ct.hom(d1, fc).size();
      for (std::size_t j = 0; j < width_from; ++j) {
        const LinComb& r = ct.compose(delta, from[j]);
        for (std::size_t i = 0; i < m.value(c).ambient_rank(); ++i)
          for (const auto& term : r)
            t(spaces[d1].offsets[c] + i * width_to + ct.hom_position(term.morphism),
              spaces[d].offsets[c] + i * width_from + j) += term.coef;
      }
    }
    actions.push_back(spaces[d1].presentation.projection * t * spaces[d].presentation.section);
  }
  return {CatModule(std::move(target), std::move(values), std::move(actions), Variance::right),
          std::move(spaces)};
}

CatModule induce_along(const cats::Functor& f, CategoryPtr target, const CatModule& m) {
  return induction(f, std::move(target), m).module;
}

Coinduction coinduction(const cats::Functor& f, CategoryPtr target, const CatModule& m) {
  check_functor_source(f, m.category());
  check_functor_target(f, *target);
  if (m.variance() != Variance::right) throw Unsupported("coinduction of left modules");
  const Category& cs = m.category();
  const Category& ct = *target;
  Coinduction out;
  for (std::size_t d = 0; d < ct.object_count(); ++d) {
    out.probes.push_back(pulled_representable(f, m.category_ptr(), d, Variance::right));
    out.spaces.push_back(hom_space(out.probes.back(), m));
  }
  std::vector<FgAbelian> values;
  for (const auto& s : out.spaces) values.push_back(s.group);
  std::vector<IntMatrix> actions;
  for (std::size_t delta = 0; delta < ct.morphism_count(); ++delta) {
    const std::size_t d1 = ct.source(delta);
    const std::size_t d = ct.target(delta);
    // delta_*: Z[F c, d1] -> Z[F c, d], psi |-> delta ∘ psi.
    std::vector<IntMatrix> push;
    for (std::size_t c = 0; c < cs.object_count(); ++c) {
      const std::size_t fc = f.object_map[c];
      const auto& from = ct.hom(fc, d1);
      IntMatrix p(ct.hom(fc, d).size(), from.size());
      for (std::size_t j = 0; j < from.size(); ++j)
        for (const auto& term : ct.compose(from[j], delta)) p(ct.hom_position(term.morphism), j) += term.coef;
      push.push_back(std::move(p));
    }
    NatTrans dstar(out.probes[d1], out.probes[d], std::move(push));
    const std::size_t gens = out.spaces[d].group.ambient_rank();
    IntMatrix a(out.spaces[d1].group.ambient_rank(), gens);
    for (std::size_t k = 0; k < gens; ++k) {
      IntVector e(gens);
      e[k] = 1;
      auto coords = out.spaces[d1].coordinates(out.spaces[d].element(e).after(dstar));
      if (!coords) throw InvalidModule("coinduction: precomposition left the hom space");
      a.set_col(k, *coords);
    }
    actions.push_back(std::move(a));
  }
  out.module = CatModule(std::move(target), std::move(values), std::move(actions), Variance::right);
  return out;
}

CatModule coinduce_along(const cats::Functor& f, CategoryPtr target, const CatModule& m) {
  return coinduction(f, std::move(target), m).module;
}

NatTrans coinduction_adjunct(const cats::Functor& f, const Coinduction& coind, const CatModule& y,
                             const NatTrans& p) {
  const Category& cs = p.target().category();
  const Category& ct = y.category();
  std::vector<IntMatrix> comps;
  for (std::size_t d = 0; d < ct.object_count(); ++d) {
    const HomSpace& space = coind.spaces[d];
    IntMatrix comp(space.group.ambient_rank(), y.value(d).ambient_rank());
    for (std::size_t j = 0; j < y.value(d).ambient_rank(); ++j) {
      IntVector v(y.value(d).ambient_rank());
      v[j] = 1;
      std::vector<IntMatrix> parts;
      for (std::size_t c = 0; c < cs.object_count(); ++c) {
        const std::size_t fc = f.object_map[c];
        const auto& phis = ct.hom(fc, d);
        IntMatrix x(p.target().value(c).ambient_rank(), phis.size());
        for (std::size_t k = 0; k < phis.size(); ++k)
          x.set_col(k, p.component(c).apply(y.action(phis[k]).apply(v)));
        parts.push_back(std::move(x));
      }
      auto coords = space.coordinates(NatTrans(coind.probes[d], p.target(), std::move(parts)));
      if (!coords) throw InvalidModule("coinduction adjunct is not natural at " + ct.object_name(d));
      comp.set_col(j, *coords);
    }
    comps.push_back(std::move(comp));
  }
  return NatTrans(y, coind.module, std::move(comps));
}

}  // namespace bredonkit::fmod
