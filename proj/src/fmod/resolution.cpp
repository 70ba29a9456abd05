#include <map>

#include "bredonkit/errors.hpp"
#include "bredonkit/fmod.hpp"

namespace bredonkit::fmod {

namespace {

std::vector<std::size_t> cell_offsets(const ChainComplex& c, std::size_t k, std::size_t obj) {
  const Category& cat = *c.category;
  std::vector<std::size_t> off(c.cells[k].size() + 1, 0);
  for (std::size_t a = 0; a < c.cells[k].size(); ++a) off[a + 1] = off[a] + cat.hom(obj, c.cells[k][a]).size();
  return off;
}

// Element of P(b) = ⊕ Z[b, c_α] given by a combination of morphisms b -> c_α in slot α.
void add_into(const Category& cat, IntVector& v, std::size_t offset, const LinComb& comb, const Int& scale) {
  for (const auto& t : comb) v[offset + cat.hom_position(t.morphism)] += scale * t.coef;
}

AbMap free_map(const IntMatrix& m) {
  return AbMap(FgAbelian::free(m.cols()), FgAbelian::free(m.rows()), m);
}

// Combination Σ z_j hom(c, target)[j] read off a slice of a vector.
LinComb slice_to_comb(const Category& cat, const IntVector& z, std::size_t offset, std::size_t c,
                      std::size_t target) {
  LinComb out;
  const auto& basis = cat.hom(c, target);
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!z[offset + j].is_zero()) out.push_back({basis[j], zmod::to_int64(z[offset + j])});
  return out;
}

}  // namespace

std::size_t ChainComplex::rank(std::size_t k, std::size_t obj) const {
  if (k >= cells.size()) return 0;
  std::size_t r = 0;
  for (std::size_t c : cells[k]) r += category->hom(obj, c).size();
  return r;
}

IntMatrix ChainComplex::boundary_at(std::size_t k, std::size_t obj) const {
  if (k == 0 || k >= cells.size()) throw DegreeOutOfRange("no boundary in degree " + std::to_string(k));
  const Category& cat = *category;
  auto src = cell_offsets(*this, k, obj);
  auto dst = cell_offsets(*this, k - 1, obj);
  IntMatrix m(dst.back(), src.back());
  for (std::size_t b = 0; b < cells[k].size(); ++b) {
    const auto& psis = cat.hom(obj, cells[k][b]);
    for (std::size_t j = 0; j < psis.size(); ++j) {
      IntVector col(dst.back());
      for (const auto& [a, comb] : boundary[k][b])
        add_into(cat, col, dst[a], cat.compose(cats::single(psis[j]), comb), Int(1));
      m.set_col(src[b] + j, col);
    }
  }
  return m;
}

IntMatrix ChainComplex::augmentation_at(std::size_t obj) const {
  if (!augmentation_target) throw PreconditionError("complex has no augmentation");
  const Category& cat = *category;
  const CatModule& t = *augmentation_target;
  auto src = cell_offsets(*this, 0, obj);
  IntMatrix m(t.value(obj).ambient_rank(), src.back());
  for (std::size_t a = 0; a < cells[0].size(); ++a) {
    const auto& psis = cat.hom(obj, cells[0][a]);
    for (std::size_t j = 0; j < psis.size(); ++j) m.set_col(src[a] + j, t.action(psis[j]).apply(augmentation[a]));
  }
  zmod::reduce_rows(m, t.value(obj));
  return m;
}

std::optional<std::string> check_complex(const ChainComplex& c) {
  const Category& cat = *c.category;
  if (c.boundary.size() != c.cells.size()) return "boundary table has the wrong number of degrees";
  for (std::size_t k = 1; k < c.cells.size(); ++k) {
    if (c.boundary[k].size() != c.cells[k].size())
      return "degree " + std::to_string(k) + " has cells without a boundary";
    for (const auto& terms : c.boundary[k])
      for (const auto& [a, comb] : terms) {
        if (a >= c.cells[k - 1].size()) return "boundary names a missing cell";
        for (const auto& t : comb)
          if (t.morphism >= cat.morphism_count() || cat.target(t.morphism) != c.cells[k - 1][a])
            return "boundary term has the wrong target in degree " + std::to_string(k);
      }
  }
  if (c.augmentation_target && c.augmentation.size() != c.cells[0].size())
    return "augmentation needs one element per degree-0 cell";
  for (std::size_t k = 2; k < c.cells.size(); ++k)
    for (std::size_t b = 0; b < c.cells[k].size(); ++b) {
      std::map<std::size_t, LinComb> total;
      for (const auto& [a, comb] : c.boundary[k][b])
        for (const auto& [g, comb2] : c.boundary[k - 1][a]) accumulate(total[g], cat.compose(comb, comb2));
      for (const auto& [g, comb] : total)
        if (!comb.empty())
          return "boundary squared is nonzero on cell " + std::to_string(b) + " of degree " + std::to_string(k);
    }
  if (c.augmentation_target && c.cells.size() > 1) {
    const CatModule& t = *c.augmentation_target;
    for (std::size_t b = 0; b < c.cells[1].size(); ++b) {
      const std::size_t cb = c.cells[1][b];
      IntVector sum(t.value(cb).ambient_rank());
      for (const auto& [a, comb] : c.boundary[1][b]) {
        IntVector v = t.act(comb, cb, c.cells[0][a]).apply(c.augmentation[a]);
        for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
      }
      if (!t.value(cb).is_zero_element(sum))
        return "augmentation does not kill the boundary of cell " + std::to_string(b);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_exact(const ChainComplex& c) {
  const Category& cat = *c.category;
  const std::size_t top = c.top_degree();
  for (std::size_t b = 0; b < cat.object_count(); ++b) {
    const std::string at = " at " + cat.object_name(b);
    if (c.augmentation_target) {
      AbMap eps(FgAbelian::free(c.rank(0, b)), c.augmentation_target->value(b), c.augmentation_at(b));
      if (!zmod::cokernel(eps).group.is_zero()) return "augmentation is not onto" + at;
      AbMap in = c.cells.size() > 1 ? free_map(c.boundary_at(1, b))
                                    : AbMap::zero(FgAbelian::free(0), FgAbelian::free(c.rank(0, b)));
      if (!zmod::homology(in, eps).is_zero()) return "not exact in degree 0" + at;
    }
    for (std::size_t k = 1; k <= top; ++k) {
      if (k == top && !c.complete) break;
      AbMap out = free_map(c.boundary_at(k, b));
      AbMap in = k + 1 <= top ? free_map(c.boundary_at(k + 1, b))
                              : AbMap::zero(FgAbelian::free(0), FgAbelian::free(c.rank(k, b)));
      if (!zmod::homology(in, out).is_zero()) return "not exact in degree " + std::to_string(k) + at;
    }
  }
  return std::nullopt;
}

namespace {

struct Level {
  std::vector<std::size_t> cells;
  std::vector<IntVector> elements;  // element of the ambient at the cell's object
};

// Greedy generators of the submodule of `ambient` whose value at each object
// is kernel[b]: objects in descending order, each lattice basis vector kept
// unless the generators so far already reach it.
Level choose_generators(const CatModule& ambient, const std::vector<zmod::Lattice>& kernel) {
  const Category& cat = ambient.category();
  const std::size_t objs = cat.object_count();
  std::vector<zmod::Lattice> reached;
  for (std::size_t b = 0; b < objs; ++b) {
    zmod::Lattice l(ambient.value(b).ambient_rank());
    std::vector<IntVector> rel;
    const auto& mod = ambient.value(b).moduli();
    for (std::size_t i = 0; i < mod.size(); ++i)
      if (!mod[i].is_zero()) {
        IntVector v(mod.size());
        v[i] = mod[i];
        rel.push_back(std::move(v));
      }
    l.add(rel);
    reached.push_back(std::move(l));
  }
  Level out;
  for (std::size_t c = objs; c-- > 0;)
    for (const auto& z : kernel[c].basis()) {
      if (reached[c].contains(z)) continue;
      out.cells.push_back(c);
      out.elements.push_back(z);
      for (std::size_t b = 0; b < objs; ++b) {
        std::vector<IntVector> imgs;
        for (std::size_t psi : cat.hom(b, c)) imgs.push_back(ambient.action(psi).apply(z));
        if (!imgs.empty()) reached[b].add(imgs);
      }
    }
  return out;
}

CatModule free_module(const CategoryPtr& cat, const std::vector<std::size_t>& cells,
                      std::map<std::size_t, CatModule>& reps) {
  if (cells.empty()) return CatModule::zero(cat);
  std::vector<CatModule> parts;
  for (std::size_t c : cells) {
    auto it = reps.find(c);
    if (it == reps.end()) it = reps.emplace(c, CatModule::representable(cat, c)).first;
    parts.push_back(it->second);
  }
  return CatModule::direct_sum(parts);
}

}  // namespace

ChainComplex free_resolution(const CatModule& m, ResolutionOptions opts) {
  if (m.variance() != Variance::right) throw Unsupported("resolutions of left modules");
  const CategoryPtr& catp = m.category_ptr();
  const Category& cat = *catp;
  const std::size_t objs = cat.object_count();
  ChainComplex out;
  out.category = catp;
  out.augmentation_target = m;

  std::vector<zmod::Lattice> whole;
  for (std::size_t b = 0; b < objs; ++b) {
    std::vector<IntVector> basis;
    for (std::size_t i = 0; i < m.value(b).ambient_rank(); ++i) {
      IntVector e(m.value(b).ambient_rank());
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    whole.emplace_back(m.value(b).ambient_rank(), std::move(basis));
  }
  Level level = choose_generators(m, whole);
  out.cells.push_back(level.cells);
  out.boundary.emplace_back();
  out.augmentation = level.elements;

  std::map<std::size_t, CatModule> reps;
  for (std::size_t k = 0;; ++k) {
    std::size_t total = 0;
    for (std::size_t b = 0; b < objs; ++b) total += out.rank(k, b);
    if (total > opts.rank_bound)
      throw ResourceError("resolution rank " + std::to_string(total) + " in degree " + std::to_string(k) +
                          " exceeds the bound " + std::to_string(opts.rank_bound));
    std::vector<zmod::Lattice> kernel;
    bool zero = true;
    for (std::size_t b = 0; b < objs; ++b) {
      IntMatrix d = k == 0 ? out.augmentation_at(b) : out.boundary_at(k, b);
      const std::vector<Int> mods = k == 0 ? m.value(b).moduli() : std::vector<Int>(d.rows(), Int(0));
      kernel.push_back(zmod::preimage_of_zero(d, mods));
      if (kernel.back().rank() > 0) zero = false;
    }
    if (zero) {
      out.complete = true;
      break;
    }
    if (k == opts.max_degree) break;
    CatModule ambient = free_module(catp, out.cells[k], reps);
    Level next = choose_generators(ambient, kernel);
    std::vector<std::vector<std::pair<std::size_t, LinComb>>> bd;
    for (std::size_t b = 0; b < next.cells.size(); ++b) {
      const std::size_t c = next.cells[b];
      auto off = cell_offsets(out, k, c);
      std::vector<std::pair<std::size_t, LinComb>> terms;
      for (std::size_t a = 0; a < out.cells[k].size(); ++a) {
        LinComb comb = slice_to_comb(cat, next.elements[b], off[a], c, out.cells[k][a]);
        if (!comb.empty()) terms.emplace_back(a, std::move(comb));
      }
      bd.push_back(std::move(terms));
    }
    out.cells.push_back(std::move(next.cells));
    out.boundary.push_back(std::move(bd));
  }
  return out;
}

FgAbelian cochain_group(const ChainComplex& c, const CatModule& m, std::size_t k) {
  if (k >= c.cells.size()) {
    if (c.complete) return FgAbelian();
    throw DegreeOutOfRange("complex stops before degree " + std::to_string(k));
  }
  std::vector<FgAbelian> parts;
  for (std::size_t obj : c.cells[k]) parts.push_back(m.value(obj));
  return FgAbelian::direct_sum(parts);
}

AbMap coboundary(const ChainComplex& c, const CatModule& m, std::size_t k) {
  if (m.category_ptr() != c.category) throw ObjectMismatch("coefficients over a different category");
  FgAbelian src = cochain_group(c, m, k);
  FgAbelian dst = cochain_group(c, m, k + 1);
  IntMatrix d(dst.ambient_rank(), src.ambient_rank());
  if (k + 1 < c.cells.size()) {
    std::vector<std::size_t> so(c.cells[k].size() + 1, 0);
    for (std::size_t a = 0; a < c.cells[k].size(); ++a) so[a + 1] = so[a] + m.value(c.cells[k][a]).ambient_rank();
    std::size_t row = 0;
    for (std::size_t b = 0; b < c.cells[k + 1].size(); ++b) {
      const std::size_t cb = c.cells[k + 1][b];
      for (const auto& [a, comb] : c.boundary[k + 1][b]) d.add_block(row, so[a], m.act(comb, cb, c.cells[k][a]));
      row += m.value(cb).ambient_rank();
    }
  }
  return AbMap(src, dst, d);
}

FgAbelian cohomology(const ChainComplex& c, const CatModule& m, std::size_t n) {
  if (!c.complete && n + 1 >= c.cells.size())
    throw DegreeOutOfRange("H^" + std::to_string(n) + " needs a resolution through degree " +
                           std::to_string(n + 1) + "; have " + std::to_string(c.top_degree()));
  if (n >= c.cells.size()) return FgAbelian();
  AbMap out = coboundary(c, m, n);
  AbMap in = n == 0 ? AbMap::zero(FgAbelian(), out.source()) : coboundary(c, m, n - 1);
  return zmod::homology(in, out);
}

}  // namespace bredonkit::fmod
