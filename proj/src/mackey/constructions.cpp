#include <algorithm>
#include <map>
#include <tuple>

#include "bredonkit/errors.hpp"
#include "bredonkit/mackey.hpp"

namespace bredonkit::mackey {

namespace {

grp::Subgroup image_in(const grp::Quotient& q, const grp::Subgroup& s) {
  grp::Members m;
  for (Elem e : s.members()) m.push_back(q.image[e]);
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return q.group.subgroup(m);
}

std::size_t coset_index(const std::vector<Elem>& reps, const grp::Subgroup& h, Elem x) {
  Elem r = grp::min_left_coset_rep(h, x);
  return static_cast<std::size_t>(std::lower_bound(reps.begin(), reps.end(), r) - reps.begin());
}

const cats::GroupCategory& group_category(const CatModule& m) {
  auto* gc = dynamic_cast<const cats::GroupCategory*>(&m.category());
  if (!gc) throw Unsupported("module is not over an orbit or Mackey category");
  return *gc;
}

bool is_injective(const AbMap& f) { return zmod::kernel(f).group.is_zero(); }

}  // namespace

SubgroupSetting subgroup_setting(MackeyPtr big, const grp::Subgroup& n) {
  if (!n.parent().same_as(big->group())) throw MismatchedParent("subgroup of a different group");
  grp::Embedded e = grp::as_group(n);
  grp::Family fam = cats::intersect_family(big->family(), e);
  auto small = std::make_shared<const cats::MackeyCategory>(e.group, fam);
  cats::Functor inc = cats::mackey_inclusion(*small, e, *big);
  return SubgroupSetting{n, std::move(e), small, std::move(big), std::move(inc)};
}

MackeyFunctor mackey_induce(const SubgroupSetting& s, const MackeyFunctor& m) {
  return MackeyFunctor(s.big, fmod::induce_along(s.inclusion, s.big, m.module()));
}

MackeyFunctor mackey_coinduce(const SubgroupSetting& s, const MackeyFunctor& m) {
  return MackeyFunctor(s.big, fmod::coinduce_along(s.inclusion, s.big, m.module()));
}

NatTrans induction_to_coinduction(const SubgroupSetting& s, const MackeyFunctor& m) {
  const cats::Functor& f = s.inclusion;
  const cats::Category& small = *s.small;
  const cats::Category& big = *s.big;
  fmod::Induction ind = fmod::induction(f, s.big, m.module());
  fmod::Coinduction coind = fmod::coinduction(f, s.big, m.module());
  // Preimages of big spans F c -> F c' inside hom(c, c').
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> preimage;
  for (std::size_t x = 0; x < small.morphism_count(); ++x) {
    const LinComb& img = f.morphism_map[x];
    if (img.size() != 1 || img.front().coef != 1) throw Unsupported("inclusion does not map spans to spans");
    preimage[{small.source(x), small.target(x), img.front().morphism}] = x;
  }
  CatModule y = ind.module;
  CatModule res = fmod::restrict_along(f, s.small, y);
  std::vector<IntMatrix> comps;
  for (std::size_t c = 0; c < small.object_count(); ++c) {
    const fmod::TensorSpace& space = ind.spaces[f.object_map[c]];
    IntMatrix p(m.value(c).ambient_rank(), space.offsets.back());
    for (std::size_t c2 = 0; c2 < small.object_count(); ++c2) {
      const auto& psis = big.hom(f.object_map[c], f.object_map[c2]);
      for (std::size_t k = 0; k < psis.size(); ++k) {
        auto it = preimage.find({c, c2, psis[k]});
        if (it == preimage.end()) continue;
        const IntMatrix& act = m.module().action(it->second);
        for (std::size_t i = 0; i < m.value(c2).ambient_rank(); ++i)
          for (std::size_t r = 0; r < act.rows(); ++r) p(r, space.offsets[c2] + i * psis.size() + k) = act(r, i);
      }
    }
    comps.push_back(p * space.presentation.section);
  }
  NatTrans proj(res, m.module(), std::move(comps));
  return fmod::coinduction_adjunct(f, coind, y, proj);
}

std::vector<FgAbelian> double_coset_values(const SubgroupSetting& s, const MackeyFunctor& m) {
  const cats::MackeyCategory& big = *s.big;
  const grp::Group& g = big.group();
  std::vector<Elem> local(g.order(), static_cast<Elem>(-1));
  for (Elem i = 0; i < s.n.embedding.size(); ++i) local[s.n.embedding[i]] = i;
  std::vector<FgAbelian> out;
  for (std::size_t obj = 0; obj < big.object_count(); ++obj) {
    grp::Subgroup sub = big.object_subgroup(obj);
    std::vector<FgAbelian> parts;
    for (Elem x : grp::double_cosets(s.subgroup, sub)) {
      grp::Subgroup meet = sub.conjugate(x).intersect(s.subgroup);
      grp::Members mem;
      for (Elem e : meet.members()) mem.push_back(local[e]);
      std::sort(mem.begin(), mem.end());
      parts.push_back(m.value(s.small->object_of(s.n.group.subgroup(mem))));
    }
    out.push_back(FgAbelian::direct_sum(parts));
  }
  return out;
}

MackeyFunctor inflation(MackeyPtr big, const grp::Subgroup& k, const grp::Quotient& q, const MackeyFunctor& n) {
  const cats::MackeyCategory& cat = *big;
  const cats::MackeyCategory& qcat = n.category();
  if (!k.is_normal()) throw NotNormal("inflation needs a normal subgroup");
  if (!(q.kernel == k) || q.numerator.order() != cat.group().order())
    throw PreconditionError("quotient data does not match the kernel");
  if (!qcat.group().same_as(q.group)) throw MismatchedParent("functor is not over the quotient group");
  const grp::Group& g = cat.group();
  auto bar = [&](const grp::Subgroup& s) {
    grp::Subgroup b = image_in(q, s);
    if (!qcat.family().contains(b)) throw PreconditionError("image of a family subgroup is outside the quotient family");
    return b;
  };
  std::vector<FgAbelian> values;
  for (std::size_t obj = 0; obj < cat.object_count(); ++obj) {
    grp::Subgroup s = cat.object_subgroup(obj);
    values.push_back(k.is_subgroup_of(s) ? n.value(qcat.object_of(bar(s))) : FgAbelian());
  }
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < cat.morphism_count(); ++x) {
    const cats::Span& sp = cat.span(x);
    grp::Subgroup l = g.subgroup(sp.middle);
    const std::size_t rows = values[sp.source].ambient_rank();
    const std::size_t cols = values[sp.target].ambient_rank();
    if (!k.is_subgroup_of(l)) {
      actions.emplace_back(rows, cols);
      continue;
    }
    std::size_t y = qcat.span_between(bar(cat.object_subgroup(sp.source)), bar(l), q.image[sp.twist],
                                      bar(cat.object_subgroup(sp.target)));
    actions.push_back(n.module().action(y));
  }
  CatModule mod(big, std::move(values), std::move(actions));
  if (auto bad = fmod::validate_module(mod)) throw AxiomViolation("inflation: " + *bad);
  return MackeyFunctor(big, std::move(mod));
}

FixedPointCover fixed_point_cover(const MackeyFunctor& m) {
  if (!is_cohomological(m)) throw NotCohomological("fixed point cover needs a cohomological Mackey functor");
  const cats::MackeyCategory& cat = m.category();
  const grp::Group& g = cat.group();
  struct Block {
    std::size_t object;
    std::size_t generator;
    std::size_t offset;
    std::vector<Elem> cosets;
  };
  std::vector<Block> blocks;
  std::vector<GModule> parts;
  std::size_t offset = 0;
  for (std::size_t h = 0; h < cat.object_count(); ++h) {
    grp::Subgroup sub = cat.object_subgroup(h);
    const auto& moduli = m.value(h).moduli();
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (moduli[i] == 1) continue;
      blocks.push_back({h, i, offset, grp::left_cosets(sub)});
      parts.push_back(GModule::permutation(sub));
      offset += blocks.back().cosets.size();
    }
  }
  GModule v = parts.empty() ? GModule(g, FgAbelian(), std::vector<IntMatrix>(g.order(), IntMatrix()))
                            : GModule::direct_sum(parts);
  MackeyFunctor source = fixed_point_functor(m.category_ptr(), v);
  std::vector<IntMatrix> comps;
  for (std::size_t kobj = 0; kobj < cat.object_count(); ++kobj) {
    grp::Subgroup k = cat.object_subgroup(kobj);
    const zmod::Subgroup fixed = fixed_points(v, k);
    const IntMatrix& incl = fixed.inclusion.matrix();
    IntMatrix comp(m.value(kobj).ambient_rank(), incl.cols());
    for (const Block& b : blocks) {
      grp::Subgroup h = cat.object_subgroup(b.object);
      for (Elem x : grp::double_cosets(k, h)) {
        grp::Subgroup meet = k.intersect(h.conjugate(x));
        const IntMatrix& act = m.module().action(cat.span_between(k, meet, x, h));
        const std::size_t row = b.offset + coset_index(b.cosets, h, x);
        for (std::size_t j = 0; j < incl.cols(); ++j) {
          const Int& c = incl(row, j);
          if (c.is_zero()) continue;
          for (std::size_t r = 0; r < act.rows(); ++r) comp(r, j) += c * act(r, b.generator);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  NatTrans psi(source.module(), m.module(), std::move(comps));
  return {std::move(v), std::move(source), std::move(psi)};
}

std::optional<std::size_t> xi(const CatModule& m) {
  const cats::GroupCategory& gc = group_category(m);
  std::optional<std::size_t> best;
  for (std::size_t obj = 0; obj < m.object_count(); ++obj) {
    if (m.value(obj).is_zero()) continue;
    std::size_t len = gc.object_subgroup(obj).length();
    if (!best || len < *best) best = len;
  }
  return best;
}

DhCoinduction dh_coinduction(const CatModule& m, std::size_t h) {
  if (h >= m.object_count()) throw PreconditionError("object out of range");
  auto sub = std::make_shared<const cats::FullSubcategory>(m.category_ptr(), std::vector<std::size_t>{h});
  cats::Functor f = cats::full_inclusion(*sub);
  CatModule res = fmod::restrict_along(f, sub, m);
  fmod::Coinduction coind = fmod::coinduction(f, m.category_ptr(), res);
  NatTrans id(res, res, {IntMatrix::identity(res.value(0).ambient_rank())});
  NatTrans unit = fmod::coinduction_adjunct(f, coind, m, id);
  return {coind.module, std::move(unit)};
}

Tower d_tower(const CatModule& m, std::size_t d, std::size_t rank_bound) {
  Tower out;
  out.exact = true;
  CatModule c = m;
  for (std::size_t i = 0; i <= d; ++i) {
    TowerStage stage;
    stage.c = c;
    stage.xi = xi(c);
    std::vector<CatModule> parts;
    std::vector<IntMatrix> comps(c.object_count(), IntMatrix());
    for (std::size_t h = 0; h < c.object_count(); ++h) {
      if (c.value(h).is_zero()) continue;
      DhCoinduction dh = dh_coinduction(c, h);
      parts.push_back(dh.module);
      for (std::size_t obj = 0; obj < c.object_count(); ++obj)
        comps[obj] = comps[obj].rows() == 0 && comps[obj].cols() == 0
                         ? dh.unit.component(obj)
                         : IntMatrix::vstack(comps[obj], dh.unit.component(obj));
    }
    CatModule dm = parts.empty() ? CatModule::zero(c.category_ptr()) : CatModule::direct_sum(parts);
    std::size_t total = 0;
    for (std::size_t obj = 0; obj < dm.object_count(); ++obj) total += dm.value(obj).ambient_rank();
    if (total > rank_bound) throw ResourceError("tower stage " + std::to_string(i) + " exceeds the rank bound");
    for (std::size_t obj = 0; obj < c.object_count(); ++obj)
      if (parts.empty()) comps[obj] = IntMatrix(0, c.value(obj).ambient_rank());
    stage.d = dm;
    stage.into = NatTrans(c, dm, std::move(comps));
    fmod::QuotientModule q = fmod::cokernel(stage.into);
    stage.projection = q.projection;
    stage.exact = true;
    for (std::size_t obj = 0; obj < c.object_count(); ++obj) {
      AbMap in = stage.into.component_map(obj);
      AbMap pr = stage.projection.component_map(obj);
      if (!is_injective(in) || !zmod::homology(in, pr).is_zero()) stage.exact = false;
    }
    out.exact = out.exact && stage.exact;
    out.stages.push_back(std::move(stage));
    c = q.module;
  }
  out.last = c;
  return out;
}

}  // namespace bredonkit::mackey
