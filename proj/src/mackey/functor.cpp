#include <algorithm>
#include <set>

#include "bredonkit/errors.hpp"
#include "bredonkit/mackey.hpp"

namespace bredonkit::mackey {

namespace {

bool equal_mod(const IntMatrix& a, const IntMatrix& b, const FgAbelian& target) {
  IntMatrix d = a - b;
  zmod::reduce_rows(d, target);
  return d.is_zero();
}

void require_group(const cats::MackeyCategory& cat, const GModule& v) {
  if (!cat.group().same_as(v.group())) throw MismatchedParent("module and category have different groups");
}

}  // namespace

MackeyFunctor::MackeyFunctor(MackeyPtr category, CatModule module)
    : category_(std::move(category)), module_(std::move(module)) {
  if (module_.category_ptr().get() != category_.get())
    throw ObjectMismatch("module is not over this Mackey category");
  if (module_.variance() != fmod::Variance::right) throw ObjectMismatch("Mackey functors are right modules");
}

IntMatrix MackeyFunctor::restriction(const grp::Subgroup& h, const grp::Subgroup& k) const {
  return module_.action(category_->restriction(h, k));
}

IntMatrix MackeyFunctor::induction(const grp::Subgroup& h, const grp::Subgroup& k) const {
  return module_.action(category_->induction(h, k));
}

IntMatrix MackeyFunctor::conjugation(Elem g, const grp::Subgroup& h) const {
  return module_.action(category_->conjugation(g, h));
}

std::vector<std::size_t> generator_spans(const cats::MackeyCategory& m) {
  std::set<std::size_t> ids;
  for (std::size_t s = 0; s < m.morphism_count(); ++s) {
    cats::RicWord w = cats::ric_decompose(m, s);
    for (std::size_t x : {w.induction, w.conjugation, w.restriction})
      if (!m.is_identity(x)) ids.insert(x);
  }
  return {ids.begin(), ids.end()};
}

MackeyFunctor mackey_from_tables(const MackeyTables& tables) {
  const cats::MackeyCategory& cat = *tables.category;
  if (tables.values.size() != cat.object_count()) throw PreconditionError("one value per object expected");
  auto matrix = [&](std::size_t x) {
    if (cat.is_identity(x)) return IntMatrix::identity(tables.values[cat.source(x)].ambient_rank());
    auto it = tables.generators.find(x);
    if (it == tables.generators.end()) throw PreconditionError("no table for " + cat.label(x));
    const IntMatrix& a = it->second;
    if (a.rows() != tables.values[cat.source(x)].ambient_rank() ||
        a.cols() != tables.values[cat.target(x)].ambient_rank())
      throw PreconditionError("table for " + cat.label(x) + " has the wrong shape");
    return a;
  };
  std::vector<IntMatrix> actions;
  for (std::size_t s = 0; s < cat.morphism_count(); ++s) {
    cats::RicWord w = cats::ric_decompose(cat, s);
    actions.push_back(matrix(w.induction) * matrix(w.conjugation) * matrix(w.restriction));
  }
  CatModule mod(tables.category, tables.values, std::move(actions));
  for (const auto& [x, a] : tables.generators)
    if (!equal_mod(mod.action(x), a, mod.value(cat.source(x))))
      throw AxiomViolation("table for " + cat.label(x) + " disagrees with its own decomposition");
  if (auto bad = fmod::validate_module(mod)) throw AxiomViolation(*bad);
  return MackeyFunctor(tables.category, std::move(mod));
}

MackeyTables tables_of(const MackeyFunctor& m) {
  MackeyTables t{m.category_ptr(), m.module().values(), {}};
  for (std::size_t x : generator_spans(m.category())) t.generators.emplace(x, m.module().action(x));
  return t;
}

bool is_cohomological(const MackeyFunctor& m) {
  const cats::MackeyCategory& cat = m.category();
  const grp::Group& g = cat.group();
  for (std::size_t obj = 0; obj < cat.object_count(); ++obj) {
    grp::Subgroup k = cat.object_subgroup(obj);
    const FgAbelian& value = m.value(obj);
    for (std::size_t id = 0; id < g.subgroup_count(); ++id) {
      grp::Subgroup h = g.subgroup(id);
      if (!cat.family().contains(h) || !h.is_subgroup_of(k)) continue;
      IntMatrix ir = m.induction(h, k) * m.restriction(h, k);
      Int index = static_cast<long long>(h.index_in(k));
      if (!equal_mod(ir, index * IntMatrix::identity(value.ambient_rank()), value)) return false;
    }
  }
  return true;
}

MackeyFunctor fixed_point_functor(MackeyPtr category, const GModule& v) {
  const cats::MackeyCategory& cat = *category;
  require_group(cat, v);
  const grp::Group& g = cat.group();
  std::vector<zmod::Subgroup> fixed;
  std::vector<FgAbelian> values;
  for (std::size_t obj = 0; obj < cat.object_count(); ++obj) {
    fixed.push_back(fixed_points(v, cat.object_subgroup(obj)));
    values.push_back(fixed.back().group);
  }
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < cat.morphism_count(); ++x) {
    const cats::Span& sp = cat.span(x);
    const zmod::Subgroup& from = fixed[sp.target];
    const zmod::Subgroup& to = fixed[sp.source];
    const auto reps = grp::left_cosets_in(cat.object_subgroup(sp.source), g.subgroup(sp.middle));
    const IntMatrix& incl = from.inclusion.matrix();
    IntMatrix a(to.group.ambient_rank(), incl.cols());
    for (std::size_t j = 0; j < incl.cols(); ++j) {
      IntVector m = incl.col(j);
      IntVector sum(m.size());
      for (Elem s : reps) {
        IntVector t = v.action(g.mul(s, sp.twist)).apply(m);
        for (std::size_t i = 0; i < t.size(); ++i) sum[i] += t[i];
      }
      auto coords = to.coordinates(v.value().reduce(sum));
      if (!coords) throw InvalidModule("span sum left the fixed points at " + cat.label(x));
      a.set_col(j, *coords);
    }
    actions.push_back(std::move(a));
  }
  return MackeyFunctor(category, CatModule(category, std::move(values), std::move(actions)));
}

MackeyFunctor coinvariance_functor(MackeyPtr category, const GModule& v) {
  const cats::MackeyCategory& cat = *category;
  require_group(cat, v);
  const grp::Group& g = cat.group();
  const std::size_t n = v.value().ambient_rank();
  std::vector<zmod::Presentation> pres;
  std::vector<FgAbelian> values;
  for (std::size_t obj = 0; obj < cat.object_count(); ++obj) {
    IntMatrix rel = v.value().relations();
    for (Elem h : cat.object_subgroup(obj).members())
      if (h != g.identity()) rel = IntMatrix::hstack(rel, v.action(h) - IntMatrix::identity(n));
    pres.push_back(zmod::present(n, rel));
    values.push_back(pres.back().group);
  }
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < cat.morphism_count(); ++x) {
    const cats::Span& sp = cat.span(x);
    grp::Subgroup inner = g.subgroup(sp.middle).conjugate(g.inv(sp.twist));
    IntMatrix t(n, n);
    for (Elem r : grp::left_cosets_in(cat.object_subgroup(sp.target), inner))
      t = t + v.action(g.mul(sp.twist, g.inv(r)));
    actions.push_back(pres[sp.source].projection * t * pres[sp.target].section);
  }
  return MackeyFunctor(category, CatModule(category, std::move(values), std::move(actions)));
}

MackeyFunctor burnside(MackeyPtr category) {
  const grp::Group& g = category->group();
  if (!category->family().contains(g.whole())) throw PreconditionError("Burnside functor needs G in the family");
  std::size_t top = category->object_of(g.whole());
  return MackeyFunctor(category, CatModule::representable(category, top));
}

CatModule to_orbit_module(const MackeyFunctor& m, OrbitPtr orbit) {
  cats::Functor pi = cats::orbit_to_mackey(*orbit, m.category());
  return fmod::restrict_along(pi, orbit, m.module());
}

}  // namespace bredonkit::mackey
