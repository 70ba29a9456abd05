#include "bredonkit/errors.hpp"
#include "bredonkit/fmod.hpp"

namespace bredonkit::fmod {

namespace {

// Codomain of the action of m.
std::size_t codomain(const CatModule& mod, std::size_t m) {
  const Category& c = mod.category();
  return mod.variance() == Variance::right ? c.source(m) : c.target(m);
}

std::size_t domain(const CatModule& mod, std::size_t m) {
  const Category& c = mod.category();
  return mod.variance() == Variance::right ? c.target(m) : c.source(m);
}

bool equal_mod(IntMatrix a, IntMatrix b, const FgAbelian& target) {
  zmod::reduce_rows(a, target);
  zmod::reduce_rows(b, target);
  return a == b;
}

std::vector<IntVector> columns(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

// Action matrices of a submodule: the induced map between the parts.
std::vector<IntMatrix> restricted_actions(const CatModule& m, const std::vector<zmod::Subgroup>& parts) {
  std::vector<IntMatrix> out;
  for (std::size_t x = 0; x < m.category().morphism_count(); ++x) {
    std::size_t from = domain(m, x);
    std::size_t to = codomain(m, x);
    IntMatrix img = m.action(x) * parts[from].inclusion.matrix();
    IntMatrix a(parts[to].group.ambient_rank(), img.cols());
    for (std::size_t j = 0; j < img.cols(); ++j) {
      auto c = parts[to].coordinates(m.value(to).reduce(img.col(j)));
      if (!c) throw InvalidModule("subgroups are not closed under " + m.category().label(x));
      a.set_col(j, *c);
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

CatModule::CatModule(CategoryPtr category, std::vector<FgAbelian> values, std::vector<IntMatrix> actions,
                     Variance variance)
    : category_(std::move(category)),
      values_(std::move(values)),
      actions_(std::move(actions)),
      variance_(variance) {
  if (values_.size() != category_->object_count())
    throw InvalidModule("module has " + std::to_string(values_.size()) + " values for " +
                        std::to_string(category_->object_count()) + " objects");
  if (actions_.size() != category_->morphism_count())
    throw InvalidModule("module has " + std::to_string(actions_.size()) + " actions for " +
                        std::to_string(category_->morphism_count()) + " morphisms");
  for (std::size_t m = 0; m < actions_.size(); ++m) {
    const FgAbelian& to = values_[codomain(*this, m)];
    const FgAbelian& from = values_[domain(*this, m)];
    if (actions_[m].rows() != to.ambient_rank() || actions_[m].cols() != from.ambient_rank())
      throw InvalidModule("action of " + category_->label(m) + " has the wrong shape");
    zmod::reduce_rows(actions_[m], to);
  }
}

CatModule CatModule::zero(CategoryPtr category, Variance variance) {
  std::vector<FgAbelian> values(category->object_count());
  std::vector<IntMatrix> actions(category->morphism_count());
  return CatModule(std::move(category), std::move(values), std::move(actions), variance);
}

CatModule CatModule::constant(CategoryPtr category, Variance variance) {
  std::vector<FgAbelian> values(category->object_count(), FgAbelian::free(1));
  std::vector<IntMatrix> actions(category->morphism_count(), IntMatrix::identity(1));
  return CatModule(std::move(category), std::move(values), std::move(actions), variance);
}

CatModule CatModule::representable(CategoryPtr category, std::size_t c, Variance variance) {
  const Category& cat = *category;
  const bool right = variance == Variance::right;
  auto hom_at = [&](std::size_t b) -> const std::vector<std::size_t>& {
    return right ? cat.hom(b, c) : cat.hom(c, b);
  };
  std::vector<FgAbelian> values;
  for (std::size_t b = 0; b < cat.object_count(); ++b) values.push_back(FgAbelian::free(hom_at(b).size()));
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < cat.morphism_count(); ++x) {
    std::size_t from = right ? cat.target(x) : cat.source(x);
    std::size_t to = right ? cat.source(x) : cat.target(x);
    IntMatrix a(hom_at(to).size(), hom_at(from).size());
    const auto& basis = hom_at(from);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const LinComb& r = right ? cat.compose(x, basis[j]) : cat.compose(basis[j], x);
      for (const auto& t : r) a(cat.hom_position(t.morphism), j) += t.coef;
    }
    actions.push_back(std::move(a));
  }
  return CatModule(std::move(category), std::move(values), std::move(actions), variance);
}

CatModule CatModule::direct_sum(const std::vector<CatModule>& parts) {
  if (parts.empty()) throw PreconditionError("direct sum of no modules");
  const CatModule& first = parts.front();
  for (const auto& p : parts)
    if (p.category_ != first.category_ || p.variance_ != first.variance_)
      throw ObjectMismatch("direct sum of modules over different categories");
  std::vector<FgAbelian> values;
  for (std::size_t c = 0; c < first.object_count(); ++c) {
    std::vector<FgAbelian> v;
    for (const auto& p : parts) v.push_back(p.values_[c]);
    values.push_back(FgAbelian::direct_sum(v));
  }
  std::vector<IntMatrix> actions;
  for (std::size_t m = 0; m < first.actions_.size(); ++m) {
    std::vector<IntMatrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.actions_[m]);
    actions.push_back(IntMatrix::block_diagonal(blocks));
  }
  return CatModule(first.category_, std::move(values), std::move(actions), first.variance_);
}

AbMap CatModule::action_map(std::size_t m) const {
  return AbMap(values_[domain(*this, m)], values_[codomain(*this, m)], actions_[m]);
}

IntMatrix CatModule::act(const LinComb& c, std::size_t source_obj, std::size_t target_obj) const {
  std::size_t from = variance_ == Variance::right ? target_obj : source_obj;
  std::size_t to = variance_ == Variance::right ? source_obj : target_obj;
  IntMatrix out(values_[to].ambient_rank(), values_[from].ambient_rank());
  for (const auto& t : c) {
    if (category_->source(t.morphism) != source_obj || category_->target(t.morphism) != target_obj)
      throw ObjectMismatch("combination has a morphism with the wrong endpoints");
    out.add_block(0, 0, actions_[t.morphism], Int(t.coef));
  }
  zmod::reduce_rows(out, values_[to]);
  return out;
}

bool CatModule::is_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

std::optional<std::string> validate_module(const CatModule& m) {
  const Category& cat = m.category();
  const bool right = m.variance() == Variance::right;
  for (std::size_t x = 0; x < cat.morphism_count(); ++x)
    if (!AbMap::well_defined(m.value(domain(m, x)), m.value(codomain(m, x)), m.action(x)))
      return "action of " + cat.label(x) + " does not respect relations";
  for (std::size_t a = 0; a < cat.object_count(); ++a) {
    std::size_t id = cat.identity(a);
    if (!equal_mod(m.action(id), IntMatrix::identity(m.value(a).ambient_rank()), m.value(a)))
      return "identity of " + cat.object_name(a) + " does not act trivially";
  }
  for (std::size_t f = 0; f < cat.morphism_count(); ++f)
    for (std::size_t s : cat.outgoing(cat.target(f))) {
      IntMatrix lhs = m.act(cat.compose(f, s), cat.source(f), cat.target(s));
      IntMatrix rhs = right ? m.action(f) * m.action(s) : m.action(s) * m.action(f);
      if (!equal_mod(lhs, rhs, m.value(right ? cat.source(f) : cat.target(s))))
        return "functoriality fails for " + cat.label(f) + " then " + cat.label(s);
    }
  return std::nullopt;
}

void require_valid(const CatModule& m) {
  if (auto err = validate_module(m)) throw InvalidModule(*err);
}

NatTrans::NatTrans(CatModule source, CatModule target, std::vector<IntMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (source_.category_ptr() != target_.category_ptr() || source_.variance() != target_.variance())
    throw ObjectMismatch("natural transformation between modules over different categories");
  if (components_.size() != source_.object_count())
    throw InvalidModule("natural transformation needs one component per object");
  for (std::size_t c = 0; c < components_.size(); ++c) {
    if (components_[c].rows() != target_.value(c).ambient_rank() ||
        components_[c].cols() != source_.value(c).ambient_rank())
      throw InvalidModule("component at " + source_.category().object_name(c) + " has the wrong shape");
    zmod::reduce_rows(components_[c], target_.value(c));
  }
}

AbMap NatTrans::component_map(std::size_t obj) const {
  return AbMap(source_.value(obj), target_.value(obj), components_[obj]);
}

NatTrans NatTrans::after(const NatTrans& first) const {
  std::vector<IntMatrix> comps;
  for (std::size_t c = 0; c < components_.size(); ++c) comps.push_back(components_[c] * first.components_[c]);
  return NatTrans(first.source_, target_, std::move(comps));
}

bool NatTrans::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

std::optional<std::string> check_naturality(const NatTrans& t) {
  const CatModule& m = t.source();
  const CatModule& n = t.target();
  const Category& cat = m.category();
  for (std::size_t c = 0; c < cat.object_count(); ++c)
    if (!AbMap::well_defined(m.value(c), n.value(c), t.component(c)))
      return "component at " + cat.object_name(c) + " does not respect relations";
  for (std::size_t x = 0; x < cat.morphism_count(); ++x) {
    std::size_t from = domain(m, x);
    std::size_t to = codomain(m, x);
    if (!equal_mod(t.component(to) * m.action(x), n.action(x) * t.component(from), n.value(to)))
      return "not natural at " + cat.label(x);
  }
  return std::nullopt;
}

SubModule submodule(const CatModule& m, const std::vector<zmod::Subgroup>& parts) {
  if (parts.size() != m.object_count()) throw PreconditionError("submodule needs one subgroup per object");
  std::vector<FgAbelian> values;
  std::vector<IntMatrix> incl;
  for (const auto& p : parts) {
    values.push_back(p.group);
    incl.push_back(p.inclusion.matrix());
  }
  CatModule sub(m.category_ptr(), std::move(values), restricted_actions(m, parts), m.variance());
  NatTrans i(sub, m, std::move(incl));
  return {std::move(sub), std::move(i)};
}

QuotientModule quotient(const CatModule& m, const std::vector<zmod::Subgroup>& parts) {
  if (parts.size() != m.object_count()) throw PreconditionError("quotient needs one subgroup per object");
  std::vector<zmod::Cokernel> cok;
  for (const auto& p : parts) cok.push_back(zmod::cokernel(p.inclusion));
  std::vector<FgAbelian> values;
  std::vector<IntMatrix> proj;
  for (const auto& c : cok) {
    values.push_back(c.group);
    proj.push_back(c.projection.matrix());
  }
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < m.category().morphism_count(); ++x) {
    std::size_t from = domain(m, x);
    std::size_t to = codomain(m, x);
    actions.push_back(proj[to] * m.action(x) * cok[from].section);
  }
  CatModule q(m.category_ptr(), std::move(values), std::move(actions), m.variance());
  NatTrans p(m, q, std::move(proj));
  return {std::move(q), std::move(p)};
}

SubModule kernel(const NatTrans& t) {
  const CatModule& m = t.source();
  std::vector<zmod::Subgroup> parts;
  for (std::size_t c = 0; c < m.object_count(); ++c) {
    zmod::Lattice z = zmod::preimage_of_zero(t.component(c), t.target().value(c));
    parts.push_back(zmod::make_subgroup(m.value(c), z.basis()));
  }
  return submodule(m, parts);
}

SubModule image(const NatTrans& t) {
  const CatModule& n = t.target();
  std::vector<zmod::Subgroup> parts;
  for (std::size_t c = 0; c < n.object_count(); ++c)
    parts.push_back(zmod::make_subgroup(n.value(c), columns(t.component(c))));
  return submodule(n, parts);
}

QuotientModule cokernel(const NatTrans& t) {
  const CatModule& n = t.target();
  std::vector<zmod::Subgroup> parts;
  for (std::size_t c = 0; c < n.object_count(); ++c)
    parts.push_back(zmod::make_subgroup(n.value(c), columns(t.component(c))));
  return quotient(n, parts);
}

namespace {

std::vector<IntVector> translates(const CatModule& m, std::size_t b, std::size_t c,
                                  const std::vector<IntVector>& seeds) {
  const Category& cat = m.category();
  const auto& maps = m.variance() == Variance::right ? cat.hom(b, c) : cat.hom(c, b);
  std::vector<IntVector> out;
  for (std::size_t psi : maps)
    for (const auto& s : seeds) out.push_back(m.action(psi).apply(s));
  return out;
}

}  // namespace

SubModule generated_submodule(const CatModule& m, std::size_t c, const std::vector<IntVector>& seeds) {
  std::vector<zmod::Subgroup> parts;
  for (std::size_t b = 0; b < m.object_count(); ++b)
    parts.push_back(zmod::make_subgroup(m.value(b), translates(m, b, c, seeds)));
  return submodule(m, parts);
}

SubModule generated_by_objects(const CatModule& m, const std::vector<std::size_t>& objects) {
  std::vector<zmod::Subgroup> parts;
  for (std::size_t b = 0; b < m.object_count(); ++b) {
    std::vector<IntVector> gens;
    for (std::size_t c : objects) {
      auto t = translates(m, b, c, columns(IntMatrix::identity(m.value(c).ambient_rank())));
      gens.insert(gens.end(), t.begin(), t.end());
    }
    parts.push_back(zmod::make_subgroup(m.value(b), gens));
  }
  return submodule(m, parts);
}

NatTrans yoneda_map(const CatModule& m, std::size_t c, const IntVector& x) {
  if (x.size() != m.value(c).ambient_rank()) throw PreconditionError("yoneda_map: element has the wrong length");
  CatModule rep = CatModule::representable(m.category_ptr(), c, m.variance());
  const Category& cat = m.category();
  std::vector<IntMatrix> comps;
  for (std::size_t b = 0; b < m.object_count(); ++b) {
    const auto& maps = m.variance() == Variance::right ? cat.hom(b, c) : cat.hom(c, b);
    IntMatrix t(m.value(b).ambient_rank(), maps.size());
    for (std::size_t j = 0; j < maps.size(); ++j) t.set_col(j, m.action(maps[j]).apply(x));
    comps.push_back(std::move(t));
  }
  return NatTrans(std::move(rep), m, std::move(comps));
}

}  // namespace bredonkit::fmod
