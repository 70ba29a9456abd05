#include <algorithm>

#include "bredonkit/bredon.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::bredon {

namespace {

DegreeComparison compare(std::size_t n, FgAbelian left, FgAbelian right) {
  bool eq = left.isomorphic(right);
  return {n, std::move(left), std::move(right), eq};
}

grp::Subgroup preimage(const grp::Quotient& q, const grp::Subgroup& h) {
  const grp::Group& gamma = q.numerator.parent();
  grp::Members m;
  for (grp::Elem x = 0; x < gamma.order(); ++x)
    if (q.image[x] != static_cast<grp::Elem>(-1) && h.contains(q.image[x])) m.push_back(x);
  return gamma.subgroup(m);
}

}  // namespace

FiniteSetting::FiniteSetting(grp::Group g, grp::Family f, fmod::ResolutionOptions opts)
    : group_(std::move(g)), family_(std::move(f)), opts_(opts) {
  if (!group_.is_finite()) throw Unsupported("finite settings need a finite group");
  if (!family_.group().same_as(group_)) throw MismatchedParent("family of a different group");
  orbit_ = std::make_shared<const cats::OrbitCategory>(group_, family_);
}

const mackey::MackeyPtr& FiniteSetting::mackey() const {
  std::lock_guard<std::mutex> guard(lock_);
  if (!mackey_) mackey_ = std::make_shared<const cats::MackeyCategory>(group_, family_);
  return mackey_;
}

const fmod::ChainComplex& FiniteSetting::resolution(std::size_t degree) const {
  std::lock_guard<std::mutex> guard(lock_);
  if (!resolutions_.empty()) {
    const auto& last = *resolutions_.back();
    if (last.complete || last.top_degree() >= degree) return last;
  }
  fmod::ResolutionOptions o = opts_;
  o.max_degree = std::max<std::size_t>(degree, 4);
  resolutions_.push_back(
      std::make_shared<const fmod::ChainComplex>(fmod::free_resolution(CatModule::constant(orbit_), o)));
  return *resolutions_.back();
}

const char* class_name(CoefficientClass c) {
  switch (c) {
    case CoefficientClass::fix: return "fix";
    case CoefficientClass::comack: return "comack";
    case CoefficientClass::mack: return "mack";
    case CoefficientClass::general: return "general";
  }
  return "general";
}

CoefficientSpec CoefficientSpec::fix(std::string name, GModule v) {
  CoefficientSpec c;
  c.kind = CoefficientClass::fix;
  c.name = std::move(name);
  c.gmodule = std::move(v);
  return c;
}

CoefficientSpec CoefficientSpec::comack(std::string name, GModule v) {
  CoefficientSpec c = fix(std::move(name), std::move(v));
  c.kind = CoefficientClass::comack;
  return c;
}

CoefficientSpec CoefficientSpec::mack(std::string name, MackeyFunctor m) {
  CoefficientSpec c;
  c.kind = CoefficientClass::mack;
  c.name = std::move(name);
  c.functor = std::move(m);
  return c;
}

CoefficientSpec CoefficientSpec::general(std::string name, CatModule m) {
  CoefficientSpec c;
  c.name = std::move(name);
  c.module = std::move(m);
  return c;
}

CoefficientSpec CoefficientSpec::general(std::string name, EncodedTables t) {
  CoefficientSpec c;
  c.name = std::move(name);
  c.tables = std::move(t);
  return c;
}

CatModule coefficient_module(const FiniteSetting& s, const CoefficientSpec& c) {
  switch (c.kind) {
    case CoefficientClass::fix:
      return mackey::to_orbit_module(mackey::fixed_point_functor(s.mackey(), *c.gmodule), s.orbit());
    case CoefficientClass::comack:
      return mackey::to_orbit_module(mackey::coinvariance_functor(s.mackey(), *c.gmodule), s.orbit());
    case CoefficientClass::mack:
      return mackey::to_orbit_module(*c.functor, s.orbit());
    case CoefficientClass::general:
      if (!c.module) throw IncompleteCoefficient("coefficient " + c.name + " has no module over the orbit category");
      if (c.module->category_ptr() != s.orbit())
        throw ObjectMismatch("coefficient " + c.name + " is over a different orbit category");
      return *c.module;
  }
  throw PreconditionError("unknown coefficient class");
}

FgAbelian bredon_cohomology(const FiniteSetting& s, const CatModule& m, std::size_t n) {
  return fmod::cohomology(s.resolution(n + 1), m, n);
}

FgAbelian bredon_cohomology(const FiniteSetting& s, const CoefficientSpec& c, std::size_t n) {
  return bredon_cohomology(s, coefficient_module(s, c), n);
}

SubgroupPair subgroup_pair(const FiniteSetting& g, const grp::Subgroup& n) {
  if (!n.parent().same_as(g.group())) throw MismatchedParent("subgroup of a different group");
  grp::Embedded e = grp::as_group(n);
  grp::Family f = cats::intersect_family(g.family(), e);
  auto small = std::make_shared<const FiniteSetting>(e.group, f);
  return {n, std::move(e), std::move(small)};
}

mackey::SubgroupSetting mackey_setting(const FiniteSetting& g, const SubgroupPair& n) {
  return {n.subgroup, n.embedded, n.small->mackey(), g.mackey(),
          cats::mackey_inclusion(*n.small->mackey(), n.embedded, *g.mackey())};
}

ShapiroReport shapiro_check(const FiniteSetting& g, const SubgroupPair& n, const CoefficientSpec& c,
                            std::size_t max_degree) {
  ShapiroReport r;
  const FiniteSetting& small = *n.small;
  CatModule m = coefficient_module(small, c);
  cats::Functor inc = cats::orbit_inclusion(*small.orbit(), n.embedded, *g.orbit());
  CatModule coind = fmod::coinduce_along(inc, g.orbit(), m);
  r.ok = true;
  for (std::size_t k = 0; k <= max_degree; ++k) {
    r.rows.push_back(compare(k, bredon_cohomology(small, m, k), bredon_cohomology(g, coind, k)));
    r.ok = r.ok && r.rows.back().equal;
  }
  if (c.kind != CoefficientClass::general) {
    MackeyFunctor f = c.kind == CoefficientClass::fix      ? mackey::fixed_point_functor(small.mackey(), *c.gmodule)
                      : c.kind == CoefficientClass::comack ? mackey::coinvariance_functor(small.mackey(), *c.gmodule)
                                                           : *c.functor;
    CatModule lhs = mackey::to_orbit_module(mackey::mackey_coinduce(mackey_setting(g, n), f), g.orbit());
    r.mackey_compared = true;
    r.mackey_equal = true;
    for (std::size_t a = 0; a < lhs.object_count(); ++a)
      if (!lhs.value(a).isomorphic(coind.value(a))) r.mackey_equal = false;
    r.ok = r.ok && r.mackey_equal;
  }
  return r;
}

grp::Family pullback_family(const grp::Quotient& q, const grp::Family& f) {
  const grp::Group& gamma = q.numerator.parent();
  std::vector<grp::Members> subs;
  for (std::size_t id = 0; id < gamma.subgroup_count(); ++id) {
    grp::Subgroup h = gamma.subgroup(id);
    grp::Members img;
    for (grp::Elem x : h.members()) img.push_back(q.image[x]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (f.contains(q.group.subgroup(img))) subs.push_back(h.members());
  }
  return grp::Family::from_subgroups(gamma, subs);
}

FiniteKernelReport finite_kernel_check(const grp::Group& gamma, const grp::Subgroup& kernel,
                                       const std::string& quotient_family,
                                       const std::vector<CoefficientSpec>& battery, std::size_t max_degree) {
  grp::Quotient q = grp::quotient(gamma.whole(), kernel);
  grp::Family fg = grp::Family::named(q.group, quotient_family);
  FiniteSetting big(gamma, pullback_family(q, fg));
  FiniteSetting small(q.group, fg);
  const cats::OrbitCategory& og = *small.orbit();
  const cats::OrbitCategory& ogamma = *big.orbit();
  cats::Functor sigma;
  sigma.source = &og;
  sigma.target = &ogamma;
  for (std::size_t a = 0; a < og.object_count(); ++a)
    sigma.object_map.push_back(ogamma.object_of(preimage(q, og.object_subgroup(a))));
  for (std::size_t x = 0; x < og.morphism_count(); ++x)
    sigma.morphism_map.push_back(cats::single(ogamma.morphism_between(
        preimage(q, og.object_subgroup(og.source(x))), q.lift[og.coset(x)], preimage(q, og.object_subgroup(og.target(x))))));
  if (auto bad = cats::check_functor(sigma)) throw InvalidModule("preimage functor: " + *bad);
  FiniteKernelReport r;
  r.ok = true;
  for (const auto& c : battery) {
    CatModule m = coefficient_module(big, c);
    CatModule pulled = fmod::restrict_along(sigma, small.orbit(), m);
    std::vector<DegreeComparison> rows;
    for (std::size_t k = 0; k <= max_degree; ++k) {
      rows.push_back(compare(k, bredon_cohomology(small, pulled, k), bredon_cohomology(big, m, k)));
      r.ok = r.ok && rows.back().equal;
    }
    r.rows.push_back(std::move(rows));
  }
  return r;
}

std::vector<DegreeComparison> conjugation_stability(const FiniteSetting& s, const MackeyFunctor& m,
                                                    const grp::Subgroup& n, grp::Elem g, std::size_t max_degree) {
  auto restricted = [&](const SubgroupPair& p) {
    mackey::SubgroupSetting ms = mackey_setting(s, p);
    CatModule res = fmod::restrict_along(ms.inclusion, ms.small, m.module());
    return mackey::to_orbit_module(MackeyFunctor(ms.small, res), p.small->orbit());
  };
  SubgroupPair a = subgroup_pair(s, n);
  SubgroupPair b = subgroup_pair(s, n.conjugate(g));
  CatModule ma = restricted(a);
  CatModule mb = restricted(b);
  std::vector<DegreeComparison> rows;
  for (std::size_t k = 0; k <= max_degree; ++k)
    rows.push_back(compare(k, bredon_cohomology(*a.small, ma, k), bredon_cohomology(*b.small, mb, k)));
  return rows;
}

}  // namespace bredonkit::bredon
