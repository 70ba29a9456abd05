#include <algorithm>

#include "bredonkit/bredon.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::bredon {

namespace {

bool sign_is_trivial(const grp::Group& g) {
  GModule s = GModule::sign(g);
  for (grp::Elem x : g.generator_indices())
    if (!(s.action(x) == IntMatrix::identity(1))) return false;
  return true;
}

std::vector<std::pair<std::string, GModule>> module_battery(const grp::Group& g, const grp::Family* f) {
  std::vector<std::pair<std::string, GModule>> out{{"Z", GModule::trivial(g)}};
  if (!sign_is_trivial(g)) out.emplace_back("sign", GModule::sign(g));
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    if (f && !f->contains_class(c)) continue;
    grp::Subgroup h = g.class_representative(c);
    if (h.order() == g.order()) continue;  // Z[G/G] is the trivial module
    out.emplace_back("Z[G/H" + std::to_string(c) + "]", GModule::permutation(h));
  }
  return out;
}

void add_module_specs(std::vector<CoefficientSpec>& out, const std::vector<std::pair<std::string, GModule>>& mods) {
  for (const auto& [name, v] : mods) out.push_back(CoefficientSpec::fix(name + " fix", v));
  for (const auto& [name, v] : mods) out.push_back(CoefficientSpec::comack(name + " comack", v));
}

void record(DimensionReport& r, CoefficientClass c, std::size_t degree) {
  for (auto k = static_cast<std::size_t>(c); k < r.witness.size(); ++k)
    if (!r.witness[k] || *r.witness[k] < degree) r.witness[k] = degree;
}

void finish(DimensionReport& r) {
  r.ordering_ok = true;
  for (std::size_t k = 1; k < r.witness.size(); ++k)
    if (r.witness[k - 1] && (!r.witness[k] || *r.witness[k] < *r.witness[k - 1])) r.ordering_ok = false;
  r.bounds_ok = true;
  for (const auto& w : r.witness) {
    if (!w) continue;
    if (r.resolution_length && *w > *r.resolution_length) r.bounds_ok = false;
    if (r.length_bound && *w > *r.length_bound) r.bounds_ok = false;
  }
}

}  // namespace

std::vector<CoefficientSpec> standard_battery(const FiniteSetting& s) {
  const grp::Group& g = s.group();
  std::vector<CoefficientSpec> out;
  add_module_specs(out, module_battery(g, &s.family()));
  if (s.family().contains(g.whole())) out.push_back(CoefficientSpec::mack("Burnside", mackey::burnside(s.mackey())));
  if (s.family().contains(g.trivial())) {
    const cats::OrbitCategory& o = *s.orbit();
    std::size_t e = o.object_of(g.trivial());
    std::vector<FgAbelian> values(o.object_count());
    values[e] = FgAbelian::free(1);
    std::vector<IntMatrix> actions;
    for (std::size_t m = 0; m < o.morphism_count(); ++m) {
      bool inside = o.source(m) == e && o.target(m) == e;
      actions.push_back(inside ? IntMatrix::identity(1)
                               : IntMatrix(values[o.source(m)].ambient_rank(), values[o.target(m)].ambient_rank()));
    }
    out.push_back(CoefficientSpec::general("Z at G/e", CatModule(s.orbit(), values, actions)));
  }
  return out;
}

std::vector<CoefficientSpec> standard_battery(const EncodedComplex& x) {
  std::vector<CoefficientSpec> out;
  add_module_specs(out, module_battery(x.quotient, nullptr));
  auto full = std::make_shared<const cats::MackeyCategory>(x.quotient, grp::Family::all(x.quotient));
  out.push_back(CoefficientSpec::mack("Burnside", mackey::burnside(full)));
  EncodedTables t;
  for (const auto& k : x.classes) t.values[k.id] = k.order == 1 ? FgAbelian::free(1) : FgAbelian();
  for (const auto& m : x.morphisms) {
    const auto& s = x.classes[m.source];
    const auto& k = x.classes[m.target];
    t.actions[m.label] = s.order == 1 && k.order == 1
                             ? IntMatrix::identity(1)
                             : IntMatrix(t.values[s.id].ambient_rank(), t.values[k.id].ambient_rank());
  }
  out.push_back(CoefficientSpec::general("Z at G/e", std::move(t)));
  return out;
}

DimensionReport dimension_report(const FiniteSetting& s, const std::vector<CoefficientSpec>& battery,
                                 std::size_t max_degree) {
  if (battery.empty()) throw PreconditionError("dimension report needs a nonempty battery");
  DimensionReport r;
  r.entry = s.group().name() + " / " + s.family().describe();
  const fmod::ChainComplex& res = s.resolution(max_degree + 1);
  if (res.complete) r.resolution_length = res.top_degree();
  if (s.family().is_all()) r.length_bound = s.group().group_length();
  for (const auto& c : battery) {
    r.battery.push_back(c.name);
    CatModule m = coefficient_module(s, c);
    for (std::size_t n = 0; n <= max_degree; ++n)
      if (!bredon_cohomology(s, m, n).is_zero()) record(r, c.kind, n);
  }
  finish(r);
  return r;
}

DimensionReport dimension_report(const EncodedComplex& x, const std::vector<CoefficientSpec>& battery) {
  if (battery.empty()) throw PreconditionError("dimension report needs a nonempty battery");
  DimensionReport r;
  r.entry = x.name;
  if (x.checked_exact) r.resolution_length = x.top_degree();
  std::size_t bound = 0;
  for (const auto& k : x.classes) bound = std::max(bound, k.weyl_fcd + k.length);
  r.length_bound = bound;
  for (const auto& c : battery) {
    r.battery.push_back(c.name);
    EncodedCoefficient e = encode_coefficient(x, c);
    for (std::size_t n = 0; n <= x.top_degree(); ++n)
      if (!bredon_cohomology_encoded(x, e, n).is_zero()) record(r, c.kind, n);
  }
  finish(r);
  return r;
}

}  // namespace bredonkit::bredon
