#include <memory>

#include "bredonkit/errors.hpp"
#include "bredonkit/mackey.hpp"
#include "doctest.h"

using namespace bredonkit;
using namespace bredonkit::mackey;
using cats::MackeyCategory;
using cats::OrbitCategory;
using grp::Family;
using grp::Group;
using grp::Subgroup;

namespace {

Group c2() { return Group::from_generators(2, {"(1 2)"}); }
Group c4() { return Group::from_generators(4, {"(1 2 3 4)"}); }
Group s3() { return Group::from_generators(3, {"(1 2)", "(1 2 3)"}); }
Group s4() { return Group::from_generators(4, {"(1 2)", "(1 2 3 4)"}); }
Group d8() { return Group::from_generators(4, {"(1 2 3 4)", "(1 3)"}); }

MackeyPtr mackey_all(const Group& g) { return std::make_shared<const MackeyCategory>(g, Family::all(g)); }
OrbitPtr orbit_all(const Group& g) { return std::make_shared<const OrbitCategory>(g, Family::all(g)); }

Subgroup by_words(const Group& g, const std::vector<std::string>& words) {
  std::vector<Elem> gens;
  for (const auto& w : words) gens.push_back(g.index_of(grp::parse_cycles(g.degree(), w)));
  return g.subgroup_generated(gens);
}

std::size_t obj(const MackeyCategory& m, const Subgroup& h) { return m.object_of(h); }

bool iso_at_every_object(const NatTrans& t) {
  for (std::size_t c = 0; c < t.source().object_count(); ++c) {
    AbMap f = t.component_map(c);
    if (!zmod::kernel(f).group.is_zero() || !zmod::cokernel(f).group.is_zero()) return false;
  }
  return true;
}

bool surjective_everywhere(const NatTrans& t) {
  for (std::size_t c = 0; c < t.source().object_count(); ++c)
    if (!zmod::cokernel(t.component_map(c)).group.is_zero()) return false;
  return true;
}

// The pair over C2 with M(e) = Z (sign action), M(C2) = Z/2, R = 0 and I = k.
MackeyFunctor sign_pair(const MackeyPtr& m, long long k) {
  const Group& g = m->group();
  const Subgroup e = g.trivial();
  const Subgroup top = g.whole();
  MackeyTables t{m, {}, {}};
  t.values.resize(2);
  t.values[obj(*m, e)] = FgAbelian::free(1);
  t.values[obj(*m, top)] = FgAbelian({2});
  for (std::size_t x : generator_spans(*m)) {
    const auto& sp = m->span(x);
    const bool down = sp.source == obj(*m, e) && sp.target == obj(*m, top);
    const bool up = sp.source == obj(*m, top) && sp.target == obj(*m, e);
    if (down) t.generators[x] = IntMatrix{{0}};
    else if (up) t.generators[x] = IntMatrix{{k}};
    else if (sp.source == obj(*m, e)) t.generators[x] = IntMatrix{{sp.twist == 0 ? 1 : -1}};
    else t.generators[x] = IntMatrix{{1}};
  }
  return mackey_from_tables(t);
}

}  // namespace

TEST_CASE("G-modules: permutation, sign, seeded random") {
  Group g = s3();
  GModule p = GModule::permutation(by_words(g, {"(1 2)"}));
  CHECK(p.value().to_string() == "Z^3");
  GModule sgn = GModule::sign(g);
  CHECK(sgn.action(g.index_of(grp::parse_cycles(3, "(1 2)")))(0, 0) == -1);
  CHECK(sgn.action(g.index_of(grp::parse_cycles(3, "(1 2 3)")))(0, 0) == 1);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    GModule a = GModule::random(s4(), seed);
    GModule b = GModule::random(s4(), seed);
    CHECK(a.value().moduli() == b.value().moduli());
    CHECK(a.action(5) == b.action(5));
  }
  std::vector<IntMatrix> bad(g.order(), IntMatrix{{1}});
  bad[1] = IntMatrix{{-1}};
  bad[2] = IntMatrix{{-1}};
  CHECK_THROWS_AS(GModule(g, FgAbelian::free(1), bad), InvalidModule);
}

TEST_CASE("inducing the trivial module from a subgroup gives the permutation module") {
  Group g = s3();
  Subgroup c3 = by_words(g, {"(1 2 3)"});
  grp::Embedded n = grp::as_group(c3);
  GModule ind = induce(g, n, GModule::trivial(n.group));
  GModule perm = GModule::permutation(c3);
  for (Elem x = 0; x < g.order(); ++x) CHECK(ind.action(x) == perm.action(x));
}

TEST_CASE("fixed point functor of the regular C2-module") {
  Group g = c2();
  MackeyPtr m = mackey_all(g);
  MackeyFunctor f = fixed_point_functor(m, GModule::regular(g));
  const Subgroup e = g.trivial();
  const Subgroup top = g.whole();
  CHECK(f.value(obj(*m, e)).to_string() == "Z^2");
  CHECK(f.value(obj(*m, top)).to_string() == "Z");
  CHECK(f.induction(e, top) * f.restriction(e, top) == IntMatrix{{2}});
  CHECK(is_cohomological(f));
  CHECK_FALSE(fmod::validate_module(f.module()).has_value());
}

TEST_CASE("fixed points of trivial Z: constant values, transfer is the index") {
  Group g = s3();
  MackeyPtr m = mackey_all(g);
  MackeyFunctor f = fixed_point_functor(m, GModule::trivial(g));
  for (std::size_t a = 0; a < m->object_count(); ++a) CHECK(f.value(a).to_string() == "Z");
  for (std::size_t id = 0; id < g.subgroup_count(); ++id) {
    Subgroup h = g.subgroup(id);
    Subgroup top = g.whole();
    CHECK(f.induction(h, top) == IntMatrix{{static_cast<long long>(h.index_in(top))}});
    CHECK(f.restriction(h, top) == IntMatrix{{1}});
  }
}

TEST_CASE("coinvariants of the regular C2-module") {
  Group g = c2();
  MackeyPtr m = mackey_all(g);
  MackeyFunctor f = coinvariance_functor(m, GModule::regular(g));
  CHECK(f.value(obj(*m, g.whole())).to_string() == "Z");
  CHECK(f.value(obj(*m, g.trivial())).to_string() == "Z^2");
  CHECK_FALSE(fmod::validate_module(f.module()).has_value());
  CHECK(is_cohomological(f));
}

TEST_CASE("cohomological test: fixed points and coinvariants over S4, Burnside over C2") {
  Group g = s4();
  MackeyPtr m = mackey_all(g);
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    GModule v = GModule::random(g, seed);
    MackeyFunctor fix = fixed_point_functor(m, v);
    MackeyFunctor co = coinvariance_functor(m, v);
    CHECK_FALSE(fmod::validate_module(fix.module()).has_value());
    CHECK_FALSE(fmod::validate_module(co.module()).has_value());
    CHECK(is_cohomological(fix));
    CHECK(is_cohomological(co));
  }
  MackeyPtr mc2 = mackey_all(c2());
  MackeyFunctor b = burnside(mc2);
  CHECK_FALSE(is_cohomological(b));
  CHECK(b.value(obj(*mc2, mc2->group().whole())).to_string() == "Z^2");
  CHECK(is_cohomological(MackeyFunctor(mc2, CatModule::zero(mc2))));
}

TEST_CASE("tables: Burnside round trip, zero, and the failing constant table") {
  MackeyPtr m = mackey_all(s3());
  MackeyFunctor b = burnside(m);
  MackeyFunctor again = mackey_from_tables(tables_of(b));
  CHECK(again.module().actions() == b.module().actions());

  MackeyFunctor zero(m, CatModule::zero(m));
  CHECK(mackey_from_tables(tables_of(zero)).is_zero());

  // R = I = c = 1 on C2 violates R I = 1 + c_t at the trivial subgroup.
  MackeyPtr mc2 = mackey_all(c2());
  MackeyTables t{mc2, {FgAbelian::free(1), FgAbelian::free(1)}, {}};
  for (std::size_t x : generator_spans(*mc2)) t.generators[x] = IntMatrix{{1}};
  CHECK_THROWS_AS(mackey_from_tables(t), AxiomViolation);
}

TEST_CASE("restriction to the orbit category forgets transfers") {
  Group g = c2();
  MackeyPtr m = mackey_all(g);
  OrbitPtr o = orbit_all(g);
  CatModule z = to_orbit_module(fixed_point_functor(m, GModule::trivial(g)), o);
  CatModule constant = CatModule::constant(o);
  CHECK(z.actions() == constant.actions());

  MackeyFunctor p0 = sign_pair(m, 0);
  MackeyFunctor p1 = sign_pair(m, 1);
  CHECK_FALSE(p0.module().actions() == p1.module().actions());
  CHECK(to_orbit_module(p0, o).actions() == to_orbit_module(p1, o).actions());

  CatModule bstar = to_orbit_module(burnside(m), o);
  CHECK(bstar.value(o->object_of(g.whole())).to_string() == "Z^2");
  CHECK(bstar.value(o->object_of(g.trivial())).to_string() == "Z");
}

TEST_CASE("induction and coinduction match the double coset formula") {
  struct Case {
    Group g;
    std::vector<std::string> words;
  };
  std::vector<Case> cases{{s3(), {"(1 2 3)"}}, {s3(), {"(1 2)"}}, {d8(), {"(1 2 3 4)"}}};
  for (const auto& [g, words] : cases) {
    MackeyPtr m = mackey_all(g);
    SubgroupSetting s = subgroup_setting(m, by_words(g, words));
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      GModule v = GModule::random(s.n.group, seed);
      for (const MackeyFunctor& small : {fixed_point_functor(s.small, v), coinvariance_functor(s.small, v)}) {
        MackeyFunctor ind = mackey_induce(s, small);
        MackeyFunctor coind = mackey_coinduce(s, small);
        auto expected = double_coset_values(s, small);
        for (std::size_t a = 0; a < m->object_count(); ++a) {
          CHECK(ind.value(a).isomorphic(expected[a]));
          CHECK(coind.value(a).isomorphic(expected[a]));
        }
        NatTrans t = induction_to_coinduction(s, small);
        CHECK_FALSE(fmod::check_naturality(t).has_value());
        CHECK(iso_at_every_object(t));
      }
      // coind of fixed points is the fixed point functor of the induced module.
      MackeyFunctor lhs = mackey_coinduce(s, fixed_point_functor(s.small, v));
      MackeyFunctor rhs = fixed_point_functor(m, induce(g, s.n, v));
      for (std::size_t a = 0; a < m->object_count(); ++a) CHECK(lhs.value(a).isomorphic(rhs.value(a)));
    }
  }
}

TEST_CASE("double coset counts for C3 and C2 in S3 at the object C2") {
  Group g = s3();
  MackeyPtr m = mackey_all(g);
  Subgroup c2s = by_words(g, {"(1 2)"});
  SubgroupSetting s3c3 = subgroup_setting(m, by_words(g, {"(1 2 3)"}));
  MackeyFunctor b3 = burnside(s3c3.small);  // values Z at e, Z^2 at C3
  CHECK(double_coset_values(s3c3, b3)[obj(*m, c2s)].to_string() == "Z");
  SubgroupSetting s3c2 = subgroup_setting(m, c2s);
  MackeyFunctor b2 = burnside(s3c2.small);
  CHECK(double_coset_values(s3c2, b2)[obj(*m, c2s)].to_string() == "Z^3");
  SubgroupSetting whole = subgroup_setting(m, g.whole());
  MackeyFunctor bw = burnside(whole.small);
  MackeyFunctor ind = mackey_induce(whole, bw);
  for (std::size_t a = 0; a < m->object_count(); ++a) CHECK(ind.value(a).isomorphic(bw.value(a)));
}

TEST_CASE("Hom(N, M*) and Hom(ind_pi N, M) have the same rank") {
  for (const Group& g : {c2(), s3()}) {
    MackeyPtr m = mackey_all(g);
    OrbitPtr o = orbit_all(g);
    cats::Functor pi = cats::orbit_to_mackey(*o, *m);
    std::vector<CatModule> ns{CatModule::constant(o), CatModule::representable(o, 0),
                              to_orbit_module(burnside(m), o)};
    std::vector<MackeyFunctor> ms{burnside(m), fixed_point_functor(m, GModule::regular(g)),
                                  coinvariance_functor(m, GModule::sign(g))};
    for (const auto& n : ns)
      for (const auto& mm : ms) {
        FgAbelian lhs = fmod::hom_over_category(n, to_orbit_module(mm, o));
        FgAbelian rhs = fmod::hom_over_category(fmod::induce_along(pi, m, n), mm.module());
        CHECK(lhs.isomorphic(rhs));
      }
  }
}

TEST_CASE("evaluation at the identity is left adjoint to the fixed point functor") {
  // Hom_G(N(G/e), V) by hand: N = Burnside of C2 has N(G/e) = Z trivial.
  Group g = c2();
  MackeyPtr m = mackey_all(g);
  MackeyFunctor b = burnside(m);
  CHECK(fmod::hom_over_category(b.module(), fixed_point_functor(m, GModule::trivial(g)).module()).to_string() ==
        "Z");
  CHECK(fmod::hom_over_category(b.module(), fixed_point_functor(m, GModule::sign(g)).module()).to_string() == "0");
  CHECK(fmod::hom_over_category(b.module(), fixed_point_functor(m, GModule::regular(g)).module()).to_string() ==
        "Z");
}

TEST_CASE("inflation from C4/C2") {
  Group q = c4();
  MackeyPtr big = mackey_all(q);
  Subgroup k = by_words(q, {"(1 3)(2 4)"});
  grp::Quotient quo = grp::quotient(q.whole(), k);
  MackeyPtr small = mackey_all(quo.group);
  MackeyFunctor n = fixed_point_functor(small, GModule::trivial(quo.group));
  MackeyFunctor inf = inflation(big, k, quo, n);
  CHECK(inf.value(big->object_of(q.trivial())).to_string() == "0");
  CHECK(inf.value(big->object_of(k)).to_string() == "Z");
  CHECK(inf.value(big->object_of(q.whole())).to_string() == "Z");
  CHECK(inflation(big, k, quo, MackeyFunctor(small, CatModule::zero(small))).is_zero());

  grp::Quotient same = grp::quotient(q.whole(), q.trivial());
  MackeyPtr copy = mackey_all(same.group);
  MackeyFunctor id = inflation(big, q.trivial(), same, burnside(copy));
  for (std::size_t a = 0; a < big->object_count(); ++a) CHECK(id.value(a).isomorphic(burnside(big).value(a)));
  CHECK_THROWS_AS(inflation(big, by_words(s3(), {"(1 2)"}), quo, n), Error);
}

TEST_CASE("cohomological Mackey functors are quotients of fixed point functors") {
  for (const Group& g : {c2(), s3()}) {
    MackeyPtr m = mackey_all(g);
    for (std::size_t c = 0; c < g.class_count(); ++c) {
      MackeyFunctor co = coinvariance_functor(m, GModule::permutation(g.class_representative(c)));
      FixedPointCover cover = fixed_point_cover(co);
      CHECK_FALSE(fmod::check_naturality(cover.psi).has_value());
      CHECK(surjective_everywhere(cover.psi));
    }
    FixedPointCover self = fixed_point_cover(fixed_point_functor(m, GModule::trivial(g)));
    CHECK(surjective_everywhere(self.psi));
    CHECK_THROWS_AS(fixed_point_cover(burnside(m)), NotCohomological);
  }
}

TEST_CASE("sub and quotient functors of cohomological functors stay cohomological") {
  Group g = s3();
  MackeyPtr m = mackey_all(g);
  MackeyFunctor f = fixed_point_functor(m, GModule::regular(g));
  std::size_t top = m->object_of(g.whole());
  fmod::SubModule sub = fmod::generated_submodule(f.module(), top, {IntVector{Int(3)}});
  CHECK(is_cohomological(MackeyFunctor(m, sub.module)));
  CHECK(is_cohomological(MackeyFunctor(m, fmod::cokernel(sub.inclusion).module)));
}

TEST_CASE("xi") {
  Group g = s3();
  OrbitPtr o = orbit_all(g);
  CHECK(xi(CatModule::constant(o)) == std::optional<std::size_t>(0));
  CHECK_FALSE(xi(CatModule::zero(o)).has_value());
  // Z everywhere except G/e, identity actions away from e.
  std::vector<FgAbelian> values;
  const std::size_t e = o->object_of(g.trivial());
  for (std::size_t a = 0; a < o->object_count(); ++a) values.push_back(a == e ? FgAbelian() : FgAbelian::free(1));
  std::vector<IntMatrix> acts;
  for (std::size_t x = 0; x < o->morphism_count(); ++x)
    acts.push_back(o->source(x) == e || o->target(x) == e
                       ? IntMatrix(values[o->source(x)].ambient_rank(), values[o->target(x)].ambient_rank())
                       : IntMatrix{{1}});
  CatModule above(o, values, acts);
  REQUIRE_FALSE(fmod::validate_module(above).has_value());
  CHECK(xi(above) == std::optional<std::size_t>(1));
}

TEST_CASE("D_e of a module is the fixed point functor of its value at e") {
  Group g = s3();
  OrbitPtr o = orbit_all(g);
  MackeyPtr m = mackey_all(g);
  GModule v = GModule::regular(g);
  CatModule mod = to_orbit_module(fixed_point_functor(m, v), o);
  const std::size_t e = o->object_of(g.trivial());
  DhCoinduction de = dh_coinduction(mod, e);
  CHECK_FALSE(fmod::check_naturality(de.unit).has_value());
  for (std::size_t a = 0; a < o->object_count(); ++a)
    CHECK(de.module.value(a).isomorphic(fixed_points(v, o->object_subgroup(a)).group));
  AbMap at_e = de.unit.component_map(e);
  CHECK(zmod::kernel(at_e).group.is_zero());
  CHECK(zmod::cokernel(at_e).group.is_zero());
}

TEST_CASE("tower of a module supported at the top stops after one step") {
  Group g = s3();
  OrbitPtr o = orbit_all(g);
  const std::size_t top = o->object_of(g.whole());
  std::vector<FgAbelian> values(o->object_count());
  values[top] = FgAbelian::free(1);
  std::vector<IntMatrix> acts;
  for (std::size_t x = 0; x < o->morphism_count(); ++x)
    acts.emplace_back(values[o->source(x)].ambient_rank(), values[o->target(x)].ambient_rank());
  acts[o->identity(top)] = IntMatrix{{1}};
  CatModule m(o, values, acts);
  REQUIRE_FALSE(fmod::validate_module(m).has_value());
  Tower t = d_tower(m, 0);
  CHECK(t.exact);
  for (std::size_t a = 0; a < o->object_count(); ++a) CHECK(t.stages[0].d.value(a).isomorphic(m.value(a)));
  CHECK(t.last.is_zero());
}

TEST_CASE("tower of constant Z over S3") {
  Group g = s3();
  OrbitPtr o = orbit_all(g);
  CatModule z = CatModule::constant(o);
  const std::size_t d = g.group_length();
  CHECK(d == 2);
  Tower t = d_tower(z, d);
  CHECK(t.exact);
  REQUIRE(t.stages.size() == d + 1);
  for (std::size_t i = 0; i < t.stages.size(); ++i) {
    const auto& x = t.stages[i].xi;
    CHECK((!x.has_value() || *x >= i));
    CHECK_FALSE(fmod::check_naturality(t.stages[i].into).has_value());
  }
  CHECK(t.last.is_zero());
}
