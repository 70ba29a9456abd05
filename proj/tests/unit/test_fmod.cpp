#include <memory>

#include "bredonkit/errors.hpp"
#include "bredonkit/fmod.hpp"
#include "doctest.h"

using namespace bredonkit;
using namespace bredonkit::fmod;
using cats::MackeyCategory;
using cats::OrbitCategory;
using grp::Family;
using grp::Group;

namespace {

Group s3() { return Group::from_generators(3, {"(1 2)", "(1 2 3)"}); }
Group cyclic(int n) {
  std::string cyc = "(";
  for (int i = 1; i <= n; ++i) cyc += std::to_string(i) + (i < n ? " " : ")");
  return Group::from_generators(static_cast<std::size_t>(n), {cyc});
}

std::shared_ptr<OrbitCategory> orbit(const Group& g, const Family& f) {
  return std::make_shared<OrbitCategory>(g, f);
}
std::shared_ptr<MackeyCategory> mackey(const Group& g, const Family& f) {
  return std::make_shared<MackeyCategory>(g, f);
}

// Z/n[-, c]: the representable module reduced mod n.
CatModule reduced_representable(const CategoryPtr& cat, std::size_t c, long long n) {
  CatModule rep = CatModule::representable(cat, c);
  std::vector<IntMatrix> comps;
  for (std::size_t b = 0; b < rep.object_count(); ++b)
    comps.push_back(Int(n) * IntMatrix::identity(rep.value(b).ambient_rank()));
  return cokernel(NatTrans(rep, rep, comps)).module;
}

cats::Functor identity_functor(const cats::Category& c) {
  cats::Functor f;
  f.source = &c;
  f.target = &c;
  for (std::size_t a = 0; a < c.object_count(); ++a) f.object_map.push_back(a);
  for (std::size_t x = 0; x < c.morphism_count(); ++x) f.morphism_map.push_back(cats::single(x));
  return f;
}

// Cohomology of the periodic cochain complex Z -> Z -> ... with maps 0, n, 0, n, ...
FgAbelian periodic_oracle(long long n, std::size_t degree) {
  auto map = [&](std::size_t k) {
    return AbMap(FgAbelian::free(1), FgAbelian::free(1), IntMatrix{{k % 2 == 0 ? 0 : n}});
  };
  AbMap in = degree == 0 ? AbMap::zero(FgAbelian(), FgAbelian::free(1)) : map(degree - 1);
  return zmod::homology(in, map(degree));
}

}  // namespace

TEST_CASE("constant and representable modules are modules") {
  Group g = s3();
  auto o = orbit(g, Family::all(g));
  CHECK_FALSE(validate_module(CatModule::constant(o)));
  for (std::size_t c = 0; c < o->object_count(); ++c) {
    CHECK_FALSE(validate_module(CatModule::representable(o, c)));
    CHECK_FALSE(validate_module(CatModule::representable(o, c, Variance::left)));
  }
  auto m = mackey(g, Family::all(g));
  for (std::size_t c = 0; c < m->object_count(); ++c) {
    CHECK_FALSE(validate_module(CatModule::representable(m, c)));
    CHECK_FALSE(validate_module(reduced_representable(m, c, 3)));
  }
}

TEST_CASE("constant tables on the Mackey category fail the axioms") {
  Group g = cyclic(2);
  auto m = mackey(g, Family::all(g));
  auto err = validate_module(CatModule::constant(m));
  REQUIRE(err);
  CHECK(err->find("functoriality") != std::string::npos);
  CHECK_THROWS_AS(require_valid(CatModule::constant(m)), InvalidModule);
}

TEST_CASE("a corrupted action is reported") {
  Group g = s3();
  auto o = orbit(g, Family::all(g));
  CatModule z = CatModule::constant(o);
  std::vector<IntMatrix> actions = z.actions();
  std::size_t victim = o->hom(0, 1).front();
  actions[victim] = IntMatrix{{2}};
  CatModule bad(o, z.values(), actions);
  CHECK(validate_module(bad));
  std::vector<IntMatrix> wrong_shape = z.actions();
  wrong_shape[victim] = IntMatrix{{1, 1}};
  CHECK_THROWS_AS(CatModule(o, z.values(), wrong_shape), InvalidModule);
}

TEST_CASE("Yoneda: Hom(Z[-, c], M) is M(c)") {
  Group g = s3();
  for (CategoryPtr cat : {CategoryPtr(orbit(g, Family::all(g))), CategoryPtr(mackey(g, Family::all(g)))}) {
    for (std::size_t d = 0; d < cat->object_count(); ++d) {
      CatModule m = CatModule::direct_sum({CatModule::representable(cat, d), reduced_representable(cat, d, 2)});
      for (std::size_t c = 0; c < cat->object_count(); ++c) {
        HomSpace h = hom_space(CatModule::representable(cat, c), m);
        CHECK(h.group.isomorphic(m.value(c)));
        for (std::size_t i = 0; i < m.value(c).ambient_rank(); ++i) {
          IntVector x(m.value(c).ambient_rank());
          x[i] = 1;
          NatTrans y = yoneda_map(m, c, x);
          CHECK_FALSE(check_naturality(y));
          CHECK(h.coordinates(y));
        }
      }
    }
  }
}

TEST_CASE("hom of the constant module to itself") {
  Group g = s3();
  auto o = orbit(g, Family::all(g));
  CatModule z = CatModule::constant(o);
  HomSpace h = hom_space(z, z);
  CHECK(h.group.to_string() == "Z");
  NatTrans id(z, z, std::vector<IntMatrix>(o->object_count(), IntMatrix::identity(1)));
  auto coords = h.coordinates(id);
  REQUIRE(coords);
  CHECK_FALSE(check_naturality(h.element(*coords)));
  NatTrans twisted(z, z, {IntMatrix{{1}}, IntMatrix{{2}}, IntMatrix{{1}}, IntMatrix{{1}}});
  CHECK(check_naturality(twisted));
  CHECK_FALSE(h.coordinates(twisted));
}

TEST_CASE("tensor with a corepresentable evaluates") {
  Group g = s3();
  for (CategoryPtr cat : {CategoryPtr(orbit(g, Family::all(g))), CategoryPtr(mackey(g, Family::all(g)))}) {
    CatModule m = CatModule::direct_sum({CatModule::representable(cat, 1), reduced_representable(cat, 2, 3)});
    for (std::size_t c = 0; c < cat->object_count(); ++c)
      CHECK(tensor_over_category(m, CatModule::representable(cat, c, Variance::left)).isomorphic(m.value(c)));
  }
  auto o = orbit(g, Family::all(g));
  // Z ⊗ Z over O_G is the colimit of Z, a single Z.
  CHECK(tensor_over_category(CatModule::constant(o), CatModule::constant(o, Variance::left)).to_string() == "Z");
  CHECK_THROWS_AS(tensor_space(CatModule::constant(o), CatModule::constant(o)), PreconditionError);
}

TEST_CASE("induction along pi sends representables to representables") {
  for (const Group& g : {cyclic(2), s3()}) {
    auto o = orbit(g, Family::all(g));
    auto m = mackey(g, Family::all(g));
    cats::Functor pi = cats::orbit_to_mackey(*o, *m);
    for (std::size_t c = 0; c < o->object_count(); ++c) {
      CatModule ind = induce_along(pi, m, CatModule::representable(o, c));
      CHECK_FALSE(validate_module(ind));
      CatModule rep = CatModule::representable(m, c);
      for (std::size_t d = 0; d < m->object_count(); ++d) CHECK(ind.value(d).isomorphic(rep.value(d)));
    }
  }
}

TEST_CASE("induced constant module over C2") {
  Group g = cyclic(2);
  auto o = orbit(g, Family::all(g));
  auto m = mackey(g, Family::all(g));
  CatModule ind = induce_along(cats::orbit_to_mackey(*o, *m), m, CatModule::constant(o));
  CHECK_FALSE(validate_module(ind));
  CHECK(ind.value(1).to_string() == "Z^2");
  CHECK(ind.value(0).to_string() == "Z");
}

TEST_CASE("induction and coinduction along the identity") {
  Group g = s3();
  auto m = mackey(g, Family::all(g));
  cats::Functor id = identity_functor(*m);
  CatModule x = CatModule::direct_sum({CatModule::representable(m, 1), reduced_representable(m, 0, 2)});
  CatModule ind = induce_along(id, m, x);
  CatModule coind = coinduce_along(id, m, x);
  CHECK_FALSE(validate_module(ind));
  CHECK_FALSE(validate_module(coind));
  for (std::size_t d = 0; d < m->object_count(); ++d) {
    CHECK(ind.value(d).isomorphic(x.value(d)));
    CHECK(coind.value(d).isomorphic(x.value(d)));
  }
  CatModule back = restrict_along(id, m, x);
  CHECK(back.actions() == x.actions());
}

TEST_CASE("kernels, images and cokernels are objectwise") {
  Group g = s3();
  auto m = mackey(g, Family::all(g));
  CatModule target = CatModule::direct_sum({CatModule::representable(m, 2), reduced_representable(m, 1, 2)});
  IntVector x(target.value(1).ambient_rank());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<long>(i % 3) - 1;
  NatTrans t = yoneda_map(target, 1, x);
  SubModule k = kernel(t);
  SubModule im = image(t);
  QuotientModule q = cokernel(t);
  CHECK_FALSE(validate_module(k.module));
  CHECK_FALSE(validate_module(im.module));
  CHECK_FALSE(validate_module(q.module));
  CHECK_FALSE(check_naturality(k.inclusion));
  CHECK_FALSE(check_naturality(q.projection));
  CHECK(t.after(k.inclusion).is_zero());
  for (std::size_t c = 0; c < m->object_count(); ++c) {
    CHECK(k.module.value(c).isomorphic(zmod::kernel(t.component_map(c)).group));
    CHECK(im.module.value(c).isomorphic(zmod::image(t.component_map(c)).group));
    CHECK(q.module.value(c).isomorphic(zmod::cokernel(t.component_map(c)).group));
  }
  SubModule gen = generated_submodule(target, 1, {x});
  for (std::size_t c = 0; c < m->object_count(); ++c) CHECK(gen.module.value(c).isomorphic(im.module.value(c)));
}

TEST_CASE("resolutions over the free orbit recover cyclic group cohomology") {
  for (long long n : {2LL, 3LL}) {
    Group g = cyclic(static_cast<int>(n));
    auto o = orbit(g, Family::trivial(g));
    CatModule z = CatModule::constant(o);
    ChainComplex res = free_resolution(z, {6, 4000});
    CHECK_FALSE(res.complete);
    CHECK_FALSE(check_complex(res));
    CHECK_FALSE(check_exact(res));
    for (std::size_t k = 0; k <= 5; ++k) {
      FgAbelian h = cohomology(res, z, k);
      CHECK(h.isomorphic(periodic_oracle(n, k)));
    }
    CHECK(cohomology(res, z, 2).to_string() == "Z/" + std::to_string(n));
    CHECK_THROWS_AS(cohomology(res, z, 6), DegreeOutOfRange);
  }
}

TEST_CASE("the constant module is projective over the full orbit category") {
  for (const Group& g : {cyclic(2), s3()}) {
    auto o = orbit(g, Family::all(g));
    CatModule z = CatModule::constant(o);
    ChainComplex res = free_resolution(z);
    CHECK(res.complete);
    CHECK(res.top_degree() == 0);
    CHECK_FALSE(check_exact(res));
    CHECK(cohomology(res, z, 0).to_string() == "Z");
    CHECK(cohomology(res, z, 4).is_zero());
  }
}

TEST_CASE("cohomology does not depend on the resolution") {
  Group g = s3();
  auto o = orbit(g, Family::trivial(g));
  CatModule z = CatModule::constant(o);
  ChainComplex res = free_resolution(z, {5, 4000});
  // Add the contractible pair Z[-, c] --id--> Z[-, c] in degrees 2 and 3.
  ChainComplex padded = res;
  const std::size_t c = 0;
  padded.cells[2].push_back(c);
  padded.boundary[2].emplace_back();
  const std::size_t extra = padded.cells[2].size() - 1;
  padded.cells[3].push_back(c);
  padded.boundary[3].push_back({{extra, cats::single(o->identity(c))}});
  CHECK_FALSE(check_complex(padded));
  CHECK_FALSE(check_exact(padded));
  CatModule coeffs = reduced_representable(o, 0, 6);
  for (std::size_t k = 0; k <= 3; ++k) {
    CHECK(cohomology(padded, z, k).isomorphic(cohomology(res, z, k)));
    CHECK(cohomology(padded, coeffs, k).isomorphic(cohomology(res, coeffs, k)));
  }
  ChainComplex broken = res;
  broken.boundary[2][0].front().second = cats::single(o->identity(0), 5);
  CHECK(check_complex(broken));
}

TEST_CASE("resolutions respect the rank bound") {
  Group g = s3();
  auto o = orbit(g, Family::trivial(g));
  CHECK_THROWS_AS(free_resolution(CatModule::constant(o), {10, 5}), ResourceError);
}
