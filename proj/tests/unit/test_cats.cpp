#include <chrono>
#include <functional>

#include "bredonkit/cats.hpp"
#include "bredonkit/errors.hpp"
#include "doctest.h"

using namespace bredonkit;
using namespace bredonkit::cats;
using grp::Elem;
using grp::Family;
using grp::Group;
using grp::Subgroup;

namespace {

Group s3() { return Group::from_generators(3, {"(1 2)", "(1 2 3)"}); }
Group c2() { return Group::from_generators(2, {"(1 2)"}); }
Group d8() { return Group::from_generators(4, {"(1 2 3 4)", "(1 3)"}); }
Group a4() { return Group::from_generators(4, {"(1 2 3)", "(1 2)(3 4)"}); }

// Number of G-equivariant maps G/H -> G/K by exhaustive search over all functions.
std::size_t brute_gmaps(const Group& g, const Subgroup& h, const Subgroup& k) {
  auto hc = grp::left_cosets(h);
  auto kc = grp::left_cosets(k);
  auto index_in = [&](const std::vector<Elem>& reps, const Subgroup& s, Elem x) {
    Elem m = grp::min_left_coset_rep(s, x);
    return static_cast<std::size_t>(std::find(reps.begin(), reps.end(), m) - reps.begin());
  };
  std::vector<std::size_t> f(hc.size(), 0);
  std::size_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == hc.size()) {
      for (Elem gen : g.generator_indices())
        for (std::size_t j = 0; j < hc.size(); ++j) {
          std::size_t lhs = f[index_in(hc, h, g.mul(gen, hc[j]))];
          std::size_t rhs = index_in(kc, k, g.mul(gen, kc[f[j]]));
          if (lhs != rhs) return;
        }
      ++count;
      return;
    }
    for (std::size_t v = 0; v < kc.size(); ++v) {
      f[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

Subgroup by_words(const Group& g, const std::vector<std::string>& words) {
  std::vector<Elem> gens;
  for (const auto& w : words) gens.push_back(g.index_of(grp::parse_cycles(g.degree(), w)));
  return g.subgroup_generated(gens);
}

}  // namespace

TEST_CASE("orbit category hom ranks in S3") {
  Group g = s3();
  OrbitCategory o(g, Family::all(g));
  CHECK(o.object_count() == 4);
  // objects: e, C2, C3, S3
  CHECK(o.hom(0, 1).size() == 3);
  CHECK(o.hom(1, 1).size() == 1);
  CHECK(o.hom(3, 3).size() == 1);
  CHECK(o.hom(2, 2).size() == 2);
  CHECK(o.hom(1, 2).empty());
}

TEST_CASE("orbit hom ranks match brute-force G-map counts") {
  for (const Group& g : {s3(), d8()}) {
    OrbitCategory o(g, Family::all(g));
    for (std::size_t a = 0; a < o.object_count(); ++a)
      for (std::size_t b = 0; b < o.object_count(); ++b)
        CHECK(o.hom(a, b).size() == brute_gmaps(g, o.object_subgroup(a), o.object_subgroup(b)));
  }
}

TEST_CASE("orbit composition is basic and associative") {
  Group g = d8();
  OrbitCategory o(g, Family::all(g));
  for (std::size_t f = 0; f < o.morphism_count(); ++f)
    for (std::size_t s : o.outgoing(o.target(f))) {
      const LinComb& c = o.compose(f, s);
      REQUIRE(c.size() == 1);
      CHECK(c[0].coef == 1);
    }
  CHECK_FALSE(o.find_associativity_failure());
  CHECK_THROWS_AS(o.compose(o.identity(0), o.identity(1)), ObjectMismatch);
}

TEST_CASE("Mackey category of C2") {
  Group g = c2();
  MackeyCategory m(g, Family::all(g));
  REQUIRE(m.object_count() == 2);
  CHECK(m.hom(1, 1).size() == 2);
  // sigma = [C2/C2 <- C2/e -> C2/C2]
  Subgroup e = g.trivial();
  Subgroup top = g.whole();
  std::size_t sigma = m.span_between(top, e, g.identity(), top);
  CHECK(m.compose(sigma, sigma) == single(sigma, 2));
  std::size_t id = m.identity(1);
  CHECK(m.compose(id, sigma) == single(sigma));
  CHECK(m.compose(sigma, id) == single(sigma));
}

TEST_CASE("Mackey hom from e equals orbit hom from e") {
  for (const Group& g : {s3(), d8(), a4()}) {
    MackeyCategory m(g, Family::all(g));
    for (std::size_t b = 0; b < m.object_count(); ++b)
      CHECK(m.hom(0, b).size() == g.order() / m.object_subgroup(b).order());
  }
}

TEST_CASE("S3: spans between G/C2 and the double cosets C2\\S3/C2") {
  Group g = s3();
  MackeyCategory m(g, Family::all(g));
  Subgroup c = by_words(g, {"(1 2)"});
  Subgroup e = g.trivial();
  std::size_t through_e = 0;
  for (std::size_t x : m.hom(1, 1))
    if (m.span(x).middle == e.id()) ++through_e;
  CHECK(through_e == 2);
  // Pullback of G/e -> G/C2 <- G/e is two free orbits, both equal to the span itself.
  std::size_t s = m.span_between(c, e, g.identity(), c);
  CHECK(m.compose(s, s) == single(s, 2));
  // Restriction after induction through S3: the double coset of size 2 gives
  // the identity, the one of size 4 gives a span through e with a twist.
  LinComb ri = m.compose(m.restriction(c, g.whole()), m.induction(c, g.whole()));
  REQUIRE(ri.size() == 2);
  CHECK(ri[0].coef == 1);
  CHECK(ri[1].coef == 1);
  bool has_identity = false;
  bool has_twisted = false;
  for (const auto& t : ri) {
    if (m.is_identity(t.morphism)) has_identity = true;
    if (m.span(t.morphism).middle == e.id() && m.span(t.morphism).twist != g.identity())
      has_twisted = true;
  }
  CHECK(has_identity);
  CHECK(has_twisted);
}

TEST_CASE("ric decomposition reproduces every span") {
  for (const Group& g : {s3(), d8()}) {
    MackeyCategory m(g, Family::all(g));
    for (std::size_t x = 0; x < m.morphism_count(); ++x) {
      RicWord w = ric_decompose(m, x);
      LinComb word = m.compose(m.compose(single(w.induction), single(w.conjugation)),
                               single(w.restriction));
      CHECK(word == single(x));
    }
  }
}

TEST_CASE("ric words of generator spans") {
  Group g = s3();
  MackeyCategory m(g, Family::all(g));
  Subgroup c = m.object_subgroup(1);
  std::size_t ind = m.induction(g.trivial(), c);
  RicWord w = ric_decompose(m, ind);
  CHECK(w.induction == ind);
  CHECK(m.is_identity(w.conjugation));
  CHECK(m.is_identity(w.restriction));
  RicWord id = ric_decompose(m, m.identity(2));
  CHECK(m.is_identity(id.induction));
  CHECK(m.is_identity(id.conjugation));
  CHECK(m.is_identity(id.restriction));
}

TEST_CASE("Mackey categories are associative and pi is a functor") {
  for (const Group& g : {s3(), d8(), a4()}) {
    MackeyCategory m(g, Family::all(g));
    OrbitCategory o(g, Family::all(g));
    CHECK_FALSE(m.find_associativity_failure());
    CHECK_FALSE(check_functor(orbit_to_mackey(o, m)));
  }
  Group g = s3();
  MackeyCategory m(g, Family::trivial(g));
  OrbitCategory o(g, Family::trivial(g));
  CHECK(m.hom(0, 0).size() == 6);
  CHECK_FALSE(check_functor(orbit_to_mackey(o, m)));
}

TEST_CASE("double coset formula for restriction after induction") {
  Group g = d8();
  MackeyCategory m(g, Family::all(g));
  for (std::size_t lid = 0; lid < g.subgroup_count(); ++lid) {
    Subgroup l = g.subgroup(lid);
    for (std::size_t kid = 0; kid < g.subgroup_count(); ++kid)
      for (std::size_t hid = 0; hid < g.subgroup_count(); ++hid) {
        Subgroup k = g.subgroup(kid);
        Subgroup h = g.subgroup(hid);
        if (!k.is_subgroup_of(l) || !h.is_subgroup_of(l)) continue;
        LinComb lhs = m.compose(m.restriction(k, l), m.induction(h, l));
        // Independent enumeration of K\L/H inside L.
        LinComb rhs;
        std::vector<bool> seen(g.order(), false);
        for (Elem x : l.members()) {
          if (seen[x]) continue;
          for (Elem a : k.members())
            for (Elem b : h.members()) seen[g.mul(g.mul(a, x), b)] = true;
          Subgroup meet = k.intersect(h.conjugate(x));
          accumulate(rhs, single(m.span_between(k, meet, x, h)));
        }
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("inclusion functors of subgroup categories") {
  Group g = s3();
  Subgroup c = by_words(g, {"(1 2)"});
  grp::Embedded n = grp::as_group(c);
  Family fn = intersect_family(Family::all(g), n);
  CHECK(fn.classes().size() == 2);
  OrbitCategory small(n.group, fn);
  OrbitCategory big(g, Family::all(g));
  CHECK_FALSE(check_functor(orbit_inclusion(small, n, big)));
  MackeyCategory msmall(n.group, fn);
  MackeyCategory mbig(g, Family::all(g));
  CHECK_FALSE(check_functor(mackey_inclusion(msmall, n, mbig)));
}

TEST_CASE("Mackey category of S4 builds at desk speed") {
  Group g = Group::from_generators(4, {"(1 2)", "(1 2 3 4)"});
  auto start = std::chrono::steady_clock::now();
  MackeyCategory m(g, Family::all(g));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("S4 Mackey category: " << m.morphism_count() << " spans, " << secs << " s");
  CHECK(secs < 20.0);
}
