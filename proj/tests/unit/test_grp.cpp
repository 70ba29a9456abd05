#include <algorithm>
#include <random>
#include <set>

#include "bredonkit/errors.hpp"
#include "bredonkit/grp.hpp"
#include "doctest.h"

using namespace bredonkit::grp;
using bredonkit::ExplosionError;
using bredonkit::MismatchedParent;
using bredonkit::NotAFamily;
using bredonkit::NotNormal;
using bredonkit::ParseError;

namespace {

Group s3() { return Group::from_generators(3, {"(1 2)", "(1 2 3)"}); }
Group d8() { return Group::from_generators(4, {"(1 2 3 4)", "(1 3)"}); }
Group s4() { return Group::from_generators(4, {"(1 2)", "(1 2 3 4)"}); }
Group a4() { return Group::from_generators(4, {"(1 2 3)", "(1 2)(3 4)"}); }
Group q8() { return Group::from_generators(8, {"(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"}); }
Group c2cube() { return Group::from_generators(6, {"(1 2)", "(3 4)", "(5 6)"}); }

// Brute-force subgroup set: closures of all element triples.
std::set<Members> brute_subgroups(const Group& g) {
  std::set<Members> out;
  const Elem n = static_cast<Elem>(g.order());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b)
      for (Elem c = b; c < n; ++c) out.insert(g.generate({a, b, c}));
  return out;
}

Subgroup by_words(const Group& g, const std::vector<std::string>& words) {
  std::vector<Elem> gens;
  for (const auto& w : words) gens.push_back(g.index_of(parse_cycles(g.degree(), w)));
  return g.subgroup_generated(gens);
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(s3().order() == 6);
  CHECK(Group::from_generators(1, {}).order() == 1);
  CHECK(d8().order() == 8);
  CHECK(q8().order() == 8);
  CHECK(s4().order() == 24);
  CHECK(a4().order() == 12);
}

TEST_CASE("elements are sorted and identity comes first") {
  Group g = s4();
  CHECK(g.element(0).is_identity());
  CHECK(std::is_sorted(g.elements().begin(), g.elements().end()));
  for (Elem a = 0; a < g.order(); ++a) CHECK(g.mul(a, g.inv(a)) == 0);
}

TEST_CASE("product applies the right factor first") {
  Perm a = parse_cycles(3, "(1 2)");
  Perm b = parse_cycles(3, "(2 3)");
  Perm ab = a * b;
  CHECK(ab[0] == 1);
  CHECK(ab[1] == 2);
  CHECK(ab.to_cycles() == "(1 2 3)");
}

TEST_CASE("cycle parsing errors and bounds") {
  CHECK_THROWS_AS(parse_cycles(3, "(1 4)"), ParseError);
  CHECK_THROWS_AS(parse_cycles(3, "(1 1)"), ParseError);
  CHECK_THROWS_AS(parse_cycles(3, "1 2"), ParseError);
  CHECK_THROWS_AS(parse_cycles(3, "(1 2"), ParseError);
  CHECK(parse_cycles(3, "()").is_identity());
  CHECK(parse_cycles(4, "(1,2)(3,4)").to_cycles() == "(1 2)(3 4)");
  CHECK_THROWS_AS(Group::from_generators(6, {"(1 2 3 4 5 6)", "(1 2)"}, 100), ExplosionError);
}

TEST_CASE("subgroup classes of S3") {
  Group g = s3();
  REQUIRE(g.class_count() == 4);
  std::vector<std::size_t> orders;
  std::vector<std::size_t> sizes;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    orders.push_back(g.subgroup_class(c).order);
    sizes.push_back(g.subgroup_class(c).subgroups.size());
  }
  CHECK(orders == std::vector<std::size_t>{1, 2, 3, 6});
  CHECK(sizes == std::vector<std::size_t>{1, 3, 1, 1});
  CHECK(Group::from_generators(1, {}).class_count() == 1);
}

TEST_CASE("subgroup counts of D8") {
  Group g = d8();
  CHECK(g.class_count() == 8);
  CHECK(g.subgroup_count() == 10);
}

TEST_CASE("subgroup enumeration matches brute force") {
  for (const Group& g : {s3(), d8(), q8(), a4(), s4(), c2cube()}) {
    auto brute = brute_subgroups(g);
    CHECK(brute.size() == g.subgroup_count());
    std::size_t total = 0;
    for (std::size_t c = 0; c < g.class_count(); ++c) total += g.subgroup_class(c).subgroups.size();
    CHECK(total == brute.size());
    for (const auto& m : brute) CHECK(g.find_subgroup(m).has_value());
  }
  CHECK(s4().subgroup_count() == 30);
  CHECK(s4().class_count() == 11);
}

TEST_CASE("class representatives are minimal and transporters conjugate them") {
  for (const Group& g : {s3(), d8(), s4()}) {
    const auto& lat = g.lattice();
    for (std::size_t s = 0; s < g.subgroup_count(); ++s) {
      Subgroup h = g.subgroup(s);
      Subgroup rep = g.class_representative(h.canonical_id());
      CHECK(rep.members() <= h.members());
      CHECK(rep.conjugate(h.transporter()) == h);
      for (Elem t = 0; t < h.transporter(); ++t) CHECK_FALSE(rep.conjugate(t) == h);
      for (Elem x = 0; x < g.order(); ++x) CHECK(h.conjugate(x).canonical_id() == h.canonical_id());
    }
    CHECK(lat.classes.size() == g.class_count());
  }
}

TEST_CASE("double cosets in S3") {
  Group g = s3();
  Subgroup c2 = by_words(g, {"(1 2)"});
  Subgroup c3 = by_words(g, {"(1 2 3)"});
  auto reps = double_cosets(c2, c2);
  REQUIRE(reps.size() == 2);
  std::vector<std::size_t> sizes;
  for (Elem x : reps) sizes.push_back(double_coset(c2, x, c2).size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 4});
  auto one = double_cosets(c3, c2);
  REQUIRE(one.size() == 1);
  CHECK(double_coset(c3, one[0], c2).size() == 6);
  CHECK(double_cosets(g.whole(), g.whole()).size() == 1);
  CHECK_THROWS_AS(double_cosets(c2, d8().trivial()), MismatchedParent);
}

TEST_CASE("double cosets partition the group") {
  Group g = s4();
  for (std::size_t a = 0; a < g.subgroup_count(); ++a)
    for (std::size_t b = 0; b < g.subgroup_count(); b += 3) {
      Subgroup k = g.subgroup(a);
      Subgroup h = g.subgroup(b);
      std::size_t total = 0;
      for (Elem x : double_cosets(k, h)) total += double_coset(k, x, h).size();
      CHECK(total == g.order());
    }
}

TEST_CASE("normalizers and Weyl groups") {
  Group g = s3();
  Subgroup c3 = by_words(g, {"(1 2 3)"});
  CHECK(c3.normalizer() == g.whole());
  CHECK(weyl(c3).group.order() == 2);
  CHECK(weyl(g.whole()).group.order() == 1);
  Subgroup c2 = by_words(g, {"(1 2)"});
  CHECK(c2.normalizer() == c2);
  CHECK(weyl(c2).group.order() == 1);
  Group s = s4();
  for (std::size_t id = 0; id < s.subgroup_count(); ++id) {
    Subgroup h = s.subgroup(id);
    CHECK(weyl(h).group.order() == h.normalizer().order() / h.order());
  }
  CHECK_THROWS_AS(quotient(g.whole(), c2), NotNormal);
}

TEST_CASE("quotient maps are homomorphisms") {
  Group g = d8();
  Subgroup center = by_words(g, {"(1 3)(2 4)"});
  Quotient q = quotient(g.whole(), center);
  CHECK(q.group.order() == 4);
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      CHECK(q.image[g.mul(a, b)] == q.group.mul(q.image[a], q.image[b]));
}

TEST_CASE("lengths") {
  Group g = s3();
  CHECK(g.trivial().length() == 0);
  CHECK(g.whole().length() == 2);
  CHECK(s4().group_length() == 4);
  Group s = s4();
  for (std::size_t a = 0; a < s.subgroup_count(); ++a)
    for (std::size_t b = 0; b < s.subgroup_count(); ++b) {
      Subgroup h = s.subgroup(a);
      Subgroup k = s.subgroup(b);
      if (h.is_subgroup_of(k)) CHECK(h.length() <= k.length());
    }
}

TEST_CASE("embedded subgroups keep element order") {
  Group g = s4();
  Subgroup h = by_words(g, {"(1 2 3 4)", "(1 3)"});
  Embedded e = as_group(h);
  CHECK(e.group.order() == 8);
  for (Elem i = 0; i < e.group.order(); ++i) CHECK(e.group.element(i) == g.element(e.embedding[i]));
}

TEST_CASE("families") {
  Group g = s3();
  CHECK(Family::all(g).classes().size() == 4);
  CHECK(Family::trivial(g).classes() == std::vector<std::size_t>{0});
  CHECK(Family::cyclic(g).classes().size() == 3);
  Subgroup c2 = by_words(g, {"(1 2)"});
  CHECK_THROWS_AS(Family::from_subgroups(g, {g.trivial().members(), c2.members()}), NotAFamily);
  CHECK_THROWS_AS(Family::from_subgroups(g, {c2.members()}), NotAFamily);
  std::vector<Members> all_c2{g.trivial().members()};
  for (std::size_t s : g.subgroup_class(c2.canonical_id()).subgroups) all_c2.push_back(g.subgroup(s).members());
  CHECK(Family::from_subgroups(g, all_c2).classes().size() == 2);
  CHECK_THROWS_AS(Family::from_classes(g, {3}), NotAFamily);
}
