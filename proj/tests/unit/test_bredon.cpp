#include <fstream>
#include <sstream>

#include "bredonkit/bredon.hpp"
#include "bredonkit/errors.hpp"
#include "doctest.h"

using namespace bredonkit;
using namespace bredonkit::bredon;
using grp::Elem;
using grp::Family;
using grp::Group;
using grp::Subgroup;

namespace {

Group cyclic(int n) {
  std::string w = "(";
  for (int i = 1; i <= n; ++i) w += std::to_string(i) + (i < n ? " " : ")");
  return Group::from_generators(static_cast<std::size_t>(n), {w});
}
Group s3() { return Group::from_generators(3, {"(1 2)", "(1 2 3)"}); }
Group d8() { return Group::from_generators(4, {"(1 2 3 4)", "(1 3)"}); }

Subgroup by_words(const Group& g, const std::vector<std::string>& words) {
  std::vector<Elem> gens;
  for (const auto& w : words) gens.push_back(g.index_of(grp::parse_cycles(g.degree(), w)));
  return g.subgroup_generated(gens);
}

std::string catalog(const std::string& file) { return std::string(BREDONKIT_CATALOG_DIR) + "/" + file; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

const CoefficientSpec& named(const std::vector<CoefficientSpec>& battery, const std::string& name) {
  for (const auto& c : battery)
    if (c.name == name) return c;
  FAIL("no coefficient " << name);
  return battery.front();
}

}  // namespace

TEST_CASE("trivial family reproduces the cohomology of cyclic groups") {
  for (int m : {2, 3, 4}) {
    Group g = cyclic(m);
    FiniteSetting s(g, Family::trivial(g));
    const std::string tor = "Z/" + std::to_string(m);
    const std::vector<std::string> expected{"Z", "0", tor, "0", tor};
    auto z = CoefficientSpec::fix("Z", GModule::trivial(g));
    for (std::size_t n = 0; n < expected.size(); ++n) CHECK(bredon_cohomology(s, z, n).to_string() == expected[n]);
  }
}

TEST_CASE("the full family kills positive degrees") {
  Group g = s3();
  FiniteSetting s(g, Family::all(g));
  auto battery = standard_battery(s);
  CHECK(battery.size() == 2 * 5 + 2);
  for (const auto& c : battery)
    for (std::size_t n = 1; n <= 3; ++n) CHECK(bredon_cohomology(s, c, n).is_zero());
  CHECK(bredon_cohomology(s, named(battery, "Z fix"), 0).to_string() == "Z");
  DimensionReport r = dimension_report(s, battery, 3);
  for (const auto& w : r.witness) CHECK(w == std::optional<std::size_t>(0));
  CHECK(r.resolution_length == std::optional<std::size_t>(0));
  CHECK(r.length_bound == std::optional<std::size_t>(2));
  CHECK(r.ordering_ok);
  CHECK(r.bounds_ok);
}

TEST_CASE("coefficients must live on the setting") {
  Group g = s3();
  FiniteSetting s(g, Family::all(g));
  FiniteSetting t(g, Family::all(g));
  auto foreign = named(standard_battery(t), "Z at G/e");
  CHECK_THROWS_AS(coefficient_module(s, foreign), ObjectMismatch);
  CHECK_THROWS_AS(dimension_report(s, {}, 2), PreconditionError);
}

TEST_CASE("infinite dihedral group") {
  EncodedComplex x = load_encoded(catalog("Dinf.json"));
  CHECK(x.top_degree() == 1);
  CHECK(x.quotient.order() == 6);
  auto battery = standard_battery(x);
  const auto& z = named(battery, "Z fix");
  CHECK(bredon_cohomology_encoded(x, z, 0).to_string() == "Z");
  CHECK(bredon_cohomology_encoded(x, z, 1).is_zero());
  CHECK(bredon_cohomology_encoded(x, named(battery, "sign fix"), 1).to_string() == "Z");
  CHECK(bredon_cohomology_encoded(x, z, 2).is_zero());
  DimensionReport r = dimension_report(x, battery);
  for (const auto& w : r.witness) CHECK(w == std::optional<std::size_t>(1));
  CHECK(r.resolution_length == std::optional<std::size_t>(1));
  CHECK(r.length_bound == std::optional<std::size_t>(1));
  CHECK(r.ordering_ok);
  CHECK(r.bounds_ok);
}

TEST_CASE("C2 * C3") {
  EncodedComplex x = load_encoded(catalog("c2_star_c3.json"));
  auto battery = standard_battery(x);
  CHECK(bredon_cohomology_encoded(x, named(battery, "Z fix"), 1).is_zero());
  CHECK(bredon_cohomology_encoded(x, named(battery, "Z at G/e"), 1).to_string() == "Z");
  // Z[S3]^A + Z[S3]^B has rank 3 + 2 - 1 inside Z^6.
  FgAbelian reg = bredon_cohomology_encoded(x, named(battery, "Z[G/H0] fix"), 1);
  CHECK(reg.free_rank() == 2);
  DimensionReport r = dimension_report(x, battery);
  CHECK(r.witness[3] == std::optional<std::size_t>(1));
  CHECK(r.ordering_ok);
  CHECK(r.bounds_ok);
}

TEST_CASE("encoded complexes are validated") {
  const std::string text = slurp(catalog("Dinf.json"));
  CHECK_NOTHROW(parse_encoded(text));
  const std::string broken = replace_once(text, "\"morphism\": \"pa\", \"coef\": -1", "\"morphism\": \"pa\", \"coef\": 1");
  CHECK_THROWS_AS(parse_encoded(broken), InvalidComplex);
  CHECK_THROWS_AS(parse_encoded(replace_once(text, "\"b b\"", "\"b b b\"")), InvalidComplex);
  CHECK_THROWS_AS(parse_encoded(replace_once(text, "\"pb\", \"coef\"", "\"pz\", \"coef\"")), ParseError);
  CHECK_THROWS_AS(parse_encoded("{"), ParseError);

  EncodedComplex x = parse_encoded(text);
  EncodedTables t;
  t.values["e"] = FgAbelian::free(1);
  t.values["A"] = FgAbelian();
  t.values["B"] = FgAbelian();
  t.actions["pa"] = IntMatrix(1, 0);
  CHECK_THROWS_AS(encode_coefficient(x, CoefficientSpec::general("partial", t)), IncompleteCoefficient);
  t.actions["pb"] = IntMatrix(1, 0);
  CHECK(bredon_cohomology_encoded(x, CoefficientSpec::general("Z at e", t), 1).to_string() == "Z");
}

TEST_CASE("a hand-made model and the automatic resolution agree") {
  EncodedComplex x = load_encoded(catalog("interval_c2.json"));
  CHECK(x.finite);
  FiniteSetting s(x.quotient, Family::all(x.quotient));
  auto battery = standard_battery(s);
  for (const auto& c : battery)
    for (std::size_t n = 0; n <= 2; ++n) {
      CAPTURE(c.name);
      CAPTURE(n);
      CHECK(bredon_cohomology_encoded(x, c, n).isomorphic(bredon_cohomology(s, c, n)));
    }
}

TEST_CASE("Shapiro") {
  {
    Group g = d8();
    FiniteSetting s(g, Family::trivial(g));
    SubgroupPair p = subgroup_pair(s, by_words(g, {"(1 3)"}));
    ShapiroReport r = shapiro_check(s, p, CoefficientSpec::fix("Z", GModule::trivial(p.embedded.group)), 3);
    CHECK(r.rows.size() == 4);
    CHECK(r.rows[2].left.to_string() == "Z/2");
    CHECK(r.mackey_compared);
    CHECK(r.ok);
  }
  {
    Group g = s3();
    FiniteSetting s(g, Family::trivial(g));
    SubgroupPair p = subgroup_pair(s, by_words(g, {"(1 2 3)"}));
    // Z[C3] is free: only H^0 = Z survives.
    ShapiroReport r = shapiro_check(s, p, CoefficientSpec::fix("Z[C3]", GModule::regular(p.embedded.group)), 3);
    CHECK(r.ok);
    CHECK(r.rows[0].right.to_string() == "Z");
    for (std::size_t n = 1; n <= 3; ++n) CHECK(r.rows[n].right.is_zero());
  }
  {
    Group g = s3();
    FiniteSetting s(g, Family::all(g));
    SubgroupPair p = subgroup_pair(s, g.whole());
    CHECK(shapiro_check(s, p, CoefficientSpec::comack("sign", GModule::sign(p.embedded.group)), 2).ok);
  }
}

TEST_CASE("finite kernels do not change Bredon cohomology") {
  {
    Group g = cyclic(4);
    Subgroup k = by_words(g, {"(1 3)(2 4)"});
    grp::Quotient q = grp::quotient(g.whole(), k);
    CHECK(pullback_family(q, Family::trivial(q.group)).classes().size() == 2);
    std::vector<CoefficientSpec> battery{CoefficientSpec::fix("Z", GModule::trivial(g)),
                                         CoefficientSpec::comack("Z[C4]", GModule::regular(g)),
                                         CoefficientSpec::fix("Z[C4/C2]", GModule::permutation(k))};
    FiniteKernelReport r = finite_kernel_check(g, k, "trivial", battery, 3);
    CHECK(r.rows.size() == 3);
    CHECK(r.rows[0][2].left.to_string() == "Z/2");
    CHECK(r.ok);
  }
  {
    Group g = d8();
    Subgroup center = by_words(g, {"(1 3)(2 4)"});
    std::vector<CoefficientSpec> battery{CoefficientSpec::fix("Z", GModule::trivial(g)),
                                         CoefficientSpec::fix("sign", GModule::sign(g)),
                                         CoefficientSpec::comack("Z", GModule::trivial(g))};
    CHECK(finite_kernel_check(g, center, "trivial", battery, 2).ok);
    CHECK(finite_kernel_check(g, g.trivial(), "cyclic", battery, 2).ok);
  }
}

TEST_CASE("conjugate subgroups see the same cohomology") {
  Group g = s3();
  FiniteSetting s(g, Family::trivial(g));
  MackeyFunctor m = mackey::fixed_point_functor(s.mackey(), GModule::regular(g));
  Subgroup n = by_words(g, {"(1 2)"});
  Elem x = g.index_of(grp::parse_cycles(3, "(1 2 3)"));
  CHECK_FALSE(n.conjugate(x).id() == n.id());
  for (const auto& row : conjugation_stability(s, m, n, x, 3)) CHECK(row.equal);
}
