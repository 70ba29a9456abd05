#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include "bredonkit/cli.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::cli {

using bredon::CoefficientSpec;
using bredon::FiniteSetting;
using grp::Elem;
using grp::Family;
using grp::Group;
using grp::Subgroup;
using mackey::GModule;
using mackey::MackeyFunctor;
using mackey::MackeyPtr;
using zmod::AbMap;
using zmod::FgAbelian;
using zmod::IntMatrix;

namespace {

struct Checker {
  SuiteResult& r;
  void operator()(bool ok, const std::string& what) {
    if (!ok) {
      r.ok = false;
      r.notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& line) { r.notes.push_back(line); }
};

MackeyPtr mackey_all(const Group& g) { return std::make_shared<const cats::MackeyCategory>(g, Family::all(g)); }

Subgroup by_words(const Group& g, const std::vector<std::string>& words) {
  std::vector<Elem> gens;
  for (const auto& w : words) gens.push_back(g.index_of(grp::parse_cycles(g.degree(), w)));
  return g.subgroup_generated(gens);
}

bool iso_everywhere(const fmod::NatTrans& t) {
  for (std::size_t c = 0; c < t.source().object_count(); ++c) {
    AbMap f = t.component_map(c);
    if (!zmod::kernel(f).group.is_zero() || !zmod::cokernel(f).group.is_zero()) return false;
  }
  return true;
}

bool onto_everywhere(const fmod::NatTrans& t) {
  for (std::size_t c = 0; c < t.source().object_count(); ++c)
    if (!zmod::cokernel(t.component_map(c)).group.is_zero()) return false;
  return true;
}

// Z --0--> Z --m--> Z --0--> Z --m--> ... : cochains of the periodic resolution of Z over Z[C_m].
FgAbelian periodic(long long m, std::size_t n) {
  auto map = [&](std::size_t k) { return AbMap(FgAbelian::free(1), FgAbelian::free(1), IntMatrix{{k % 2 == 0 ? 0 : m}}); };
  AbMap in = n == 0 ? AbMap::zero(FgAbelian(), FgAbelian::free(1)) : map(n - 1);
  return zmod::homology(in, map(n));
}

void ordinary(Checker& check) {
  for (int m : {2, 3, 4}) {
    Group g = catalog_group("C" + std::to_string(m));
    FiniteSetting s(g, Family::trivial(g));
    auto z = CoefficientSpec::fix("Z", GModule::trivial(g));
    std::string row = "C" + std::to_string(m) + ":";
    for (std::size_t n = 0; n <= 4; ++n) {
      FgAbelian h = bredon::bredon_cohomology(s, z, n);
      check(h.isomorphic(periodic(m, n)), "H^" + std::to_string(n) + "(C" + std::to_string(m) + ", Z)");
      row += " " + h.to_string();
    }
    check.note(row);
  }
}

void mackey_axiom(Checker& check, const std::vector<std::string>& groups) {
  for (const auto& name : groups) {
    Group g = catalog_group(name);
    cats::MackeyCategory m(g, Family::all(g));
    cats::OrbitCategory o(g, Family::all(g));
    check(!m.find_associativity_failure(), name + " associativity");
    check(!cats::check_functor(cats::orbit_to_mackey(o, m)), name + " pi is a functor");
    std::size_t identities = 0;
    for (std::size_t lid = 0; lid < g.subgroup_count(); ++lid) {
      Subgroup l = g.subgroup(lid);
      for (std::size_t kid = 0; kid < g.subgroup_count(); ++kid) {
        Subgroup k = g.subgroup(kid);
        if (!k.is_subgroup_of(l)) continue;
        for (std::size_t hid = 0; hid < g.subgroup_count(); ++hid) {
          Subgroup h = g.subgroup(hid);
          if (!h.is_subgroup_of(l)) continue;
          cats::LinComb lhs = m.compose(m.restriction(k, l), m.induction(h, l));
          cats::LinComb rhs;
          std::vector<bool> seen(g.order(), false);
          for (Elem x : l.members()) {
            if (seen[x]) continue;
            for (Elem a : k.members())
              for (Elem b : h.members()) seen[g.mul(g.mul(a, x), b)] = true;
            cats::accumulate(rhs, cats::single(m.span_between(k, k.intersect(h.conjugate(x)), x, h)));
          }
          check(lhs == rhs, name + " double coset identity");
          ++identities;
        }
      }
    }
    check.note(name + ": " + std::to_string(m.morphism_count()) + " spans, " + std::to_string(identities) +
               " double coset identities");
  }
}

void cohomological(Checker& check) {
  Group g = catalog_group("S4");
  MackeyPtr m = mackey_all(g);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GModule v = GModule::random(g, seed);
    check(mackey::is_cohomological(mackey::fixed_point_functor(m, v)), "fixed points, seed " + std::to_string(seed));
    check(mackey::is_cohomological(mackey::coinvariance_functor(m, v)), "coinvariants, seed " + std::to_string(seed));
  }
  check(!mackey::is_cohomological(mackey::burnside(mackey_all(catalog_group("C2")))), "Burnside C2 is not cohomological");
}

void ind_coind(Checker& check) {
  struct Case {
    std::string group;
    std::string gen;
  };
  for (const auto& [name, gen] : std::vector<Case>{{"S3", "(1 2)"}, {"S3", "(1 2 3)"}, {"D8", "(1 2 3 4)"}}) {
    Group g = catalog_group(name);
    MackeyPtr m = mackey_all(g);
    mackey::SubgroupSetting s = mackey::subgroup_setting(m, by_words(g, {gen}));
    const std::string tag = "<" + gen + "> in " + name;
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      GModule v = GModule::random(s.n.group, seed);
      for (const MackeyFunctor& small : {mackey::fixed_point_functor(s.small, v), mackey::coinvariance_functor(s.small, v)}) {
        MackeyFunctor ind = mackey::mackey_induce(s, small);
        MackeyFunctor coind = mackey::mackey_coinduce(s, small);
        auto expected = mackey::double_coset_values(s, small);
        for (std::size_t a = 0; a < m->object_count(); ++a) {
          check(ind.value(a).isomorphic(expected[a]), tag + " ind at object " + std::to_string(a));
          check(coind.value(a).isomorphic(expected[a]), tag + " coind at object " + std::to_string(a));
        }
        fmod::NatTrans t = mackey::induction_to_coinduction(s, small);
        check(!fmod::check_naturality(t), tag + " ind -> coind is natural");
        check(iso_everywhere(t), tag + " ind -> coind is an isomorphism");
      }
      MackeyFunctor lhs = mackey::mackey_coinduce(s, mackey::fixed_point_functor(s.small, v));
      MackeyFunctor rhs = mackey::fixed_point_functor(m, mackey::induce(g, s.n, v));
      for (std::size_t a = 0; a < m->object_count(); ++a)
        check(lhs.value(a).isomorphic(rhs.value(a)), tag + " fixed points of the induced module");
    }
  }
}

void cover(Checker& check) {
  for (const auto& name : {"S3", "D8"}) {
    Group g = catalog_group(name);
    MackeyPtr m = mackey_all(g);
    for (std::size_t c = 0; c < g.class_count(); ++c) {
      const std::string tag = std::string(name) + " Z[G/H" + std::to_string(c) + "]";
      mackey::FixedPointCover fc = mackey::fixed_point_cover(
          mackey::coinvariance_functor(m, GModule::permutation(g.class_representative(c))));
      check(!fmod::check_naturality(fc.psi), tag + " psi is natural");
      check(onto_everywhere(fc.psi), tag + " psi is onto");
    }
    bool refused = false;
    try {
      mackey::fixed_point_cover(mackey::burnside(m));
    } catch (const NotCohomological&) {
      refused = true;
    }
    check(refused, std::string(name) + " Burnside functor refused");
  }
}

void tower(Checker& check) {
  Group g = catalog_group("S4");
  auto o = std::make_shared<const cats::OrbitCategory>(g, Family::all(g));
  MackeyPtr m = mackey_all(g);
  const std::size_t d = g.group_length();
  std::vector<std::pair<std::string, fmod::CatModule>> modules{{"Z", fmod::CatModule::constant(o)}};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    GModule v = GModule::random(g, seed);
    MackeyFunctor f = seed % 2 == 1 ? mackey::fixed_point_functor(m, v) : mackey::coinvariance_functor(m, v);
    modules.emplace_back("random " + std::to_string(seed), mackey::to_orbit_module(f, o));
  }
  for (const auto& [name, mod] : modules) {
    mackey::Tower t = mackey::d_tower(mod, d);
    check(t.exact, name + " exact");
    const auto base = t.stages.front().xi;
    for (std::size_t i = 0; i < t.stages.size(); ++i) {
      const auto& x = t.stages[i].xi;
      check(!x || (base && *x >= *base + i), name + " xi at stage " + std::to_string(i));
    }
    check(t.last.is_zero(), name + " last cokernel is zero");
  }
  check.note("l(S4) = " + std::to_string(d));
}

void infinite_catalog(Checker& check) {
  bredon::EncodedComplex dinf = catalog_complex("Dinf");
  auto battery = bredon::standard_battery(dinf);
  for (const auto& c : battery)
    if (c.name == "sign fix")
      check(bredon::bredon_cohomology_encoded(dinf, c, 1).to_string() == "Z", "D_inf sign witness H^1 = Z");
  bredon::DimensionReport r = bredon::dimension_report(dinf, battery);
  for (const auto& w : r.witness) check(w == std::optional<std::size_t>(1), "D_inf witness 1");
  check(r.resolution_length == std::optional<std::size_t>(1), "D_inf resolution length 1");
  check(r.ordering_ok && r.bounds_ok, "D_inf ordering and bounds");

  bredon::EncodedComplex free = catalog_complex("C2*C3");
  bredon::DimensionReport q = bredon::dimension_report(free, bredon::standard_battery(free));
  for (const auto& w : q.witness) check(!w || *w <= 1, "C2*C3 witness at most 1");
  check(q.witness[3] == std::optional<std::size_t>(1), "C2*C3 general witness 1");
  check(q.resolution_length == std::optional<std::size_t>(1), "C2*C3 resolution length 1");
  check(q.ordering_ok && q.bounds_ok, "C2*C3 ordering and bounds");

  bredon::EncodedComplex interval = catalog_complex("interval_c2");
  FiniteSetting s(interval.quotient, Family::all(interval.quotient));
  for (const auto& c : bredon::standard_battery(s))
    for (std::size_t n = 0; n <= 2; ++n)
      check(bredon::bredon_cohomology_encoded(interval, c, n).isomorphic(bredon::bredon_cohomology(s, c, n)),
            "interval model agrees for " + c.name);
}

void shapiro_kernel(Checker& check) {
  {
    Group g = catalog_group("D8");
    FiniteSetting s(g, Family::trivial(g));
    bredon::SubgroupPair p = bredon::subgroup_pair(s, by_words(g, {"(1 3)"}));
    check(bredon::shapiro_check(s, p, CoefficientSpec::fix("Z", GModule::trivial(p.embedded.group)), 3).ok,
          "Shapiro C2 in D8");
  }
  {
    Group g = catalog_group("S3");
    FiniteSetting s(g, Family::trivial(g));
    bredon::SubgroupPair p = bredon::subgroup_pair(s, by_words(g, {"(1 2 3)"}));
    check(bredon::shapiro_check(s, p, CoefficientSpec::fix("Z[C3]", GModule::regular(p.embedded.group)), 3).ok,
          "Shapiro C3 in S3");
  }
  {
    Group g = catalog_group("C4");
    Subgroup k = by_words(g, {"(1 3)(2 4)"});
    std::vector<CoefficientSpec> battery{CoefficientSpec::fix("Z", GModule::trivial(g)),
                                         CoefficientSpec::comack("Z[C4]", GModule::regular(g)),
                                         CoefficientSpec::fix("Z[C4/C2]", GModule::permutation(k))};
    check(bredon::finite_kernel_check(g, k, "trivial", battery, 2).ok, "finite kernel C2 in C4");
  }
  {
    Group g = catalog_group("D8");
    Subgroup center = by_words(g, {"(1 3)(2 4)"});
    std::vector<CoefficientSpec> battery{CoefficientSpec::fix("Z", GModule::trivial(g)),
                                         CoefficientSpec::fix("sign", GModule::sign(g)),
                                         CoefficientSpec::comack("Z[D8/Z]", GModule::permutation(center))};
    check(bredon::finite_kernel_check(g, center, "trivial", battery, 2).ok, "finite kernel center of D8");
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename E>
bool rejects(const std::function<void()>& f) {
  try {
    f();
  } catch (const E&) {
    return true;
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

void negative(Checker& check) {
  std::string text = slurp(std::string(BREDONKIT_CATALOG_DIR) + "/Dinf.json");
  const std::string good = "\"morphism\": \"pa\", \"coef\": -1";
  auto at = text.find(good);
  check(at != std::string::npos, "D_inf boundary entry present");
  if (at != std::string::npos) text.replace(at, good.size(), "\"morphism\": \"pa\", \"coef\": 1");
  check(rejects<InvalidComplex>([&] { bredon::parse_encoded(text); }), "corrupted boundary rejected");

  Group c2 = catalog_group("C2");
  auto o = std::make_shared<const cats::OrbitCategory>(c2, Family::trivial(c2));
  json table = {{"values", {{"0", {{"invariant_factors", {0}}}}}}, {"actions", json::object()}};
  for (std::size_t x = 0; x < o->morphism_count(); ++x)
    table["actions"][std::to_string(x)] = to_json(IntMatrix{{o->is_identity(x) ? 1 : 2}});
  check(rejects<InvalidModule>([&] { module_from_json(o, table); }), "non-functorial module table rejected");

  Group s3 = catalog_group("S3");
  std::vector<grp::Members> subs{by_words(s3, {"(1 2)"}).members()};
  check(rejects<NotAFamily>([&] { Family::from_subgroups(s3, subs); }), "non-family subgroup set rejected");
}

using SuiteFn = std::function<void(Checker&, const std::optional<std::string>&)>;

const std::vector<std::pair<SuiteInfo, SuiteFn>>& table() {
  static const std::vector<std::pair<SuiteInfo, SuiteFn>> all{
      {{"ordinary-cohomology", "trivial family reproduces H^n(C_m, Z)", 5}, [](Checker& c, auto&) { ordinary(c); }},
      {{"mackey-axiom", "Mackey categories of S3, D8, A4 are sound", 30},
       [](Checker& c, const std::optional<std::string>& g) {
         mackey_axiom(c, g ? std::vector<std::string>{*g} : std::vector<std::string>{"S3", "D8", "A4"});
       }},
      {{"cohomological", "fixed points and coinvariants are cohomological", 10},
       [](Checker& c, auto&) { cohomological(c); }},
      {{"ind-coind", "induction and coinduction from subgroups", 20}, [](Checker& c, auto&) { ind_coind(c); }},
      {{"fixed-point-cover", "cohomological functors are covered by fixed points", 10},
       [](Checker& c, auto&) { cover(c); }},
      {{"tower", "D_H towers over the orbit category of S4", 60}, [](Checker& c, auto&) { tower(c); }},
      {{"infinite-catalog", "encoded complexes of D_inf and C2*C3", 5}, [](Checker& c, auto&) { infinite_catalog(c); }},
      {{"shapiro-kernel", "Shapiro and finite kernel checks", 30}, [](Checker& c, auto&) { shapiro_kernel(c); }},
      {{"negative-controls", "bad inputs are rejected", 1}, [](Checker& c, auto&) { negative(c); }},
  };
  return all;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> v;
    for (const auto& [info, fn] : table()) v.push_back(info);
    return v;
  }();
  return infos;
}

SuiteResult run_suite(const std::string& name, const std::optional<std::string>& group) {
  for (const auto& [info, fn] : table()) {
    if (info.name != name) continue;
    SuiteResult r;
    r.name = name;
    r.limit = info.limit;
    r.ok = true;
    Checker check{r};
    auto start = std::chrono::steady_clock::now();
    try {
      fn(check, group);
    } catch (const std::exception& e) {
      r.ok = false;
      r.notes.push_back(std::string("error: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw ParseError("unknown suite \"" + name + "\"");
}

}  // namespace bredonkit::cli
