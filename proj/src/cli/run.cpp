#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "bredonkit/cli.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::cli {

using bredon::CoefficientSpec;
using bredon::FiniteSetting;
using mackey::GModule;
using mackey::MackeyFunctor;
using zmod::FgAbelian;

namespace {

struct Options {
  std::string format = "text";
  std::string output;
  std::string group;
  std::size_t degree = 0;
  std::vector<std::string> gens;
  std::string family = "all";
  std::string coeff = "Ztriv";
  std::string degrees = "0..2";
  std::string complex;
  std::string functor;
  std::string lemma;
  std::optional<std::size_t> depth;
  bool dump = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + " is not valid JSON: " + e.what());
  }
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

grp::Group resolve_group(const Options& o) {
  if (!o.gens.empty()) {
    if (o.degree == 0) throw ParseError("--gens needs --degree");
    return group_from_gens(o.degree, o.gens);
  }
  if (o.group.empty()) throw ParseError("--group or --gens is required");
  return catalog_group(o.group);
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      std::size_t n = std::stoul(text);
      return {n, n};
    }
    std::size_t a = std::stoul(text.substr(0, dots));
    std::size_t b = std::stoul(text.substr(dots + 2));
    if (a > b) throw ParseError("--degrees: empty range " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw ParseError("--degrees: expected n or a..b, got \"" + text + "\"");
  }
}

std::optional<GModule> module_named(const grp::Group& g, const std::string& base) {
  auto number = [&](std::size_t skip) -> std::size_t {
    try {
      return std::stoul(base.substr(skip));
    } catch (const std::logic_error&) {
      throw ParseError("bad coefficient \"" + base + "\"");
    }
  };
  if (base == "Ztriv" || base == "Z") return GModule::trivial(g);
  if (base == "sign") return GModule::sign(g);
  if (base == "regular") return GModule::regular(g);
  if (base.rfind("perm", 0) == 0) {
    std::size_t c = number(4);
    if (c >= g.class_count()) throw ParseError("no subgroup class " + std::to_string(c));
    return GModule::permutation(g.class_representative(c));
  }
  if (base.rfind("random", 0) == 0) return GModule::random(g, number(6));
  return std::nullopt;
}

std::pair<bredon::CoefficientClass, std::string> split_kind(const std::string& text) {
  if (text.rfind("fix:", 0) == 0) return {bredon::CoefficientClass::fix, text.substr(4)};
  if (text.rfind("comack:", 0) == 0) return {bredon::CoefficientClass::comack, text.substr(7)};
  return {bredon::CoefficientClass::fix, text};
}

CoefficientSpec finite_coeff(const FiniteSetting& s, const std::string& text) {
  if (ends_with(text, ".json")) {
    json j = read_json(text);
    if (j.contains("maps")) return CoefficientSpec::mack(text, mackey_from_json(s.mackey(), j));
    return CoefficientSpec::general(text, module_from_json(s.orbit(), j));
  }
  if (text == "burnside") return CoefficientSpec::mack(text, mackey::burnside(s.mackey()));
  if (text == "Ze") {
    for (auto& c : bredon::standard_battery(s))
      if (c.kind == bredon::CoefficientClass::general) return c;
    throw ParseError("Ze needs the trivial subgroup in the family");
  }
  auto [kind, base] = split_kind(text);
  auto v = module_named(s.group(), base);
  if (!v) throw ParseError("unknown coefficient \"" + text + "\" (Ztriv, sign, regular, perm<c>, random<seed>, burnside, Ze, file.json)");
  return kind == bredon::CoefficientClass::fix ? CoefficientSpec::fix(text, *v) : CoefficientSpec::comack(text, *v);
}

CoefficientSpec encoded_coeff(const bredon::EncodedComplex& x, const std::string& text) {
  if (ends_with(text, ".json")) {
    json j = read_json(text);
    bredon::EncodedTables t;
    if (!j.contains("values") || !j.contains("actions")) throw ParseError(text + ": tables need values and actions");
    for (const auto& [id, v] : j.at("values").items()) t.values[id] = abelian_from_json(v);
    for (const auto& [label, m] : j.at("actions").items()) t.actions[label] = matrix_from_json(m);
    return CoefficientSpec::general(text, std::move(t));
  }
  if (text == "burnside" || text == "Ze") {
    const auto want = text == "Ze" ? bredon::CoefficientClass::general : bredon::CoefficientClass::mack;
    for (auto& c : bredon::standard_battery(x))
      if (c.kind == want) return c;
  }
  auto [kind, base] = split_kind(text);
  auto v = module_named(x.quotient, base);
  if (!v) throw ParseError("unknown coefficient \"" + text + "\" (Ztriv, sign, regular, perm<c>, random<seed>, burnside, Ze, tables.json)");
  return kind == bredon::CoefficientClass::fix ? CoefficientSpec::fix(text, *v) : CoefficientSpec::comack(text, *v);
}

bredon::EncodedComplex resolve_complex(const std::string& name) {
  if (ends_with(name, ".json")) return bredon::load_encoded(name);
  return catalog_complex(name);
}

std::string text_rows(const std::vector<FgAbelian>& groups, std::size_t first) {
  std::string s;
  for (std::size_t i = 0; i < groups.size(); ++i)
    s += "H^" + std::to_string(first + i) + " = " + groups[i].to_string() + "\n";
  return s;
}

std::string witness_text(const std::optional<std::size_t>& w) { return w ? std::to_string(*w) : "none"; }

json report_json(const bredon::DimensionReport& r) {
  json w = json::object();
  const char* names[] = {"fix", "comack", "mack", "general"};
  for (std::size_t k = 0; k < 4; ++k) w[names[k]] = r.witness[k] ? json(*r.witness[k]) : json(nullptr);
  return {{"entry", r.entry},
          {"battery", r.battery},
          {"witness_lower_bounds", w},
          {"resolution_length", r.resolution_length ? json(*r.resolution_length) : json(nullptr)},
          {"length_bound", r.length_bound ? json(*r.length_bound) : json(nullptr)},
          {"ordering_ok", r.ordering_ok},
          {"bounds_ok", r.bounds_ok}};
}

std::string report_text(const bredon::DimensionReport& r) {
  std::ostringstream s;
  s << "entry: " << r.entry << "\n";
  s << "battery: " << r.battery.size() << " coefficients\n";
  const char* names[] = {"fix", "comack", "mack", "general"};
  for (std::size_t k = 0; k < 4; ++k) s << "witnessed lower bound (" << names[k] << "): " << witness_text(r.witness[k]) << "\n";
  s << "resolution length: " << witness_text(r.resolution_length) << "\n";
  s << "length bound: " << witness_text(r.length_bound) << "\n";
  s << "ordering: " << (r.ordering_ok ? "ok" : "FAILED") << "\n";
  s << "bounds: " << (r.bounds_ok ? "ok" : "FAILED") << "\n";
  return s.str();
}

struct Output {
  std::string text;
  json data;
  int code = 0;
};

Output suite_output(const std::vector<SuiteResult>& results) {
  Output o;
  json rows = json::array();
  for (const auto& r : results) {
    o.text += std::string(r.ok ? "PASS " : "FAIL ") + r.name + "\n";
    for (const auto& n : r.notes) o.text += "  " + n + "\n";
    rows.push_back({{"name", r.name}, {"ok", r.ok}, {"notes", r.notes}});
    if (!r.ok) o.code = 1;
  }
  o.data = {{"suites", rows}, {"ok", o.code == 0}};
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bredonkit: Bredon cohomology, orbit and Mackey categories of desk-scale groups"};
  app.require_subcommand(1);
  app.footer(
      "Commands:\n"
      "  group info|subgroups|length <name>\n"
      "  cats orbit|mackey --group G --family F [--dump]\n"
      "  mackey check|cover|tower --group G --family F --coeff C\n"
      "  cohomology compute --group G --family F --coeff C --degrees a..b\n"
      "  cohomology encoded --complex X --coeff C --degrees a..b\n"
      "  cohomology report --group G --family F | --complex X\n"
      "  verify all\n"
      "  verify lemma <name> [--group G]\n"
      "Exit codes: 0 success, 1 verification failure, 2 input error.");
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", o.output, "Write output to a file");

  auto group_opts = [&](CLI::App* c) {
    c->add_option("--group", o.group, "Catalog group: S3, S4, D8, Q8, A4, Cn, Dn");
    c->add_option("--gens", o.gens, "Cycle words of a permutation group");
    c->add_option("--degree", o.degree, "Degree for --gens");
  };
  auto setting_opts = [&](CLI::App* c) {
    group_opts(c);
    c->add_option("--family", o.family, "Family: trivial, cyclic or all");
  };

  auto* group = app.add_subcommand("group", "Finite group data");
  group->require_subcommand(1);
  std::vector<CLI::App*> group_leaves{group->add_subcommand("info", "Degree, generators and order"),
                                      group->add_subcommand("subgroups", "Conjugacy classes of subgroups"),
                                      group->add_subcommand("length", "Length of the longest subgroup chain")};
  for (auto* c : group_leaves) {
    c->add_option("name", o.group, "Catalog group");
    group_opts(c);
  }

  auto* cats_cmd = app.add_subcommand("cats", "Orbit and Mackey categories");
  cats_cmd->require_subcommand(1);
  auto* orbit = cats_cmd->add_subcommand("orbit", "Orbit category O_F G");
  auto* mackey_cat = cats_cmd->add_subcommand("mackey", "Mackey category M_F G");
  for (auto* c : {orbit, mackey_cat}) {
    setting_opts(c);
    c->add_flag("--dump", o.dump, "Include morphisms and the composition table");
  }

  auto* mack = app.add_subcommand("mackey", "Mackey functor checks");
  mack->require_subcommand(1);
  auto* check = mack->add_subcommand("check", "Axioms and the cohomological identity");
  auto* cover = mack->add_subcommand("cover", "Cover by a fixed point functor");
  auto* tower = mack->add_subcommand("tower", "D_H tower of an orbit module");
  for (auto* c : {check, cover, tower}) {
    setting_opts(c);
    c->add_option("--coeff", o.coeff, "Coefficient: Ztriv, sign, regular, perm<c>, random<seed>, burnside, Ze, file.json");
  }
  tower->add_option("--depth", o.depth, "Number of stages minus one (default: the length of G)");

  auto* coh = app.add_subcommand("cohomology", "Bredon cohomology");
  coh->require_subcommand(1);
  auto* compute = coh->add_subcommand("compute", "H^n over an automatic resolution");
  setting_opts(compute);
  compute->add_option("--coeff", o.coeff, "Coefficient, optionally prefixed fix: or comack:");
  compute->add_option("--degrees", o.degrees, "Degree or range a..b");
  auto* encoded = coh->add_subcommand("encoded", "H^n over an encoded complex");
  encoded->add_option("--complex", o.complex, "Catalog name (Dinf, C2*C3) or a complex file")->required();
  encoded->add_option("--coeff", o.coeff, "Coefficient over the finite quotient or a tables file");
  encoded->add_option("--degrees", o.degrees, "Degree or range a..b");
  auto* report = coh->add_subcommand("report", "Dimension witnesses over the standard battery");
  setting_opts(report);
  report->add_option("--complex", o.complex, "Catalog name or complex file instead of a finite group");
  report->add_option("--degrees", o.degrees, "Top degree searched for finite groups");

  auto* verify = app.add_subcommand("verify", "Acceptance suites");
  verify->require_subcommand(1);
  auto* verify_all = verify->add_subcommand("all", "Run every suite");
  auto* lemma = verify->add_subcommand("lemma", "Run one suite");
  std::string suite_list;
  for (const auto& s : suites()) suite_list += (suite_list.empty() ? "" : ", ") + s.name;
  lemma->add_option("name", o.lemma, "Suite: " + suite_list)->required();
  lemma->add_option("--group", o.group, "Group for the mackey-axiom suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Output result;
  try {
    if (group->parsed()) {
      grp::Group g = resolve_group(o);
      if (group_leaves[0]->parsed()) {
        result.data = group_json(g);
        result.text = "degree " + std::to_string(g.degree()) + ", order " + std::to_string(g.order()) + "\n";
        for (const auto& p : g.generators()) result.text += "generator " + p.to_cycles() + "\n";
      } else if (group_leaves[1]->parsed()) {
        result.data = subgroups_json(g);
        result.text = std::to_string(g.subgroup_count()) + " subgroups in " + std::to_string(g.class_count()) + " classes\n";
        for (const auto& c : result.data["classes"]) {
          result.text += "class " + c["class"].dump() + ": order " + c["order"].dump() + ", length " +
                         c["length"].dump() + ", " + c["conjugates"].dump() + " conjugate(s)\n";
        }
      } else {
        result.data = {{"length", g.group_length()}};
        result.text = std::to_string(g.group_length()) + "\n";
      }
    } else if (cats_cmd->parsed()) {
      grp::Group g = resolve_group(o);
      grp::Family f = grp::Family::named(g, o.family);
      std::unique_ptr<cats::GroupCategory> c;
      if (orbit->parsed()) c = std::make_unique<cats::OrbitCategory>(g, f);
      else c = std::make_unique<cats::MackeyCategory>(g, f);
      result.data = category_json(*c);
      if (!o.dump) {
        result.data.erase("morphisms");
        result.data.erase("compose_table");
      }
      result.text = std::to_string(c->object_count()) + " objects, " + std::to_string(c->morphism_count()) + " morphisms\n";
      for (const auto& row : result.data["hom_ranks"]) result.text += row.dump() + "\n";
    } else if (mack->parsed()) {
      grp::Group g = resolve_group(o);
      FiniteSetting s(g, grp::Family::named(g, o.family));
      CoefficientSpec c = finite_coeff(s, o.coeff);
      if (tower->parsed()) {
        fmod::CatModule m = bredon::coefficient_module(s, c);
        const std::size_t d = o.depth.value_or(s.group().group_length());
        mackey::Tower t = mackey::d_tower(m, d);
        json stages = json::array();
        for (std::size_t i = 0; i < t.stages.size(); ++i) {
          const auto& x = t.stages[i].xi;
          stages.push_back({{"stage", i}, {"xi", x ? json(*x) : json(nullptr)}});
          result.text += "stage " + std::to_string(i) + ": xi = " + witness_text(x) + "\n";
        }
        result.data = {{"stages", stages}, {"exact", t.exact}, {"last_is_zero", t.last.is_zero()}};
        result.text += std::string("exact: ") + (t.exact ? "yes" : "no") + "\nlast cokernel zero: " +
                       (t.last.is_zero() ? "yes" : "no") + "\n";
        if (!t.exact) result.code = 1;
      } else {
        if (c.kind == bredon::CoefficientClass::general) throw ParseError("--coeff must be a Mackey functor here");
        MackeyFunctor m = c.kind == bredon::CoefficientClass::fix      ? mackey::fixed_point_functor(s.mackey(), *c.gmodule)
                          : c.kind == bredon::CoefficientClass::comack ? mackey::coinvariance_functor(s.mackey(), *c.gmodule)
                                                                       : *c.functor;
        if (check->parsed()) {
          const bool axioms = !fmod::validate_module(m.module());
          const bool coh_ok = mackey::is_cohomological(m);
          result.data = {{"functor", mackey_json(m)}, {"axioms", axioms}, {"cohomological", coh_ok}};
          result.text = std::string("axioms: ") + (axioms ? "ok" : "FAILED") + "\ncohomological: " + (coh_ok ? "yes" : "no") + "\n";
          for (std::size_t a = 0; a < m.category().object_count(); ++a)
            result.text += m.category().object_name(a) + ": " + m.value(a).to_string() + "\n";
          if (!axioms) result.code = 1;
        } else {
          try {
            mackey::FixedPointCover fc = mackey::fixed_point_cover(m);
            json rows = json::array();
            bool all = true;
            for (std::size_t a = 0; a < m.category().object_count(); ++a) {
              const bool onto = zmod::cokernel(fc.psi.component_map(a)).group.is_zero();
              all = all && onto;
              rows.push_back({{"object", a}, {"onto", onto}});
              result.text += m.category().object_name(a) + ": " + (onto ? "onto" : "NOT onto") + "\n";
            }
            result.data = {{"cohomological", true}, {"objects", rows}, {"surjective", all},
                           {"module_rank", fc.module.value().ambient_rank()}};
            if (!all) result.code = 1;
          } catch (const NotCohomological& e) {
            result.data = {{"cohomological", false}};
            result.text = std::string("not cohomological: ") + e.what() + "\n";
            result.code = 1;
          }
        }
      }
    } else if (coh->parsed()) {
      if (compute->parsed()) {
        grp::Group g = resolve_group(o);
        FiniteSetting s(g, grp::Family::named(g, o.family));
        CoefficientSpec c = finite_coeff(s, o.coeff);
        auto [a, b] = parse_range(o.degrees);
        std::vector<FgAbelian> groups;
        fmod::CatModule m = bredon::coefficient_module(s, c);
        for (std::size_t n = a; n <= b; ++n) groups.push_back(bredon::bredon_cohomology(s, m, n));
        result.data = {{"group", group_json(g)}, {"family", s.family().describe()}, {"coefficient", o.coeff},
                       {"first_degree", a}, {"cohomology", cohomology_json(groups)}};
        result.text = text_rows(groups, a);
      } else if (encoded->parsed()) {
        bredon::EncodedComplex x = resolve_complex(o.complex);
        bredon::EncodedCoefficient e = bredon::encode_coefficient(x, encoded_coeff(x, o.coeff));
        auto [a, b] = parse_range(o.degrees);
        std::vector<FgAbelian> groups;
        for (std::size_t n = a; n <= b; ++n) groups.push_back(bredon::bredon_cohomology_encoded(x, e, n));
        result.data = {{"complex", x.name}, {"coefficient", o.coeff}, {"first_degree", a},
                       {"cohomology", cohomology_json(groups)}};
        result.text = text_rows(groups, a);
      } else {
        bredon::DimensionReport r;
        if (!o.complex.empty()) {
          bredon::EncodedComplex x = resolve_complex(o.complex);
          r = bredon::dimension_report(x, bredon::standard_battery(x));
        } else {
          grp::Group g = resolve_group(o);
          FiniteSetting s(g, grp::Family::named(g, o.family));
          r = bredon::dimension_report(s, bredon::standard_battery(s), parse_range(o.degrees).second);
        }
        result.data = report_json(r);
        result.text = report_text(r);
        if (!r.ordering_ok || !r.bounds_ok) result.code = 1;
      }
    } else if (verify->parsed()) {
      std::vector<SuiteResult> results;
      if (verify_all->parsed()) {
        for (const auto& s : suites()) results.push_back(run_suite(s.name));
      } else {
        results.push_back(run_suite(o.lemma, o.group.empty() ? std::nullopt : std::optional<std::string>(o.group)));
      }
      result = suite_output(results);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string text = o.format == "json" ? dump(result.data) : result.text;
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output);
    if (!file) {
      err << "error: cannot write " << o.output << "\n";
      return 2;
    }
    file << text;
  }
  return result.code;
}

}  // namespace bredonkit::cli
