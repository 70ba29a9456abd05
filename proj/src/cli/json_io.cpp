#include <algorithm>

#include "bredonkit/cli.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::cli {

using zmod::FgAbelian;
using zmod::Int;
using zmod::IntMatrix;

namespace {

json int_json(const Int& v) {
  if (v > Int(INT64_MAX) || v < Int(INT64_MIN)) return v.str();
  return static_cast<std::int64_t>(v);
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError("expected an integer, got " + j.dump());
}

std::size_t index_from_json(const json& j, std::size_t bound, const char* what) {
  if (!j.is_number_unsigned() || j.get<std::size_t>() >= bound)
    throw ParseError(std::string("bad ") + what + " " + j.dump());
  return j.get<std::size_t>();
}

std::string span_kind(const cats::MackeyCategory& m, std::size_t x) {
  const cats::Span& s = m.span(x);
  if (m.is_identity(x)) return "id";
  const bool plain = s.twist == m.group().identity();
  if (plain && s.middle == m.object_subgroup(s.source).id()) return "R";
  if (plain && s.middle == m.object_subgroup(s.target).id()) return "I";
  return "c";
}

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const FgAbelian& a) {
  json inv = json::array();
  for (const Int& d : a.invariant_factors()) inv.push_back(int_json(d));
  json mod = json::array();
  for (const Int& d : a.moduli()) mod.push_back(int_json(d));
  return {{"invariant_factors", inv}, {"moduli", mod}, {"text", a.to_string()}};
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_json(m(r, c)));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

FgAbelian abelian_from_json(const json& j) {
  const char* key = j.contains("moduli") ? "moduli" : "invariant_factors";
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
    throw ParseError("abelian group needs \"invariant_factors\" or \"moduli\"");
  std::vector<Int> factors;
  for (const auto& d : j.at(key)) {
    Int v = int_from_json(d);
    if (v < 0) throw ParseError("negative modulus " + v.str());
    factors.push_back(v);
  }
  return FgAbelian(factors);
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("matrix needs rows, cols and entries");
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const json& e = j.at("entries");
  if (!e.is_array() || e.size() != rows) throw ParseError("matrix entries do not match rows");
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!e[r].is_array() || e[r].size() != cols) throw ParseError("matrix row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = int_from_json(e[r][c]);
  }
  return m;
}

json group_json(const grp::Group& g) {
  json gens = json::array();
  for (const auto& p : g.generators()) gens.push_back(p.to_cycles());
  return {{"degree", g.degree()}, {"generators", gens}, {"order", g.order()}};
}

json subgroups_json(const grp::Group& g) {
  json classes = json::array();
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    grp::Subgroup h = g.class_representative(c);
    std::size_t conjugates = 0;
    for (std::size_t s = 0; s < g.subgroup_count(); ++s)
      if (g.subgroup(s).canonical_id() == c) ++conjugates;
    json gens = json::array();
    std::vector<grp::Elem> picked;
    for (grp::Elem x : h.members()) {
      if (g.subgroup_generated(picked).order() == h.order()) break;
      if (g.subgroup_generated(picked).contains(x)) continue;
      picked.push_back(x);
      gens.push_back(g.element(x).to_cycles());
    }
    classes.push_back({{"class", c},
                       {"order", h.order()},
                       {"length", h.length()},
                       {"conjugates", conjugates},
                       {"normal", h.is_normal()},
                       {"generators", gens}});
  }
  return {{"group", group_json(g)}, {"subgroup_count", g.subgroup_count()}, {"classes", classes}};
}

json category_json(const cats::GroupCategory& c) {
  json objects = json::array();
  for (std::size_t a = 0; a < c.object_count(); ++a)
    objects.push_back({{"id", a}, {"class", c.class_of_object(a)}, {"order", c.object_subgroup(a).order()}});
  json ranks = json::array();
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < c.object_count(); ++b) row.push_back(c.hom(a, b).size());
    ranks.push_back(row);
  }
  json morphisms = json::array();
  for (std::size_t m = 0; m < c.morphism_count(); ++m)
    morphisms.push_back({{"id", m}, {"source", c.source(m)}, {"target", c.target(m)}, {"label", c.label(m)}});
  // Sparse tensor: [first, second, result, coefficient] for every nonzero term.
  json table = json::array();
  for (std::size_t f = 0; f < c.morphism_count(); ++f)
    for (std::size_t s : c.outgoing(c.target(f)))
      for (const auto& t : c.compose(f, s)) table.push_back({f, s, t.morphism, t.coef});
  return {{"flavor", c.flavor() == cats::Flavor::orbit ? "orbit" : "mackey"},
          {"group", group_json(c.group())},
          {"family", c.family().describe()},
          {"objects", objects},
          {"hom_ranks", ranks},
          {"morphisms", morphisms},
          {"compose_table", table}};
}

json module_json(const fmod::CatModule& m) {
  json objects = json::array();
  json values = json::object();
  for (std::size_t a = 0; a < m.object_count(); ++a) {
    objects.push_back(m.category().object_name(a));
    values[std::to_string(a)] = to_json(m.value(a));
  }
  json actions = json::object();
  for (std::size_t x = 0; x < m.category().morphism_count(); ++x)
    if (!m.action(x).is_zero()) actions[std::to_string(x)] = to_json(m.action(x));
  return {{"objects", objects},
          {"values", values},
          {"actions", actions},
          {"variance", m.variance() == fmod::Variance::right ? "right" : "left"}};
}

fmod::CatModule module_from_json(fmod::CategoryPtr category, const json& j) {
  if (!j.is_object() || !j.contains("values")) throw ParseError("module needs \"values\"");
  const cats::Category& c = *category;
  const auto variance = j.value("variance", std::string("right")) == "left" ? fmod::Variance::left : fmod::Variance::right;
  std::vector<FgAbelian> values(c.object_count());
  for (const auto& [key, v] : j.at("values").items()) {
    std::size_t a = index_from_json(json::parse(key, nullptr, false), c.object_count(), "object");
    values[a] = abelian_from_json(v);
  }
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < c.morphism_count(); ++x) {
    std::size_t r = values[c.source(x)].ambient_rank();
    std::size_t k = values[c.target(x)].ambient_rank();
    if (variance == fmod::Variance::left) std::swap(r, k);
    actions.emplace_back(r, k);
  }
  if (j.contains("actions"))
    for (const auto& [key, v] : j.at("actions").items()) {
      std::size_t x = index_from_json(json::parse(key, nullptr, false), c.morphism_count(), "morphism");
      IntMatrix a = matrix_from_json(v);
      if (a.rows() != actions[x].rows() || a.cols() != actions[x].cols())
        throw ParseError("action of morphism " + key + " has the wrong shape");
      actions[x] = std::move(a);
    }
  fmod::CatModule m(std::move(category), std::move(values), std::move(actions), variance);
  if (auto bad = fmod::validate_module(m)) throw InvalidModule(*bad);
  return m;
}

json mackey_json(const mackey::MackeyFunctor& m) {
  mackey::MackeyTables t = mackey::tables_of(m);
  const cats::MackeyCategory& c = m.category();
  json values = json::array();
  for (std::size_t a = 0; a < c.object_count(); ++a)
    values.push_back({{"object", a}, {"class", c.class_of_object(a)}, {"value", to_json(t.values[a])}});
  json maps = json::array();
  for (const auto& [x, mat] : t.generators) {
    const cats::Span& s = c.span(x);
    maps.push_back({{"span", x},
                    {"kind", span_kind(c, x)},
                    {"source", s.source},
                    {"target", s.target},
                    {"middle_order", c.group().subgroup(s.middle).order()},
                    {"twist", c.group().element(s.twist).to_cycles()},
                    {"matrix", to_json(mat)}});
  }
  return {{"group", group_json(c.group())}, {"family", c.family().describe()}, {"values", values}, {"maps", maps}};
}

mackey::MackeyFunctor mackey_from_json(mackey::MackeyPtr category, const json& j) {
  if (!j.is_object() || !j.contains("values") || !j.contains("maps")) throw ParseError("Mackey functor needs values and maps");
  const cats::MackeyCategory& c = *category;
  mackey::MackeyTables t{category, std::vector<FgAbelian>(c.object_count()), {}};
  for (const auto& v : j.at("values")) {
    std::size_t a = index_from_json(v.at("object"), c.object_count(), "object");
    t.values[a] = abelian_from_json(v.at("value"));
  }
  const auto gens = mackey::generator_spans(c);
  for (const auto& mp : j.at("maps")) {
    std::size_t x = index_from_json(mp.at("span"), c.morphism_count(), "span");
    if (std::find(gens.begin(), gens.end(), x) == gens.end())
      throw ParseError("span " + std::to_string(x) + " is not a generator");
    if (mp.contains("source") && mp.at("source").get<std::size_t>() != c.source(x))
      throw ParseError("span " + std::to_string(x) + " has a different source");
    t.generators[x] = matrix_from_json(mp.at("matrix"));
  }
  return mackey::mackey_from_tables(t);
}

json cohomology_json(const std::vector<FgAbelian>& groups) {
  json rows = json::array();
  for (std::size_t n = 0; n < groups.size(); ++n) rows.push_back({{"degree", n}, {"group", to_json(groups[n])}});
  return rows;
}

}  // namespace bredonkit::cli
