#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "bredonkit/bredon.hpp"
#include "bredonkit/errors.hpp"
#include "json.hpp"

namespace bredonkit::bredon {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": bad value for \"" + key + "\"");
  }
}

const char* kZeroLabel = "";

IntMatrix zero_matrix(const FgAbelian& rows, const FgAbelian& cols) {
  return IntMatrix(rows.ambient_rank(), cols.ambient_rank());
}

}  // namespace

std::size_t EncodedComplex::class_index(const std::string& id) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].id == id) return i;
  throw ParseError("unknown class \"" + id + "\"");
}

std::size_t EncodedComplex::morphism_index(const std::string& label) const {
  for (std::size_t i = 0; i < morphisms.size(); ++i)
    if (morphisms[i].label == label) return i;
  throw ParseError("unknown morphism \"" + label + "\"");
}

grp::Elem EncodedComplex::evaluate(const std::string& word) const {
  std::istringstream in(word);
  std::string tok;
  grp::Elem acc = quotient.identity();
  while (in >> tok) {
    long long power = 1;
    std::string base = tok;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      base = tok.substr(0, caret);
      try {
        power = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw ParseError("bad exponent in \"" + tok + "\"");
      }
    }
    auto it = std::find(generators.begin(), generators.end(), base);
    if (it == generators.end()) throw ParseError("unknown generator \"" + base + "\"");
    grp::Elem g = generator_images[static_cast<std::size_t>(it - generators.begin())];
    if (power < 0) {
      g = quotient.inv(g);
      power = -power;
    }
    for (long long i = 0; i < power; ++i) acc = quotient.mul(acc, g);
  }
  return acc;
}

EncodedComplex parse_encoded(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("complex is not valid JSON: ") + e.what());
  }
  EncodedComplex x;
  x.name = field<std::string>(j, "name", "complex");
  const std::string where = "complex " + x.name;
  x.generators = field<std::vector<std::string>>(j, "generators", where);
  x.relators = j.value("relators", std::vector<std::string>{});
  x.finite = j.value("finite", false);
  x.checked_exact = j.value("checked_exact", false);
  const json& q = j.contains("quotient") ? j.at("quotient") : throw ParseError(where + ": missing \"quotient\"");
  auto degree = field<std::size_t>(q, "degree", where + " quotient");
  auto images = field<std::vector<std::string>>(q, "images", where + " quotient");
  if (images.size() != x.generators.size()) throw ParseError(where + ": one quotient image per generator expected");
  std::vector<grp::Perm> perms;
  for (const auto& w : images) perms.push_back(grp::parse_cycles(degree, w));
  x.quotient = grp::Group::from_perms(degree, perms);
  for (const auto& p : perms) x.generator_images.push_back(x.quotient.index_of(p));
  for (const auto& r : x.relators)
    if (x.evaluate(r) != x.quotient.identity())
      throw InvalidComplex(where + ": relator \"" + r + "\" fails in the quotient");

  for (const auto& c : field<json>(j, "classes", where)) {
    EncodedClass k;
    k.id = field<std::string>(c, "id", where + " class");
    k.order = field<std::size_t>(c, "order", where + " class " + k.id);
    k.length = field<std::size_t>(c, "length", where + " class " + k.id);
    k.generators = c.value("generators", std::vector<std::string>{});
    k.weyl_fcd = c.value("weyl_fcd", std::size_t{0});
    std::vector<grp::Elem> gens;
    for (const auto& w : k.generators) gens.push_back(x.evaluate(w));
    k.image = x.quotient.subgroup_generated(gens);
    if (k.image.order() != k.order)
      throw InvalidComplex(where + ": class " + k.id + " does not embed in the quotient");
    x.classes.push_back(std::move(k));
  }
  for (const auto& m : field<json>(j, "morphisms", where)) {
    EncodedMorphism e;
    e.label = field<std::string>(m, "label", where + " morphism");
    if (e.label == kZeroLabel) throw ParseError(where + ": empty morphism label");
    e.source = x.class_index(field<std::string>(m, "source", where + " morphism " + e.label));
    e.target = x.class_index(field<std::string>(m, "target", where + " morphism " + e.label));
    e.coset = m.value("coset", std::string{});
    e.image = x.evaluate(e.coset);
    const grp::Subgroup& h = x.classes[e.source].image;
    const grp::Subgroup& k = x.classes[e.target].image;
    for (grp::Elem a : h.members())
      if (!k.contains(x.quotient.mul(x.quotient.inv(e.image), x.quotient.mul(a, e.image))))
        throw InvalidComplex(where + ": morphism " + e.label + " is not an orbit map");
    x.morphisms.push_back(std::move(e));
  }
  for (const auto& deg : field<json>(j, "cells", where)) {
    std::vector<std::size_t> row;
    for (const auto& id : deg) row.push_back(x.class_index(id.get<std::string>()));
    x.cells.push_back(std::move(row));
  }
  for (const auto& b : field<json>(j, "boundary", where)) {
    BoundaryEntry e;
    e.degree = field<std::size_t>(b, "degree", where + " boundary");
    e.source = field<std::size_t>(b, "source", where + " boundary");
    e.target = field<std::size_t>(b, "target", where + " boundary");
    e.morphism = x.morphism_index(field<std::string>(b, "morphism", where + " boundary"));
    e.coef = field<long long>(b, "coef", where + " boundary");
    if (e.degree == 0 || e.degree >= x.cells.size() || e.source >= x.cells[e.degree].size() ||
        e.target >= x.cells[e.degree - 1].size())
      throw InvalidComplex(where + ": boundary entry out of range");
    const auto& mor = x.morphisms[e.morphism];
    if (mor.source != x.cells[e.degree][e.source] || mor.target != x.cells[e.degree - 1][e.target])
      throw InvalidComplex(where + ": morphism " + mor.label + " does not join its cells");
    x.boundary.push_back(e);
  }
  for (const auto& c : j.value("compositions", json::array())) {
    CompositionFact f;
    f.first = x.morphism_index(field<std::string>(c, "first", where + " composition"));
    f.second = x.morphism_index(field<std::string>(c, "second", where + " composition"));
    for (const auto& t : field<json>(c, "result", where + " composition"))
      f.result.emplace_back(x.morphism_index(t.at(0).get<std::string>()), t.at(1).get<long long>());
    x.compositions.push_back(std::move(f));
  }
  if (auto bad = validate_encoded(x)) throw InvalidComplex(where + ": " + *bad);
  return x;
}

EncodedComplex load_encoded(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_encoded(ss.str());
}

std::optional<std::string> validate_encoded(const EncodedComplex& x) {
  const grp::Group& q = x.quotient;
  for (const auto& f : x.compositions) {
    const auto& a = x.morphisms[f.first];
    const auto& b = x.morphisms[f.second];
    if (a.target != b.source) return "composition fact " + a.label + " then " + b.label + " is not composable";
    for (const auto& [r, coef] : f.result) {
      const auto& m = x.morphisms[r];
      if (m.source != a.source || m.target != b.target)
        return "composition fact " + a.label + " then " + b.label + " has a result with the wrong endpoints";
      grp::Elem xy = q.mul(a.image, b.image);
      if (f.result.size() == 1 && coef == 1 && !x.classes[m.target].image.contains(q.mul(q.inv(xy), m.image)))
        return "composition fact " + a.label + " then " + b.label + " fails in the quotient";
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, const CompositionFact*> facts;
  for (const auto& f : x.compositions) facts[{f.first, f.second}] = &f;
  // ε∂ = 0: augmentation sends every 0-cell to 1 in Z.
  for (std::size_t beta = 0; x.cells.size() > 1 && beta < x.cells[1].size(); ++beta) {
    long long sum = 0;
    for (const auto& e : x.boundary)
      if (e.degree == 1 && e.source == beta) sum += e.coef;
    if (sum != 0) return "augmentation of the boundary of 1-cell " + std::to_string(beta) + " is " + std::to_string(sum);
  }
  for (std::size_t k = 2; k < x.cells.size(); ++k)
    for (std::size_t gamma = 0; gamma < x.cells[k].size(); ++gamma) {
      std::map<std::pair<std::size_t, std::size_t>, long long> total;  // (target cell, morphism)
      for (const auto& e1 : x.boundary) {
        if (e1.degree != k || e1.source != gamma) continue;
        for (const auto& e2 : x.boundary) {
          if (e2.degree != k - 1 || e2.source != e1.target) continue;
          auto it = facts.find({e1.morphism, e2.morphism});
          if (it == facts.end())
            return "no composition fact for " + x.morphisms[e1.morphism].label + " then " +
                   x.morphisms[e2.morphism].label;
          for (const auto& [r, c] : it->second->result) total[{e2.target, r}] += e1.coef * e2.coef * c;
        }
      }
      for (const auto& [key, c] : total)
        if (c != 0)
          return "boundary of boundary of " + std::to_string(k) + "-cell " + std::to_string(gamma) +
                 " is nonzero";
    }
  return std::nullopt;
}

EncodedCoefficient encode_coefficient(const EncodedComplex& x, const CoefficientSpec& c) {
  EncodedCoefficient out;
  auto from_mackey = [&](const MackeyFunctor& n) {
    const cats::MackeyCategory& cat = n.category();
    if (!cat.group().same_as(x.quotient)) throw MismatchedParent("coefficient is not over the quotient of " + x.name);
    for (const auto& k : x.classes) {
      if (!cat.family().contains(k.image)) throw IncompleteCoefficient("no value for class " + k.id);
      out.values.push_back(n.value(cat.object_of(k.image)));
    }
    for (const auto& m : x.morphisms) {
      const grp::Subgroup& h = x.classes[m.source].image;
      out.actions.push_back(n.module().action(cat.span_between(h, h, m.image, x.classes[m.target].image)));
    }
  };
  auto full = [&] {
    return std::make_shared<const cats::MackeyCategory>(x.quotient, grp::Family::all(x.quotient));
  };
  switch (c.kind) {
    case CoefficientClass::fix:
      from_mackey(mackey::fixed_point_functor(full(), *c.gmodule));
      break;
    case CoefficientClass::comack:
      from_mackey(mackey::coinvariance_functor(full(), *c.gmodule));
      break;
    case CoefficientClass::mack:
      from_mackey(*c.functor);
      break;
    case CoefficientClass::general:
      if (c.tables) {
        for (const auto& k : x.classes) {
          auto it = c.tables->values.find(k.id);
          if (it == c.tables->values.end()) throw IncompleteCoefficient("no value for class " + k.id);
          out.values.push_back(it->second);
        }
        for (const auto& m : x.morphisms) {
          auto it = c.tables->actions.find(m.label);
          if (it == c.tables->actions.end()) throw IncompleteCoefficient("no action for morphism " + m.label);
          IntMatrix a = it->second;
          if (a.rows() != out.values[m.source].ambient_rank() || a.cols() != out.values[m.target].ambient_rank())
            throw IncompleteCoefficient("action for morphism " + m.label + " has the wrong shape");
          out.actions.push_back(std::move(a));
        }
      } else if (c.module && x.finite) {
        auto* orbit = dynamic_cast<const cats::OrbitCategory*>(&c.module->category());
        if (!orbit || !orbit->group().same_as(x.quotient))
          throw MismatchedParent("coefficient is not over the orbit category of " + x.name);
        for (const auto& k : x.classes) {
          if (!orbit->family().contains(k.image)) throw IncompleteCoefficient("no value for class " + k.id);
          out.values.push_back(c.module->value(orbit->object_of(k.image)));
        }
        for (const auto& m : x.morphisms)
          out.actions.push_back(c.module->action(
              orbit->morphism_between(x.classes[m.source].image, m.image, x.classes[m.target].image)));
      } else {
        throw IncompleteCoefficient("coefficient " + c.name + " has no tables for " + x.name);
      }
      break;
  }
  for (const auto& f : x.compositions) {
    IntMatrix lhs = zero_matrix(out.values[x.morphisms[f.first].source], out.values[x.morphisms[f.second].target]);
    for (const auto& [r, coef] : f.result) lhs = lhs + zmod::Int(coef) * out.actions[r];
    IntMatrix rhs = out.actions[f.first] * out.actions[f.second];
    IntMatrix diff = lhs - rhs;
    zmod::reduce_rows(diff, out.values[x.morphisms[f.first].source]);
    if (!diff.is_zero())
      throw InvalidModule("coefficient " + c.name + " breaks " + x.morphisms[f.first].label + " then " +
                          x.morphisms[f.second].label);
  }
  return out;
}

FgAbelian bredon_cohomology_encoded(const EncodedComplex& x, const CoefficientSpec& c, std::size_t n) {
  return bredon_cohomology_encoded(x, encode_coefficient(x, c), n);
}

FgAbelian bredon_cohomology_encoded(const EncodedComplex& x, const EncodedCoefficient& c, std::size_t n) {
  if (!x.checked_exact) throw PreconditionError("complex " + x.name + " is not marked exact");
  if (n > x.top_degree()) return FgAbelian();
  auto cochains = [&](std::size_t k) {
    std::vector<FgAbelian> parts;
    if (k < x.cells.size())
      for (std::size_t cls : x.cells[k]) parts.push_back(c.values[cls]);
    return FgAbelian::direct_sum(parts);
  };
  auto offsets = [&](std::size_t k) {
    std::vector<std::size_t> off{0};
    if (k < x.cells.size())
      for (std::size_t cls : x.cells[k]) off.push_back(off.back() + c.values[cls].ambient_rank());
    return off;
  };
  // δ^k: C^{k-1} -> C^k.
  auto delta = [&](std::size_t k) {
    FgAbelian to = cochains(k);
    if (k == 0 || k >= x.cells.size()) return zmod::AbMap::zero(k == 0 ? FgAbelian() : cochains(k - 1), to);
    FgAbelian from = cochains(k - 1);
    auto ro = offsets(k);
    auto co = offsets(k - 1);
    IntMatrix d(to.ambient_rank(), from.ambient_rank());
    for (const auto& e : x.boundary)
      if (e.degree == k) d.add_block(ro[e.source], co[e.target], c.actions[e.morphism], zmod::Int(e.coef));
    return zmod::AbMap(from, to, d);
  };
  return zmod::homology(delta(n), delta(n + 1));
}

}  // namespace bredonkit::bredon
