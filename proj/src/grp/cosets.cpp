#include <algorithm>
#include <limits>
#include <sstream>

#include "bredonkit/errors.hpp"
#include "bredonkit/grp.hpp"

namespace bredonkit::grp {

namespace {

void require_same_parent(const Subgroup& a, const Subgroup& b) {
  if (!a.parent().same_as(b.parent()))
    throw MismatchedParent("subgroups belong to different groups");
}

// Small generating set of a subgroup, chosen greedily in element order.
std::vector<Elem> greedy_generators(const Group& g, const Members& members) {
  std::vector<Elem> gens;
  Members current{g.identity()};
  for (Elem e : members) {
    if (std::binary_search(current.begin(), current.end(), e)) continue;
    gens.push_back(e);
    current = g.generate(gens);
  }
  return gens;
}

}  // namespace

std::vector<Elem> double_cosets(const Subgroup& k, const Subgroup& h) {
  require_same_parent(k, h);
  const Group& g = k.parent();
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (Elem a : k.members()) {
      Elem ax = g.mul(a, x);
      for (Elem b : h.members()) seen[g.mul(ax, b)] = true;
    }
  }
  return reps;
}

Members double_coset(const Subgroup& k, Elem x, const Subgroup& h) {
  require_same_parent(k, h);
  const Group& g = k.parent();
  Members out;
  for (Elem a : k.members()) {
    Elem ax = g.mul(a, x);
    for (Elem b : h.members()) out.push_back(g.mul(ax, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Elem min_left_coset_rep(const Subgroup& h, Elem x) {
  const Group& g = h.parent();
  Elem best = std::numeric_limits<Elem>::max();
  for (Elem b : h.members()) best = std::min(best, g.mul(x, b));
  return best;
}

std::vector<Elem> left_cosets_in(const Subgroup& within, const Subgroup& h) {
  require_same_parent(within, h);
  const Group& g = h.parent();
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> reps;
  for (Elem x : within.members()) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (Elem b : h.members()) seen[g.mul(x, b)] = true;
  }
  return reps;
}

std::vector<Elem> left_cosets(const Subgroup& h) { return left_cosets_in(h.parent().whole(), h); }

Quotient quotient(const Subgroup& n, const Subgroup& k) {
  require_same_parent(n, k);
  const Group& g = n.parent();
  if (!k.is_subgroup_of(n)) throw NotNormal("kernel is not contained in the numerator");
  for (Elem x : n.members())
    if (!(k.conjugate(x) == k)) throw NotNormal("subgroup is not normal");
  Quotient q;
  q.numerator = n;
  q.kernel = k;
  q.coset_reps = left_cosets_in(n, k);
  const std::size_t m = q.coset_reps.size();
  std::vector<std::uint32_t> point(g.order(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < m; ++i)
    for (Elem b : k.members()) point[g.mul(q.coset_reps[i], b)] = static_cast<std::uint32_t>(i);
  auto perm_of = [&](Elem x) {
    std::vector<std::uint32_t> im(m);
    for (std::size_t i = 0; i < m; ++i) im[i] = point[g.mul(x, q.coset_reps[i])];
    return Perm(std::move(im));
  };
  std::vector<Perm> gens;
  for (Elem x : greedy_generators(g, n.members())) gens.push_back(perm_of(x));
  q.group = Group::from_perms(m, gens, std::max<std::size_t>(m, 1));
  q.image.assign(g.order(), std::numeric_limits<Elem>::max());
  q.lift.assign(q.group.order(), std::numeric_limits<Elem>::max());
  for (Elem x : n.members()) {
    Elem y = q.group.index_of(perm_of(x));
    q.image[x] = y;
    if (q.lift[y] == std::numeric_limits<Elem>::max()) q.lift[y] = x;
  }
  return q;
}

Quotient weyl(const Subgroup& h) { return quotient(h.normalizer(), h); }

Embedded as_group(const Subgroup& h) {
  const Group& g = h.parent();
  std::vector<Perm> gens;
  for (Elem x : greedy_generators(g, h.members())) gens.push_back(g.element(x));
  Embedded e{Group::from_perms(g.degree(), gens, std::max<std::size_t>(h.order(), 1)),
             h.members()};
  return e;
}

Family Family::all(const Group& g) {
  Family f;
  f.group_ = g;
  for (std::size_t c = 0; c < g.class_count(); ++c) f.classes_.push_back(c);
  return f;
}

Family Family::trivial(const Group& g) {
  Family f;
  f.group_ = g;
  f.classes_ = {0};
  return f;
}

Family Family::cyclic(const Group& g) {
  std::vector<std::size_t> classes;
  const auto& lat = g.lattice();
  for (const auto& cls : lat.classes) {
    const Members& m = lat.subgroups[cls.representative];
    bool is_cyclic = false;
    for (Elem x : m)
      if (g.generate({x}).size() == m.size()) {
        is_cyclic = true;
        break;
      }
    if (is_cyclic) classes.push_back(cls.id);
  }
  return from_classes(g, classes);
}

Family Family::from_classes(const Group& g, std::vector<std::size_t> classes) {
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  const auto& lat = g.lattice();
  for (std::size_t c : classes) {
    if (c >= lat.classes.size()) throw NotAFamily("unknown subgroup class " + std::to_string(c));
    Subgroup rep = g.class_representative(c);
    for (std::size_t s = 0; s < lat.subgroups.size(); ++s) {
      Subgroup sub = g.subgroup(s);
      if (sub.order() >= rep.order() && s != rep.id()) continue;
      if (!sub.is_subgroup_of(rep)) continue;
      if (!std::binary_search(classes.begin(), classes.end(), sub.canonical_id()))
        throw NotAFamily("class " + std::to_string(c) + " has a subgroup of order " +
                         std::to_string(sub.order()) + " outside the set");
    }
  }
  Family f;
  f.group_ = g;
  f.classes_ = std::move(classes);
  return f;
}

Family Family::from_subgroups(const Group& g, const std::vector<Members>& subgroups) {
  std::vector<std::size_t> ids;
  for (const auto& m : subgroups) {
    Members sorted = m;
    std::sort(sorted.begin(), sorted.end());
    auto id = g.find_subgroup(sorted);
    if (!id) throw NotAFamily("element set is not a subgroup");
    ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto has = [&](std::size_t id) { return std::binary_search(ids.begin(), ids.end(), id); };
  std::vector<std::size_t> classes;
  for (std::size_t id : ids) {
    Subgroup h = g.subgroup(id);
    for (Elem t : g.generator_indices())
      if (!has(h.conjugate(t).id()))
        throw NotAFamily("set is not closed under conjugation (subgroup of order " +
                         std::to_string(h.order()) + ")");
    for (std::size_t s = 0; s < id; ++s) {
      Subgroup sub = g.subgroup(s);
      if (sub.is_subgroup_of(h) && !has(s))
        throw NotAFamily("set is not closed under subgroups (order " +
                         std::to_string(sub.order()) + " inside order " +
                         std::to_string(h.order()) + ")");
    }
    classes.push_back(h.canonical_id());
  }
  return from_classes(g, classes);
}

Family Family::named(const Group& g, const std::string& name) {
  if (name == "all" || name == "ALL" || name == "finite") return all(g);
  if (name == "trivial" || name == "e" || name == "{e}") return trivial(g);
  if (name == "cyclic") return cyclic(g);
  throw ParseError("unknown family \"" + name + "\" (expected trivial, cyclic or all)");
}

bool Family::contains_class(std::size_t id) const {
  return std::binary_search(classes_.begin(), classes_.end(), id);
}

std::string Family::describe() const {
  if (is_all()) return "all";
  if (classes_ == std::vector<std::size_t>{0}) return "trivial";
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (i) os << ',';
    os << classes_[i];
  }
  os << '}';
  return os.str();
}

}  // namespace bredonkit::grp
