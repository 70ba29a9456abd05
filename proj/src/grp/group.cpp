#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>

#include "bredonkit/errors.hpp"
#include "bredonkit/grp.hpp"

namespace bredonkit::grp {

namespace {

constexpr std::size_t kTableLimit = 1024;

bool members_less(const Members& a, const Members& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

struct Group::Impl {
  bool finite = true;
  std::string name;
  std::size_t degree = 1;
  std::vector<Perm> generators;
  std::vector<Perm> elements;
  std::vector<Elem> inverse;
  std::vector<Elem> table;
  mutable std::once_flag lattice_once;
  mutable std::unique_ptr<SubgroupLattice> lattice;
};

Group::Group() {
  static const std::shared_ptr<const Impl> trivial = [] {
    auto impl = std::make_shared<Impl>();
    impl->elements.push_back(Perm::identity(1));
    impl->inverse.push_back(0);
    impl->table.push_back(0);
    return std::shared_ptr<const Impl>(impl);
  }();
  impl_ = trivial;
}

Group Group::from_generators(std::size_t degree, const std::vector<std::string>& words,
                             std::size_t bound) {
  std::vector<Perm> gens;
  for (const auto& w : words) gens.push_back(parse_cycles(degree, w));
  return from_perms(degree, gens, bound);
}

Group Group::from_perms(std::size_t degree, const std::vector<Perm>& generators,
                        std::size_t bound) {
  if (degree == 0) throw ParseError("degree must be positive");
  auto impl = std::make_shared<Impl>();
  impl->degree = degree;
  for (const auto& g : generators) {
    if (g.degree() != degree) throw ParseError("generator degree mismatch");
    impl->generators.push_back(g);
  }
  std::set<Perm> seen;
  std::deque<Perm> queue;
  Perm id = Perm::identity(degree);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Perm x = queue.front();
    queue.pop_front();
    for (const auto& g : impl->generators) {
      Perm y = g * x;
      if (seen.insert(y).second) {
        if (seen.size() > bound)
          throw ExplosionError("group exceeds element bound " + std::to_string(bound));
        queue.push_back(std::move(y));
      }
    }
  }
  impl->elements.assign(seen.begin(), seen.end());
  const std::size_t n = impl->elements.size();
  Group tmp(impl);
  impl->inverse.resize(n);
  for (std::size_t i = 0; i < n; ++i) impl->inverse[i] = tmp.index_of(impl->elements[i].inverse());
  if (n <= kTableLimit) {
    std::vector<Elem> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        table[a * n + b] = tmp.index_of(impl->elements[a] * impl->elements[b]);
    impl->table = std::move(table);
  }
  return Group(impl);
}

Group Group::encoded(const std::string& name) {
  auto impl = std::make_shared<Impl>();
  impl->finite = false;
  impl->name = name;
  impl->degree = 0;
  return Group(impl);
}

void Group::require_finite(const char* what) const {
  if (!impl_->finite)
    throw Unsupported(std::string(what) + " is not available for the encoded group " + impl_->name);
}

bool Group::is_finite() const { return impl_->finite; }
const std::string& Group::name() const { return impl_->name; }
std::size_t Group::degree() const { return impl_->degree; }

std::size_t Group::order() const {
  require_finite("order");
  return impl_->elements.size();
}

const std::vector<Perm>& Group::generators() const { return impl_->generators; }

const std::vector<Perm>& Group::elements() const {
  require_finite("element enumeration");
  return impl_->elements;
}

std::vector<Elem> Group::generator_indices() const {
  std::vector<Elem> out;
  for (const auto& g : impl_->generators) out.push_back(index_of(g));
  return out;
}

std::optional<Elem> Group::find(const Perm& p) const {
  const auto& el = impl_->elements;
  auto it = std::lower_bound(el.begin(), el.end(), p);
  if (it == el.end() || !(*it == p)) return std::nullopt;
  return static_cast<Elem>(it - el.begin());
}

Elem Group::index_of(const Perm& p) const {
  auto e = find(p);
  if (!e) throw PreconditionError("permutation " + p.to_cycles() + " is not a group element");
  return *e;
}

Elem Group::mul(Elem a, Elem b) const {
  if (!impl_->table.empty()) return impl_->table[a * impl_->elements.size() + b];
  return index_of(impl_->elements[a] * impl_->elements[b]);
}

Elem Group::inv(Elem a) const { return impl_->inverse[a]; }

Members Group::generate(const std::vector<Elem>& gens) const {
  const std::size_t n = order();
  std::vector<bool> seen(n, false);
  Members list{identity()};
  seen[identity()] = true;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (Elem g : gens) {
      Elem y = mul(list[i], g);
      if (!seen[y]) {
        seen[y] = true;
        list.push_back(y);
      }
    }
  std::sort(list.begin(), list.end());
  return list;
}

const SubgroupLattice& Group::lattice() const {
  require_finite("subgroup lattice");
  std::call_once(impl_->lattice_once, [this] {
    auto lat = std::make_unique<SubgroupLattice>();
    const std::size_t n = order();

    std::map<Members, Elem> cyclic;
    for (Elem e = 0; e < n; ++e) cyclic.emplace(generate({e}), e);

    std::map<Members, std::vector<Elem>> found;
    std::deque<Members> queue;
    for (const auto& [m, g] : cyclic) {
      lat->cyclic_generators.push_back(g);
      std::vector<Elem> gens;
      if (g != identity()) gens.push_back(g);
      if (found.emplace(m, gens).second) queue.push_back(m);
    }
    while (!queue.empty()) {
      Members h = queue.front();
      queue.pop_front();
      const std::vector<Elem> hg = found.at(h);
      for (const auto& [c, g] : cyclic) {
        if (std::binary_search(h.begin(), h.end(), g)) continue;
        std::vector<Elem> gens = hg;
        gens.push_back(g);
        Members j = generate(gens);
        if (found.emplace(j, gens).second) {
          if (found.size() > 200000) throw ExplosionError("too many subgroups");
          queue.push_back(std::move(j));
        }
      }
    }
    for (auto& [m, g] : found) lat->subgroups.push_back(m);
    std::sort(lat->subgroups.begin(), lat->subgroups.end(), members_less);

    const std::size_t count = lat->subgroups.size();
    std::map<Members, std::size_t> ids;
    for (std::size_t s = 0; s < count; ++s) ids.emplace(lat->subgroups[s], s);

    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    lat->class_of.assign(count, kNone);
    lat->transporter.assign(count, 0);
    for (std::size_t s = 0; s < count; ++s) {
      if (lat->class_of[s] != kNone) continue;
      SubgroupClass cls;
      cls.id = lat->classes.size();
      cls.representative = s;
      cls.order = lat->subgroups[s].size();
      Members normalizer;
      for (Elem t = 0; t < n; ++t) {
        Members conj;
        conj.reserve(lat->subgroups[s].size());
        for (Elem h : lat->subgroups[s]) conj.push_back(this->conj(t, h));
        std::sort(conj.begin(), conj.end());
        std::size_t id = ids.at(conj);
        if (id == s) normalizer.push_back(t);
        if (lat->class_of[id] == kNone) {
          lat->class_of[id] = cls.id;
          lat->transporter[id] = t;
          cls.subgroups.push_back(id);
        }
      }
      std::sort(cls.subgroups.begin(), cls.subgroups.end());
      cls.normalizer = ids.at(normalizer);
      lat->classes.push_back(std::move(cls));
    }

    std::vector<std::size_t> len(count, 0);
    for (std::size_t s = 1; s < count; ++s) {
      const Members& big = lat->subgroups[s];
      for (std::size_t r = 0; r < s; ++r) {
        const Members& small = lat->subgroups[r];
        if (small.size() >= big.size() || len[r] + 1 <= len[s]) continue;
        if (big.size() % small.size() != 0) continue;
        if (std::includes(big.begin(), big.end(), small.begin(), small.end())) len[s] = len[r] + 1;
      }
    }
    for (auto& cls : lat->classes) cls.length = len[cls.representative];
    impl_->lattice = std::move(lat);
  });
  return *impl_->lattice;
}

std::optional<std::size_t> Group::find_subgroup(const Members& members) const {
  const auto& subs = lattice().subgroups;
  auto it = std::lower_bound(subs.begin(), subs.end(), members, members_less);
  if (it == subs.end() || *it != members) return std::nullopt;
  return static_cast<std::size_t>(it - subs.begin());
}

std::size_t Group::subgroup_id(const Members& members) const {
  auto id = find_subgroup(members);
  if (!id) throw PreconditionError("element set is not a subgroup");
  return *id;
}

Subgroup Group::subgroup(std::size_t id) const {
  if (id >= lattice().subgroups.size()) throw PreconditionError("subgroup id out of range");
  return Subgroup(*this, id);
}

Subgroup Group::subgroup(const Members& members) const {
  Members sorted = members;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return Subgroup(*this, subgroup_id(sorted));
}

Subgroup Group::subgroup_generated(const std::vector<Elem>& gens) const {
  return Subgroup(*this, subgroup_id(generate(gens)));
}

Subgroup Group::class_representative(std::size_t class_id) const {
  return Subgroup(*this, subgroup_class(class_id).representative);
}

Subgroup Group::whole() const { return Subgroup(*this, lattice().subgroups.size() - 1); }
Subgroup Group::trivial() const { return Subgroup(*this, 0); }

std::size_t Group::group_length() const {
  require_finite("group length");
  std::size_t best = 0;
  for (const auto& c : lattice().classes) best = std::max(best, c.length);
  return best;
}

bool Subgroup::contains(Elem e) const {
  const auto& m = members();
  return std::binary_search(m.begin(), m.end(), e);
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  const auto& a = members();
  const auto& b = other.members();
  return a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Subgroup Subgroup::conjugate(Elem g) const {
  Members conj;
  for (Elem h : members()) conj.push_back(parent_.conj(g, h));
  std::sort(conj.begin(), conj.end());
  return Subgroup(parent_, parent_.subgroup_id(conj));
}

bool Subgroup::is_normal() const {
  for (Elem g : parent_.generator_indices())
    if (!(conjugate(g) == *this)) return false;
  return true;
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  Members out;
  const auto& a = members();
  const auto& b = other.members();
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Subgroup(parent_, parent_.subgroup_id(out));
}

Subgroup Subgroup::normalizer() const {
  Members n;
  for (Elem t = 0; t < parent_.order(); ++t)
    if (conjugate(t) == *this) n.push_back(t);
  return Subgroup(parent_, parent_.subgroup_id(n));
}

}  // namespace bredonkit::grp
