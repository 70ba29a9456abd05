#include <algorithm>
#include <deque>
#include <random>

#include "bredonkit/errors.hpp"
#include "bredonkit/mackey.hpp"

namespace bredonkit::mackey {

namespace {

bool equal_mod(const IntMatrix& a, const IntMatrix& b, const FgAbelian& target) {
  IntMatrix d = a - b;
  zmod::reduce_rows(d, target);
  return d.is_zero();
}

std::size_t coset_index(const std::vector<Elem>& reps, const grp::Subgroup& h, Elem x) {
  Elem r = grp::min_left_coset_rep(h, x);
  return static_cast<std::size_t>(std::lower_bound(reps.begin(), reps.end(), r) - reps.begin());
}

std::vector<Elem> subgroup_generators(const grp::Subgroup& h) {
  const grp::Group& g = h.parent();
  std::vector<Elem> gens;
  grp::Members closure{g.identity()};
  for (Elem x : h.members()) {
    if (std::binary_search(closure.begin(), closure.end(), x)) continue;
    gens.push_back(x);
    closure = g.generate(gens);
    std::sort(closure.begin(), closure.end());
  }
  return gens;
}

}  // namespace

GModule::GModule(grp::Group group, FgAbelian value, std::vector<IntMatrix> actions)
    : group_(std::move(group)), value_(std::move(value)), actions_(std::move(actions)) {
  const std::size_t n = value_.ambient_rank();
  if (actions_.size() != group_.order()) throw InvalidModule("G-module needs one matrix per element");
  for (auto& a : actions_) {
    if (a.rows() != n || a.cols() != n) throw InvalidModule("G-module matrix has the wrong shape");
    if (!AbMap::well_defined(value_, value_, a)) throw InvalidModule("G-module matrix does not respect relations");
    zmod::reduce_rows(a, value_);
  }
  if (!equal_mod(actions_[group_.identity()], IntMatrix::identity(n), value_))
    throw InvalidModule("identity does not act trivially");
  for (Elem s : group_.generator_indices())
    for (Elem g = 0; g < group_.order(); ++g)
      if (!equal_mod(actions_[group_.mul(s, g)], actions_[s] * actions_[g], value_))
        throw InvalidModule("action is not multiplicative at " + group_.element(s).to_cycles() + " * " +
                            group_.element(g).to_cycles());
}

GModule GModule::from_generators(grp::Group group, FgAbelian value, const std::vector<IntMatrix>& generator_actions) {
  const auto gens = group.generator_indices();
  if (gens.size() != generator_actions.size()) throw InvalidModule("one matrix per generator expected");
  std::vector<IntMatrix> acts(group.order());
  std::vector<bool> seen(group.order(), false);
  acts[group.identity()] = IntMatrix::identity(value.ambient_rank());
  seen[group.identity()] = true;
  std::deque<Elem> queue{group.identity()};
  while (!queue.empty()) {
    Elem g = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem h = group.mul(gens[i], g);
      if (seen[h]) continue;
      seen[h] = true;
      acts[h] = generator_actions[i] * acts[g];
      zmod::reduce_rows(acts[h], value);
      queue.push_back(h);
    }
  }
  return GModule(std::move(group), std::move(value), std::move(acts));
}

GModule GModule::trivial(const grp::Group& g, const Int& modulus) {
  FgAbelian v({modulus});
  return GModule(g, v, std::vector<IntMatrix>(g.order(), IntMatrix::identity(1)));
}

GModule GModule::permutation(const grp::Subgroup& h) {
  const grp::Group& g = h.parent();
  const auto reps = grp::left_cosets(h);
  std::vector<IntMatrix> acts;
  for (Elem x = 0; x < g.order(); ++x) {
    IntMatrix a(reps.size(), reps.size());
    for (std::size_t j = 0; j < reps.size(); ++j) a(coset_index(reps, h, g.mul(x, reps[j])), j) = 1;
    acts.push_back(std::move(a));
  }
  return GModule(g, FgAbelian::free(reps.size()), std::move(acts));
}

GModule GModule::sign(const grp::Group& g) {
  std::vector<IntMatrix> acts;
  for (Elem x = 0; x < g.order(); ++x) {
    const grp::Perm& p = g.element(x);
    std::vector<bool> done(p.degree(), false);
    std::size_t transpositions = 0;
    for (std::size_t i = 0; i < p.degree(); ++i) {
      std::size_t len = 0;
      for (std::size_t j = i; !done[j]; j = p[j], ++len) done[j] = true;
      if (len > 0) transpositions += len - 1;
    }
    acts.push_back(IntMatrix{{transpositions % 2 == 0 ? 1 : -1}});
  }
  return GModule(g, FgAbelian::free(1), std::move(acts));
}

GModule GModule::direct_sum(const std::vector<GModule>& parts) {
  if (parts.empty()) throw PreconditionError("direct sum of no G-modules");
  const grp::Group& g = parts.front().group();
  std::vector<FgAbelian> values;
  for (const auto& p : parts) {
    if (!p.group().same_as(g)) throw MismatchedParent("G-modules over different groups");
    values.push_back(p.value());
  }
  std::vector<IntMatrix> acts;
  for (Elem x = 0; x < g.order(); ++x) {
    std::vector<IntMatrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.action(x));
    acts.push_back(IntMatrix::block_diagonal(blocks));
  }
  return GModule(g, FgAbelian::direct_sum(values), std::move(acts));
}

GModule GModule::random(const grp::Group& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& classes = g.lattice().classes;
  std::vector<std::size_t> small;  // classes of index at most 6
  for (const auto& c : classes)
    if (g.order() / c.order <= 6) small.push_back(c.id);
  const GModule sgn = sign(g);
  std::vector<GModule> parts;
  const std::size_t count = 1 + rng() % 2;
  for (std::size_t i = 0; i < count; ++i) {
    GModule p = permutation(g.class_representative(small[rng() % small.size()]));
    if (rng() % 2 == 1) {
      std::vector<IntMatrix> acts;
      for (Elem x = 0; x < g.order(); ++x) acts.push_back(sgn.action(x)(0, 0) * p.action(x));
      p = GModule(g, p.value(), std::move(acts));
    }
    parts.push_back(std::move(p));
  }
  GModule sum = direct_sum(parts);
  const std::size_t n = sum.value().ambient_rank();
  // Random unimodular change of basis.
  IntMatrix basis = IntMatrix::identity(n);
  IntMatrix inverse = IntMatrix::identity(n);
  for (std::size_t step = 0; step < n && n > 1; ++step) {
    std::size_t i = rng() % n;
    std::size_t j = rng() % n;
    if (i == j) continue;
    Int c = static_cast<long long>(rng() % 5) - 2;
    IntMatrix e = IntMatrix::identity(n);
    IntMatrix einv = IntMatrix::identity(n);
    e(i, j) = c;
    einv(i, j) = -c;
    basis = basis * e;
    inverse = einv * inverse;
  }
  static const long long primes[] = {0, 0, 2, 3};
  Int modulus = primes[rng() % 4];
  FgAbelian value(std::vector<Int>(n, modulus));
  std::vector<IntMatrix> acts;
  for (Elem x = 0; x < g.order(); ++x) acts.push_back(inverse * sum.action(x) * basis);
  return GModule(g, value, std::move(acts));
}

GModule GModule::restrict_to(const grp::Embedded& n) const {
  std::vector<IntMatrix> acts;
  for (Elem e : n.embedding) acts.push_back(actions_[e]);
  return GModule(n.group, value_, std::move(acts));
}

GModule induce(const grp::Group& g, const grp::Embedded& n, const GModule& v) {
  if (!v.group().same_as(n.group)) throw MismatchedParent("module is not over the embedded subgroup");
  grp::Members members(n.embedding.begin(), n.embedding.end());
  std::sort(members.begin(), members.end());
  grp::Subgroup sub = g.subgroup(members);
  std::vector<Elem> local(g.order(), static_cast<Elem>(-1));
  for (Elem i = 0; i < n.embedding.size(); ++i) local[n.embedding[i]] = i;
  const auto reps = grp::left_cosets(sub);
  const std::size_t r = v.value().ambient_rank();
  std::vector<FgAbelian> copies(reps.size(), v.value());
  std::vector<IntMatrix> acts;
  for (Elem x = 0; x < g.order(); ++x) {
    IntMatrix a(reps.size() * r, reps.size() * r);
    for (std::size_t j = 0; j < reps.size(); ++j) {
      Elem y = g.mul(x, reps[j]);
      std::size_t i = coset_index(reps, sub, y);
      Elem inside = local[g.mul(g.inv(reps[i]), y)];
      a.add_block(i * r, j * r, v.action(inside));
    }
    acts.push_back(std::move(a));
  }
  return GModule(g, FgAbelian::direct_sum(copies), std::move(acts));
}

zmod::Subgroup fixed_points(const GModule& v, const grp::Subgroup& h) {
  const FgAbelian& a = v.value();
  const std::size_t n = a.ambient_rank();
  IntMatrix stacked(0, n);
  std::vector<Int> moduli;
  for (Elem x : subgroup_generators(h)) {
    stacked = IntMatrix::vstack(stacked, v.action(x) - IntMatrix::identity(n));
    moduli.insert(moduli.end(), a.moduli().begin(), a.moduli().end());
  }
  if (moduli.empty()) {
    std::vector<IntVector> all;
    for (std::size_t k = 0; k < n; ++k) all.push_back(IntMatrix::identity(n).col(k));
    return zmod::make_subgroup(a, all);
  }
  return zmod::make_subgroup(a, zmod::preimage_of_zero(stacked, moduli).basis());
}

}  // namespace bredonkit::mackey
