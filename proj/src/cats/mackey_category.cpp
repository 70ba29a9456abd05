#include <algorithm>
#include <set>

#include "bredonkit/cats.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::cats {

MackeyCategory::MackeyCategory(const grp::Group& g, const grp::Family& family)
    : GroupCategory(Flavor::mackey, family) {
  const std::size_t order = g.order();
  const std::size_t subs = g.subgroup_count();
  conj_table_.resize(subs * order);
  for (std::size_t s = 0; s < subs; ++s) {
    grp::Subgroup h = g.subgroup(s);
    for (Elem t = 0; t < order; ++t) conj_table_[s * order + t] = h.conjugate(t).id();
  }

  const std::size_t n = object_count();
  index_.assign(n * n, {});
  index_ids_.assign(n * n, {});
  for (std::size_t a = 0; a < n; ++a) {
    grp::Subgroup s = object_subgroup(a);
    for (std::size_t b = 0; b < n; ++b) {
      grp::Subgroup k = object_subgroup(b);
      std::set<std::pair<std::size_t, Elem>> found;
      for (std::size_t l = 0; l < subs; ++l) {
        grp::Subgroup mid = g.subgroup(l);
        if (mid.order() > s.order() || mid.order() > k.order()) break;
        if (!mid.is_subgroup_of(s)) continue;
        for (Elem x : grp::left_cosets(k)) {
          Elem xi = g.inv(x);
          bool ok = true;
          for (Elem e : mid.members())
            if (!k.contains(g.conj(xi, e))) {
              ok = false;
              break;
            }
          if (!ok) continue;
          Span c = canonical(a, l, x, b);
          found.emplace(c.middle, c.twist);
        }
      }
      for (const auto& [mid, tw] : found) {
        std::size_t id = add_morphism(a, b);
        spans_.push_back(Span{a, mid, tw, b});
        index_[a * n + b].emplace_back(mid, tw);
        index_ids_[a * n + b].push_back(id);
      }
    }
    set_identity(a, morphism_of(canonical(a, s.id(), g.identity(), a)));
  }
  build_table([this](std::size_t f, std::size_t s) { return compose_spans(f, s); });
}

Span MackeyCategory::canonical(std::size_t s, std::size_t middle, Elem g, std::size_t k) const {
  const grp::Group& grp = group();
  const grp::Subgroup sub = object_subgroup(s);
  std::size_t best_mid = static_cast<std::size_t>(-1);
  Elem best_tw = 0;
  for (Elem x : sub.members()) {
    Elem xi = grp.inv(x);
    std::size_t mid = conj_id(middle, xi);
    if (mid > best_mid) continue;
    Elem tw = coset_min(k, grp.mul(xi, g));
    if (mid < best_mid || tw < best_tw) {
      best_mid = mid;
      best_tw = tw;
    }
  }
  return Span{s, best_mid, best_tw, k};
}

std::size_t MackeyCategory::morphism_of(const Span& c) const {
  const std::size_t key = c.source * object_count() + c.target;
  const auto& idx = index_[key];
  auto it = std::lower_bound(idx.begin(), idx.end(), std::make_pair(c.middle, c.twist));
  if (it == idx.end() || it->first != c.middle || it->second != c.twist)
    throw PreconditionError("span is not a basis morphism");
  return index_ids_[key][static_cast<std::size_t>(it - idx.begin())];
}

std::size_t MackeyCategory::span_between(const grp::Subgroup& s, const grp::Subgroup& l, Elem g,
                                         const grp::Subgroup& k) const {
  const grp::Group& grp = group();
  if (!l.is_subgroup_of(s)) throw PreconditionError("span middle is not inside its source");
  if (!l.is_subgroup_of(k.conjugate(g)))
    throw PreconditionError("span middle is not inside the twisted target");
  Elem ts = s.transporter();
  Elem tsi = grp.inv(ts);
  std::size_t mid = conj_id(l.id(), tsi);
  Elem tw = grp.mul(grp.mul(tsi, g), k.transporter());
  return morphism_of(canonical(object_of(s), mid, tw, object_of(k)));
}

std::size_t MackeyCategory::restriction(const grp::Subgroup& h, const grp::Subgroup& k) const {
  return span_between(h, h, group().identity(), k);
}

std::size_t MackeyCategory::induction(const grp::Subgroup& h, const grp::Subgroup& k) const {
  return span_between(k, h, group().identity(), h);
}

std::size_t MackeyCategory::conjugation(Elem g, const grp::Subgroup& h) const {
  grp::Subgroup gh = h.conjugate(g);
  return span_between(gh, gh, g, h);
}

LinComb MackeyCategory::compose_spans(std::size_t first, std::size_t second) const {
  const Span& phi = spans_[first];
  const Span& psi = spans_[second];
  if (phi.target != psi.source)
    throw ObjectMismatch("cannot compose " + label(first) + " with " + label(second));
  const grp::Group& g = group();
  const grp::Subgroup k = object_subgroup(phi.target);
  const grp::Subgroup l = g.subgroup(phi.middle);
  const grp::Subgroup p = g.subgroup(psi.middle);

  auto coset_of = [&](Elem b) {
    Elem best = b;
    for (Elem q : p.members()) best = std::min(best, g.mul(b, q));
    return best;
  };
  // Cosets bP inside xK, then orbits of L acting by left multiplication.
  std::vector<Elem> cosets;
  for (Elem y : k.members()) cosets.push_back(coset_of(g.mul(phi.twist, y)));
  std::sort(cosets.begin(), cosets.end());
  cosets.erase(std::unique(cosets.begin(), cosets.end()), cosets.end());
  std::vector<bool> seen(cosets.size(), false);

  LinComb out;
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    if (seen[i]) continue;
    const Elem b = cosets[i];
    for (Elem a : l.members()) {
      Elem c = coset_of(g.mul(a, b));
      auto it = std::lower_bound(cosets.begin(), cosets.end(), c);
      seen[static_cast<std::size_t>(it - cosets.begin())] = true;
    }
    const Elem bi = g.inv(b);
    grp::Members stab;
    for (Elem a : l.members())
      if (p.contains(g.conj(bi, a))) stab.push_back(a);
    std::size_t mid = g.subgroup_id(stab);
    Span c = canonical(phi.source, mid, g.mul(b, psi.twist), psi.target);
    out.push_back(Term{morphism_of(c), 1});
  }
  return normalized(std::move(out));
}

std::string MackeyCategory::label(std::size_t m) const {
  const Span& s = spans_[m];
  return "[" + object_name(s.source) + " <- G/L" + std::to_string(s.middle) + " -> " +
         object_name(s.target) + " ; " + group().element(s.twist).to_cycles() + "]";
}

RicWord ric_decompose(const MackeyCategory& m, std::size_t span) {
  const Span& s = m.span(span);
  const grp::Group& g = m.group();
  grp::Subgroup src = m.object_subgroup(s.source);
  grp::Subgroup mid = g.subgroup(s.middle);
  grp::Subgroup tgt = m.object_subgroup(s.target);
  grp::Subgroup inner = mid.conjugate(g.inv(s.twist));
  return RicWord{m.induction(mid, src), m.conjugation(s.twist, inner), m.restriction(inner, tgt)};
}

}  // namespace bredonkit::cats
