#include "bredonkit/cats.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::cats {

namespace {

LinComb apply_functor(const Functor& f, const LinComb& c) {
  LinComb out;
  for (const auto& t : c) accumulate(out, f.morphism_map[t.morphism], t.coef);
  return out;
}

grp::Subgroup embed(const grp::Embedded& n, const grp::Group& big, const grp::Subgroup& h) {
  grp::Members m;
  for (Elem e : h.members()) m.push_back(n.embedding[e]);
  return big.subgroup(m);
}

}  // namespace

Functor orbit_to_mackey(const OrbitCategory& o, const MackeyCategory& m) {
  if (o.family().classes() != m.family().classes() || !o.group().same_as(m.group()))
    throw ObjectMismatch("orbit and Mackey categories differ in group or family");
  Functor f;
  f.source = &o;
  f.target = &m;
  for (std::size_t a = 0; a < o.object_count(); ++a) f.object_map.push_back(a);
  for (std::size_t x = 0; x < o.morphism_count(); ++x) {
    grp::Subgroup s = o.object_subgroup(o.source(x));
    grp::Subgroup k = o.object_subgroup(o.target(x));
    f.morphism_map.push_back(single(m.span_between(s, s, o.coset(x), k)));
  }
  return f;
}

std::optional<std::string> check_functor(const Functor& f) {
  const Category& c = *f.source;
  const Category& d = *f.target;
  for (std::size_t a = 0; a < c.object_count(); ++a)
    if (f.morphism_map[c.identity(a)] != single(d.identity(f.object_map[a])))
      return "identity of " + c.object_name(a) + " is not preserved";
  for (std::size_t x = 0; x < c.morphism_count(); ++x) {
    for (const auto& t : f.morphism_map[x])
      if (d.source(t.morphism) != f.object_map[c.source(x)] ||
          d.target(t.morphism) != f.object_map[c.target(x)])
        return "image of " + c.label(x) + " has the wrong endpoints";
    for (std::size_t y : c.outgoing(c.target(x))) {
      LinComb lhs = apply_functor(f, c.compose(x, y));
      LinComb rhs = d.compose(f.morphism_map[x], f.morphism_map[y]);
      if (lhs != rhs) return "composition " + c.label(x) + " then " + c.label(y) + " is not preserved";
    }
  }
  return std::nullopt;
}

grp::Family intersect_family(const grp::Family& f, const grp::Embedded& n) {
  const grp::Group& big = f.group();
  std::vector<std::size_t> classes;
  for (std::size_t c = 0; c < n.group.class_count(); ++c)
    if (f.contains(embed(n, big, n.group.class_representative(c)))) classes.push_back(c);
  return grp::Family::from_classes(n.group, classes);
}

Functor orbit_inclusion(const OrbitCategory& small, const grp::Embedded& n,
                        const OrbitCategory& big) {
  Functor f;
  f.source = &small;
  f.target = &big;
  const grp::Group& g = big.group();
  for (std::size_t a = 0; a < small.object_count(); ++a)
    f.object_map.push_back(big.object_of(embed(n, g, small.object_subgroup(a))));
  for (std::size_t x = 0; x < small.morphism_count(); ++x) {
    grp::Subgroup s = embed(n, g, small.object_subgroup(small.source(x)));
    grp::Subgroup k = embed(n, g, small.object_subgroup(small.target(x)));
    f.morphism_map.push_back(single(big.morphism_between(s, n.embedding[small.coset(x)], k)));
  }
  return f;
}

Functor mackey_inclusion(const MackeyCategory& small, const grp::Embedded& n,
                         const MackeyCategory& big) {
  Functor f;
  f.source = &small;
  f.target = &big;
  const grp::Group& g = big.group();
  for (std::size_t a = 0; a < small.object_count(); ++a)
    f.object_map.push_back(big.object_of(embed(n, g, small.object_subgroup(a))));
  for (std::size_t x = 0; x < small.morphism_count(); ++x) {
    const Span& sp = small.span(x);
    grp::Subgroup s = embed(n, g, small.object_subgroup(sp.source));
    grp::Subgroup l = embed(n, g, small.group().subgroup(sp.middle));
    grp::Subgroup k = embed(n, g, small.object_subgroup(sp.target));
    f.morphism_map.push_back(single(big.span_between(s, l, n.embedding[sp.twist], k)));
  }
  return f;
}

}  // namespace bredonkit::cats
