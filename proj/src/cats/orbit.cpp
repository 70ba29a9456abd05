#include <algorithm>

#include "bredonkit/cats.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::cats {

namespace {
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}

OrbitCategory::OrbitCategory(const grp::Group& g, const grp::Family& family)
    : GroupCategory(Flavor::orbit, family) {
  const std::size_t n = object_count();
  lookup_.assign(n * n, {});
  for (std::size_t a = 0; a < n; ++a) {
    grp::Subgroup h = object_subgroup(a);
    for (std::size_t b = 0; b < n; ++b) {
      grp::Subgroup k = object_subgroup(b);
      auto& look = lookup_[a * n + b];
      look.assign(g.order(), kNone);
      if (k.order() % h.order() != 0) continue;
      for (Elem x : grp::left_cosets(k)) {
        Elem xi = g.inv(x);
        bool ok = true;
        for (Elem e : h.members())
          if (!k.contains(g.conj(xi, e))) {
            ok = false;
            break;
          }
        if (!ok) continue;
        std::size_t id = add_morphism(a, b);
        cosets_.push_back(x);
        for (Elem y : k.members()) look[g.mul(x, y)] = id;
        if (a == b && x == g.identity()) set_identity(a, id);
      }
    }
  }
  build_table([this, &g](std::size_t f, std::size_t s) {
    return single(morphism(source(f), target(s), g.mul(cosets_[f], cosets_[s])));
  });
}

std::size_t OrbitCategory::morphism(std::size_t a, std::size_t b, Elem x) const {
  std::size_t id = lookup_[a * object_count() + b][x];
  if (id == kNone)
    throw PreconditionError("element does not define a map " + object_name(a) + " -> " +
                            object_name(b));
  return id;
}

std::size_t OrbitCategory::morphism_between(const grp::Subgroup& h, Elem x,
                                            const grp::Subgroup& k) const {
  const grp::Group& g = group();
  Elem y = g.mul(g.mul(g.inv(h.transporter()), x), k.transporter());
  return morphism(object_of(h), object_of(k), y);
}

std::string OrbitCategory::label(std::size_t m) const {
  return object_name(source(m)) + " -> " + object_name(target(m)) + " [" +
         group().element(cosets_[m]).to_cycles() + "]";
}

}  // namespace bredonkit::cats
