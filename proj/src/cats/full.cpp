#include "bredonkit/cats.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::cats {

FullSubcategory::FullSubcategory(std::shared_ptr<const Category> parent, std::vector<std::size_t> objects)
    : Category(parent->flavor()), parent_(std::move(parent)), objects_(std::move(objects)) {
  const std::size_t n = objects_.size();
  std::vector<std::size_t> local(parent_->object_count(), n);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (objects_[i] >= parent_->object_count() || local[objects_[i]] != n)
      throw PreconditionError("full subcategory needs distinct objects of the parent");
    local[objects_[i]] = i;
    names.push_back(parent_->object_name(objects_[i]));
  }
  set_objects(std::move(names));
  std::vector<std::size_t> from_parent(parent_->morphism_count(), parent_->morphism_count());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t m : parent_->hom(objects_[a], objects_[b])) {
        std::size_t id = add_morphism(a, b);
        to_parent_.push_back(m);
        from_parent[m] = id;
        if (a == b && parent_->is_identity(m)) set_identity(a, id);
      }
  build_table([this, &from_parent](std::size_t f, std::size_t s) {
    LinComb out;
    for (const auto& t : parent_->compose(to_parent_[f], to_parent_[s]))
      out.push_back({from_parent[t.morphism], t.coef});
    return out;
  });
}

Functor full_inclusion(const FullSubcategory& sub) {
  Functor f{&sub, &sub.parent(), {}, {}};
  for (std::size_t c = 0; c < sub.object_count(); ++c) f.object_map.push_back(sub.parent_object(c));
  for (std::size_t m = 0; m < sub.morphism_count(); ++m) f.morphism_map.push_back(single(sub.parent_morphism(m)));
  return f;
}

}  // namespace bredonkit::cats
