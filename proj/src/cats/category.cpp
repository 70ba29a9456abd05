#include <algorithm>
#include <sstream>

#include "bredonkit/cats.hpp"
#include "bredonkit/errors.hpp"

namespace bredonkit::cats {

LinComb normalized(LinComb terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.morphism < b.morphism; });
  LinComb out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().morphism == t.morphism)
      out.back().coef += t.coef;
    else
      out.push_back(t);
    if (!out.empty() && out.back().coef == 0) out.pop_back();
  }
  return out;
}

void accumulate(LinComb& into, const LinComb& terms, std::int64_t scale) {
  if (scale == 0 || terms.empty()) return;
  LinComb merged;
  merged.reserve(into.size() + terms.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < into.size() || j < terms.size()) {
    if (j == terms.size() || (i < into.size() && into[i].morphism < terms[j].morphism)) {
      merged.push_back(into[i++]);
    } else if (i == into.size() || terms[j].morphism < into[i].morphism) {
      merged.push_back({terms[j].morphism, terms[j].coef * scale});
      ++j;
    } else {
      std::int64_t c = into[i].coef + terms[j].coef * scale;
      if (c != 0) merged.push_back({into[i].morphism, c});
      ++i;
      ++j;
    }
  }
  into = std::move(merged);
}

LinComb single(std::size_t morphism, std::int64_t coef) {
  if (coef == 0) return {};
  return {Term{morphism, coef}};
}

void Category::set_objects(std::vector<std::string> names) {
  object_names_ = std::move(names);
  const std::size_t n = object_names_.size();
  homs_.assign(n * n, {});
  out_.assign(n, {});
  identities_.assign(n, 0);
}

std::size_t Category::add_morphism(std::size_t source, std::size_t target) {
  std::size_t id = sources_.size();
  sources_.push_back(source);
  targets_.push_back(target);
  out_position_.push_back(out_[source].size());
  hom_position_.push_back(homs_[source * object_count() + target].size());
  out_[source].push_back(id);
  homs_[source * object_count() + target].push_back(id);
  return id;
}

const LinComb& Category::compose(std::size_t first, std::size_t second) const {
  if (targets_[first] != sources_[second])
    throw ObjectMismatch("cannot compose " + label(first) + " with " + label(second));
  return table_[first][out_position_[second]];
}

LinComb Category::compose(const LinComb& first, const LinComb& second) const {
  LinComb out;
  for (const auto& a : first)
    for (const auto& b : second) {
      if (targets_[a.morphism] != sources_[b.morphism]) continue;
      accumulate(out, compose(a.morphism, b.morphism), a.coef * b.coef);
    }
  return out;
}

std::optional<std::tuple<std::size_t, std::size_t, std::size_t>>
Category::find_associativity_failure() const {
  for (std::size_t f = 0; f < morphism_count(); ++f)
    for (std::size_t g : out_[targets_[f]]) {
      const LinComb& fg = compose(f, g);
      for (std::size_t h : out_[targets_[g]]) {
        LinComb left = compose(fg, single(h));
        LinComb right = compose(single(f), compose(g, h));
        if (left != right) return std::make_tuple(f, g, h);
      }
    }
  return std::nullopt;
}

GroupCategory::GroupCategory(Flavor flavor, grp::Family family)
    : Category(flavor), family_(std::move(family)) {
  const grp::Group& g = family_.group();
  class_to_object_.assign(g.class_count(), static_cast<std::size_t>(-1));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < family_.classes().size(); ++i) {
    std::size_t c = family_.classes()[i];
    class_to_object_[c] = i;
    names.push_back("G/H" + std::to_string(c));
    grp::Subgroup k = g.class_representative(c);
    std::vector<Elem> mins(g.order());
    for (Elem x = 0; x < g.order(); ++x) mins[x] = grp::min_left_coset_rep(k, x);
    coset_min_.push_back(std::move(mins));
  }
  set_objects(std::move(names));
}

std::size_t GroupCategory::object_of_class(std::size_t class_id) const {
  if (class_id >= class_to_object_.size() || class_to_object_[class_id] == static_cast<std::size_t>(-1))
    throw PreconditionError("subgroup class " + std::to_string(class_id) + " is not in the family");
  return class_to_object_[class_id];
}

grp::Subgroup GroupCategory::object_subgroup(std::size_t obj) const {
  return group().class_representative(family_.classes()[obj]);
}

}  // namespace bredonkit::cats
