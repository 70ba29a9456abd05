#pragma once

// Orbit categories O_F G and Mackey (Burnside) categories M_F G of a finite
// group, with explicit morphism bases and eagerly built composition tables.
//
// Objects are the class representatives of the family, in class order.
// Composition is written compose(first, second) for "second after first":
// first: a -> b, second: b -> c, result: a -> c. Modules are contravariant,
// so M(compose(f, s)) = M(f) M(s).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bredonkit/grp.hpp"

namespace bredonkit::cats {

using grp::Elem;

struct Term {
  std::size_t morphism;
  std::int64_t coef;
  friend bool operator==(const Term& a, const Term& b) {
    return a.morphism == b.morphism && a.coef == b.coef;
  }
};

/// Sparse integer combination of basis morphisms, sorted by id, no zero terms.
using LinComb = std::vector<Term>;

LinComb normalized(LinComb terms);
void accumulate(LinComb& into, const LinComb& terms, std::int64_t scale = 1);
LinComb single(std::size_t morphism, std::int64_t coef = 1);

enum class Flavor { orbit, mackey };

class Category {
 public:
  virtual ~Category() = default;

  Flavor flavor() const { return flavor_; }
  std::size_t object_count() const { return object_names_.size(); }
  std::size_t morphism_count() const { return sources_.size(); }
  const std::string& object_name(std::size_t obj) const { return object_names_[obj]; }

  std::size_t source(std::size_t m) const { return sources_[m]; }
  std::size_t target(std::size_t m) const { return targets_[m]; }
  /// Basis of Hom(a, b) in canonical order.
  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const {
    return homs_[a * object_count() + b];
  }
  /// All basis morphisms with the given source.
  const std::vector<std::size_t>& outgoing(std::size_t a) const { return out_[a]; }
  /// Position of m inside hom(source(m), target(m)).
  std::size_t hom_position(std::size_t m) const { return hom_position_[m]; }
  std::size_t identity(std::size_t obj) const { return identities_[obj]; }
  bool is_identity(std::size_t m) const { return identities_[sources_[m]] == m; }

  /// second ∘ first. Throws ObjectMismatch if target(first) != source(second).
  const LinComb& compose(std::size_t first, std::size_t second) const;
  /// Bilinear extension of compose.
  LinComb compose(const LinComb& first, const LinComb& second) const;

  virtual std::string label(std::size_t m) const = 0;

  /// First associativity failure (f, g, h), if any.
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> find_associativity_failure() const;

 protected:
  explicit Category(Flavor flavor) : flavor_(flavor) {}
  void set_objects(std::vector<std::string> names);
  std::size_t add_morphism(std::size_t source, std::size_t target);
  void set_identity(std::size_t obj, std::size_t m) { identities_[obj] = m; }
  /// Fill the composition table using compute(first, second).
  template <typename F>
  void build_table(F compute) {
    table_.assign(morphism_count(), {});
    for (std::size_t f = 0; f < morphism_count(); ++f) {
      const auto& outs = out_[targets_[f]];
      table_[f].reserve(outs.size());
      for (std::size_t s : outs) table_[f].push_back(normalized(compute(f, s)));
    }
  }

 private:
  Flavor flavor_;
  std::vector<std::string> object_names_;
  std::vector<std::size_t> sources_;
  std::vector<std::size_t> targets_;
  std::vector<std::size_t> out_position_;
  std::vector<std::size_t> hom_position_;
  std::vector<std::vector<std::size_t>> homs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::size_t> identities_;
  std::vector<std::vector<LinComb>> table_;
};

/// Shared group-theoretic data of O_F G and M_F G.
class GroupCategory : public Category {
 public:
  const grp::Group& group() const { return family_.group(); }
  const grp::Family& family() const { return family_; }
  /// Object index of a family class id.
  std::size_t object_of_class(std::size_t class_id) const;
  std::size_t class_of_object(std::size_t obj) const { return family_.classes()[obj]; }
  grp::Subgroup object_subgroup(std::size_t obj) const;
  /// Object of an arbitrary family subgroup (its class representative).
  std::size_t object_of(const grp::Subgroup& h) const { return object_of_class(h.canonical_id()); }

 protected:
  GroupCategory(Flavor flavor, grp::Family family);
  /// Minimal element of x K for the subgroup of object k.
  Elem coset_min(std::size_t obj, Elem x) const { return coset_min_[obj][x]; }

  grp::Family family_;
  std::vector<std::size_t> class_to_object_;
  std::vector<std::vector<Elem>> coset_min_;
};

class OrbitCategory : public GroupCategory {
 public:
  OrbitCategory(const grp::Group& g, const grp::Family& family);

  /// Minimal coset representative x of the basis morphism (H -> xK).
  Elem coset(std::size_t m) const { return cosets_[m]; }
  /// Basis morphism G/H -> G/K, H |-> xK, between object subgroups.
  std::size_t morphism(std::size_t a, std::size_t b, Elem x) const;
  /// The map G/H -> G/K, H |-> xK, for arbitrary family subgroups, transported
  /// to the representatives: the morphism with coset t_H^-1 x t_K.
  std::size_t morphism_between(const grp::Subgroup& h, Elem x, const grp::Subgroup& k) const;

  std::string label(std::size_t m) const override;

 private:
  std::vector<Elem> cosets_;
  std::vector<std::vector<std::size_t>> lookup_;  // [a*objects+b][x] -> morphism or npos
};

struct Span {
  std::size_t source;  // object
  std::size_t middle;  // subgroup id in the group lattice
  Elem twist;
  std::size_t target;  // object
  friend bool operator==(const Span& a, const Span& b) {
    return a.source == b.source && a.middle == b.middle && a.twist == b.twist &&
           a.target == b.target;
  }
};

class MackeyCategory : public GroupCategory {
 public:
  MackeyCategory(const grp::Group& g, const grp::Family& family);

  const Span& span(std::size_t m) const { return spans_[m]; }
  /// Canonical form of the span G/S <- G/L -> G/K (left leg the projection,
  /// right leg L |-> gK) between object subgroups; requires L ⊆ S, L ⊆ gKg^-1.
  Span canonical(std::size_t s, std::size_t middle, Elem g, std::size_t k) const;
  std::size_t morphism_of(const Span& canonical_span) const;
  /// Span between arbitrary family subgroups S ⊇ L ⊆ gKg^-1, transported to
  /// the representatives of S and K.
  std::size_t span_between(const grp::Subgroup& s, const grp::Subgroup& l, Elem g,
                           const grp::Subgroup& k) const;

  /// G/H -> G/K with middle H (restriction R_H^K on modules), H ⊆ K.
  std::size_t restriction(const grp::Subgroup& h, const grp::Subgroup& k) const;
  /// G/K -> G/H with middle H (induction I_H^K on modules), H ⊆ K.
  std::size_t induction(const grp::Subgroup& h, const grp::Subgroup& k) const;
  /// G/gHg^-1 -> G/H with twist g (conjugation c_g(H) on modules).
  std::size_t conjugation(Elem g, const grp::Subgroup& h) const;

  /// Pullback composition of two spans given directly (used to build the table).
  LinComb compose_spans(std::size_t first, std::size_t second) const;

  std::string label(std::size_t m) const override;

 private:
  std::size_t conj_id(std::size_t subgroup, Elem t) const {
    return conj_table_[subgroup * group().order() + t];
  }

  std::vector<Span> spans_;
  std::vector<std::size_t> conj_table_;
  std::vector<std::vector<std::pair<std::size_t, Elem>>> index_;  // per (s,k), sorted
  std::vector<std::vector<std::size_t>> index_ids_;
};

/// The word I ∘ c ∘ R expressing a basic span.
struct RicWord {
  std::size_t induction;    // G/S -> G/L
  std::size_t conjugation;  // G/L -> G/g^-1Lg
  std::size_t restriction;  // G/g^-1Lg -> G/K
};
RicWord ric_decompose(const MackeyCategory& m, std::size_t span);

/// Full subcategory of a parent category on a chosen list of objects.
class FullSubcategory : public Category {
 public:
  FullSubcategory(std::shared_ptr<const Category> parent, std::vector<std::size_t> objects);

  const Category& parent() const { return *parent_; }
  std::size_t parent_object(std::size_t obj) const { return objects_[obj]; }
  std::size_t parent_morphism(std::size_t m) const { return to_parent_[m]; }
  std::string label(std::size_t m) const override { return parent_->label(to_parent_[m]); }

 private:
  std::shared_ptr<const Category> parent_;
  std::vector<std::size_t> objects_;
  std::vector<std::size_t> to_parent_;
};

/// Functor data between finite categories: objects and basis morphisms mapped
/// to objects and combinations of basis morphisms.
struct Functor {
  const Category* source = nullptr;
  const Category* target = nullptr;
  std::vector<std::size_t> object_map;
  std::vector<LinComb> morphism_map;
};

/// π: O_F G -> M_F G, x ↦ [G/S <- G/S -> G/K].
Functor orbit_to_mackey(const OrbitCategory& o, const MackeyCategory& m);
/// First failure of functoriality (identities, then composable pairs).
std::optional<std::string> check_functor(const Functor& f);

/// Inclusion O_{F∩N} N -> O_F G for a subgroup N, given the category of N
/// over the family F∩N.
Functor orbit_inclusion(const OrbitCategory& small, const grp::Embedded& n, const OrbitCategory& big);
Functor mackey_inclusion(const MackeyCategory& small, const grp::Embedded& n, const MackeyCategory& big);

/// The inclusion of a full subcategory into its parent.
Functor full_inclusion(const FullSubcategory& sub);

/// F ∩ N as a family of N.
grp::Family intersect_family(const grp::Family& f, const grp::Embedded& n);

}  // namespace bredonkit::cats
