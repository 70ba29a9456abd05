#pragma once

// Finite permutation groups with enumerated elements and subgroup bookkeeping.
//
// Elements are stored sorted lexicographically by image sequence, so element
// indices double as the global element order (the identity is always index 0).
// Products follow function composition: mul(g, h) applies h first.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bredonkit::grp {

class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint32_t> images);
  static Perm identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  /// (g * h)(i) = g(h(i))
  friend Perm operator*(const Perm& g, const Perm& h);
  Perm inverse() const;
  bool is_identity() const;
  /// 1-based cycle notation, "()" for the identity.
  std::string to_cycles() const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.images_ == b.images_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.images_ < b.images_; }

 private:
  std::vector<std::uint32_t> images_;
};

/// Parse a 1-based cycle word such as "(1 2 3)(4 5)" or "(1,2)".
Perm parse_cycles(std::size_t degree, const std::string& word);

using Elem = std::uint32_t;
using Members = std::vector<Elem>;

/// Element bound from BREDONKIT_ELEMENT_BOUND, default 20000.
std::size_t default_element_bound();

class Group;

struct SubgroupClass {
  std::size_t id = 0;
  std::size_t representative = 0;  // subgroup id of the minimal member set
  std::vector<std::size_t> subgroups;
  std::size_t order = 0;
  std::size_t length = 0;
  std::size_t normalizer = 0;  // subgroup id of N_G(representative)
};

/// Every subgroup of a finite group, sorted by (order, member set), with
/// conjugacy classes sorted the same way by representative.
struct SubgroupLattice {
  std::vector<Members> subgroups;
  std::vector<std::size_t> class_of;
  /// transporter[s]: minimal t with subgroups[s] == t R t^-1, R the class representative.
  std::vector<Elem> transporter;
  std::vector<SubgroupClass> classes;
  std::vector<Elem> cyclic_generators;  // one generator per cyclic subgroup
};

class Subgroup;

class Group {
 public:
  Group();
  static Group from_generators(std::size_t degree, const std::vector<std::string>& words,
                               std::size_t bound = default_element_bound());
  static Group from_perms(std::size_t degree, const std::vector<Perm>& generators,
                          std::size_t bound = default_element_bound());
  /// Stub for an infinite group known only through catalog data.
  static Group encoded(const std::string& name);

  bool is_finite() const;
  const std::string& name() const;
  std::size_t degree() const;
  std::size_t order() const;
  const std::vector<Perm>& generators() const;
  const std::vector<Perm>& elements() const;
  const Perm& element(Elem e) const { return elements()[e]; }
  std::vector<Elem> generator_indices() const;

  Elem identity() const { return 0; }
  Elem index_of(const Perm& p) const;
  std::optional<Elem> find(const Perm& p) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  /// g h g^-1
  Elem conj(Elem g, Elem h) const { return mul(mul(g, h), inv(g)); }

  /// Closure of a set of elements.
  Members generate(const std::vector<Elem>& gens) const;

  const SubgroupLattice& lattice() const;
  std::size_t subgroup_count() const { return lattice().subgroups.size(); }
  std::size_t class_count() const { return lattice().classes.size(); }
  const SubgroupClass& subgroup_class(std::size_t id) const { return lattice().classes.at(id); }

  Subgroup subgroup(std::size_t id) const;
  Subgroup subgroup(const Members& members) const;
  Subgroup subgroup_generated(const std::vector<Elem>& gens) const;
  Subgroup class_representative(std::size_t class_id) const;
  Subgroup whole() const;
  Subgroup trivial() const;
  std::size_t subgroup_id(const Members& members) const;
  std::optional<std::size_t> find_subgroup(const Members& members) const;

  bool same_as(const Group& other) const { return impl_ == other.impl_; }
  std::size_t group_length() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  void require_finite(const char* what) const;
};

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(Group parent, std::size_t id) : parent_(std::move(parent)), id_(id) {}

  const Group& parent() const { return parent_; }
  std::size_t id() const { return id_; }
  const Members& members() const { return parent_.lattice().subgroups[id_]; }
  std::size_t order() const { return members().size(); }
  std::size_t canonical_id() const { return parent_.lattice().class_of[id_]; }
  /// Minimal t with *this == t R t^-1 for the class representative R.
  Elem transporter() const { return parent_.lattice().transporter[id_]; }
  std::size_t length() const { return parent_.subgroup_class(canonical_id()).length; }

  bool contains(Elem e) const;
  bool is_subgroup_of(const Subgroup& other) const;
  bool is_normal() const;
  /// g H g^-1
  Subgroup conjugate(Elem g) const;
  Subgroup intersect(const Subgroup& other) const;
  Subgroup normalizer() const;
  std::size_t index_in(const Subgroup& over) const { return over.order() / order(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_.same_as(b.parent_) && a.id_ == b.id_;
  }

 private:
  Group parent_;
  std::size_t id_ = 0;
};

/// Minimal representatives of the double cosets K\G/H.
std::vector<Elem> double_cosets(const Subgroup& k, const Subgroup& h);
/// Members of the double coset K x H.
Members double_coset(const Subgroup& k, Elem x, const Subgroup& h);
/// Minimal representatives of the left cosets xH in G (or within `within`).
std::vector<Elem> left_cosets(const Subgroup& h);
std::vector<Elem> left_cosets_in(const Subgroup& within, const Subgroup& h);
/// Minimal element of xH.
Elem min_left_coset_rep(const Subgroup& h, Elem x);

/// A quotient N/K realized as a permutation group on the left cosets of K in N.
struct Quotient {
  Group group;
  Subgroup numerator;
  Subgroup kernel;
  std::vector<Elem> coset_reps;  // sorted minimal representatives; point i is coset_reps[i]K
  /// image[e] for every element e of the parent group lying in N, else UINT32_MAX.
  std::vector<Elem> image;
  /// One preimage in the parent group for each quotient element.
  std::vector<Elem> lift;
};

/// Throws NotNormal if k is not normal in n.
Quotient quotient(const Subgroup& n, const Subgroup& k);
Quotient weyl(const Subgroup& h);

/// A subgroup regarded as a group of its own; element i maps to embedding[i].
struct Embedded {
  Group group;
  std::vector<Elem> embedding;
};
Embedded as_group(const Subgroup& h);

class Family {
 public:
  Family() = default;
  static Family all(const Group& g);
  static Family trivial(const Group& g);
  static Family cyclic(const Group& g);
  /// Throws NotAFamily unless the classes are closed under subgroups.
  static Family from_classes(const Group& g, std::vector<std::size_t> classes);
  /// Throws NotAFamily unless the set is closed under conjugation and subgroups.
  static Family from_subgroups(const Group& g, const std::vector<Members>& subgroups);
  static Family named(const Group& g, const std::string& name);

  const Group& group() const { return group_; }
  const std::vector<std::size_t>& classes() const { return classes_; }
  bool contains_class(std::size_t id) const;
  bool contains(const Subgroup& h) const { return contains_class(h.canonical_id()); }
  bool is_all() const { return classes_.size() == group_.class_count(); }
  std::string describe() const;

 private:
  Group group_;
  std::vector<std::size_t> classes_;
};

}  // namespace bredonkit::grp
