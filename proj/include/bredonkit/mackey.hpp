#pragma once

// Mackey functors as right modules over the Mackey category M_F G, the
// G-modules that feed them, and the constructions of the D_H tower.
//
// Matrices follow fmod: the action of a span G/S <- G/L -> G/K maps the value
// at K to the value at S.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bredonkit/cats.hpp"
#include "bredonkit/fmod.hpp"
#include "bredonkit/grp.hpp"
#include "bredonkit/zmod.hpp"

namespace bredonkit::mackey {

using fmod::CatModule;
using fmod::NatTrans;
using grp::Elem;
using cats::LinComb;
using zmod::AbMap;
using zmod::FgAbelian;
using zmod::Int;
using zmod::IntMatrix;
using zmod::IntVector;

using MackeyPtr = std::shared_ptr<const cats::MackeyCategory>;
using OrbitPtr = std::shared_ptr<const cats::OrbitCategory>;

/// A left G-module with one action matrix per group element.
class GModule {
 public:
  GModule() = default;
  /// Throws InvalidModule unless the matrices form a representation.
  GModule(grp::Group group, FgAbelian value, std::vector<IntMatrix> actions);
  /// Extends matrices for the group's generators to every element.
  static GModule from_generators(grp::Group group, FgAbelian value, const std::vector<IntMatrix>& generator_actions);

  static GModule trivial(const grp::Group& g, const Int& modulus = 0);
  /// Z[G/H] with basis the sorted left cosets of H.
  static GModule permutation(const grp::Subgroup& h);
  static GModule regular(const grp::Group& g) { return permutation(g.trivial()); }
  /// Z with each element acting by the sign of its permutation.
  static GModule sign(const grp::Group& g);
  static GModule direct_sum(const std::vector<GModule>& parts);
  /// Small seeded module: a sum of twisted permutation modules, possibly reduced mod a prime.
  static GModule random(const grp::Group& g, std::uint64_t seed);

  const grp::Group& group() const { return group_; }
  const FgAbelian& value() const { return value_; }
  const IntMatrix& action(Elem g) const { return actions_[g]; }
  IntVector act(Elem g, const IntVector& v) const { return value_.reduce(actions_[g].apply(v)); }
  /// The module restricted to a subgroup given as a group of its own.
  GModule restrict_to(const grp::Embedded& n) const;

 private:
  grp::Group group_;
  FgAbelian value_;
  std::vector<IntMatrix> actions_;
};

/// Z[G] ⊗_{Z[N]} V for a module V over n.group, with basis (coset, basis of V).
GModule induce(const grp::Group& g, const grp::Embedded& n, const GModule& v);

/// Fixed points V^H as a subgroup of V.
zmod::Subgroup fixed_points(const GModule& v, const grp::Subgroup& h);

class MackeyFunctor {
 public:
  MackeyFunctor() = default;
  MackeyFunctor(MackeyPtr category, CatModule module);

  const cats::MackeyCategory& category() const { return *category_; }
  const MackeyPtr& category_ptr() const { return category_; }
  const CatModule& module() const { return module_; }
  const FgAbelian& value(std::size_t obj) const { return module_.value(obj); }
  bool is_zero() const { return module_.is_zero(); }

  /// R_H^K: M(K) -> M(H).
  IntMatrix restriction(const grp::Subgroup& h, const grp::Subgroup& k) const;
  /// I_H^K: M(H) -> M(K).
  IntMatrix induction(const grp::Subgroup& h, const grp::Subgroup& k) const;
  /// c_g(H): M(H) -> M(gHg^-1).
  IntMatrix conjugation(Elem g, const grp::Subgroup& h) const;

 private:
  MackeyPtr category_;
  CatModule module_;
};

/// Values per object and matrices for the generator spans R, I and c.
struct MackeyTables {
  MackeyPtr category;
  std::vector<FgAbelian> values;
  std::map<std::size_t, IntMatrix> generators;  // generator span id -> matrix
};

/// Spans appearing in some ric word, in id order.
std::vector<std::size_t> generator_spans(const cats::MackeyCategory& m);
/// Extends generator tables to every span; throws AxiomViolation when the result is not a module.
MackeyFunctor mackey_from_tables(const MackeyTables& tables);
MackeyTables tables_of(const MackeyFunctor& m);

bool is_cohomological(const MackeyFunctor& m);

MackeyFunctor fixed_point_functor(MackeyPtr category, const GModule& v);
MackeyFunctor coinvariance_functor(MackeyPtr category, const GModule& v);
/// Z^G[-, G]; needs G in the family.
MackeyFunctor burnside(MackeyPtr category);

/// M* = M ∘ π over the orbit category with the same group and family.
CatModule to_orbit_module(const MackeyFunctor& m, OrbitPtr orbit);

/// Embedding data for N ≤ G together with the Mackey category of N over F ∩ N.
struct SubgroupSetting {
  grp::Subgroup subgroup;
  grp::Embedded n;
  MackeyPtr small;
  MackeyPtr big;
  cats::Functor inclusion;
};
SubgroupSetting subgroup_setting(MackeyPtr big, const grp::Subgroup& n);

MackeyFunctor mackey_induce(const SubgroupSetting& s, const MackeyFunctor& m);
MackeyFunctor mackey_coinduce(const SubgroupSetting& s, const MackeyFunctor& m);
/// ind_N^G M -> coind_N^G M, the sum-into-product map.
NatTrans induction_to_coinduction(const SubgroupSetting& s, const MackeyFunctor& m);
/// ⊕_{x ∈ [N\G/S]} M(N/ˣS∩N) at every object S of G.
std::vector<FgAbelian> double_coset_values(const SubgroupSetting& s, const MackeyFunctor& m);

/// Inflation along Q -> Q/K of a Mackey functor over (Q/K, family): the value
/// at S is N(S/K) when K ⊆ S, else 0.
MackeyFunctor inflation(MackeyPtr big, const grp::Subgroup& k, const grp::Quotient& q,
                        const MackeyFunctor& n);

struct FixedPointCover {
  GModule module;  // ⊕_H ⊕_i Z[G/H]
  MackeyFunctor source;
  NatTrans psi;
};
/// Throws NotCohomological.
FixedPointCover fixed_point_cover(const MackeyFunctor& m);

/// Least length of a subgroup where M is nonzero; nullopt is ∞.
std::optional<std::size_t> xi(const CatModule& m);

struct DhCoinduction {
  CatModule module;
  NatTrans unit;  // j_H: M -> D_H M
};
DhCoinduction dh_coinduction(const CatModule& m, std::size_t h);

struct TowerStage {
  CatModule c;     // C^i M
  CatModule d;     // D C^i M
  NatTrans into;   // C^i M -> D C^i M
  NatTrans projection;  // D C^i M -> C^{i+1} M
  std::optional<std::size_t> xi;
  bool exact = false;
};
struct Tower {
  std::vector<TowerStage> stages;
  CatModule last;  // C^{d+1} M
  bool exact = false;
};
/// Stages C^0 M = M, ..., C^d M; throws ResourceError beyond rank_bound.
Tower d_tower(const CatModule& m, std::size_t d, std::size_t rank_bound = 4000);

}  // namespace bredonkit::mackey
