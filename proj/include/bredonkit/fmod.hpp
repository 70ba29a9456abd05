#pragma once

// Modules over a finite category, given by total tables.
//
// A right (contravariant) module M has M(φ): M(b) -> M(a) for φ: a -> b; a
// left (covariant) module N has N(φ): N(a) -> N(b). Right modules are the
// default; left modules exist for tensor products and induction.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bredonkit/cats.hpp"
#include "bredonkit/zmod.hpp"

namespace bredonkit::fmod {

using cats::Category;
using cats::LinComb;
using zmod::AbMap;
using zmod::FgAbelian;
using zmod::Int;
using zmod::IntMatrix;
using zmod::IntVector;

using CategoryPtr = std::shared_ptr<const Category>;

enum class Variance { right, left };

class CatModule {
 public:
  CatModule() = default;
  /// actions[m] has shape value(source(m)) x value(target(m)) for right
  /// modules and the transpose shape for left modules. Matrices are reduced
  /// but not validated; see validate_module.
  CatModule(CategoryPtr category, std::vector<FgAbelian> values, std::vector<IntMatrix> actions,
            Variance variance = Variance::right);

  static CatModule zero(CategoryPtr category, Variance variance = Variance::right);
  /// Z in every object, every basis morphism acting by 1.
  static CatModule constant(CategoryPtr category, Variance variance = Variance::right);
  /// Z[-, c] (right) or Z[c, -] (left).
  static CatModule representable(CategoryPtr category, std::size_t c,
                                 Variance variance = Variance::right);
  static CatModule direct_sum(const std::vector<CatModule>& parts);

  const Category& category() const { return *category_; }
  const CategoryPtr& category_ptr() const { return category_; }
  Variance variance() const { return variance_; }
  std::size_t object_count() const { return values_.size(); }
  const FgAbelian& value(std::size_t obj) const { return values_[obj]; }
  const std::vector<FgAbelian>& values() const { return values_; }
  const IntMatrix& action(std::size_t m) const { return actions_[m]; }
  const std::vector<IntMatrix>& actions() const { return actions_; }
  /// Action as a map of groups, in the direction of the variance.
  AbMap action_map(std::size_t m) const;
  /// Linear extension of the action to a combination of parallel morphisms.
  IntMatrix act(const LinComb& c, std::size_t source_obj, std::size_t target_obj) const;
  bool is_zero() const;

 private:
  CategoryPtr category_;
  std::vector<FgAbelian> values_;
  std::vector<IntMatrix> actions_;
  Variance variance_ = Variance::right;
};

/// First functoriality failure, or nullopt when M is a module.
std::optional<std::string> validate_module(const CatModule& m);
/// Throws InvalidModule with the validation report.
void require_valid(const CatModule& m);

class NatTrans {
 public:
  NatTrans() = default;
  NatTrans(CatModule source, CatModule target, std::vector<IntMatrix> components);

  const CatModule& source() const { return source_; }
  const CatModule& target() const { return target_; }
  const IntMatrix& component(std::size_t obj) const { return components_[obj]; }
  AbMap component_map(std::size_t obj) const;
  /// this ∘ first
  NatTrans after(const NatTrans& first) const;
  bool is_zero() const;

 private:
  CatModule source_;
  CatModule target_;
  std::vector<IntMatrix> components_;
};

std::optional<std::string> check_naturality(const NatTrans& t);

/// Submodule with values given by subgroups of M(c) that are closed under the action.
struct SubModule {
  CatModule module;
  NatTrans inclusion;
};
SubModule submodule(const CatModule& m, const std::vector<zmod::Subgroup>& parts);

struct QuotientModule {
  CatModule module;
  NatTrans projection;
};

SubModule kernel(const NatTrans& t);
QuotientModule cokernel(const NatTrans& t);
SubModule image(const NatTrans& t);
/// M / S for a submodule given by closed subgroups.
QuotientModule quotient(const CatModule& m, const std::vector<zmod::Subgroup>& parts);

/// Smallest submodule containing the given elements of M(c); the value at b
/// is spanned by M(ψ)s for ψ: b -> c.
SubModule generated_submodule(const CatModule& m, std::size_t c, const std::vector<IntVector>& seeds);
/// Submodule generated by all values at the given objects.
SubModule generated_by_objects(const CatModule& m, const std::vector<std::size_t>& objects);

/// Natural transformation Z[-, c] -> M sending id_c to x.
NatTrans yoneda_map(const CatModule& m, std::size_t c, const IntVector& x);

/// Group of natural transformations M -> N with explicit elements.
struct HomSpace {
  FgAbelian group;
  zmod::Subquotient lattice;  // inside the flattened component entries
  std::vector<std::size_t> offsets;
  NatTrans element(const IntVector& coords) const;
  /// Coordinates of a natural transformation; nullopt if it is not one.
  std::optional<IntVector> coordinates(const NatTrans& t) const;
  CatModule source;
  CatModule target;
};
HomSpace hom_space(const CatModule& m, const CatModule& n);
FgAbelian hom_over_category(const CatModule& m, const CatModule& n);

/// M ⊗_C N for a right module M and a left module N.
struct TensorSpace {
  FgAbelian group;
  zmod::Presentation presentation;
  std::vector<std::size_t> offsets;  // per object, generators (i, j) at offset + i * |N(c)| + j
};
TensorSpace tensor_space(const CatModule& right, const CatModule& left);
FgAbelian tensor_over_category(const CatModule& right, const CatModule& left);

/// N ∘ F for a functor F: C -> D and a module N over D.
CatModule restrict_along(const cats::Functor& f, CategoryPtr source, const CatModule& n);
/// ind_F M: d ↦ M ⊗_C Z_D[d, F(-)].
CatModule induce_along(const cats::Functor& f, CategoryPtr target, const CatModule& m);
/// coind_F M: d ↦ Hom_C(Z_D[F(-), d], M).
CatModule coinduce_along(const cats::Functor& f, CategoryPtr target, const CatModule& m);

/// ind_F M together with the tensor spaces realizing its values.
struct Induction {
  CatModule module;
  std::vector<TensorSpace> spaces;  // M ⊗_C Z_D[d, F(-)] per object d
};
Induction induction(const cats::Functor& f, CategoryPtr target, const CatModule& m);

/// coind_F M together with the hom spaces realizing its values.
struct Coinduction {
  CatModule module;
  std::vector<CatModule> probes;  // Z_D[F(-), d] per object d
  std::vector<HomSpace> spaces;   // Hom_C(probes[d], M)
};
Coinduction coinduction(const cats::Functor& f, CategoryPtr target, const CatModule& m);

/// The adjunct Y -> coind_F M of p: res_F Y -> M, y ↦ (φ ↦ p(Y(φ) y)).
NatTrans coinduction_adjunct(const cats::Functor& f, const Coinduction& coind, const CatModule& y,
                             const NatTrans& p);

/// A complex of free modules ⊕ Z[-, c_α], optionally augmented to a module.
struct ChainComplex {
  CategoryPtr category;
  std::vector<std::vector<std::size_t>> cells;  // cells[k][α] = object c_α
  /// boundary[k][β] for k >= 1: the terms (α, combination of morphisms c_β -> c_α).
  std::vector<std::vector<std::vector<std::pair<std::size_t, LinComb>>>> boundary;
  std::optional<CatModule> augmentation_target;
  std::vector<IntVector> augmentation;  // element of the target at c_α per degree-0 cell
  /// True when the complex is known to stop: all higher degrees are zero.
  bool complete = false;

  std::size_t top_degree() const { return cells.empty() ? 0 : cells.size() - 1; }
  std::size_t rank(std::size_t k, std::size_t obj) const;
  /// Matrix of the boundary P_k(b) -> P_{k-1}(b), k >= 1.
  IntMatrix boundary_at(std::size_t k, std::size_t obj) const;
  /// Matrix of P_0(b) -> target(b).
  IntMatrix augmentation_at(std::size_t obj) const;
};

/// First failure of ∂∘∂ = 0 or ε∘∂ = 0.
std::optional<std::string> check_complex(const ChainComplex& c);
/// First failure of exactness at objects, degrees 0..top-1 (and at the top when complete).
std::optional<std::string> check_exact(const ChainComplex& c);

struct ResolutionOptions {
  std::size_t max_degree = 8;
  std::size_t rank_bound = 4000;
};
/// Free resolution of M; stops early when a kernel vanishes.
ChainComplex free_resolution(const CatModule& m, ResolutionOptions opts = {});

/// Cochain groups Hom(P_k, M) ≅ ⊕ M(c_α) and their coboundaries.
FgAbelian cochain_group(const ChainComplex& c, const CatModule& m, std::size_t k);
AbMap coboundary(const ChainComplex& c, const CatModule& m, std::size_t k);
/// H^n(Hom(C, M)). Throws DegreeOutOfRange if the complex is too short.
FgAbelian cohomology(const ChainComplex& c, const CatModule& m, std::size_t n);

}  // namespace bredonkit::fmod
