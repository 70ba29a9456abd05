#pragma once

// Bredon cohomology H^n_F(G, M) = Ext^n(Z, M) over the orbit category.
//
// Finite groups use automatically built free resolutions. Infinite catalog
// groups enter through encoded cellular chain complexes of a model for E_F G;
// their coefficients are evaluated on the finitely many named orbit morphisms.

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bredonkit/cats.hpp"
#include "bredonkit/fmod.hpp"
#include "bredonkit/grp.hpp"
#include "bredonkit/mackey.hpp"

namespace bredonkit::bredon {

using fmod::CatModule;
using mackey::GModule;
using mackey::MackeyFunctor;
using zmod::FgAbelian;
using zmod::IntMatrix;

/// Orbit and Mackey categories of a finite (G, F) with a cached resolution of Z.
class FiniteSetting {
 public:
  FiniteSetting(grp::Group g, grp::Family f, fmod::ResolutionOptions opts = {});

  const grp::Group& group() const { return group_; }
  const grp::Family& family() const { return family_; }
  const mackey::OrbitPtr& orbit() const { return orbit_; }
  const mackey::MackeyPtr& mackey() const;
  /// A free resolution of Z reaching at least `degree` (or complete).
  const fmod::ChainComplex& resolution(std::size_t degree) const;

 private:
  grp::Group group_;
  grp::Family family_;
  fmod::ResolutionOptions opts_;
  mackey::OrbitPtr orbit_;
  mutable std::mutex lock_;
  mutable mackey::MackeyPtr mackey_;
  mutable std::vector<std::shared_ptr<const fmod::ChainComplex>> resolutions_;  // latest last
};

enum class CoefficientClass { fix, comack, mack, general };
const char* class_name(CoefficientClass c);

/// Values per class id and matrices per morphism label of an encoded complex.
struct EncodedTables {
  std::map<std::string, FgAbelian> values;
  std::map<std::string, IntMatrix> actions;
};

struct CoefficientSpec {
  CoefficientClass kind = CoefficientClass::general;
  std::string name;
  std::optional<GModule> gmodule;        // fix, comack
  std::optional<MackeyFunctor> functor;  // mack
  std::optional<CatModule> module;       // general, finite groups
  std::optional<EncodedTables> tables;   // general, encoded complexes

  static CoefficientSpec fix(std::string name, GModule v);
  static CoefficientSpec comack(std::string name, GModule v);
  static CoefficientSpec mack(std::string name, MackeyFunctor m);
  static CoefficientSpec general(std::string name, CatModule m);
  static CoefficientSpec general(std::string name, EncodedTables t);
};

/// The orbit module of a coefficient over a finite setting.
CatModule coefficient_module(const FiniteSetting& s, const CoefficientSpec& c);

FgAbelian bredon_cohomology(const FiniteSetting& s, const CatModule& m, std::size_t n);
FgAbelian bredon_cohomology(const FiniteSetting& s, const CoefficientSpec& c, std::size_t n);

struct EncodedClass {
  std::string id;
  std::size_t order = 0;
  std::size_t length = 0;
  std::vector<std::string> generators;  // words in the group generators
  std::size_t weyl_fcd = 0;             // Fcd of the Weyl group N(H)/H
  grp::Subgroup image;                  // image in the finite quotient
};

struct EncodedMorphism {
  std::string label;
  std::size_t source = 0;  // class index
  std::size_t target = 0;
  std::string coset;       // word x with H -> xK
  grp::Elem image = 0;     // x in the finite quotient
};

struct BoundaryEntry {
  std::size_t degree = 0;  // of the source cell
  std::size_t source = 0;  // cell index in `degree`
  std::size_t target = 0;  // cell index in `degree - 1`
  std::size_t morphism = 0;
  long long coef = 0;
};

struct CompositionFact {
  std::size_t first = 0;
  std::size_t second = 0;
  std::vector<std::pair<std::size_t, long long>> result;
};

/// Cellular chains of a model for E_F G with the data needed to evaluate coefficients.
struct EncodedComplex {
  std::string name;
  std::vector<std::string> generators;
  std::vector<std::string> relators;
  grp::Group quotient;  // finite quotient, injective on every declared class
  std::vector<grp::Elem> generator_images;
  std::vector<EncodedClass> classes;
  std::vector<EncodedMorphism> morphisms;
  std::vector<std::vector<std::size_t>> cells;  // class index per cell, per degree
  std::vector<BoundaryEntry> boundary;
  std::vector<CompositionFact> compositions;
  bool checked_exact = false;
  bool finite = false;  // the quotient map is an isomorphism

  std::size_t top_degree() const { return cells.empty() ? 0 : cells.size() - 1; }
  std::size_t class_index(const std::string& id) const;
  std::size_t morphism_index(const std::string& label) const;
  grp::Elem evaluate(const std::string& word) const;
};

/// Throws ParseError or InvalidComplex.
EncodedComplex parse_encoded(const std::string& json_text);
EncodedComplex load_encoded(const std::string& path);
/// First failure of ∂∘∂ = 0 (through composition facts) or of ε∘∂ = 0.
std::optional<std::string> validate_encoded(const EncodedComplex& x);

/// A coefficient evaluated on the classes and named morphisms of X.
struct EncodedCoefficient {
  std::vector<FgAbelian> values;   // per class
  std::vector<IntMatrix> actions;  // per morphism, value(target) -> value(source)
};
/// Throws IncompleteCoefficient when a table misses a class or morphism.
EncodedCoefficient encode_coefficient(const EncodedComplex& x, const CoefficientSpec& c);
FgAbelian bredon_cohomology_encoded(const EncodedComplex& x, const CoefficientSpec& c, std::size_t n);
FgAbelian bredon_cohomology_encoded(const EncodedComplex& x, const EncodedCoefficient& c, std::size_t n);

struct DegreeComparison {
  std::size_t degree = 0;
  FgAbelian left;
  FgAbelian right;
  bool equal = false;
};

struct ShapiroReport {
  std::vector<DegreeComparison> rows;
  bool mackey_compared = false;
  bool mackey_equal = false;
  bool ok = false;
};
/// N ≤ G as a group of its own with its setting over F ∩ N. Coefficients over
/// N must be built on `embedded.group` (and Mackey functors on `small->mackey()`).
struct SubgroupPair {
  grp::Subgroup subgroup;
  grp::Embedded embedded;
  std::shared_ptr<const FiniteSetting> small;
};
SubgroupPair subgroup_pair(const FiniteSetting& g, const grp::Subgroup& n);
mackey::SubgroupSetting mackey_setting(const FiniteSetting& g, const SubgroupPair& n);

/// H^n_{F∩N}(N, M) against H^n_F(G, coind M) for a coefficient over N; Mackey
/// coefficients also compare coind(M)* with coind(M*).
ShapiroReport shapiro_check(const FiniteSetting& g, const SubgroupPair& n, const CoefficientSpec& coeff_over_n,
                            std::size_t max_degree);

struct FiniteKernelReport {
  std::vector<std::vector<DegreeComparison>> rows;  // per coefficient
  bool ok = false;
};
/// For K normal in Γ and a family on Γ/K: H^n(Γ/K, M(π^-1(-))) against H^n(Γ, M) over the
/// pulled back family, for every coefficient over Γ in the battery.
FiniteKernelReport finite_kernel_check(const grp::Group& gamma, const grp::Subgroup& kernel,
                                       const std::string& quotient_family,
                                       const std::vector<CoefficientSpec>& battery, std::size_t max_degree);
/// Family {H : π(H) ∈ F} on Γ.
grp::Family pullback_family(const grp::Quotient& q, const grp::Family& f);

/// Conjugate subgroups N and gNg^-1 give the same H^n of the restricted M*.
std::vector<DegreeComparison> conjugation_stability(const FiniteSetting& s, const MackeyFunctor& m,
                                                    const grp::Subgroup& n, grp::Elem g, std::size_t max_degree);

struct DimensionReport {
  std::string entry;
  std::vector<std::string> battery;
  /// Largest degree with a nonzero group seen over the battery, per class
  /// (fix, comack, mack, general); a witnessed lower bound, never a supremum.
  std::array<std::optional<std::size_t>, 4> witness;
  std::optional<std::size_t> resolution_length;
  std::optional<std::size_t> length_bound;  // max over classes of Fcd(W_G H) + l(H)
  bool ordering_ok = false;
  bool bounds_ok = false;
};
/// Throws PreconditionError for an empty battery.
DimensionReport dimension_report(const FiniteSetting& s, const std::vector<CoefficientSpec>& battery,
                                 std::size_t max_degree);
DimensionReport dimension_report(const EncodedComplex& x, const std::vector<CoefficientSpec>& battery);

/// Trivial, sign and permutation modules, their fixed point and coinvariance
/// functors, the Burnside functor when G lies in the family and Z at G/e.
std::vector<CoefficientSpec> standard_battery(const FiniteSetting& s);
/// The same battery over the finite quotient of an encoded complex.
std::vector<CoefficientSpec> standard_battery(const EncodedComplex& x);

}  // namespace bredonkit::bredon
