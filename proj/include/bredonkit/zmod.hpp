#pragma once

// Exact linear algebra over the integers.
//
// Finitely generated abelian groups are stored as diagonal presentations
// Z^n / diag(d_1, ..., d_n) (a modulus of 0 is an infinite cyclic factor).
// Every construction that produces a new group (kernel, cokernel, image,
// homology, subquotient) returns it in Smith normal form, together with the
// coordinate maps needed to move elements in and out.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bredonkit::zmod {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                         boost::multiprecision::et_off>;
using IntVector = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix diagonal(const IntVector& diag);
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector col(std::size_t c) const;
  void set_col(std::size_t c, const IntVector& v);
  void set_row(std::size_t r, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
  void add_block(std::size_t r0, std::size_t c0, const IntMatrix& block, const Int& scale = 1);

  IntVector apply(const IntVector& v) const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Int& s, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Smith normal form: U * A * V == D with U, V unimodular and the diagonal of
/// D nonnegative with d_1 | d_2 | ... . `u_inverse` is U^{-1}.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix u_inverse;
  std::size_t rank = 0;
  IntVector diagonal() const;
};

struct SmithOptions {
  bool track_left = true;
  bool track_right = true;
};

SmithForm smith_normal_form(const IntMatrix& a, SmithOptions opts = {});

/// Integer solution of A x = y, if one exists.
std::optional<IntVector> solve(const IntMatrix& a, const IntVector& y);

/// A sublattice of Z^n held as a row-style Hermite normal form: pivots
/// strictly increase, are positive, and entries above a pivot are reduced
/// into [0, pivot). The basis is canonical, so lattices compare by value.
class Lattice {
 public:
  explicit Lattice(std::size_t dim = 0) : dim_(dim) {}
  Lattice(std::size_t dim, std::vector<IntVector> generators);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  void add(const std::vector<IntVector>& generators);
  bool contains(const IntVector& v) const;
  bool contains(const Lattice& other) const;
  /// Coordinates of v with respect to basis(); nullopt when v is not in the lattice.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  /// Basis vectors as the columns of a dim x rank matrix.
  IntMatrix basis_matrix() const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.dim_ == b.dim_ && a.basis_ == b.basis_;
  }

 private:
  void reduce();

  std::size_t dim_ = 0;
  std::vector<IntVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Basis of {x in Z^n : A x = 0}.
Lattice integer_kernel(const IntMatrix& a);

class FgAbelian {
 public:
  FgAbelian() = default;
  explicit FgAbelian(std::vector<Int> moduli);

  static FgAbelian free(std::size_t rank);
  static FgAbelian cyclic(const Int& order);
  static FgAbelian from_invariants(const std::vector<Int>& factors) { return FgAbelian(factors); }
  static FgAbelian direct_sum(const std::vector<FgAbelian>& parts);

  std::size_t ambient_rank() const { return moduli_.size(); }
  const std::vector<Int>& moduli() const { return moduli_; }
  /// Invariant factors: torsion d_1 | d_2 | ... (all > 1), then one 0 per
  /// infinite cyclic factor.
  const std::vector<Int>& invariant_factors() const { return invariants_; }
  IntMatrix relations() const;

  bool is_zero() const { return invariants_.empty(); }
  std::size_t free_rank() const;
  bool is_finite() const { return free_rank() == 0; }
  /// Order of a finite group; throws for infinite groups.
  Int order() const;

  IntVector reduce(IntVector v) const;
  bool is_zero_element(const IntVector& v) const;
  bool isomorphic(const FgAbelian& other) const { return invariants_ == other.invariants_; }

  /// "0", "Z", "Z^2 + Z/2", ...
  std::string to_string() const;

 private:
  std::vector<Int> moduli_;
  std::vector<Int> invariants_;
};

/// Reduce each row i of m modulo the i-th modulus of `target`.
void reduce_rows(IntMatrix& m, const FgAbelian& target);

class AbMap {
 public:
  AbMap() = default;
  /// Throws InvalidModule when the matrix does not carry relations into relations.
  AbMap(FgAbelian source, FgAbelian target, IntMatrix matrix);

  static AbMap identity(const FgAbelian& a);
  static AbMap zero(const FgAbelian& s, const FgAbelian& t);

  const FgAbelian& source() const { return source_; }
  const FgAbelian& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& v) const { return target_.reduce(matrix_.apply(v)); }
  /// this ∘ first
  AbMap after(const AbMap& first) const;
  bool is_zero() const;
  bool equals(const AbMap& other) const;

  static bool well_defined(const FgAbelian& s, const FgAbelian& t, const IntMatrix& m);

 private:
  FgAbelian source_;
  FgAbelian target_;
  IntMatrix matrix_;
};

/// Z / W for lattices W ⊆ Z ⊆ Z^n.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(const Lattice& z, const std::vector<IntVector>& w_generators);

  const FgAbelian& group() const { return group_; }
  /// n x rank matrix sending group coordinates to ambient vectors.
  const IntMatrix& inclusion() const { return inclusion_; }
  /// Group coordinates of an ambient vector; nullopt when not in Z.
  std::optional<IntVector> coordinates(const IntVector& ambient) const;
  const Lattice& numerator() const { return z_; }

 private:
  Lattice z_;
  IntMatrix to_new_;
  IntMatrix inclusion_;
  FgAbelian group_;
};

/// Z^k / column span of `relations`, in normal form. `projection` maps old
/// coordinates to new ones; `section` is a right inverse of it.
struct Presentation {
  FgAbelian group;
  IntMatrix projection;
  IntMatrix section;
};
Presentation present(std::size_t generators, const IntMatrix& relations);

struct Kernel {
  FgAbelian group;
  AbMap inclusion;
};
struct Cokernel {
  FgAbelian group;
  AbMap projection;
  IntMatrix section;
};
struct Image {
  FgAbelian group;
  AbMap inclusion;
  AbMap corestriction;
};

Kernel kernel(const AbMap& f);
Cokernel cokernel(const AbMap& f);
Image image(const AbMap& f);
/// ker(out) / im(in); requires out ∘ in == 0.
FgAbelian homology(const AbMap& in, const AbMap& out);

/// Lattice {x : F x ∈ relations(target)} in source coordinates.
Lattice preimage_of_zero(const IntMatrix& f, const FgAbelian& target);
/// Same, with the target given by its moduli only.
Lattice preimage_of_zero(const IntMatrix& f, const std::vector<Int>& moduli);

/// g with through ∘ g == f, when it exists.
std::optional<AbMap> lift(const AbMap& through, const AbMap& f);

/// A subgroup of an ambient FgAbelian, held as a generator lattice that
/// includes the ambient relations.
struct Subgroup {
  FgAbelian ambient;
  Lattice lattice;
  Subquotient quotient;  // lattice modulo the ambient relations
  FgAbelian group;
  AbMap inclusion;
  /// Subgroup coordinates of an ambient vector; nullopt when outside.
  std::optional<IntVector> coordinates(const IntVector& v) const { return quotient.coordinates(v); }
};

Subgroup make_subgroup(const FgAbelian& ambient, const std::vector<IntVector>& generators);

/// Smallest subgroup containing `generators` and closed under every map in `actions`.
Subgroup saturate_subgroup(const FgAbelian& ambient, const std::vector<IntVector>& generators,
                           const std::vector<AbMap>& actions);

std::int64_t to_int64(const Int& v);

}  // namespace bredonkit::zmod
