#include <sstream>
#include <utility>

#include "bredonkit/errors.hpp"
#include "bredonkit/zmod.hpp"

namespace bredonkit::zmod {

namespace {

Int nonneg_mod(const Int& v, const Int& d) {
  Int r = v % d;
  if (r < 0) r += d;
  return r;
}

std::vector<IntVector> relation_vectors(const FgAbelian& g) {
  std::vector<IntVector> out;
  const auto& mod = g.moduli();
  for (std::size_t i = 0; i < mod.size(); ++i) {
    if (mod[i].is_zero()) continue;
    IntVector v(mod.size());
    v[i] = mod[i];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

FgAbelian::FgAbelian(std::vector<Int> moduli) : moduli_(std::move(moduli)) {
  for (auto& d : moduli_)
    if (d < 0) d = -d;
  std::vector<Int> torsion;
  std::size_t free = 0;
  bool plain = true;
  for (const auto& d : moduli_) {
    if (d.is_zero()) {
      ++free;
    } else if (d != 1) {
      if (!torsion.empty() && !(d % torsion.back()).is_zero()) plain = false;
      torsion.push_back(d);
    }
  }
  if (!plain) {
    SmithForm s = smith_normal_form(IntMatrix::diagonal(torsion), {false, false});
    torsion.clear();
    for (const auto& d : s.diagonal())
      if (d != 1) torsion.push_back(d);
  }
  invariants_ = std::move(torsion);
  invariants_.insert(invariants_.end(), free, Int(0));
}

FgAbelian FgAbelian::free(std::size_t rank) { return FgAbelian(std::vector<Int>(rank, Int(0))); }

FgAbelian FgAbelian::cyclic(const Int& order) { return FgAbelian(std::vector<Int>{order}); }

FgAbelian FgAbelian::direct_sum(const std::vector<FgAbelian>& parts) {
  std::vector<Int> mod;
  for (const auto& p : parts) mod.insert(mod.end(), p.moduli_.begin(), p.moduli_.end());
  return FgAbelian(std::move(mod));
}

IntMatrix FgAbelian::relations() const { return IntMatrix::diagonal(moduli_); }

std::size_t FgAbelian::free_rank() const {
  std::size_t r = 0;
  for (const auto& d : invariants_)
    if (d.is_zero()) ++r;
  return r;
}

Int FgAbelian::order() const {
  if (!is_finite()) throw PreconditionError("order of an infinite group");
  Int n = 1;
  for (const auto& d : invariants_) n *= d;
  return n;
}

IntVector FgAbelian::reduce(IntVector v) const {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!moduli_[i].is_zero()) v[i] = nonneg_mod(v[i], moduli_[i]);
  return v;
}

bool FgAbelian::is_zero_element(const IntVector& v) const {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (moduli_[i].is_zero()) {
      if (!v[i].is_zero()) return false;
    } else if (!(v[i] % moduli_[i]).is_zero()) {
      return false;
    }
  }
  return true;
}

std::string FgAbelian::to_string() const {
  if (invariants_.empty()) return "0";
  std::ostringstream os;
  std::size_t free = free_rank();
  bool first = true;
  if (free > 0) {
    os << "Z";
    if (free > 1) os << '^' << free;
    first = false;
  }
  for (const auto& d : invariants_) {
    if (d.is_zero()) continue;
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

void reduce_rows(IntMatrix& m, const FgAbelian& target) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const Int& d = target.moduli()[r];
    if (d.is_zero()) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = nonneg_mod(m(r, c), d);
  }
}

bool AbMap::well_defined(const FgAbelian& s, const FgAbelian& t, const IntMatrix& m) {
  if (m.rows() != t.ambient_rank() || m.cols() != s.ambient_rank()) return false;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Int& d = s.moduli()[j];
    if (d.is_zero()) continue;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const Int& e = t.moduli()[i];
      Int v = d * m(i, j);
      if (e.is_zero() ? !v.is_zero() : !(v % e).is_zero()) return false;
    }
  }
  return true;
}

AbMap::AbMap(FgAbelian source, FgAbelian target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.ambient_rank() || matrix_.cols() != source_.ambient_rank())
    throw InvalidModule("map matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                        std::to_string(matrix_.cols()) + ", expected " +
                        std::to_string(target_.ambient_rank()) + "x" +
                        std::to_string(source_.ambient_rank()));
  reduce_rows(matrix_, target_);
  if (!well_defined(source_, target_, matrix_))
    throw InvalidModule("map does not send relations to relations");
}

AbMap AbMap::identity(const FgAbelian& a) {
  return AbMap(a, a, IntMatrix::identity(a.ambient_rank()));
}

AbMap AbMap::zero(const FgAbelian& s, const FgAbelian& t) {
  return AbMap(s, t, IntMatrix(t.ambient_rank(), s.ambient_rank()));
}

AbMap AbMap::after(const AbMap& first) const {
  if (first.target_.moduli() != source_.moduli())
    throw ObjectMismatch("composing maps with mismatched groups");
  return AbMap(first.source_, target_, matrix_ * first.matrix_);
}

bool AbMap::is_zero() const { return matrix_.is_zero(); }

bool AbMap::equals(const AbMap& other) const {
  return source_.moduli() == other.source_.moduli() &&
         target_.moduli() == other.target_.moduli() && matrix_ == other.matrix_;
}

Subquotient::Subquotient(const Lattice& z, const std::vector<IntVector>& w_generators) : z_(z) {
  const std::size_t k = z_.rank();
  IntMatrix y(k, w_generators.size());
  for (std::size_t j = 0; j < w_generators.size(); ++j) {
    auto c = z_.coordinates(w_generators[j]);
    if (!c) throw PreconditionError("subquotient: relation outside numerator");
    for (std::size_t i = 0; i < k; ++i) y(i, j) = (*c)[i];
  }
  Presentation p = present(k, y);
  group_ = p.group;
  to_new_ = p.projection;
  inclusion_ = z_.basis_matrix() * p.section;
}

std::optional<IntVector> Subquotient::coordinates(const IntVector& ambient) const {
  auto c = z_.coordinates(ambient);
  if (!c) return std::nullopt;
  return group_.reduce(to_new_.apply(*c));
}

Kernel kernel(const AbMap& f) {
  Lattice z = preimage_of_zero(f.matrix(), f.target());
  Subquotient sq(z, relation_vectors(f.source()));
  return {sq.group(), AbMap(sq.group(), f.source(), sq.inclusion())};
}

Cokernel cokernel(const AbMap& f) {
  const std::size_t m = f.target().ambient_rank();
  IntMatrix rel = IntMatrix::hstack(f.matrix(), f.target().relations());
  Presentation p = present(m, rel);
  return {p.group, AbMap(f.target(), p.group, p.projection), p.section};
}

Image image(const AbMap& f) {
  const std::size_t m = f.target().ambient_rank();
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < f.matrix().cols(); ++j) gens.push_back(f.matrix().col(j));
  auto rel = relation_vectors(f.target());
  gens.insert(gens.end(), rel.begin(), rel.end());
  Subquotient sq(Lattice(m, gens), rel);
  IntMatrix co(sq.group().ambient_rank(), f.matrix().cols());
  for (std::size_t j = 0; j < f.matrix().cols(); ++j) co.set_col(j, *sq.coordinates(f.matrix().col(j)));
  return {sq.group(), AbMap(sq.group(), f.target(), sq.inclusion()),
          AbMap(f.source(), sq.group(), co)};
}

FgAbelian homology(const AbMap& in, const AbMap& out) {
  if (in.target().moduli() != out.source().moduli())
    throw ObjectMismatch("homology: middle groups differ");
  Lattice z = preimage_of_zero(out.matrix(), out.target());
  std::vector<IntVector> w = relation_vectors(in.target());
  for (std::size_t j = 0; j < in.matrix().cols(); ++j) w.push_back(in.matrix().col(j));
  return Subquotient(z, w).group();
}

std::optional<AbMap> lift(const AbMap& through, const AbMap& f) {
  if (through.target().moduli() != f.target().moduli())
    throw ObjectMismatch("lift: targets differ");
  const std::size_t a = through.source().ambient_rank();
  IntMatrix sys = IntMatrix::hstack(through.matrix(), f.target().relations());
  IntMatrix x(a, f.source().ambient_rank());
  for (std::size_t j = 0; j < f.matrix().cols(); ++j) {
    auto sol = solve(sys, f.matrix().col(j));
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < a; ++i) x(i, j) = (*sol)[i];
  }
  reduce_rows(x, through.source());
  if (!AbMap::well_defined(f.source(), through.source(), x)) return std::nullopt;
  return AbMap(f.source(), through.source(), x);
}

Subgroup make_subgroup(const FgAbelian& ambient, const std::vector<IntVector>& generators) {
  auto rel = relation_vectors(ambient);
  Lattice lat(ambient.ambient_rank(), generators);
  lat.add(rel);
  Subquotient sq(lat, rel);
  return {ambient, lat, sq, sq.group(), AbMap(sq.group(), ambient, sq.inclusion())};
}

Subgroup saturate_subgroup(const FgAbelian& ambient, const std::vector<IntVector>& generators,
                           const std::vector<AbMap>& actions) {
  Lattice lat(ambient.ambient_rank(), generators);
  lat.add(relation_vectors(ambient));
  for (;;) {
    Lattice next = lat;
    std::vector<IntVector> images;
    for (const auto& b : lat.basis())
      for (const auto& act : actions) images.push_back(act.matrix().apply(b));
    next.add(images);
    if (next == lat) break;
    lat = std::move(next);
  }
  return make_subgroup(ambient, lat.basis());
}

std::int64_t to_int64(const Int& v) {
  if (v > Int(INT64_MAX) || v < Int(INT64_MIN)) throw ResourceError("integer overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace bredonkit::zmod
