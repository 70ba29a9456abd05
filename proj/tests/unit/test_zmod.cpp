#include <random>

#include "bredonkit/errors.hpp"
#include "bredonkit/zmod.hpp"
#include "doctest.h"

using namespace bredonkit::zmod;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = static_cast<long long>(rng() % (2 * range + 1)) - range;
  return m;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  for (int step = 0; step < 12 && n > 1; ++step) {
    std::size_t i = rng() % n;
    std::size_t j = rng() % n;
    if (i == j) continue;
    long long q = static_cast<long long>(rng() % 5) - 2;
    for (std::size_t c = 0; c < n; ++c) u(i, c) += Int(q) * u(j, c);
  }
  return u;
}

// Determinantal-divisor oracle for 2x2 matrices: d1 = gcd of entries, d1*d2 = |det|.
std::vector<Int> invariants_2x2(const IntMatrix& a) {
  Int g = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) g = boost::multiprecision::gcd(g, a(i, j));
  Int det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (det < 0) det = -det;
  if (g == 0) return {0, 0};
  return {g, det / g};
}

}  // namespace

TEST_CASE("smith form of diag(2,3) is diag(1,6)") {
  IntMatrix a{{2, 0}, {0, 3}};
  SmithForm s = smith_normal_form(a);
  CHECK(s.diagonal() == IntVector{1, 6});
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.U * s.u_inverse == IntMatrix::identity(2));
}

TEST_CASE("smith form agrees with determinantal divisors on random 2x2 matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix a = random_matrix(rng, 2, 2, 9);
    SmithForm s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.diagonal() == invariants_2x2(a));
  }
}

TEST_CASE("smith invariants survive unimodular change of basis") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4;
    std::size_t c = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, r, c, 6);
    IntMatrix b = random_unimodular(rng, r) * a * random_unimodular(rng, c);
    SmithForm sa = smith_normal_form(a);
    SmithForm sb = smith_normal_form(b);
    CHECK(sa.diagonal() == sb.diagonal());
    CHECK(sb.U * b * sb.V == sb.D);
    CHECK(sb.U * sb.u_inverse == IntMatrix::identity(r));
    auto d = sa.diagonal();
    for (std::size_t i = 0; i + 1 < sa.rank; ++i) CHECK((d[i + 1] % d[i]) == 0);
  }
}

TEST_CASE("solve finds integer solutions and rejects rational-only ones") {
  IntMatrix a{{2, 4}, {0, 6}};
  auto x = solve(a, {6, 6});
  REQUIRE(x);
  CHECK(a.apply(*x) == IntVector{6, 6});
  CHECK_FALSE(solve(a, {1, 0}));
}

TEST_CASE("lattice normal form is canonical") {
  Lattice a(2, {{2, 0}, {0, 3}});
  Lattice b(2, {{2, 3}, {4, 3}, {0, 6}});
  CHECK(Lattice(2, {{2, 3}, {0, 3}}) == Lattice(2, {{2, 0}, {0, 3}}));
  CHECK(a.contains(IntVector{4, -3}));
  CHECK_FALSE(a.contains(IntVector{1, 0}));
  CHECK(b.contains(IntVector{2, 3}));
}

TEST_CASE("integer kernel") {
  IntMatrix a{{1, -1, 0}, {0, 1, -1}};
  Lattice k = integer_kernel(a);
  CHECK(k.rank() == 1);
  CHECK(k.contains(IntVector{1, 1, 1}));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = random_matrix(rng, 1 + rng() % 3, 1 + rng() % 4, 4);
    Lattice ker = integer_kernel(m);
    for (const auto& v : ker.basis()) CHECK(m.apply(v) == IntVector(m.rows()));
    CHECK(ker.rank() + smith_normal_form(m, {false, false}).rank == m.cols());
  }
}

TEST_CASE("multiplication by 2 on Z") {
  AbMap two(FgAbelian::free(1), FgAbelian::free(1), IntMatrix{{2}});
  CHECK(kernel(two).group.is_zero());
  CHECK(cokernel(two).group.to_string() == "Z/2");
  CHECK(image(two).group.to_string() == "Z");
}

TEST_CASE("difference map Z^2 -> Z") {
  AbMap d(FgAbelian::free(2), FgAbelian::free(1), IntMatrix{{1, -1}});
  Kernel k = kernel(d);
  CHECK(k.group.to_string() == "Z");
  CHECK(d.after(k.inclusion).is_zero());
  CHECK(cokernel(d).group.is_zero());
}

TEST_CASE("torsion groups and subgroups") {
  FgAbelian z4 = FgAbelian::cyclic(4);
  Subgroup s = make_subgroup(z4, {{2}});
  CHECK(s.group.to_string() == "Z/2");
  FgAbelian g({2, 3});
  CHECK(g.invariant_factors() == std::vector<Int>{6});
  CHECK(FgAbelian({0, 2, 0, 4}).to_string() == "Z^2 + Z/2 + Z/4");
  CHECK(FgAbelian({1, 1}).is_zero());
}

TEST_CASE("ill-defined maps are rejected") {
  CHECK_THROWS_AS(AbMap(FgAbelian::cyclic(2), FgAbelian::free(1), IntMatrix{{1}}),
                  bredonkit::InvalidModule);
  CHECK_NOTHROW(AbMap(FgAbelian::cyclic(2), FgAbelian::cyclic(4), IntMatrix{{2}}));
}

TEST_CASE("saturation under a swap generates everything") {
  AbMap swap(FgAbelian::free(2), FgAbelian::free(2), IntMatrix{{0, 1}, {1, 0}});
  Subgroup s = saturate_subgroup(FgAbelian::free(2), {{1, 0}}, {swap});
  CHECK(s.group.to_string() == "Z^2");
  Subgroup diag = saturate_subgroup(FgAbelian::free(2), {{1, 1}}, {swap});
  CHECK(diag.group.to_string() == "Z");
}

TEST_CASE("homology of Z --2--> Z --0--> Z") {
  AbMap two(FgAbelian::free(1), FgAbelian::free(1), IntMatrix{{2}});
  AbMap zero = AbMap::zero(FgAbelian::free(1), FgAbelian::free(1));
  CHECK(homology(two, zero).to_string() == "Z/2");
  CHECK(homology(zero, two).is_zero());
}

TEST_CASE("random exactness: ker/coker orders multiply correctly") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 3;
    IntMatrix m = random_matrix(rng, n, n, 5);
    AbMap f(FgAbelian::free(n), FgAbelian::free(n), m);
    SmithForm s = smith_normal_form(m, {false, false});
    Cokernel c = cokernel(f);
    if (s.rank == n) {
      Int det = 1;
      for (auto d : s.diagonal()) det *= d;
      CHECK(c.group.is_finite());
      CHECK(c.group.order() == det);
      CHECK(kernel(f).group.is_zero());
    } else {
      CHECK(kernel(f).group.free_rank() == n - s.rank);
      CHECK(c.group.free_rank() == n - s.rank);
    }
    CHECK(c.projection.after(f).is_zero());
  }
}

TEST_CASE("lift through an injection") {
  AbMap two(FgAbelian::free(1), FgAbelian::free(1), IntMatrix{{2}});
  AbMap four(FgAbelian::free(1), FgAbelian::free(1), IntMatrix{{4}});
  auto g = lift(two, four);
  REQUIRE(g);
  CHECK(g->matrix() == IntMatrix{{2}});
  CHECK_FALSE(lift(two, AbMap::identity(FgAbelian::free(1))));
}
