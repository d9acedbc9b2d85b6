#include "lienf/linalg.hpp"

#include <random>

#include "doctest.h"

using namespace lienf;

namespace {

GaussianRational g(long n, long d = 1, long in = 0, long id = 1) {
  return GaussianRational::of(n, d, in, id);
}

Mat m22(long a, long b, long c, long d) {
  return {{g(a), g(b)}, {g(c), g(d)}};
}

Mat random_matrix(std::mt19937& rng, int n) {
  std::uniform_int_distribution<long> num(-5, 5);
  Mat m = mat_zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = g(num(rng), 1, num(rng), 2);
  return m;
}

}  // namespace

TEST_CASE("rref, rank and nullspace") {
  Mat m = {{g(1), g(2), g(3)}, {g(2), g(4), g(6)}, {g(1), g(0), g(1)}};
  CHECK(rank(m) == 2);
  Mat ns = nullspace(m);
  REQUIRE(ns[0].size() == 1);
  // Canonical kernel vector: free coordinate set to 1.
  CHECK(ns[2][0] == g(1));
  Vec img = mat_apply(m, {ns[0][0], ns[1][0], ns[2][0]});
  for (const auto& e : img) CHECK(e.is_zero());
}

TEST_CASE("inverse round-trips, singular matrices report nullopt") {
  Mat m = {{g(1), g(0, 1, 1, 1)}, {g(0), g(2)}};
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(mat_equal(mat_mul(m, *inv), mat_identity(2)));
  CHECK(!inverse(m22(1, 2, 2, 4)).has_value());
}

TEST_CASE("solve returns the free-variables-zero solution") {
  Mat m = {{g(1), g(1), g(0)}, {g(0), g(0), g(1)}};
  auto x = solve(m, {g(3), g(5)});
  REQUIRE(x.has_value());
  CHECK(*x == Vec{g(3), g(0), g(5)});
  CHECK(!solve(m22(1, 1, 1, 1), {g(0), g(1)}).has_value());
}

TEST_CASE("characteristic polynomials") {
  CHECK(charpoly(m22(0, -1, 1, 0)) == Vec{g(1), g(0), g(1)});  // t^2 + 1
  CHECK(charpoly(m22(2, 0, 0, 3)) == Vec{g(6), g(-5), g(1)});
  Mat j = m22(0, 1, 0, 0);
  CHECK(charpoly(j) == Vec{g(0), g(0), g(1)});
  Mat c = {{g(0, 1, 1, 1)}};
  CHECK(charpoly(c) == Vec{g(0, 1, -1, 1), g(1)});
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    Mat m = random_matrix(rng, 4);
    Vec p = charpoly(m);
    // Cayley-Hamilton as an independent cross-check.
    Mat acc = mat_zero(4, 4);
    Mat power = mat_identity(4);
    for (size_t k = 0; k < p.size(); ++k) {
      for (int i = 0; i < 4; ++i)
        for (int jx = 0; jx < 4; ++jx) acc[i][jx] += p[k] * power[i][jx];
      power = mat_mul(power, m);
    }
    CHECK(mat_equal(acc, mat_zero(4, 4)));
  }
}

TEST_CASE("Gaussian rational root search") {
  // t^2 + 1 has roots +-i; canonical order puts -i first.
  auto r = gaussian_rational_roots({g(1), g(0), g(1)});
  CHECK(r == std::vector<GaussianRational>{g(0, 1, -1, 1), g(0, 1, 1, 1)});
  // t^2 + 2 has no Q(i) roots at all.
  CHECK(gaussian_rational_roots({g(2), g(0), g(1)}).empty());
  // (t - (2+i)) (t - 1/2) = t^2 - (5/2+i) t + (1 + 1/2 i).
  auto r2 = gaussian_rational_roots({g(1, 1, 1, 2), g(-5, 2, -1, 1), g(1)});
  CHECK(r2 == std::vector<GaussianRational>{g(1, 2), g(2, 1, 1, 1)});
  // Zero roots deflate; multiplicity collapses to a single entry.
  auto r3 = gaussian_rational_roots({g(0), g(0), g(0), g(1)});
  CHECK(r3 == std::vector<GaussianRational>{g(0)});
  // Denominator clearing: (t - 1/6)(t - 1/10).
  auto r4 = gaussian_rational_roots({g(1, 60), g(-4, 15), g(1)});
  CHECK(r4 == std::vector<GaussianRational>{g(1, 10), g(1, 6)});
}

TEST_CASE("triangularization leaves upper-triangular families untouched") {
  std::vector<Mat> mats = {m22(1, 5, 0, 2), m22(3, 0, 0, 3), m22(0, 1, 0, 0)};
  auto t = simultaneous_triangularize(mats, 2);
  CHECK(mat_equal(t.change, mat_identity(2)));
  CHECK(t.diagonal[0] == Vec{g(1), g(3), g(0)});
  CHECK(t.diagonal[1] == Vec{g(2), g(3), g(0)});
}

TEST_CASE("triangularization of an empty family") {
  auto t = simultaneous_triangularize({}, 3);
  CHECK(mat_equal(t.change, mat_identity(3)));
  REQUIRE(t.diagonal.size() == 3);
  CHECK(t.diagonal[0].empty());
}

TEST_CASE("triangularization finds a genuine common flag") {
  // Lower-triangular pair: needs the basis flipped.
  Mat h = m22(1, 0, 0, -1);
  Mat f = m22(0, 0, 1, 0);
  auto t = simultaneous_triangularize({h, f}, 2);
  Mat pinv = *inverse(t.change);
  for (const Mat& m : {h, f})
    CHECK(mat_is_upper_triangular(mat_mul(pinv, mat_mul(m, t.change))));
  CHECK(t.diagonal[0] == Vec{g(-1), g(0)});
  CHECK(t.diagonal[1] == Vec{g(1), g(0)});

  // Rotation matrix: triangular only over Q(i).
  auto ti = simultaneous_triangularize({m22(0, -1, 1, 0)}, 2);
  Mat qinv = *inverse(ti.change);
  Mat tri = mat_mul(qinv, mat_mul(m22(0, -1, 1, 0), ti.change));
  CHECK(mat_is_upper_triangular(tri));
  CHECK(tri[0][0] == g(0, 1, -1, 1));
}

TEST_CASE("triangularization failure modes") {
  try {
    simultaneous_triangularize({m22(0, -2, 1, 0)}, 2);
    FAIL("expected EigenvalueNotGaussianRational");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EigenvalueNotGaussianRational);
  }
  // E and F generate all of sl2; no common eigenvector exists.
  try {
    simultaneous_triangularize({m22(0, 1, 0, 0), m22(0, 0, 1, 0)}, 2);
    FAIL("expected NotSimultaneouslyTriangularizable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSimultaneouslyTriangularizable);
  }
}

TEST_CASE("random conjugates of triangular families triangularize back") {
  std::mt19937 rng(20240815);
  std::uniform_int_distribution<long> entry(-3, 3);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 3;
    // Random invertible conjugator.
    Mat p;
    do {
      p = mat_zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p[i][j] = g(entry(rng));
    } while (!inverse(p).has_value());
    Mat pinv = *inverse(p);
    // Two commuting upper-triangular seeds.
    Mat a = {{g(1), g(1), g(0)}, {g(0), g(1), g(2)}, {g(0), g(0), g(1)}};
    Mat b = {{g(entry(rng)), g(0), g(0)},
             {g(0), g(entry(rng)), g(0)},
             {g(0), g(0), g(entry(rng))}};
    b = mat_mul(a, a);  // guaranteed to share the flag
    std::vector<Mat> fam = {mat_mul(p, mat_mul(a, pinv)), mat_mul(p, mat_mul(b, pinv))};
    auto t = simultaneous_triangularize(fam, n);
    Mat qinv = *inverse(t.change);
    for (const Mat& m : fam)
      CHECK(mat_is_upper_triangular(mat_mul(qinv, mat_mul(m, t.change))));
  }
}
