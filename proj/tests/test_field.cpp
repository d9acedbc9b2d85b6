#include "lienf/field.hpp"

#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace lienf;

namespace {

GaussianRational g(long n, long d = 1) { return GaussianRational::of(n, d); }

// The conjugation fixture used throughout: one x, one y.
FormalVectorField fixture_field(int trusted) {
  FormalVectorField t = FormalVectorField::zero(2, trusted);
  t.add_term({1, 0}, 0, g(-1));      // -x d/dx
  t.add_term({0, 1}, 1, g(-1, 2));   // -1/2 y d/dy
  t.add_term({0, 2}, 0, g(1));       // y^2 d/dx
  t.add_term({0, 3}, 0, g(1));       // y^3 d/dx
  return t;
}

}  // namespace

TEST_CASE("canonical monomial order") {
  MonomialLess less;
  CHECK(less({1, 0}, {0, 1}));      // within degree 1, x before y
  CHECK(less({0, 1}, {2, 0}));      // degree first
  CHECK(less({2, 0}, {1, 1}));
  CHECK(less({1, 1}, {0, 2}));
  CHECK(!less({1, 0}, {1, 0}));

  SparsePoly p(2);
  p.add_term({0, 2}, g(3));
  p.add_term({1, 0}, g(1));
  p.add_term({0, 1}, g(2));
  std::vector<MultiIndex> seen;
  for (const auto& [alpha, c] : p.terms()) seen.push_back(alpha);
  CHECK(seen == std::vector<MultiIndex>{{1, 0}, {0, 1}, {0, 2}});
}

TEST_CASE("polynomial arithmetic stays canonical") {
  SparsePoly p(1);
  p.add_term({1}, g(1));
  p.add_term({1}, g(-1));
  CHECK(p.is_zero());  // cancellation prunes storage

  SparsePoly a(1), b(1);
  a.add_term({0}, g(1));
  a.add_term({1}, g(1));
  b.add_term({1}, g(1));
  b.add_term({2}, g(-2));
  SparsePoly ab = SparsePoly::mul(a, b, 10);
  CHECK(ab.coeff({1}) == g(1));
  CHECK(ab.coeff({2}) == g(-1));
  CHECK(ab.coeff({3}) == g(-2));
  CHECK(SparsePoly::mul(a, b, 1).max_degree() == 1);

  CHECK(ab.diff(0).coeff({1}) == g(-2));
  CHECK(ab.diff(0).coeff({0}) == g(1));
}

TEST_CASE("substitution with truncation") {
  // p(u) = u^2 under u = x + x^2, truncated at degree 3: x^2 + 2x^3.
  SparsePoly p(1);
  p.add_term({2}, g(1));
  SparsePoly im(1);
  im.add_term({1}, g(1));
  im.add_term({2}, g(1));
  SparsePoly out = p.subst({im}, 3);
  CHECK(out.coeff({2}) == g(1));
  CHECK(out.coeff({3}) == g(2));
  CHECK(out.max_degree() == 3);
}

TEST_CASE("star matches the per-term oracle on random fields") {
  std::mt19937 rng(101);
  for (int t = 0; t < 60; ++t) {
    int dim = 1 + t % 3;
    FormalVectorField v = oracles::random_field(rng, dim, 5, 6, t % 2 == 0);
    FormalVectorField w = oracles::random_field(rng, dim, 5, 6, t % 3 == 0);
    FormalVectorField lib = star(v, w);
    FormalVectorField ora = oracles::star_oracle(v, w);
    CHECK(field_equal_through(lib, ora, lib.trusted));
  }
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi") {
  std::mt19937 rng(202);
  for (int t = 0; t < 25; ++t) {
    int dim = 2;
    FormalVectorField a = oracles::random_field(rng, dim, 4, 5);
    FormalVectorField b = oracles::random_field(rng, dim, 4, 5);
    FormalVectorField c = oracles::random_field(rng, dim, 4, 5);
    FormalVectorField ab = bracket(a, b);
    CHECK(field_equal_through(ab, field_scale(g(-1), bracket(b, a)), ab.trusted));
    FormalVectorField jac = field_add(field_add(bracket(a, bracket(b, c)),
                                                bracket(b, bracket(c, a))),
                                      bracket(c, bracket(a, b)));
    CHECK(jac.is_zero_through(jac.trusted));
  }
}

TEST_CASE("bracket of linear fields is the reversed matrix commutator") {
  std::mt19937 rng(303);
  std::uniform_int_distribution<long> e(-3, 3);
  for (int t = 0; t < 20; ++t) {
    int n = 3;
    Mat l = mat_zero(n, n), m = mat_zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        l[i][j] = g(e(rng));
        m[i][j] = g(e(rng));
      }
    auto linear_field = [n](const Mat& a) {
      FormalVectorField f = FormalVectorField::zero(n, 6);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f.add_term(unit_index(n, j), i, a[i][j]);
      return f;
    };
    Mat ml = mat_mul(m, l), lm = mat_mul(l, m);
    Mat rev = mat_zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rev[i][j] = ml[i][j] - lm[i][j];
    FormalVectorField lhs = bracket(linear_field(l), linear_field(m));
    CHECK(field_equal_through(lhs, linear_field(rev), lhs.trusted));
  }
}

TEST_CASE("trusted degree bookkeeping through products") {
  FormalVectorField v = FormalVectorField::zero(2, 3);
  v.add_term({0, 0}, 0, g(1));  // constant term, so effective min degree 0
  FormalVectorField w = FormalVectorField::zero(2, 5);
  w.add_term({0, 2}, 1, g(1));
  // v-tail meets dw at degree 3+2-1; w-tail meets v at degree 0+5.
  CHECK(star(v, w).trusted == std::min(3 + 2, 5 + 0) - 1);
  CHECK(star(w, v).trusted == std::min(5 + 1, 3 + 2) - 1);
  FormalVectorField s = field_add(v, w);
  CHECK(s.trusted == 3);

  // Truncation never raises trust.
  CHECK(w.truncated(2).trusted == 2);
  CHECK(w.truncated(9).trusted == 5);
}

TEST_CASE("map inversion matches the fixed-point oracle") {
  std::mt19937 rng(404);
  for (int t = 0; t < 20; ++t) {
    int dim = 1 + t % 3;
    FormalMap phi = oracles::random_near_identity(rng, dim, 6, 4);
    FormalMap inv = invert_map(phi);
    FormalMap ora = oracles::invert_oracle(phi);
    for (int j = 0; j < dim; ++j) {
      SparsePoly d = inv.comp[j];
      d -= ora.comp[j];
      CHECK(d.min_degree() > 6);
    }
    FormalMap round = compose_maps(phi, inv);
    CHECK(round.is_identity());
  }
}

TEST_CASE("inverse of x + x^2 is the signed Catalan series") {
  FormalMap phi = FormalMap::identity(1, 8);
  phi.comp[0].add_term({2}, g(1));
  FormalMap inv = invert_map(phi);
  long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int m = 0; m < 8; ++m) {
    long expected = (m % 2 == 0 ? 1 : -1) * catalan[m];
    CHECK(inv.comp[0].coeff({m + 1}) == g(expected));
  }
  FormalMap ora = oracles::invert_oracle(phi);
  SparsePoly diff = inv.comp[0];
  diff -= ora.comp[0];
  CHECK(diff.min_degree() > 8);
}

TEST_CASE("singular linear parts are rejected") {
  FormalMap m = FormalMap::identity(2, 4);
  m.comp[1] = m.comp[0];  // second component duplicates the first
  try {
    invert_map(m);
    FAIL("expected SingularLinearPart");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularLinearPart);
  }
}

TEST_CASE("pushforward by the cubic shear reproduces the pinned conjugation") {
  FormalVectorField t = fixture_field(6);
  FormalMap phi = FormalMap::identity(2, 6);
  phi.comp[0].add_term({0, 3}, g(2));  // (x, y) -> (x + 2 y^3, y)
  FormalVectorField moved = pushforward(t, phi);
  FormalVectorField expected = FormalVectorField::zero(2, 6);
  expected.add_term({1, 0}, 0, g(-1));
  expected.add_term({0, 1}, 1, g(-1, 2));
  expected.add_term({0, 2}, 0, g(1));
  CHECK(moved.trusted >= 5);
  CHECK(field_equal_through(moved, expected, moved.trusted));
}

TEST_CASE("pushforward round-trips through the inverse map") {
  std::mt19937 rng(505);
  for (int t = 0; t < 15; ++t) {
    int dim = 2;
    FormalVectorField v = oracles::random_field(rng, dim, 5, 6);
    FormalMap phi = oracles::random_near_identity(rng, dim, 5, 3);
    FormalMap inv = invert_map(phi);
    FormalVectorField back = pushforward(pushforward(v, phi, inv), inv, phi);
    CHECK(field_equal_through(back, v, back.trusted));
    CHECK(back.trusted >= 3);
  }
}

TEST_CASE("composition of maps is associative") {
  std::mt19937 rng(606);
  for (int t = 0; t < 10; ++t) {
    FormalMap a = oracles::random_near_identity(rng, 2, 5, 3);
    FormalMap b = oracles::random_near_identity(rng, 2, 5, 3);
    FormalMap c = oracles::random_near_identity(rng, 2, 5, 3);
    FormalMap left = compose_maps(compose_maps(a, b), c);
    FormalMap right = compose_maps(a, compose_maps(b, c));
    for (int j = 0; j < 2; ++j) {
      SparsePoly d = left.comp[j];
      d -= right.comp[j];
      CHECK(d.min_degree() > std::min(left.trusted, right.trusted));
    }
  }
}

TEST_CASE("rendering is stable and names split variables") {
  FormalVectorField t = fixture_field(6);
  CHECK(render_field(t, 1) ==
        "d/dx1: -1*x1 + 1*y1^2 + 1*y1^3\nd/dy1: -1/2*y1");
  CHECK(render_field(FormalVectorField::zero(2, 3)) == "0");
  FormalMap phi = FormalMap::identity(2, 6);
  phi.comp[0].add_term({0, 3}, g(2));
  CHECK(render_map(phi, 1) == "x1 -> 1*x1 + 2*y1^3\ny1 -> 1*y1");
}
