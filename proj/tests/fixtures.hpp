#pragma once

// Shared test inputs: small Lie algebras together with nonlinear
// representations on a low-dimensional space.

#include <string>
#include <tuple>
#include <vector>

#include "lienf/lie.hpp"

namespace fixtures {

using lienf::Decomposition;
using lienf::FormalVectorField;
using lienf::GaussianRational;
using lienf::LieAlgebra;
using lienf::NonlinearRep;
using lienf::Vec;

inline LieAlgebra algebra(const std::vector<std::string>& names,
                          const std::vector<std::tuple<int, int, Vec>>& brackets) {
  LieAlgebra g;
  g.names = names;
  const int d = static_cast<int>(names.size());
  g.c.assign(d, std::vector<Vec>(d, Vec(d, GaussianRational(0))));
  for (const auto& [a, b, v] : brackets) {
    g.c[a][b] = v;
    for (int k = 0; k < d; ++k) g.c[b][a][k] = -v[k];
  }
  return g;
}

struct Input {
  LieAlgebra g;
  Decomposition d;
  NonlinearRep t;
};

/// Affine line acting on the plane: [X0, X1] = X1, ideal spanned by X1 with
/// field d/dx, radical spanned by X0.  The plain variant carries the minimal
/// field -x d/dx - 1/2 y d/dy + y^2 d/dx; the default adds a removable
/// y^3 d/dx term on top.
inline Input aff1_plain(int degree = 6) {
  Input f;
  f.g = algebra({"X0", "X1"}, {{0, 1, lienf::unit_coords(2, 1)}});
  f.d.m = {1};
  f.d.g0 = {0};
  f.d.r = {0};
  f.d.s = {};
  f.t.n = 2;
  f.t.degree = degree;
  FormalVectorField t0 = FormalVectorField::zero(2, degree);
  t0.add_term({1, 0}, 0, GaussianRational(-1));
  t0.add_term({0, 1}, 1, GaussianRational::of(-1, 2));
  t0.add_term({0, 2}, 0, GaussianRational(1));
  FormalVectorField t1 = FormalVectorField::zero(2, degree);
  t1.add_term({0, 0}, 0, GaussianRational(1));
  f.t.fields = {t0, t1};
  return f;
}

inline Input aff1(int degree = 6) {
  Input f = aff1_plain(degree);
  f.t.fields[0].add_term({0, 3}, 0, GaussianRational(1));
  return f;
}

/// Plain variant with an extra removable linear cross term y d/dx.
inline Input aff1_linmix(int degree = 6) {
  Input f = aff1_plain(degree);
  f.t.fields[0].add_term({0, 1}, 0, GaussianRational(1));
  return f;
}

/// Gaussian weights: -x d/dx + i y d/dy + y^2 d/dx; the quadratic term is
/// removable because 2i + 1 never vanishes.
inline Input aff1_gauss(int degree = 5) {
  Input f;
  f.g = algebra({"X0", "X1"}, {{0, 1, lienf::unit_coords(2, 1)}});
  f.d.m = {1};
  f.d.g0 = {0};
  f.d.r = {0};
  f.d.s = {};
  f.t.n = 2;
  f.t.degree = degree;
  FormalVectorField t0 = FormalVectorField::zero(2, degree);
  t0.add_term({1, 0}, 0, GaussianRational(-1));
  t0.add_term({0, 1}, 1, GaussianRational::i());
  t0.add_term({0, 2}, 0, GaussianRational(1));
  FormalVectorField t1 = FormalVectorField::zero(2, degree);
  t1.add_term({0, 0}, 0, GaussianRational(1));
  f.t.fields = {t0, t1};
  return f;
}

/// sl(2) acting on C^2, as the semidirect product on basis H, E, F, W1, W2,
/// represented on C^3 with coordinates (x1, x2, y).
inline Input sl2c2(int degree = 4) {
  Input f;
  auto u = [](int k) { return lienf::unit_coords(5, k); };
  Vec m2f(5, GaussianRational(0));
  m2f[2] = GaussianRational(-2);
  Vec twoe(5, GaussianRational(0));
  twoe[1] = GaussianRational(2);
  Vec mw2(5, GaussianRational(0));
  mw2[4] = GaussianRational(-1);
  f.g = algebra({"H", "E", "F", "W1", "W2"},
                {{0, 1, twoe}, {0, 2, m2f}, {1, 2, u(0)}, {0, 3, u(3)}, {0, 4, mw2},
                 {1, 4, u(3)}, {2, 3, u(4)}});
  f.d.m = {3, 4};
  f.d.g0 = {0, 1, 2};
  f.d.r = {};
  f.d.s = {0, 1, 2};
  f.t.n = 3;
  f.t.degree = degree;
  FormalVectorField th = FormalVectorField::zero(3, degree);
  th.add_term({1, 0, 0}, 0, GaussianRational(-1));
  th.add_term({0, 0, 2}, 0, GaussianRational(1));
  th.add_term({0, 1, 0}, 1, GaussianRational(1));
  th.add_term({0, 0, 3}, 1, GaussianRational(-1));
  FormalVectorField te = FormalVectorField::zero(3, degree);
  te.add_term({0, 1, 0}, 0, GaussianRational(-1));
  te.add_term({0, 0, 3}, 0, GaussianRational(1));
  FormalVectorField tf = FormalVectorField::zero(3, degree);
  tf.add_term({1, 0, 0}, 1, GaussianRational(-1));
  tf.add_term({0, 0, 2}, 1, GaussianRational(1));
  FormalVectorField tw1 = FormalVectorField::zero(3, degree);
  tw1.add_term({0, 0, 0}, 0, GaussianRational(1));
  FormalVectorField tw2 = FormalVectorField::zero(3, degree);
  tw2.add_term({0, 0, 0}, 1, GaussianRational(1));
  f.t.fields = {th, te, tf, tw1, tw2};
  return f;
}

}  // namespace fixtures
