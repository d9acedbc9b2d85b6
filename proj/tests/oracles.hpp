#pragma once

// Independent reference implementations used only by tests.  Each oracle
// computes its answer along a different route than the library (per-term
// combinatorial formulas, fixed-point iteration, brute-force enumeration) so
// that agreement is meaningful evidence rather than a tautology.

#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "lienf/field.hpp"

namespace oracles {

using lienf::FormalMap;
using lienf::FormalVectorField;
using lienf::GaussianRational;
using lienf::MultiIndex;
using lienf::SparsePoly;

/// Term-by-term derivation product: the term c x^alpha d/dx_i applied to
/// e x^beta d/dx_j contributes c e beta_i x^(alpha+beta-1_i) d/dx_j.  No
/// polynomial multiplication or differentiation machinery involved.
inline FormalVectorField star_oracle(const FormalVectorField& v, const FormalVectorField& w) {
  int n = v.dim;
  int trusted = std::min(v.trusted + 1, w.trusted + 1) - 1;  // ample for exact inputs
  FormalVectorField out = FormalVectorField::zero(n, trusted);
  for (int i = 0; i < n; ++i)
    for (const auto& [alpha, c] : v.comp[i].terms())
      for (int j = 0; j < n; ++j)
        for (const auto& [beta, e] : w.comp[j].terms()) {
          if (beta[i] == 0) continue;
          MultiIndex gamma = alpha;
          int deg = 0;
          for (int t = 0; t < n; ++t) {
            gamma[t] += beta[t];
            deg += gamma[t];
          }
          gamma[i] -= 1;
          deg -= 1;
          if (deg <= trusted) out.add_term(gamma, j, c * e * GaussianRational(beta[i]));
        }
  return out;
}

inline FormalVectorField bracket_oracle(const FormalVectorField& v, const FormalVectorField& w) {
  return lienf::field_sub(star_oracle(v, w), star_oracle(w, v));
}

/// Compositional inverse of a near-identity map by fixed-point iteration
/// g <- id - h(g) with h = phi - id.  Valid whenever h starts at degree 2;
/// every iteration settles one more degree, so trusted-many rounds suffice.
inline FormalMap invert_oracle(const FormalMap& phi) {
  int n = phi.dim;
  std::vector<SparsePoly> h(n, SparsePoly(n));
  for (int j = 0; j < n; ++j) {
    h[j] = phi.comp[j];
    h[j] -= SparsePoly::variable(n, j);
    if (h[j].min_degree() < 2) throw std::logic_error("oracle needs a near-identity map");
  }
  FormalMap g = FormalMap::identity(n, phi.trusted);
  for (int round = 0; round < phi.trusted; ++round) {
    FormalMap next = FormalMap::identity(n, phi.trusted);
    for (int j = 0; j < n; ++j) {
      next.comp[j] -= h[j].subst(g.comp, phi.trusted);
      next.comp[j] = next.comp[j].truncated(phi.trusted);
    }
    g = next;
  }
  return g;
}

inline MultiIndex random_monomial(std::mt19937& rng, int dim, int deg) {
  std::uniform_int_distribution<int> var(0, dim - 1);
  MultiIndex alpha(dim, 0);
  for (int step = 0; step < deg; ++step) alpha[var(rng)] += 1;
  return alpha;
}

/// Random field with terms of total degree <= maxdeg over small rationals.
inline FormalVectorField random_field(std::mt19937& rng, int dim, int maxdeg, int terms,
                                      bool gaussian = false) {
  std::uniform_int_distribution<long> coeff(-4, 4);
  std::uniform_int_distribution<int> deg(0, maxdeg);
  std::uniform_int_distribution<int> target(0, dim - 1);
  FormalVectorField f = FormalVectorField::zero(dim, maxdeg);
  for (int t = 0; t < terms; ++t) {
    GaussianRational c = GaussianRational::of(coeff(rng), 1, gaussian ? coeff(rng) : 0, 2);
    f.add_term(random_monomial(rng, dim, deg(rng)), target(rng), c);
  }
  return f;
}

/// Random near-identity map: identity plus terms of degree 2..maxdeg.
inline FormalMap random_near_identity(std::mt19937& rng, int dim, int maxdeg, int terms) {
  std::uniform_int_distribution<long> coeff(-3, 3);
  std::uniform_int_distribution<int> deg(2, std::max(2, maxdeg));
  std::uniform_int_distribution<int> target(0, dim - 1);
  FormalVectorField w = FormalVectorField::zero(dim, maxdeg);
  for (int t = 0; t < terms; ++t)
    w.add_term(random_monomial(rng, dim, deg(rng)), target(rng), GaussianRational(coeff(rng)));
  return FormalMap::near_identity(w, maxdeg);
}

}  // namespace oracles
