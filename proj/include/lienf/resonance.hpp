#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lienf/field.hpp"
#include "lienf/lie.hpp"
#include "lienf/linalg.hpp"

namespace lienf {

/// Diagonal data of the triangularized linear actions: mu[i] and nu[j] are
/// the weight forms (coefficient vectors over the r-basis) of the i-th
/// straightened coordinate and the j-th transverse coordinate.  Empty forms
/// when the radical is trivial.
struct SpectralData {
  int p = 0, q = 0;
  Mat x_change, y_change;
  std::vector<Vec> mu, nu;
};

/// Weight form of the monomial field z^alpha d/dz_j: sum_v alpha_v lambda_v
/// minus lambda_j, where lambda concatenates mu and nu and alpha runs over
/// all p + q coordinates.
Vec lambda_form(const MultiIndex& alpha, int target, const SpectralData& sp);

/// All multi-indices over dim variables of the exact total degree, in
/// canonical monomial order.
std::vector<MultiIndex> monomials_of_degree(int dim, int deg);

/// Monomial exponents over the q transverse coordinates together with a
/// target coordinate index inside one block.
struct ResonancePair {
  MultiIndex alpha;
  int target = 0;
};
bool operator==(const ResonancePair& a, const ResonancePair& b);

/// All resonant pairs with 1 <= |alpha| <= degree, canonically ordered by
/// (alpha, target).  r and rprime collect pairs whose weight form is a root
/// (targets in the x-block and y-block respectively); r0 and r0prime collect
/// the pairs whose weight form vanishes identically.  All four are empty
/// when the radical is trivial.
struct ResonanceSets {
  int degree = 0;
  std::vector<ResonancePair> r, rprime, r0, r0prime;
};
ResonanceSets resonance_sets(const SpectralData& sp, const std::vector<Vec>& roots,
                             int degree);

/// Checks the separation property of a candidate: for every monomial weight
/// form with |alpha| <= degree and every root, equality of values at x0
/// forces equality of forms.  Returns a witness description on failure.
std::optional<std::string> certify_resonance_vector(const SpectralData& sp,
                                                    const std::vector<Vec>& roots,
                                                    int degree, const Vec& x0);

/// Deterministic search for a certified element of the radical commuting
/// with s: integer coefficient vectors over a centralizer basis are tried in
/// growing sup-norm shells, descending lexicographically inside each shell.
/// Throws SearchExhausted when no certified candidate exists within max_box.
Vec find_resonance_vector(const LieAlgebra& g, const Decomposition& d,
                          const SpectralData& sp, const std::vector<Vec>& roots,
                          int degree, int max_box);

}  // namespace lienf
