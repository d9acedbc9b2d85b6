#pragma once

#include <optional>
#include <vector>

#include "lienf/scalar.hpp"

namespace lienf {

using Vec = std::vector<GaussianRational>;
using Mat = std::vector<Vec>;  // row-major, rectangular

Mat mat_zero(int rows, int cols);
Mat mat_identity(int n);
Vec unit_coords(int dim, int k);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_apply(const Mat& a, const Vec& v);
Mat mat_transpose(const Mat& a);
bool mat_equal(const Mat& a, const Mat& b);
bool mat_is_upper_triangular(const Mat& a);

/// In-place reduction to reduced row echelon form.  Returns the pivot column
/// indices in order.  Fully deterministic: first nonzero pivot, no swaps
/// beyond the standard row exchange.
std::vector<int> rref(Mat& m);

int rank(Mat m);

std::optional<Mat> inverse(const Mat& m);

/// Canonical kernel basis as columns (free variable set to 1, pivots solved,
/// in ascending free-column order).  Result is n x k; k may be 0.
Mat nullspace(const Mat& m);

/// One exact solution of m x = b with every free variable set to zero, or
/// nullopt if the system is inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& b);

/// Monic characteristic polynomial det(tI - m), ascending coefficients
/// (size n+1, last entry 1).
Vec charpoly(const Mat& m);

/// All distinct roots of a monic polynomial (ascending coefficients) that lie
/// in Q(i), in canonical scalar order.  Roots outside Q(i) are silently
/// absent; the caller decides whether that is an error.  Throws
/// RootSearchOverflow when exact divisor enumeration would leave the
/// supported magnitude envelope.
std::vector<GaussianRational> gaussian_rational_roots(const Vec& monic);

struct Triangularization {
  Mat change;                 // invertible; columns are the new basis
  std::vector<Vec> diagonal;  // diagonal[i][a] = (change^-1 mats[a] change)[i][i]
};

/// Common upper-triangularization of a family of commuting-or-not square
/// matrices by iterated common-eigenvector extraction.  If every matrix is
/// already upper triangular the change is the identity.  Throws
/// EigenvalueNotGaussianRational if a required characteristic polynomial has
/// no root in Q(i) at all, NotSimultaneouslyTriangularizable if roots exist
/// but no common eigenvector chain does.
Triangularization simultaneous_triangularize(const std::vector<Mat>& mats, int dim);

}  // namespace lienf
