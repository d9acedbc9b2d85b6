#pragma once

#include <vector>

#include "lienf/field.hpp"
#include "lienf/linalg.hpp"

namespace lienf {

/// Joint flow map of p commuting formal vector fields on an n-dimensional
/// space, started on the section spanned by the given standard basis indices:
///   Psi(x, y) = exp(x_1 V_1 + ... + x_p V_p) applied to the section point.
/// The result is a formal map from (x, y)-coordinates to the original
/// coordinates, truncated at the working degree.  Throws NonCommuting when a
/// pair of inputs fails to commute and DegenerateFrame when the constant
/// parts of the fields together with the section do not span the space.
FormalMap build_flow_map(const std::vector<FormalVectorField>& v,
                         const std::vector<int>& section, int maxdeg);

struct StraightenedIdeal {
  int p = 0, q = 0;
  /// Change of coordinates; push a field forward along phi to express it in
  /// the straightened coordinates.  Identity when the inputs are already the
  /// first p coordinate fields.
  FormalMap phi;
  /// Section coordinate indices completing the frame, ascending.
  std::vector<int> section;
  /// p x p matrix with a[i][j] the coefficient of d/dx_i in the straightened
  /// j-th input field; always invertible.
  Mat a;
  /// The input fields pushed forward along phi: exactly constant.
  std::vector<FormalVectorField> straightened;
};

/// Simultaneous straightening of p commuting fields on an n-dimensional
/// space, independent at the origin.  The frame is recombined to a reduced
/// column echelon basis first, so inputs that already equal constant
/// coordinate fields produce the identity map.  Throws StraighteningResidue
/// if the pushforward of an input is not constant to its trusted degree.
StraightenedIdeal straighten(const std::vector<FormalVectorField>& fields, int n,
                             int maxdeg);

}  // namespace lienf
