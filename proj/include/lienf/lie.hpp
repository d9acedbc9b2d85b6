#pragma once

#include <string>
#include <vector>

#include "lienf/field.hpp"
#include "lienf/linalg.hpp"

namespace lienf {

/// Finite-dimensional complex Lie algebra given by structure constants over a
/// named basis: c[a][b] is the coordinate vector of [X_a, X_b].
struct LieAlgebra {
  std::vector<std::string> names;
  std::vector<std::vector<Vec>> c;

  int dim() const { return static_cast<int>(names.size()); }
  /// Bilinear extension of the structure constants.
  Vec bracket_coords(const Vec& u, const Vec& v) const;
};

/// Index partition of the basis: the abelian ideal m, its complement g0, and
/// the Levi split of g0 into solvable radical r and semisimple part s.
/// Indices are 0-based positions into the algebra basis.
struct Decomposition {
  std::vector<int> m, g0, r, s;
};

/// Assignment of a formal vector field on E to every basis element.
struct NonlinearRep {
  int n = 0;       // dim E
  int degree = 0;  // working truncation order
  std::vector<FormalVectorField> fields;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // witness on failure, empty otherwise
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
  std::string first_failure() const;
};

/// Full input battery: structure-constant laws, decomposition structure
/// (abelian ideal, solvable radical, semisimple part), regularity of the
/// representation on m, and the bracket-compatibility of the representation
/// itself (compared through degree K-1, the trust limit of brackets against
/// constant terms).  Never throws; any failure is fatal for callers.
ValidationReport validate_input(const LieAlgebra& g, const Decomposition& d,
                                const NonlinearRep& t);

/// Matrix of ad X_a on the whole algebra: entry (c, b) = C^c_{ab}.
Mat adjoint_matrix(const LieAlgebra& g, int a);
std::vector<Mat> adjoint_matrices(const LieAlgebra& g, const std::vector<int>& subset);

/// Distinct weights of the triangularized adjoint action of the radical on
/// the whole algebra, as coefficient vectors over the r-basis, canonically
/// ordered.  Empty when r is empty; always contains the zero form otherwise.
std::vector<Vec> roots_of_radical(const LieAlgebra& g, const Decomposition& d);

}  // namespace lienf
