#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lienf/lie.hpp"
#include "lienf/resonance.hpp"
#include "lienf/straighten.hpp"

namespace lienf {

/// Linear blocks of a g0 field in straightened coordinates.  The shape is
/// rigid: d/dx components affine in x with transverse-only inhomogeneity,
/// d/dy components free of x.  Throws ShapeViolation otherwise.
struct ABSplit {
  Mat k;   // p x p action on the straightened coordinates
  Mat h;   // q x q action on the transverse coordinates
  Mat a1;  // p x q cross block
};
ABSplit ab_split(const FormalVectorField& t, int p);

/// Diagonal, strictly upper, and cross pieces of a triangularized linear
/// part.  Throws NotTriangular when an entry below a block diagonal or in
/// the lower cross block is nonzero.
struct LinearSplit {
  Vec diag;     // n entries
  Mat n_upper;  // n x n, strictly upper within each block
  Mat a_cross;  // n x n, x-row y-column block only
};
LinearSplit split_linear(const Mat& linear, int p);

/// One degree of the homological solve at the distinguished element.  The
/// correction w removes every defect monomial whose diagonal weight value at
/// X0 is nonzero, sweeping in an order that makes the adjoint action of the
/// full linear part triangular; the kernel field keeps the rest.  Degree 1
/// acts on the cross block only, higher degrees on transverse-only
/// monomials.  lambda_x0 lists the weight value of each coordinate at X0.
struct HomologicalStep {
  FormalVectorField w;
  FormalVectorField kernel;
};
HomologicalStep homological_step(const FormalVectorField& t_x0, int k, int p,
                                 const Vec& lambda_x0);

/// Pushforward of the whole family along phi followed by a
/// bracket-compatibility recheck; throws RepresentationBroken on failure.
std::vector<FormalVectorField> conjugate_rep(const std::vector<FormalVectorField>& fields,
                                             const LieAlgebra& g, const FormalMap& phi);

struct StageRecord {
  std::string kind;  // "straighten", "triangularize", "homological", "semisimple"
  int degree = 0;    // grading of the stage, 0 for the first two kinds
  FormalMap map;
};

struct VerificationClause {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Commutator of the diagonal weight field at X0 with the off-diagonal
/// remainder of one radical field; reported, never asserted.
struct CommutatorNote {
  std::string name;
  bool zero = false;
  int terms = 0;
};

struct VerificationReport {
  bool passed = false;
  std::vector<VerificationClause> clauses;
  std::vector<CommutatorNote> notes;
};

struct NormalizationResult {
  int n = 0, degree = 0, p = 0, q = 0;
  FormalMap straightening_phi;
  std::vector<int> section;
  Mat a;  // p x p invertible; column j holds the constants of the j-th ideal field
  SpectralData spectral;
  std::vector<Vec> roots;
  std::optional<Vec> x0;
  ResonanceSets resonance;
  std::vector<StageRecord> stages;  // non-identity stages, outermost last
  FormalMap phi_total;
  std::vector<FormalVectorField> normal_form;
  VerificationReport verification;
};

/// Full pipeline: validation, straightening of the ideal, triangularization
/// of the radical blocks, homological normalization at a certified
/// distinguished element, radical certification, linearization of the
/// semisimple part, and final verification of the outcome against the input.
/// Stage errors carry the stage name in their message.
NormalizationResult normalize_full(const LieAlgebra& g, const Decomposition& d,
                                   const NonlinearRep& t, int max_box = 16);

/// Independent recheck of a claimed result: every certificate is recomputed
/// from the inputs (roots, resonance sets, the distinguished element's
/// properties, support conditions, and the conjugation equivalence).
VerificationReport verify_result(const LieAlgebra& g, const Decomposition& d,
                                 const NonlinearRep& original,
                                 const NormalizationResult& res);

}  // namespace lienf
