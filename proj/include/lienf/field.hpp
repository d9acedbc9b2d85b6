#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "lienf/linalg.hpp"
#include "lienf/scalar.hpp"

namespace lienf {

/// Exponent vector of a monomial; entry v is the power of variable v.
using MultiIndex = std::vector<int>;

int degree(const MultiIndex& alpha);
MultiIndex zero_index(int dim);
MultiIndex unit_index(int dim, int v);

/// Canonical monomial order: by total degree, then within a degree the
/// monomial whose earlier variables carry higher exponents comes first
/// (x1^2, x1 x2, x2^2, ...).  All serialization and iteration inherit this.
struct MonomialLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Used by degree bookkeeping to mean "no terms at all".
inline constexpr int kNoDegree = std::numeric_limits<int>::max();

/// Multivariate polynomial over Q(i) with sparse canonical storage.  The zero
/// polynomial has an empty term map; add_term prunes cancellations, so term
/// maps never hold zero coefficients.
class SparsePoly {
 public:
  explicit SparsePoly(int dim = 0) : dim_(dim) {}

  static SparsePoly constant(int dim, const GaussianRational& c);
  static SparsePoly variable(int dim, int v);

  int dim() const { return dim_; }
  const std::map<MultiIndex, GaussianRational, MonomialLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& alpha, const GaussianRational& c);
  GaussianRational coeff(const MultiIndex& alpha) const;
  GaussianRational constant_term() const;

  int min_degree() const;  // kNoDegree when zero
  int max_degree() const;  // -1 when zero
  /// Smallest total degree >= 1 present, kNoDegree when none.
  int min_positive_degree() const;

  SparsePoly truncated(int maxdeg) const;
  SparsePoly degree_slice(int d) const;

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const GaussianRational& c);

  SparsePoly diff(int v) const;
  static SparsePoly mul(const SparsePoly& a, const SparsePoly& b, int maxdeg);

  /// Substitute images[v] for variable v; every image must share one target
  /// dimension.  Result truncated at maxdeg.
  SparsePoly subst(const std::vector<SparsePoly>& images, int maxdeg) const;

  bool operator==(const SparsePoly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

 private:
  int dim_;
  std::map<MultiIndex, GaussianRational, MonomialLess> terms_;
};

/// Formal vector field sum of c * x^alpha d/dx_target, truncated at a trusted
/// degree: terms of total degree <= trusted are exact, nothing is stored or
/// claimed beyond it.
struct FormalVectorField {
  int dim = 0;
  int trusted = 0;
  std::vector<SparsePoly> comp;  // comp[j] multiplies d/dx_{j+1}

  static FormalVectorField zero(int dim, int trusted);

  void add_term(const MultiIndex& alpha, int target, const GaussianRational& c);
  bool is_zero() const;
  /// True when every stored term of total degree <= through vanishes.
  bool is_zero_through(int through) const;

  int min_term_degree() const;           // kNoDegree when empty
  int min_positive_term_degree() const;  // kNoDegree when no degree >= 1 term

  FormalVectorField truncated(int maxdeg) const;
  FormalVectorField degree_slice(int d) const;
  /// Constant coefficients: entry j is comp[j](0).
  Vec constant_part() const;
  /// Linear coefficients as a matrix: entry (j, v) multiplies x_v in comp[j].
  Mat linear_matrix() const;
};

FormalVectorField field_add(const FormalVectorField& a, const FormalVectorField& b);
FormalVectorField field_sub(const FormalVectorField& a, const FormalVectorField& b);
FormalVectorField field_scale(const GaussianRational& c, const FormalVectorField& v);
bool field_equal_through(const FormalVectorField& a, const FormalVectorField& b, int through);

/// Exact linear combination; trust is the minimum over terms with a nonzero
/// coefficient (zero coefficients cannot contaminate anything).
FormalVectorField field_combination(const std::vector<FormalVectorField>& fields,
                                    const Vec& coeffs);

/// The product where the first field acts as a derivation on the second
/// field's coefficient functions.  Not associative; its commutator is the
/// field bracket.
FormalVectorField star(const FormalVectorField& v, const FormalVectorField& w);
FormalVectorField bracket(const FormalVectorField& v, const FormalVectorField& w);

/// Formal coordinate change fixing the origin: component j is the image of
/// coordinate j, with no constant term.
struct FormalMap {
  int dim = 0;
  int trusted = 0;
  std::vector<SparsePoly> comp;

  static FormalMap identity(int dim, int trusted);
  /// id + w, where w is the perturbation field; the map is an exact
  /// polynomial object, so the caller states the trusted degree.
  static FormalMap near_identity(const FormalVectorField& w, int trusted);
  /// Linear map with matrix m (columns index source variables).
  static FormalMap linear(const Mat& m, int trusted);

  bool is_identity() const;
  Mat linear_part() const;
};

/// Jacobian of the map applied to the field, as a tuple of functions of the
/// source variables.
FormalVectorField apply_derivation(const FormalVectorField& t, const FormalMap& phi);
FormalVectorField compose_field_map(const FormalVectorField& t, const FormalMap& phi);
FormalMap compose_maps(const FormalMap& outer, const FormalMap& inner);
/// Compositional inverse; SingularLinearPart when the linear part is not
/// invertible.
FormalMap invert_map(const FormalMap& phi);

FormalVectorField pushforward(const FormalVectorField& t, const FormalMap& phi);
/// Overload with the inverse already at hand (they are expensive to recompute
/// when many fields move through one map).
FormalVectorField pushforward(const FormalVectorField& t, const FormalMap& phi,
                              const FormalMap& phi_inverse);

/// Stable text rendering.  Variables are named x1..xp then y1..yq when a
/// split point p is given, x1..xn otherwise.
std::string render_monomial(const MultiIndex& alpha, int p = -1);
std::string render_field(const FormalVectorField& v, int p = -1);
std::string render_map(const FormalMap& m, int p = -1);

}  // namespace lienf
