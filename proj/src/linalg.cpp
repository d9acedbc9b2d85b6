#include "lienf/linalg.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace lienf {

namespace {

int rows_of(const Mat& m) { return static_cast<int>(m.size()); }
int cols_of(const Mat& m) { return m.empty() ? 0 : static_cast<int>(m[0].size()); }

void require_rect(const Mat& m) {
  for (const Vec& row : m)
    if (static_cast<int>(row.size()) != cols_of(m))
      fail(ErrorKind::DimensionMismatch, "ragged matrix");
}

}  // namespace

Mat mat_zero(int rows, int cols) { return Mat(rows, Vec(cols, GaussianRational(0))); }

Mat mat_identity(int n) {
  Mat m = mat_zero(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = GaussianRational(1);
  return m;
}

Vec unit_coords(int dim, int k) {
  Vec v(dim, GaussianRational(0));
  v[k] = GaussianRational(1);
  return v;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  require_rect(a);
  require_rect(b);
  if (cols_of(a) != rows_of(b)) fail(ErrorKind::DimensionMismatch, "matrix product shapes");
  Mat out = mat_zero(rows_of(a), cols_of(b));
  for (int i = 0; i < rows_of(a); ++i)
    for (int k = 0; k < cols_of(a); ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < cols_of(b); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Vec mat_apply(const Mat& a, const Vec& v) {
  if (cols_of(a) != static_cast<int>(v.size()))
    fail(ErrorKind::DimensionMismatch, "matrix-vector shapes");
  Vec out(rows_of(a), GaussianRational(0));
  for (int i = 0; i < rows_of(a); ++i)
    for (int j = 0; j < cols_of(a); ++j) out[i] += a[i][j] * v[j];
  return out;
}

Mat mat_transpose(const Mat& a) {
  Mat out = mat_zero(cols_of(a), rows_of(a));
  for (int i = 0; i < rows_of(a); ++i)
    for (int j = 0; j < cols_of(a); ++j) out[j][i] = a[i][j];
  return out;
}

bool mat_equal(const Mat& a, const Mat& b) { return a == b; }

bool mat_is_upper_triangular(const Mat& a) {
  for (int i = 0; i < rows_of(a); ++i)
    for (int j = 0; j < std::min(i, cols_of(a)); ++j)
      if (!a[i][j].is_zero()) return false;
  return true;
}

std::vector<int> rref(Mat& m) {
  require_rect(m);
  std::vector<int> pivots;
  int nr = rows_of(m), nc = cols_of(m);
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int p = -1;
    for (int i = r; i < nr; ++i)
      if (!m[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    GaussianRational inv = m[r][c].inverse();
    for (int j = c; j < nc; ++j) m[r][j] *= inv;
    for (int i = 0; i < nr; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      GaussianRational f = m[i][c];
      for (int j = c; j < nc; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

std::optional<Mat> inverse(const Mat& m) {
  int n = rows_of(m);
  if (n != cols_of(m)) fail(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  Mat aug = mat_zero(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = GaussianRational(1);
  }
  std::vector<int> pivots = rref(aug);
  // Invertible exactly when the left block carries all n pivots.
  if (n > 0 && (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1))
    return std::nullopt;
  Mat out = mat_zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

Mat nullspace(const Mat& m) {
  Mat red = m;
  std::vector<int> pivots = rref(red);
  int nc = cols_of(m);
  std::vector<bool> is_pivot(nc, false);
  for (int c : pivots) is_pivot[c] = true;
  Mat basis = mat_zero(nc, 0);
  for (int free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    Vec v(nc, GaussianRational(0));
    v[free] = GaussianRational(1);
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red[i][free];
    for (int c = 0; c < nc; ++c) basis[c].push_back(v[c]);
  }
  return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  int nr = rows_of(m), nc = cols_of(m);
  if (static_cast<int>(b.size()) != nr) fail(ErrorKind::DimensionMismatch, "solve shapes");
  Mat aug = mat_zero(nr, nc + 1);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nc; ++j) aug[i][j] = m[i][j];
    aug[i][nc] = b[i];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == nc) return std::nullopt;
  Vec x(nc, GaussianRational(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][nc];
  return x;
}

Vec charpoly(const Mat& m) {
  int n = rows_of(m);
  if (n != cols_of(m)) fail(ErrorKind::DimensionMismatch, "charpoly of non-square matrix");
  Vec c(n + 1, GaussianRational(0));
  c[n] = GaussianRational(1);
  if (n == 0) return c;
  auto trace = [n](const Mat& a) {
    GaussianRational t(0);
    for (int i = 0; i < n; ++i) t += a[i][i];
    return t;
  };
  Mat work = m;
  c[n - 1] = -trace(work);
  for (int k = 2; k <= n; ++k) {
    for (int i = 0; i < n; ++i) work[i][i] += c[n - k + 1];
    work = mat_mul(m, work);
    c[n - k] = -(trace(work) / GaussianRational(k));
  }
  return c;
}

namespace {

// Exact integer factorization by trial division, within a fixed envelope.
// Charpoly constant terms at desk scale factor instantly; anything bigger is
// refused instead of risking a missed divisor (and hence a missed root).
std::map<BigInt, int> factor_or_fail(BigInt n) {
  const BigInt trial_cap = 1000000;
  const BigInt prime_cap = trial_cap * trial_cap;
  std::map<BigInt, int> out;
  for (BigInt p = 2; p <= trial_cap && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) {
    if (n > prime_cap)
      fail(ErrorKind::RootSearchOverflow,
           "constant-term norm " + n.str() + " exceeds the exact factorization envelope");
    ++out[n];
  }
  return out;
}

std::vector<BigInt> divisors_up_to(const std::map<BigInt, int>& factors, const BigInt& bound) {
  std::vector<BigInt> divs{1};
  for (const auto& [p, e] : factors) {
    size_t base = divs.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) {
        BigInt d = divs[i] * pk;
        if (d <= bound) divs.push_back(d);
      }
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

struct GInt {
  BigInt re, im;
  BigInt norm() const { return re * re + im * im; }
};

// Exact quotient in Z[i], or nullopt when v does not divide u.
std::optional<GInt> gint_exact_div(const GInt& u, const GInt& v) {
  BigInt n = v.norm();
  if (n == 0) return std::nullopt;
  BigInt re = u.re * v.re + u.im * v.im;
  BigInt im = u.im * v.re - u.re * v.im;
  if (re % n != 0 || im % n != 0) return std::nullopt;
  return GInt{re / n, im / n};
}

}  // namespace

std::vector<GaussianRational> gaussian_rational_roots(const Vec& monic) {
  if (monic.empty() || monic.back() != GaussianRational(1))
    fail(ErrorKind::DimensionMismatch, "root search needs a monic polynomial");
  Vec p = monic;
  std::vector<GaussianRational> roots;

  while (p.size() > 1 && p.front().is_zero()) {
    if (roots.empty()) roots.push_back(GaussianRational(0));
    p.erase(p.begin());
  }
  int d = static_cast<int>(p.size()) - 1;
  if (d == 0) {
    std::sort(roots.begin(), roots.end(), GaussianRationalLess{});
    return roots;
  }

  // Clear denominators: with t = u/m the polynomial m^d p(u/m) is monic with
  // Gaussian-integer coefficients, so every Q(i) root of p is u/m for a
  // Gaussian-integer divisor u of the new constant term.
  BigInt m = 1;
  for (const GaussianRational& c : p) {
    m = boost::multiprecision::lcm(m, denominator(c.re()));
    m = boost::multiprecision::lcm(m, denominator(c.im()));
  }
  GaussianRational scale{BigRat(m), BigRat(0)};
  Vec q(p.size());
  GaussianRational power(1);
  for (int k = d; k >= 0; --k) {
    q[k] = p[k] * power;
    power *= scale;
  }
  GInt b0{numerator(q[0].re()), numerator(q[0].im())};

  BigInt n = b0.norm();
  BigInt half = boost::multiprecision::sqrt(n);
  std::vector<BigInt> small_norms = divisors_up_to(factor_or_fail(n), half);

  auto horner_is_root = [&p, d](const GaussianRational& t) {
    GaussianRational acc = p[d];
    for (int k = d - 1; k >= 0; --k) acc = acc * t + p[k];
    return acc.is_zero();
  };

  std::vector<GaussianRational> found;
  auto try_candidate = [&](const GInt& u) {
    GaussianRational cand(BigRat(u.re, m), BigRat(u.im, m));
    if (horner_is_root(cand)) found.push_back(cand);
  };
  const BigInt rep_cap = 10000000;
  for (const BigInt& k : small_norms) {
    BigInt xmax = boost::multiprecision::sqrt(k);
    if (xmax > rep_cap)
      fail(ErrorKind::RootSearchOverflow, "divisor norm beyond representation envelope");
    for (BigInt x = 0; x <= xmax; ++x) {
      BigInt y2 = k - x * x;
      BigInt y = boost::multiprecision::sqrt(y2);
      if (y * y != y2) continue;
      // All unit multiples and the conjugate of x + yi share the norm k.
      std::vector<GInt> reps = {{x, y}, {x, -y}, {-x, y}, {-x, -y}, {y, x}, {y, -x}, {-y, x}, {-y, -x}};
      for (const GInt& v : reps) {
        try_candidate(v);
        if (std::optional<GInt> big = gint_exact_div(b0, v)) try_candidate(*big);
      }
    }
  }
  for (const GaussianRational& r : found) roots.push_back(r);
  std::sort(roots.begin(), roots.end(), GaussianRationalLess{});
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

namespace {

std::vector<GaussianRational> distinct_eigenvalues(const Mat& m) {
  return gaussian_rational_roots(charpoly(m));
}

// Basis (as columns) of {v in span(cols of e) : (m - lambda) v = 0}.
Mat intersect_eigenspace(const Mat& e, const Mat& m, const GaussianRational& lambda) {
  Mat me = mat_mul(m, e);
  for (int i = 0; i < static_cast<int>(e.size()); ++i)
    for (int j = 0; j < static_cast<int>(e[0].size()); ++j) me[i][j] -= lambda * e[i][j];
  Mat y = nullspace(me);
  return mat_mul(e, y);
}

// True when m acts as a single scalar on span(cols of e); reports the scalar.
bool scalar_on(const Mat& m, const Mat& e, GaussianRational* lambda_out) {
  int dim = static_cast<int>(e.size());
  int f = e.empty() ? 0 : static_cast<int>(e[0].size());
  if (f == 0) return true;
  Vec v0(dim), mv0;
  for (int i = 0; i < dim; ++i) v0[i] = e[i][0];
  mv0 = mat_apply(m, v0);
  int lead = -1;
  for (int i = 0; i < dim; ++i)
    if (!v0[i].is_zero()) {
      lead = i;
      break;
    }
  GaussianRational lambda = mv0[lead] / v0[lead];
  Mat diff = mat_mul(m, e);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < f; ++j) {
      diff[i][j] -= lambda * e[i][j];
      if (!diff[i][j].is_zero()) return false;
    }
  *lambda_out = lambda;
  return true;
}

// Depth-first search for a vector that is an eigenvector of every matrix,
// shrinking the candidate subspace one eigenspace intersection at a time.
// Eigenvalue candidates come in canonical order, so the result (and therefore
// the whole triangularization) is deterministic.
std::optional<Vec> common_eigenvector(const std::vector<Mat>& mats, const Mat& e) {
  int branch = -1;
  for (int a = 0; a < static_cast<int>(mats.size()); ++a) {
    GaussianRational lambda;
    if (!scalar_on(mats[a], e, &lambda)) {
      branch = a;
      break;
    }
  }
  if (branch < 0) {
    Vec v(e.size());
    for (size_t i = 0; i < e.size(); ++i) v[i] = e[i][0];
    return v;
  }
  std::vector<GaussianRational> evs = distinct_eigenvalues(mats[branch]);
  if (evs.empty())
    fail(ErrorKind::EigenvalueNotGaussianRational,
         "matrix in triangularization has no Q(i) eigenvalue");
  for (const GaussianRational& lambda : evs) {
    Mat next = intersect_eigenspace(e, mats[branch], lambda);
    if (next.empty() || next[0].empty()) continue;
    if (std::optional<Vec> v = common_eigenvector(mats, next)) return v;
  }
  return std::nullopt;
}

struct TriangularizeStep {
  Mat change;
  std::vector<Vec> diagonal;
};

TriangularizeStep triangularize_rec(std::vector<Mat> mats, int dim) {
  TriangularizeStep out;
  out.change = mat_identity(dim);
  if (dim == 0) return out;

  std::optional<Vec> found = common_eigenvector(mats, mat_identity(dim));
  if (!found)
    fail(ErrorKind::NotSimultaneouslyTriangularizable,
         "no common eigenvector chain over Q(i)");
  Vec v = *found;
  int pos = -1;
  for (int i = 0; i < dim; ++i)
    if (!v[i].is_zero()) {
      pos = i;
      break;
    }
  GaussianRational inv = v[pos].inverse();
  for (int i = 0; i < dim; ++i) v[i] *= inv;

  Vec weights(mats.size());
  for (size_t a = 0; a < mats.size(); ++a) weights[a] = mat_apply(mats[a], v)[pos];

  // Quotient by span(v): drop coordinate pos, using v to straighten columns.
  std::vector<int> keep;
  for (int i = 0; i < dim; ++i)
    if (i != pos) keep.push_back(i);
  std::vector<Mat> qmats(mats.size(), mat_zero(dim - 1, dim - 1));
  for (size_t a = 0; a < mats.size(); ++a)
    for (int jj = 0; jj < dim - 1; ++jj) {
      int j = keep[jj];
      for (int ii = 0; ii < dim - 1; ++ii)
        qmats[a][ii][jj] = mats[a][keep[ii]][j] - mats[a][pos][j] * v[keep[ii]];
    }

  TriangularizeStep rest = triangularize_rec(std::move(qmats), dim - 1);

  Mat change = mat_zero(dim, dim);
  for (int i = 0; i < dim; ++i) change[i][0] = v[i];
  for (int col = 0; col < dim - 1; ++col)
    for (int ii = 0; ii < dim - 1; ++ii) change[keep[ii]][col + 1] = rest.change[ii][col];

  out.change = change;
  out.diagonal.push_back(std::move(weights));
  for (Vec& w : rest.diagonal) out.diagonal.push_back(std::move(w));
  return out;
}

}  // namespace

Triangularization simultaneous_triangularize(const std::vector<Mat>& mats, int dim) {
  for (const Mat& m : mats)
    if (rows_of(m) != dim || cols_of(m) != dim)
      fail(ErrorKind::DimensionMismatch, "triangularization shapes");

  Triangularization out;
  bool already = true;
  for (const Mat& m : mats) already = already && mat_is_upper_triangular(m);
  if (already) {
    out.change = mat_identity(dim);
    out.diagonal.assign(dim, Vec(mats.size()));
    for (int i = 0; i < dim; ++i)
      for (size_t a = 0; a < mats.size(); ++a) out.diagonal[i][a] = mats[a][i][i];
    return out;
  }

  TriangularizeStep step = triangularize_rec(mats, dim);
  std::optional<Mat> pinv = inverse(step.change);
  if (!pinv)
    fail(ErrorKind::NotSimultaneouslyTriangularizable, "change of basis is singular");
  for (size_t a = 0; a < mats.size(); ++a) {
    Mat t = mat_mul(*pinv, mat_mul(mats[a], step.change));
    if (!mat_is_upper_triangular(t))
      fail(ErrorKind::NotSimultaneouslyTriangularizable,
           "eigenvector chain did not triangularize input " + std::to_string(a));
    for (int i = 0; i < dim; ++i)
      if (t[i][i] != step.diagonal[i][a])
        fail(ErrorKind::NotSimultaneouslyTriangularizable, "inconsistent diagonal");
  }
  out.change = std::move(step.change);
  out.diagonal = std::move(step.diagonal);
  return out;
}

}  // namespace lienf
