#include "lienf/resonance.hpp"

#include <algorithm>
#include <sstream>

#include "lienf/errors.hpp"

namespace lienf {

namespace {

bool vec_is_zero(const Vec& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

GaussianRational dot(const Vec& form, const Vec& x0) {
  GaussianRational s(0);
  for (std::size_t k = 0; k < form.size(); ++k) s = s + form[k] * x0[k];
  return s;
}

void collect_indices(int dim, int remaining, int pos, MultiIndex& cur,
                     std::vector<MultiIndex>& out) {
  if (pos == dim) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    collect_indices(dim, remaining - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

std::string form_str(const Vec& f) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k) os << ", ";
    os << f[k].str();
  }
  os << ")";
  return os.str();
}

}  // namespace

std::vector<MultiIndex> monomials_of_degree(int dim, int deg) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dim, 0);
  collect_indices(dim, deg, 0, cur, out);
  return out;
}

Vec lambda_form(const MultiIndex& alpha, int target, const SpectralData& sp) {
  const int rdim = sp.mu.empty() ? (sp.nu.empty() ? 0 : static_cast<int>(sp.nu[0].size()))
                                 : static_cast<int>(sp.mu[0].size());
  auto coord_form = [&](int v) -> const Vec& { return v < sp.p ? sp.mu[v] : sp.nu[v - sp.p]; };
  Vec out(rdim, GaussianRational(0));
  for (int v = 0; v < sp.p + sp.q; ++v) {
    if (alpha[v] == 0) continue;
    const Vec& f = coord_form(v);
    for (int k = 0; k < rdim; ++k) out[k] = out[k] + GaussianRational(alpha[v]) * f[k];
  }
  const Vec& t = coord_form(target);
  for (int k = 0; k < rdim; ++k) out[k] = out[k] - t[k];
  return out;
}

bool operator==(const ResonancePair& a, const ResonancePair& b) {
  return a.alpha == b.alpha && a.target == b.target;
}

ResonanceSets resonance_sets(const SpectralData& sp, const std::vector<Vec>& roots,
                             int degree) {
  ResonanceSets out;
  out.degree = degree;
  const int rdim = static_cast<int>(roots.empty() ? 0 : roots[0].size());
  if (rdim == 0) return out;

  auto is_root = [&](const Vec& f) {
    for (const auto& v : roots)
      if (f == v) return true;
    return false;
  };

  for (int deg = 1; deg <= degree; ++deg)
    for (const MultiIndex& alpha : monomials_of_degree(sp.q, deg)) {
      Vec base(rdim, GaussianRational(0));
      for (int j = 0; j < sp.q; ++j)
        for (int k = 0; k < rdim; ++k)
          base[k] = base[k] + GaussianRational(alpha[j]) * sp.nu[j][k];
      for (int i = 0; i < sp.p; ++i) {
        Vec f(rdim);
        for (int k = 0; k < rdim; ++k) f[k] = base[k] - sp.mu[i][k];
        if (is_root(f)) out.r.push_back({alpha, i});
        if (vec_is_zero(f)) out.r0.push_back({alpha, i});
      }
      for (int i = 0; i < sp.q; ++i) {
        Vec f(rdim);
        for (int k = 0; k < rdim; ++k) f[k] = base[k] - sp.nu[i][k];
        if (is_root(f)) out.rprime.push_back({alpha, i});
        if (vec_is_zero(f)) out.r0prime.push_back({alpha, i});
      }
    }
  return out;
}

std::optional<std::string> certify_resonance_vector(const SpectralData& sp,
                                                    const std::vector<Vec>& roots,
                                                    int degree, const Vec& x0) {
  const int n = sp.p + sp.q;
  for (int deg = 0; deg <= degree; ++deg)
    for (const MultiIndex& alpha : monomials_of_degree(n, deg))
      for (int j = 0; j < n; ++j) {
        Vec f = lambda_form(alpha, j, sp);
        GaussianRational val = dot(f, x0);
        for (const Vec& root : roots) {
          if (val == dot(root, x0) && f != root) {
            std::ostringstream os;
            os << "weight form " << form_str(f) << " of " << render_monomial(alpha, sp.p)
               << " d/d" << (j < sp.p ? "x" + std::to_string(j + 1)
                                      : "y" + std::to_string(j - sp.p + 1))
               << " matches root " << form_str(root) << " in value only";
            return os.str();
          }
        }
      }
  return std::nullopt;
}

Vec find_resonance_vector(const LieAlgebra& g, const Decomposition& d,
                          const SpectralData& sp, const std::vector<Vec>& roots,
                          int degree, int max_box) {
  const int rdim = static_cast<int>(d.r.size());
  if (rdim == 0) fail(ErrorKind::SearchExhausted, "the radical is trivial");

  // Centralizer of s inside r, in r-basis coordinates.
  Mat constraints;
  for (int sb : d.s)
    for (int cc = 0; cc < g.dim(); ++cc) {
      Vec row(rdim);
      for (int k = 0; k < rdim; ++k) row[k] = g.c[d.r[k]][sb][cc];
      constraints.push_back(row);
    }
  Mat z = constraints.empty() ? mat_identity(rdim) : nullspace(constraints);
  const int zdim = z.empty() ? 0 : static_cast<int>(z[0].size());
  if (zdim == 0)
    fail(ErrorKind::SearchExhausted, "the centralizer of s in the radical is trivial");

  std::vector<int> t(zdim, 0);
  std::string last_witness;
  std::optional<Vec> found;
  auto enumerate = [&](auto&& self, int pos, int box, bool boundary) -> void {
    if (found) return;
    if (pos == zdim) {
      if (!boundary) return;
      Vec x0(rdim, GaussianRational(0));
      for (int k = 0; k < rdim; ++k)
        for (int c = 0; c < zdim; ++c) x0[k] = x0[k] + GaussianRational(t[c]) * z[k][c];
      auto witness = certify_resonance_vector(sp, roots, degree, x0);
      if (!witness)
        found = x0;
      else
        last_witness = *witness;
      return;
    }
    for (int val = box; val >= -box && !found; --val) {
      t[pos] = val;
      self(self, pos + 1, box, boundary || val == box || val == -box);
    }
    t[pos] = 0;
  };
  for (int box = 1; box <= max_box && !found; ++box) enumerate(enumerate, 0, box, false);
  if (!found)
    fail(ErrorKind::SearchExhausted,
         "no certified element within box " + std::to_string(max_box) +
             (last_witness.empty() ? "" : "; last witness: " + last_witness));
  return *found;
}

}  // namespace lienf
