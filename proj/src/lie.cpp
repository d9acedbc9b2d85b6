#include "lienf/lie.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lienf/errors.hpp"

namespace lienf {

namespace {

bool vec_is_zero(const Vec& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = out[k] + b[k];
  return out;
}

int vec_compare(const Vec& a, const Vec& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    int c = GaussianRational::compare(a[k], b[k]);
    if (c != 0) return c;
  }
  return 0;
}

/// Canonical column basis of the span of the given coordinate vectors.
std::vector<Vec> span_basis(const std::vector<Vec>& vectors, int dim) {
  if (vectors.empty()) return {};
  Mat rows(vectors.size(), Vec(dim, GaussianRational(0)));
  for (std::size_t i = 0; i < vectors.size(); ++i) rows[i] = vectors[i];
  rref(rows);
  std::vector<Vec> basis;
  for (const auto& row : rows)
    if (!vec_is_zero(row)) basis.push_back(row);
  return basis;
}

bool indices_valid(const std::vector<int>& idx, int dim) {
  std::set<int> seen;
  for (int i : idx) {
    if (i < 0 || i >= dim) return false;
    if (!seen.insert(i).second) return false;
  }
  return true;
}

std::string coords_str(const LieAlgebra& g, const Vec& v) {
  std::ostringstream os;
  bool first = true;
  for (int a = 0; a < g.dim(); ++a) {
    if (v[a].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << v[a].str() << ")*" << g.names[a];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

Vec LieAlgebra::bracket_coords(const Vec& u, const Vec& v) const {
  Vec out(dim(), GaussianRational(0));
  for (int a = 0; a < dim(); ++a) {
    if (u[a].is_zero()) continue;
    for (int b = 0; b < dim(); ++b) {
      if (v[b].is_zero()) continue;
      GaussianRational w = u[a] * v[b];
      for (int cc = 0; cc < dim(); ++cc) out[cc] = out[cc] + w * c[a][b][cc];
    }
  }
  return out;
}

bool ValidationReport::ok() const {
  for (const auto& ch : checks)
    if (!ch.passed) return false;
  return true;
}

std::string ValidationReport::first_failure() const {
  for (const auto& ch : checks)
    if (!ch.passed) return ch.name + ": " + ch.detail;
  return "";
}

ValidationReport validate_input(const LieAlgebra& g, const Decomposition& d,
                                const NonlinearRep& t) {
  ValidationReport rep;
  const int dim = g.dim();
  auto add = [&rep](const std::string& name, bool passed, const std::string& detail) {
    rep.checks.push_back({name, passed, passed ? "" : detail});
  };

  {
    bool ok = static_cast<int>(g.c.size()) == dim;
    for (const auto& row : g.c) {
      ok = ok && static_cast<int>(row.size()) == dim;
      for (const auto& v : row) ok = ok && static_cast<int>(v.size()) == dim;
    }
    ok = ok && static_cast<int>(t.fields.size()) == dim && t.n >= 1 && t.degree >= 1;
    for (const auto& f : t.fields) ok = ok && f.dim == t.n && f.trusted >= t.degree;
    ok = ok && indices_valid(d.m, dim) && indices_valid(d.g0, dim) &&
         indices_valid(d.r, dim) && indices_valid(d.s, dim);
    add("shape", ok, "structure constants, fields, or index lists have inconsistent sizes");
    if (!ok) return rep;
  }

  {
    bool ok = true;
    std::string detail;
    for (int a = 0; a < dim && ok; ++a)
      for (int b = 0; b < dim && ok; ++b)
        if (!vec_is_zero(vec_add(g.c[a][b], g.c[b][a]))) {
          ok = false;
          detail = "[" + g.names[a] + "," + g.names[b] + "] != -[" + g.names[b] + "," +
                   g.names[a] + "]";
        }
    add("antisymmetry", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (int a = 0; a < dim && ok; ++a)
      for (int b = a + 1; b < dim && ok; ++b)
        for (int cc = b + 1; cc < dim && ok; ++cc) {
          Vec s = g.bracket_coords(g.c[a][b], unit_coords(dim, cc));
          s = vec_add(s, g.bracket_coords(g.c[b][cc], unit_coords(dim, a)));
          s = vec_add(s, g.bracket_coords(g.c[cc][a], unit_coords(dim, b)));
          if (!vec_is_zero(s)) {
            ok = false;
            detail = "jacobiator of (" + g.names[a] + ", " + g.names[b] + ", " +
                     g.names[cc] + ") = " + coords_str(g, s);
          }
        }
    add("jacobi", ok, detail);
  }

  {
    std::vector<int> mg = d.m, rs = d.r;
    mg.insert(mg.end(), d.g0.begin(), d.g0.end());
    rs.insert(rs.end(), d.s.begin(), d.s.end());
    std::sort(mg.begin(), mg.end());
    std::sort(rs.begin(), rs.end());
    std::vector<int> all(dim);
    for (int i = 0; i < dim; ++i) all[i] = i;
    std::vector<int> g0s = d.g0;
    std::sort(g0s.begin(), g0s.end());
    bool ok = mg == all && rs == g0s;
    add("partition", ok, "m, g0 must partition the basis and r, s must partition g0");
  }

  std::vector<bool> in_m(dim, false), in_r(dim, false), in_s(dim, false);
  for (int i : d.m) in_m[i] = true;
  for (int i : d.r) in_r[i] = true;
  for (int i : d.s) in_s[i] = true;

  {
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < d.m.size() && ok; ++i)
      for (std::size_t j = i + 1; j < d.m.size() && ok; ++j)
        if (!vec_is_zero(g.c[d.m[i]][d.m[j]])) {
          ok = false;
          detail = "[" + g.names[d.m[i]] + "," + g.names[d.m[j]] + "] != 0";
        }
    for (int a = 0; a < dim && ok; ++a)
      for (int mj : d.m) {
        bool inside = true;
        for (int cc = 0; cc < dim; ++cc)
          if (!in_m[cc] && !g.c[a][mj][cc].is_zero()) inside = false;
        if (!inside) {
          ok = false;
          detail = "[" + g.names[a] + "," + g.names[mj] + "] leaves the ideal";
          break;
        }
      }
    add("abelian-ideal", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (int a : d.g0) {
      for (int rj : d.r) {
        for (int cc = 0; cc < dim; ++cc)
          if (!in_r[cc] && !in_m[cc] && !g.c[a][rj][cc].is_zero()) {
            ok = false;
            detail = "[" + g.names[a] + "," + g.names[rj] + "] has a component along " +
                     g.names[cc];
          }
      }
    }
    add("radical-ideal", ok, detail);
  }

  {
    std::vector<Vec> series;
    for (int rj : d.r) series.push_back(unit_coords(dim, rj));
    series = span_basis(series, dim);
    bool ok = true;
    for (int round = 0; round <= dim; ++round) {
      if (series.empty()) break;
      std::vector<Vec> next;
      for (std::size_t i = 0; i < series.size(); ++i)
        for (std::size_t j = i + 1; j < series.size(); ++j)
          next.push_back(g.bracket_coords(series[i], series[j]));
      next = span_basis(next, dim);
      if (next.size() >= series.size()) {
        ok = false;
        break;
      }
      series = next;
    }
    ok = ok && series.empty();
    add("radical-solvable", ok, "derived series of r does not reach zero");
  }

  {
    bool ok = true;
    std::string detail;
    for (int a : d.s)
      for (int b : d.s)
        for (int cc = 0; cc < dim; ++cc)
          if (!in_s[cc] && !g.c[a][b][cc].is_zero() && ok) {
            ok = false;
            detail = "[" + g.names[a] + "," + g.names[b] + "] has a component along " +
                     g.names[cc];
          }
    add("subalgebra", ok, detail);
  }

  {
    const int sd = static_cast<int>(d.s.size());
    bool ok = true;
    if (sd > 0) {
      std::vector<Mat> ad(sd, mat_zero(sd, sd));
      for (int ia = 0; ia < sd; ++ia)
        for (int ib = 0; ib < sd; ++ib)
          for (int ic = 0; ic < sd; ++ic) ad[ia][ic][ib] = g.c[d.s[ia]][d.s[ib]][d.s[ic]];
      Mat killing = mat_zero(sd, sd);
      for (int ia = 0; ia < sd; ++ia)
        for (int ib = 0; ib < sd; ++ib) {
          Mat prod = mat_mul(ad[ia], ad[ib]);
          GaussianRational tr(0);
          for (int k = 0; k < sd; ++k) tr = tr + prod[k][k];
          killing[ia][ib] = tr;
        }
      ok = inverse(killing).has_value();
    }
    add("semisimple", ok, "killing form of s is degenerate");
  }

  {
    bool ok = true;
    std::string detail;
    for (int a : d.g0)
      if (!vec_is_zero(t.fields[a].constant_part()) && ok) {
        ok = false;
        detail = "field of " + g.names[a] + " does not vanish at the origin";
      }
    if (ok) {
      const int p = static_cast<int>(d.m.size());
      Mat cols = mat_zero(t.n, p);
      for (int j = 0; j < p; ++j) {
        Vec cv = t.fields[d.m[j]].constant_part();
        for (int i = 0; i < t.n; ++i) cols[i][j] = cv[i];
      }
      if (rank(cols) != p) {
        ok = false;
        detail = "constant parts of the ideal fields are linearly dependent";
      }
      if (p > t.n) {
        ok = false;
        detail = "ideal dimension exceeds the representation space dimension";
      }
    }
    add("regularity", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (int a = 0; a < dim && ok; ++a)
      for (int b = a + 1; b < dim && ok; ++b) {
        FormalVectorField lhs = bracket(t.fields[a], t.fields[b]);
        FormalVectorField rhs = field_combination(t.fields, g.c[a][b]);
        int depth = std::min(t.degree - 1, std::min(lhs.trusted, rhs.trusted));
        if (!field_equal_through(lhs, rhs, depth)) {
          ok = false;
          detail = "bracket of the fields of " + g.names[a] + ", " + g.names[b] +
                   " does not match the field of " + coords_str(g, g.c[a][b]);
        }
      }
    add("representation", ok, detail);
  }

  return rep;
}

Mat adjoint_matrix(const LieAlgebra& g, int a) {
  const int dim = g.dim();
  Mat out = mat_zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    for (int cc = 0; cc < dim; ++cc) out[cc][b] = g.c[a][b][cc];
  return out;
}

std::vector<Mat> adjoint_matrices(const LieAlgebra& g, const std::vector<int>& subset) {
  std::vector<Mat> out;
  out.reserve(subset.size());
  for (int a : subset) out.push_back(adjoint_matrix(g, a));
  return out;
}

std::vector<Vec> roots_of_radical(const LieAlgebra& g, const Decomposition& d) {
  const int rd = static_cast<int>(d.r.size());
  if (rd == 0) return {};
  Triangularization tri = simultaneous_triangularize(adjoint_matrices(g, d.r), g.dim());
  std::vector<Vec> forms = tri.diagonal;
  std::sort(forms.begin(), forms.end(),
            [](const Vec& a, const Vec& b) { return vec_compare(a, b) < 0; });
  forms.erase(std::unique(forms.begin(), forms.end(),
                          [](const Vec& a, const Vec& b) { return vec_compare(a, b) == 0; }),
              forms.end());
  bool has_zero = false;
  for (const auto& f : forms)
    if (vec_is_zero(f)) has_zero = true;
  if (!has_zero)
    fail(ErrorKind::ValidationFailed,
         "adjoint action of the radical has no zero weight; the radical cannot be solvable");
  return forms;
}

}  // namespace lienf
