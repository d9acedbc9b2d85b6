#include "lienf/normal_form.hpp"

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

int x_degree(const MultiIndex& alpha, int p) {
  int d = 0;
  for (int v = 0; v < p; ++v) d += alpha[v];
  return d;
}

/// Re-raise stage failures with the stage name in front of the message.
template <typename F>
auto staged(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    fail(e.kind(), stage + ": " + e.message());
  }
}

std::string term_str(const MultiIndex& alpha, int target, const GaussianRational& c,
                     int p) {
  std::ostringstream os;
  os << c.str() << "*" << render_monomial(alpha, p) << " d/d"
     << (target < p ? "x" + std::to_string(target + 1)
                    : "y" + std::to_string(target - p + 1));
  return os.str();
}

/// Unit-coefficient monomial field used to probe the adjoint action.
FormalVectorField monomial_field(int n, const MultiIndex& alpha, int target,
                                 const GaussianRational& c, int trusted) {
  FormalVectorField f = FormalVectorField::zero(n, trusted);
  f.add_term(alpha, target, c);
  return f;
}

bool pair_in(const std::vector<ResonancePair>& set, const MultiIndex& alpha, int target) {
  for (const auto& e : set)
    if (e.alpha == alpha && e.target == target) return true;
  return false;
}

/// Support certificate of the radical fields: diagonal and strictly upper
/// linear terms are always admissible, everything else must sit in the
/// recorded resonance sets.  Returns a witness on failure.
std::optional<std::string> certify_radical(const std::vector<FormalVectorField>& fields,
                                           const LieAlgebra& g, const Decomposition& d,
                                           const ResonanceSets& rs, int p) {
  for (int rk : d.r) {
    const FormalVectorField& f = fields[rk];
    const int n = f.dim;
    for (int i = 0; i < n; ++i)
      for (const auto& [alpha, c] : f.comp[i].terms()) {
        const int deg = degree(alpha);
        const int xdeg = x_degree(alpha, p);
        std::string why;
        if (deg == 0) {
          why = "constant term";
        } else if (deg == 1) {
          int src = 0;
          while (alpha[src] == 0) ++src;
          if (src < p) {
            if (i >= p)
              why = "straightened coordinate acting across the blocks";
            else if (src < i)
              why = "entry below the diagonal";
          } else {
            if (i >= p) {
              if (src < i) why = "entry below the diagonal";
            } else {
              MultiIndex ay(alpha.begin() + p, alpha.end());
              if (!pair_in(rs.r, ay, i)) why = "cross term outside the resonance set";
            }
          }
        } else if (xdeg > 0) {
          why = "higher term depending on a straightened coordinate";
        } else {
          MultiIndex ay(alpha.begin() + p, alpha.end());
          if (i < p) {
            if (!pair_in(rs.r, ay, i)) why = "term outside the resonance set";
          } else {
            if (!pair_in(rs.rprime, ay, i - p)) why = "term outside the transverse resonance set";
          }
        }
        if (!why.empty())
          return "field of " + g.names[rk] + ": " + term_str(alpha, i, c, p) + ": " + why;
      }
  }
  return std::nullopt;
}

bool map_equal(const FormalMap& a, const FormalMap& b) {
  if (a.dim != b.dim) return false;
  int through = std::min(a.trusted, b.trusted);
  for (int i = 0; i < a.dim; ++i)
    if (!(a.comp[i].truncated(through) == b.comp[i].truncated(through))) return false;
  return true;
}

/// Components of the map minus the identity must not involve the
/// straightened coordinates; such maps leave constant fields untouched.
bool preserves_straightened_block(const FormalMap& m, int p) {
  for (int i = 0; i < m.dim; ++i) {
    SparsePoly rest = m.comp[i];
    rest -= SparsePoly::variable(m.dim, i);
    for (const auto& [alpha, c] : rest.terms())
      if (x_degree(alpha, p) > 0) return false;
  }
  return true;
}

}  // namespace

ABSplit ab_split(const FormalVectorField& t, int p) {
  const int n = t.dim;
  const int q = n - p;
  ABSplit out;
  out.k = mat_zero(p, p);
  out.h = mat_zero(q, q);
  out.a1 = mat_zero(p, q);
  for (int i = 0; i < n; ++i)
    for (const auto& [alpha, c] : t.comp[i].terms()) {
      const int deg = degree(alpha);
      const int xdeg = x_degree(alpha, p);
      if (deg == 0)
        fail(ErrorKind::ShapeViolation, "constant term " + term_str(alpha, i, c, p));
      if (i >= p) {
        if (xdeg > 0)
          fail(ErrorKind::ShapeViolation,
               "transverse component depends on a straightened coordinate: " +
                   term_str(alpha, i, c, p));
        if (deg == 1) {
          int src = 0;
          while (alpha[src] == 0) ++src;
          out.h[i - p][src - p] = c;
        }
        continue;
      }
      if (xdeg == 0) {
        if (deg == 1) {
          int src = 0;
          while (alpha[src] == 0) ++src;
          out.a1[i][src - p] = c;
        }
        continue;
      }
      if (deg != 1)
        fail(ErrorKind::ShapeViolation,
             "straightened component is not affine: " + term_str(alpha, i, c, p));
      int src = 0;
      while (alpha[src] == 0) ++src;
      out.k[i][src] = c;
    }
  return out;
}

LinearSplit split_linear(const Mat& linear, int p) {
  const int n = static_cast<int>(linear.size());
  LinearSplit out;
  out.diag.assign(n, GaussianRational(0));
  out.n_upper = mat_zero(n, n);
  out.a_cross = mat_zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const GaussianRational& e = linear[i][j];
      if (e.is_zero()) continue;
      if (i == j) {
        out.diag[i] = e;
      } else if (i < p && j < p) {
        if (j < i)
          fail(ErrorKind::NotTriangular, "straightened block entry (" +
                                             std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ") below the diagonal");
        out.n_upper[i][j] = e;
      } else if (i >= p && j >= p) {
        if (j < i)
          fail(ErrorKind::NotTriangular, "transverse block entry (" +
                                             std::to_string(i - p + 1) + "," +
                                             std::to_string(j - p + 1) + ") below the diagonal");
        out.n_upper[i][j] = e;
      } else if (i < p) {
        out.a_cross[i][j] = e;
      } else {
        fail(ErrorKind::NotTriangular, "straightened coordinate feeds a transverse one");
      }
    }
  return out;
}

HomologicalStep homological_step(const FormalVectorField& t_x0, int k, int p,
                                 const Vec& lambda_x0) {
  const int n = t_x0.dim;
  const int q = n - p;
  const int work_trust = k + 2;

  FormalVectorField t1 = t_x0.degree_slice(1);
  t1.trusted = work_trust;

  auto lam = [&](const MultiIndex& alpha, int target) {
    GaussianRational v(0);
    for (int c = 0; c < n; ++c)
      if (alpha[c] != 0) v = v + GaussianRational(alpha[c]) * lambda_x0[c];
    return v - lambda_x0[target];
  };

  // Processing order: monomials ascending, targets descending, so that the
  // non-diagonal part of the adjoint action only pollutes later entries.
  std::vector<std::pair<MultiIndex, int>> order;
  if (k == 1) {
    for (int j = 0; j < q; ++j)
      for (int i = p - 1; i >= 0; --i) order.emplace_back(unit_index(n, p + j), i);
  } else {
    for (const MultiIndex& ay : monomials_of_degree(q, k)) {
      MultiIndex alpha(n, 0);
      for (int j = 0; j < q; ++j) alpha[p + j] = ay[j];
      for (int i = n - 1; i >= 0; --i) order.emplace_back(alpha, i);
    }
  }

  FormalVectorField defect = FormalVectorField::zero(n, work_trust);
  if (k == 1) {
    FormalVectorField lin = t_x0.degree_slice(1);
    for (int i = 0; i < p; ++i)
      for (const auto& [alpha, c] : lin.comp[i].terms()) {
        int src = 0;
        while (alpha[src] == 0) ++src;
        if (src >= p) defect.add_term(alpha, i, c);
      }
  } else {
    FormalVectorField slice = t_x0.degree_slice(k);
    for (int i = 0; i < n; ++i)
      for (const auto& [alpha, c] : slice.comp[i].terms()) {
        if (x_degree(alpha, p) > 0)
          fail(ErrorKind::ShapeViolation,
               "degree " + std::to_string(k) +
                   " defect depends on a straightened coordinate: " + term_str(alpha, i, c, p));
        defect.add_term(alpha, i, c);
      }
  }

  HomologicalStep out;
  out.w = FormalVectorField::zero(n, t_x0.trusted);
  for (const auto& [alpha, target] : order) {
    GaussianRational c = defect.comp[target].coeff(alpha);
    if (c.is_zero()) continue;
    GaussianRational pivot = lam(alpha, target);
    if (pivot.is_zero()) continue;  // kernel, retained
    GaussianRational w = -(c * pivot.inverse());
    out.w.add_term(alpha, target, w);
    FormalVectorField upd = bracket(t1, monomial_field(n, alpha, target, w, work_trust));
    defect = field_add(defect, upd.degree_slice(k));
    if (!defect.comp[target].coeff(alpha).is_zero())
      fail(ErrorKind::SingularHomologicalSystem,
           "elimination failed to clear " + term_str(alpha, target, c, p));
  }

  for (int i = 0; i < n; ++i)
    for (const auto& [alpha, c] : defect.comp[i].terms()) {
      if (!lam(alpha, i).is_zero())
        fail(ErrorKind::SingularHomologicalSystem,
             "retained defect off the kernel: " + term_str(alpha, i, c, p));
      if (k == 1 && (i >= p || x_degree(alpha, p) > 0))
        fail(ErrorKind::SingularHomologicalSystem,
             "cross-block sweep left " + term_str(alpha, i, c, p));
    }
  defect.trusted = t_x0.trusted;
  out.kernel = defect;
  return out;
}

std::vector<FormalVectorField> conjugate_rep(const std::vector<FormalVectorField>& fields,
                                             const LieAlgebra& g, const FormalMap& phi) {
  FormalMap inv = invert_map(phi);
  std::vector<FormalVectorField> out;
  out.reserve(fields.size());
  for (const auto& f : fields) out.push_back(pushforward(f, phi, inv));
  for (int a = 0; a < g.dim(); ++a)
    for (int b = a + 1; b < g.dim(); ++b) {
      FormalVectorField lhs = bracket(out[a], out[b]);
      FormalVectorField rhs = field_combination(out, g.c[a][b]);
      int depth = std::min(lhs.trusted, rhs.trusted);
      if (!field_equal_through(lhs, rhs, depth))
        fail(ErrorKind::RepresentationBroken,
             "conjugation broke the bracket of " + g.names[a] + ", " + g.names[b]);
    }
  return out;
}

NormalizationResult normalize_full(const LieAlgebra& g, const Decomposition& d,
                                   const NonlinearRep& t, int max_box) {
  NormalizationResult res;
  res.n = t.n;
  res.degree = t.degree;
  res.p = static_cast<int>(d.m.size());
  res.q = t.n - res.p;
  const int n = t.n, p = res.p, q = res.q, K = t.degree;

  ValidationReport vr = validate_input(g, d, t);
  if (!vr.ok()) fail(ErrorKind::ValidationFailed, vr.first_failure());

  std::vector<FormalVectorField> fields = t.fields;

  // Straighten the ideal fields.
  {
    std::vector<FormalVectorField> mfields;
    for (int mj : d.m) mfields.push_back(fields[mj]);
    StraightenedIdeal st = staged("straighten", [&] { return straighten(mfields, n, K); });
    res.straightening_phi = st.phi;
    res.section = st.section;
    res.a = st.a;
    if (!st.phi.is_identity()) {
      fields = staged("straighten", [&] { return conjugate_rep(fields, g, st.phi); });
      res.stages.push_back({"straighten", 0, st.phi});
    }
  }

  // Shape check and linear blocks of the g0 fields.
  std::vector<Mat> kfam, hfam;
  staged("shape", [&] {
    for (int a : d.g0) ab_split(fields[a], p);
    for (int rk : d.r) {
      ABSplit sp = ab_split(fields[rk], p);
      kfam.push_back(sp.k);
      hfam.push_back(sp.h);
    }
    return 0;
  });

  // Triangularize the radical blocks.
  res.spectral.p = p;
  res.spectral.q = q;
  {
    Triangularization tx = staged("triangularize", [&] {
      return simultaneous_triangularize(kfam, p);
    });
    Triangularization ty = staged("triangularize", [&] {
      return simultaneous_triangularize(hfam, q);
    });
    res.spectral.x_change = tx.change;
    res.spectral.y_change = ty.change;
    const int rdim = static_cast<int>(d.r.size());
    for (int i = 0; i < p; ++i)
      res.spectral.mu.push_back(rdim ? tx.diagonal[i] : Vec{});
    for (int j = 0; j < q; ++j)
      res.spectral.nu.push_back(rdim ? ty.diagonal[j] : Vec{});
    if (!mat_equal(tx.change, mat_identity(p)) || !mat_equal(ty.change, mat_identity(q))) {
      Mat block = mat_zero(n, n);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) block[i][j] = tx.change[i][j];
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) block[p + i][p + j] = ty.change[i][j];
      FormalMap tri = FormalMap::linear(*inverse(block), K);
      fields = staged("triangularize", [&] { return conjugate_rep(fields, g, tri); });
      res.stages.push_back({"triangularize", 0, tri});
      if (p > 0) res.a = mat_mul(*inverse(tx.change), res.a);
      for (int rk : d.r)
        staged("triangularize", [&] {
          split_linear(fields[rk].linear_matrix(), p);
          return 0;
        });
    }
  }

  res.roots = staged("roots", [&] { return roots_of_radical(g, d); });
  res.resonance = resonance_sets(res.spectral, res.roots, K);

  // Homological normalization at a certified distinguished element.
  if (!d.r.empty()) {
    Vec x0 = staged("distinguished-element", [&] {
      return find_resonance_vector(g, d, res.spectral, res.roots, K, max_box);
    });
    res.x0 = x0;
    Vec lambda_x0(n);
    for (int i = 0; i < p; ++i) lambda_x0[i] = dot(res.spectral.mu[i], x0);
    for (int j = 0; j < q; ++j) lambda_x0[p + j] = dot(res.spectral.nu[j], x0);

    auto field_at_x0 = [&] {
      std::vector<FormalVectorField> rfields;
      Vec coeffs = x0;
      for (int rk : d.r) rfields.push_back(fields[rk]);
      return field_combination(rfields, coeffs);
    };

    for (int k = 1; k <= K; ++k) {
      std::string stage = "homological-" + std::to_string(k);
      HomologicalStep step =
          staged(stage, [&] { return homological_step(field_at_x0(), k, p, lambda_x0); });
      if (step.w.is_zero()) continue;
      FormalMap map = FormalMap::near_identity(step.w, K);
      if (!preserves_straightened_block(map, p))
        fail(ErrorKind::ShapeViolation, stage + ": correction involves a straightened coordinate");
      fields = staged(stage, [&] { return conjugate_rep(fields, g, map); });
      res.stages.push_back({"homological", k, map});
    }

    staged("homological-post", [&] {
      FormalVectorField tx0 = field_at_x0();
      split_linear(tx0.linear_matrix(), p);
      for (int k = 1; k <= K; ++k) {
        HomologicalStep rest = homological_step(tx0, k, p, lambda_x0);
        if (!rest.w.is_zero())
          fail(ErrorKind::SingularHomologicalSystem,
               "eliminable defect survived at degree " + std::to_string(k));
      }
      return 0;
    });
  }

  staged("radical-certification", [&] {
    auto witness = certify_radical(fields, g, d, res.resonance, p);
    if (witness) fail(ErrorKind::NonResonantResidue, *witness);
    return 0;
  });

  // Linearize the semisimple part degree by degree.
  if (!d.s.empty()) {
    Vec lambda_x0;
    if (res.x0) {
      lambda_x0.assign(n, GaussianRational(0));
      for (int i = 0; i < p; ++i) lambda_x0[i] = dot(res.spectral.mu[i], *res.x0);
      for (int j = 0; j < q; ++j) lambda_x0[p + j] = dot(res.spectral.nu[j], *res.x0);
    }
    for (int k = 2; k <= K; ++k) {
      std::string stage = "semisimple-" + std::to_string(k);
      staged(stage, [&] {
        bool any = false;
        for (int sb : d.s)
          if (!fields[sb].degree_slice(k).is_zero()) any = true;
        if (!any) return 0;

        // Unknowns: transverse-only degree-k monomial fields in the value
        // kernel of the diagonal action at the distinguished element.
        std::vector<std::pair<MultiIndex, int>> basis;
        for (const MultiIndex& ay : monomials_of_degree(q, k)) {
          MultiIndex alpha(n, 0);
          for (int j = 0; j < q; ++j) alpha[p + j] = ay[j];
          for (int i = 0; i < n; ++i) {
            if (res.x0) {
              GaussianRational v(0);
              for (int c = 0; c < n; ++c)
                if (alpha[c] != 0) v = v + GaussianRational(alpha[c]) * lambda_x0[c];
              if (!(v - lambda_x0[i]).is_zero()) continue;
            }
            basis.emplace_back(alpha, i);
          }
        }

        // Equation coordinates: all transverse-only degree-k monomials.
        std::vector<std::pair<MultiIndex, int>> coords;
        for (const MultiIndex& ay : monomials_of_degree(q, k)) {
          MultiIndex alpha(n, 0);
          for (int j = 0; j < q; ++j) alpha[p + j] = ay[j];
          for (int i = 0; i < n; ++i) coords.emplace_back(alpha, i);
        }
        auto coord_of = [&](const MultiIndex& alpha, int i) {
          for (std::size_t c = 0; c < coords.size(); ++c)
            if (coords[c].first == alpha && coords[c].second == i) return c;
          fail(ErrorKind::SingularHomologicalSystem,
               "cocycle equation leaves the transverse block");
        };

        const std::size_t rows_per = coords.size();
        Mat system(d.s.size() * rows_per, Vec(basis.size(), GaussianRational(0)));
        Vec rhs(d.s.size() * rows_per, GaussianRational(0));
        for (std::size_t bs = 0; bs < d.s.size(); ++bs) {
          FormalVectorField t1 = fields[d.s[bs]].degree_slice(1);
          t1.trusted = k + 2;
          for (std::size_t col = 0; col < basis.size(); ++col) {
            FormalVectorField probe = bracket(
                t1, monomial_field(n, basis[col].first, basis[col].second,
                                   GaussianRational(1), k + 2));
            FormalVectorField slice = probe.degree_slice(k);
            for (int i = 0; i < n; ++i)
              for (const auto& [alpha, c] : slice.comp[i].terms())
                system[bs * rows_per + coord_of(alpha, i)][col] = c;
          }
          FormalVectorField defect = fields[d.s[bs]].degree_slice(k);
          for (int i = 0; i < n; ++i)
            for (const auto& [alpha, c] : defect.comp[i].terms()) {
              if (x_degree(alpha, p) > 0)
                fail(ErrorKind::ShapeViolation,
                     "semisimple defect depends on a straightened coordinate: " +
                         term_str(alpha, i, c, p));
              rhs[bs * rows_per + coord_of(alpha, i)] = -c;
            }
        }

        auto sol = solve(system, rhs);
        if (!sol)
          fail(ErrorKind::ConstrainedCocycleInfeasible,
               "no kernel-constrained correction at degree " + std::to_string(k));
        FormalVectorField u = FormalVectorField::zero(n, K);
        for (std::size_t col = 0; col < basis.size(); ++col)
          if (!(*sol)[col].is_zero())
            u.add_term(basis[col].first, basis[col].second, (*sol)[col]);
        if (u.is_zero())
          fail(ErrorKind::ConstrainedCocycleInfeasible,
               "solver returned no correction for a nonzero defect");
        FormalMap map = FormalMap::near_identity(u, K);
        fields = conjugate_rep(fields, g, map);
        for (int sb : d.s)
          if (!fields[sb].degree_slice(k).is_zero())
            fail(ErrorKind::ConstrainedCocycleInfeasible,
                 "defect of " + g.names[sb] + " survived the degree " + std::to_string(k) +
                     " correction");
        res.stages.push_back({"semisimple", k, map});
        return 0;
      });
    }
  }

  res.phi_total = FormalMap::identity(n, K);
  for (const auto& st : res.stages) res.phi_total = compose_maps(st.map, res.phi_total);
  res.normal_form = fields;

  res.verification = verify_result(g, d, t, res);
  if (!res.verification.passed) {
    for (const auto& cl : res.verification.clauses)
      if (!cl.passed) {
        ErrorKind kind = ErrorKind::RepresentationBroken;
        if (cl.name == "ideal-constant") kind = ErrorKind::StraighteningResidue;
        if (cl.name == "semisimple-linear") kind = ErrorKind::ConstrainedCocycleInfeasible;
        if (cl.name == "radical-resonant") kind = ErrorKind::NonResonantResidue;
        fail(kind, "verification: " + cl.name + ": " + cl.detail);
      }
  }
  return res;
}

VerificationReport verify_result(const LieAlgebra& g, const Decomposition& d,
                                 const NonlinearRep& original,
                                 const NormalizationResult& res) {
  VerificationReport report;
  const int n = res.n, p = res.p, q = res.q, K = res.degree;

  auto clause = [&report](const std::string& name, auto&& fn) {
    VerificationClause cl;
    cl.name = name;
    try {
      std::string detail = fn();
      cl.passed = detail.empty();
      cl.detail = detail;
    } catch (const Error& e) {
      cl.passed = false;
      cl.detail = e.what();
    }
    report.clauses.push_back(cl);
  };

  clause("input-valid", [&]() -> std::string {
    ValidationReport vr = validate_input(g, d, original);
    return vr.ok() ? "" : vr.first_failure();
  });

  clause("ideal-constant", [&]() -> std::string {
    if (static_cast<int>(res.normal_form.size()) != g.dim())
      return "wrong number of fields";
    Mat a_found = mat_zero(p, p);
    for (std::size_t j = 0; j < d.m.size(); ++j) {
      const FormalVectorField& f = res.normal_form[d.m[j]];
      if (f.min_positive_term_degree() != kNoDegree)
        return "field of " + g.names[d.m[j]] + " is not constant";
      Vec c = f.constant_part();
      for (int i = p; i < n; ++i)
        if (!c[i].is_zero())
          return "field of " + g.names[d.m[j]] + " leaves the straightened block";
      for (int i = 0; i < p; ++i) a_found[i][j] = c[i];
    }
    if (!mat_equal(a_found, res.a)) return "constants do not match the recorded matrix";
    if (p > 0 && !inverse(res.a).has_value()) return "recorded matrix is singular";
    return "";
  });

  clause("semisimple-linear", [&]() -> std::string {
    for (int sb : d.s) {
      const FormalVectorField& f = res.normal_form[sb];
      if (!vec_is_zero(f.constant_part()))
        return "field of " + g.names[sb] + " has a constant term";
      FormalVectorField tail = field_sub(f, f.degree_slice(1));
      if (!tail.is_zero_through(std::min(tail.trusted, K)))
        return "field of " + g.names[sb] + " is not linear";
    }
    return "";
  });

  bool forms_ok = static_cast<int>(res.spectral.mu.size()) == p &&
                  static_cast<int>(res.spectral.nu.size()) == q;
  for (const Vec& f : res.spectral.mu) forms_ok = forms_ok && f.size() == d.r.size();
  for (const Vec& f : res.spectral.nu) forms_ok = forms_ok && f.size() == d.r.size();

  ResonanceSets recomputed_rs;
  std::vector<Vec> recomputed_roots;
  bool roots_ok = forms_ok;
  try {
    if (roots_ok) {
      recomputed_roots = roots_of_radical(g, d);
      recomputed_rs = resonance_sets(res.spectral, recomputed_roots, K);
    }
  } catch (const Error&) {
    roots_ok = false;
  }

  clause("radical-resonant", [&]() -> std::string {
    if (!roots_ok) return "roots could not be recomputed";
    auto witness = certify_radical(res.normal_form, g, d, recomputed_rs, p);
    return witness ? *witness : "";
  });

  clause("spectral-match", [&]() -> std::string {
    if (res.spectral.p != p || res.spectral.q != q) return "block sizes disagree";
    if (!forms_ok) return "weight forms have the wrong shape";
    for (std::size_t k = 0; k < d.r.size(); ++k) {
      Mat lin = res.normal_form[d.r[k]].linear_matrix();
      LinearSplit ls = split_linear(lin, p);
      for (int i = 0; i < n; ++i) {
        const Vec& form = i < p ? res.spectral.mu[i] : res.spectral.nu[i - p];
        if (ls.diag[i] != form[k])
          return "diagonal of " + g.names[d.r[k]] + " disagrees with the recorded weights";
      }
    }
    return "";
  });

  clause("roots-match", [&]() -> std::string {
    if (!roots_ok) return "roots could not be recomputed";
    if (recomputed_roots.size() != res.roots.size()) return "wrong number of roots";
    for (std::size_t i = 0; i < res.roots.size(); ++i)
      if (!(recomputed_roots[i] == res.roots[i])) return "root list disagrees";
    return "";
  });

  clause("resonance-match", [&]() -> std::string {
    if (!roots_ok) return "roots could not be recomputed";
    auto same = [](const std::vector<ResonancePair>& a, const std::vector<ResonancePair>& b) {
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
      return true;
    };
    if (!same(recomputed_rs.r, res.resonance.r)) return "resonance set disagrees";
    if (!same(recomputed_rs.rprime, res.resonance.rprime))
      return "transverse resonance set disagrees";
    if (!same(recomputed_rs.r0, res.resonance.r0)) return "kernel set disagrees";
    if (!same(recomputed_rs.r0prime, res.resonance.r0prime))
      return "transverse kernel set disagrees";
    return "";
  });

  clause("x0-centralizer", [&]() -> std::string {
    if (d.r.empty()) return res.x0 ? "distinguished element without a radical" : "";
    if (!res.x0) return "missing distinguished element";
    if (res.x0->size() != d.r.size()) return "distinguished element has wrong arity";
    Vec emb(g.dim(), GaussianRational(0));
    for (std::size_t k = 0; k < d.r.size(); ++k) emb[d.r[k]] = (*res.x0)[k];
    for (int sb : d.s) {
      Vec br = g.bracket_coords(emb, unit_coords(g.dim(), sb));
      if (!vec_is_zero(br)) return "does not commute with " + g.names[sb];
    }
    return "";
  });

  clause("x0-certified", [&]() -> std::string {
    if (d.r.empty()) return "";
    if (!res.x0 || res.x0->size() != d.r.size()) return "missing distinguished element";
    if (!roots_ok) return "roots could not be recomputed";
    auto witness = certify_resonance_vector(res.spectral, recomputed_roots, K, *res.x0);
    return witness ? *witness : "";
  });

  clause("stage-composition", [&]() -> std::string {
    FormalMap total = FormalMap::identity(n, K);
    for (const auto& st : res.stages) total = compose_maps(st.map, total);
    return map_equal(total, res.phi_total) ? "" : "stages do not compose to the transformation";
  });

  clause("transform-wellformed", [&]() -> std::string {
    for (int i = 0; i < n; ++i)
      if (!res.phi_total.comp[i].constant_term().is_zero())
        return "transformation moves the origin";
    if (!inverse(res.phi_total.linear_part()).has_value())
      return "transformation has a singular linear part";
    bool past_linear = false;
    for (const auto& st : res.stages) {
      if (st.kind == "homological" || st.kind == "semisimple") past_linear = true;
      if (past_linear && !preserves_straightened_block(st.map, p))
        return "stage " + st.kind + " moves the straightened coordinates";
    }
    return "";
  });

  clause("equivalence", [&]() -> std::string {
    FormalMap inv = invert_map(res.phi_total);
    for (int a = 0; a < g.dim(); ++a) {
      FormalVectorField moved = pushforward(original.fields[a], res.phi_total, inv);
      int depth = std::min(moved.trusted, res.normal_form[a].trusted);
      if (!field_equal_through(moved, res.normal_form[a], depth))
        return "transported field of " + g.names[a] + " disagrees with the normal form";
    }
    return "";
  });

  if (res.x0 && res.x0->size() == d.r.size() && forms_ok) {
    Vec lambda_x0(n, GaussianRational(0));
    for (int i = 0; i < p; ++i) lambda_x0[i] = dot(res.spectral.mu[i], *res.x0);
    for (int j = 0; j < q; ++j) lambda_x0[p + j] = dot(res.spectral.nu[j], *res.x0);
    FormalVectorField diag = FormalVectorField::zero(n, K);
    for (int v = 0; v < n; ++v)
      if (!lambda_x0[v].is_zero()) diag.add_term(unit_index(n, v), v, lambda_x0[v]);
    for (int rk : d.r) {
      FormalVectorField rest = res.normal_form[rk];
      for (int v = 0; v < n; ++v) {
        GaussianRational dv = rest.comp[v].coeff(unit_index(n, v));
        if (!dv.is_zero()) rest.add_term(unit_index(n, v), v, -dv);
      }
      FormalVectorField c = bracket(diag, rest);
      FormalVectorField visible = c.truncated(std::min(c.trusted, K));
      CommutatorNote note;
      note.name = g.names[rk];
      note.zero = c.is_zero_through(std::min(c.trusted, K));
      int count = 0;
      for (int v = 0; v < n; ++v) count += static_cast<int>(visible.comp[v].terms().size());
      note.terms = count;
      report.notes.push_back(note);
    }
  }

  report.passed = true;
  for (const auto& cl : report.clauses)
    if (!cl.passed) report.passed = false;
  return report;
}

}  // namespace lienf
