#include "lienf/field.hpp"

#include <algorithm>
#include <sstream>

namespace lienf {

int degree(const MultiIndex& alpha) {
  int d = 0;
  for (int e : alpha) d += e;
  return d;
}

MultiIndex zero_index(int dim) { return MultiIndex(dim, 0); }

MultiIndex unit_index(int dim, int v) {
  MultiIndex a(dim, 0);
  a[v] = 1;
  return a;
}

bool MonomialLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return b < a;  // earlier variables with higher exponents first
}

SparsePoly SparsePoly::constant(int dim, const GaussianRational& c) {
  SparsePoly p(dim);
  p.add_term(zero_index(dim), c);
  return p;
}

SparsePoly SparsePoly::variable(int dim, int v) {
  SparsePoly p(dim);
  p.add_term(unit_index(dim, v), GaussianRational(1));
  return p;
}

void SparsePoly::add_term(const MultiIndex& alpha, const GaussianRational& c) {
  if (static_cast<int>(alpha.size()) != dim_)
    fail(ErrorKind::DimensionMismatch, "monomial arity does not match polynomial arity");
  for (int e : alpha)
    if (e < 0) fail(ErrorKind::IndexOutOfRange, "negative exponent");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(alpha, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GaussianRational SparsePoly::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? GaussianRational(0) : it->second;
}

GaussianRational SparsePoly::constant_term() const { return coeff(zero_index(dim_)); }

int SparsePoly::min_degree() const {
  return terms_.empty() ? kNoDegree : degree(terms_.begin()->first);
}

int SparsePoly::max_degree() const {
  return terms_.empty() ? -1 : degree(terms_.rbegin()->first);
}

int SparsePoly::min_positive_degree() const {
  for (const auto& [alpha, c] : terms_) {
    int d = degree(alpha);
    if (d >= 1) return d;
  }
  return kNoDegree;
}

SparsePoly SparsePoly::truncated(int maxdeg) const {
  SparsePoly out(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (degree(alpha) > maxdeg) break;  // canonical order is degree-first
    out.terms_.emplace(alpha, c);
  }
  return out;
}

SparsePoly SparsePoly::degree_slice(int d) const {
  SparsePoly out(dim_);
  for (const auto& [alpha, c] : terms_)
    if (degree(alpha) == d) out.terms_.emplace(alpha, c);
  return out;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly out(dim_);
  for (const auto& [alpha, c] : terms_) out.terms_.emplace(alpha, -c);
  return out;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  if (dim_ != o.dim_) fail(ErrorKind::DimensionMismatch, "polynomial arities differ");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  if (dim_ != o.dim_) fail(ErrorKind::DimensionMismatch, "polynomial arities differ");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, v] : terms_) v *= c;
  return *this;
}

SparsePoly SparsePoly::diff(int v) const {
  if (v < 0 || v >= dim_) fail(ErrorKind::IndexOutOfRange, "derivative variable");
  SparsePoly out(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[v] == 0) continue;
    MultiIndex shifted = alpha;
    --shifted[v];
    out.terms_.emplace(shifted, c * GaussianRational(alpha[v]));
  }
  return out;
}

SparsePoly SparsePoly::mul(const SparsePoly& a, const SparsePoly& b, int maxdeg) {
  if (a.dim_ != b.dim_) fail(ErrorKind::DimensionMismatch, "polynomial arities differ");
  SparsePoly out(a.dim_);
  for (const auto& [alpha, ca] : a.terms_) {
    int da = degree(alpha);
    if (da > maxdeg) break;
    for (const auto& [beta, cb] : b.terms_) {
      if (da + degree(beta) > maxdeg) break;
      MultiIndex sum = alpha;
      for (int v = 0; v < a.dim_; ++v) sum[v] += beta[v];
      out.add_term(sum, ca * cb);
    }
  }
  return out;
}

SparsePoly SparsePoly::subst(const std::vector<SparsePoly>& images, int maxdeg) const {
  if (static_cast<int>(images.size()) != dim_)
    fail(ErrorKind::DimensionMismatch, "substitution image count");
  if (images.empty()) return truncated(maxdeg);
  int tdim = images[0].dim();
  bool origin_fixed = true;
  for (const SparsePoly& im : images) {
    if (im.dim() != tdim) fail(ErrorKind::DimensionMismatch, "substitution image arity");
    origin_fixed = origin_fixed && im.constant_term().is_zero();
  }
  std::vector<std::vector<SparsePoly>> pows(dim_);
  auto power = [&](int v, int e) -> const SparsePoly& {
    auto& cache = pows[v];
    if (cache.empty()) cache.push_back(SparsePoly::constant(tdim, GaussianRational(1)));
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(SparsePoly::mul(cache.back(), images[v], maxdeg));
    return cache[e];
  };
  SparsePoly out(tdim);
  for (const auto& [alpha, c] : terms_) {
    // Images without constant terms can only raise degree.
    if (origin_fixed && degree(alpha) > maxdeg) break;
    SparsePoly acc = SparsePoly::constant(tdim, c);
    for (int v = 0; v < dim_; ++v)
      if (alpha[v] > 0) acc = SparsePoly::mul(acc, power(v, alpha[v]), maxdeg);
    out += acc;
  }
  return out;
}

FormalVectorField FormalVectorField::zero(int dim, int trusted) {
  FormalVectorField f;
  f.dim = dim;
  f.trusted = trusted;
  f.comp.assign(dim, SparsePoly(dim));
  return f;
}

void FormalVectorField::add_term(const MultiIndex& alpha, int target, const GaussianRational& c) {
  if (target < 0 || target >= dim) fail(ErrorKind::IndexOutOfRange, "field component index");
  comp[target].add_term(alpha, c);
}

bool FormalVectorField::is_zero() const {
  return std::all_of(comp.begin(), comp.end(), [](const SparsePoly& p) { return p.is_zero(); });
}

bool FormalVectorField::is_zero_through(int through) const {
  for (const SparsePoly& p : comp)
    if (p.min_degree() <= through) return false;
  return true;
}

int FormalVectorField::min_term_degree() const {
  int m = kNoDegree;
  for (const SparsePoly& p : comp) m = std::min(m, p.min_degree());
  return m;
}

int FormalVectorField::min_positive_term_degree() const {
  int m = kNoDegree;
  for (const SparsePoly& p : comp) m = std::min(m, p.min_positive_degree());
  return m;
}

FormalVectorField FormalVectorField::truncated(int maxdeg) const {
  FormalVectorField out = *this;
  for (SparsePoly& p : out.comp) p = p.truncated(maxdeg);
  out.trusted = std::min(out.trusted, maxdeg);
  return out;
}

FormalVectorField FormalVectorField::degree_slice(int d) const {
  FormalVectorField out = *this;
  for (SparsePoly& p : out.comp) p = p.degree_slice(d);
  return out;
}

Vec FormalVectorField::constant_part() const {
  Vec out(dim);
  for (int j = 0; j < dim; ++j) out[j] = comp[j].constant_term();
  return out;
}

Mat FormalVectorField::linear_matrix() const {
  Mat out = mat_zero(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int v = 0; v < dim; ++v) out[j][v] = comp[j].coeff(unit_index(dim, v));
  return out;
}

namespace {

void require_same_space(int a, int b) {
  if (a != b) fail(ErrorKind::DimensionMismatch, "fields live in different spaces");
}

// Lowest degree at which a field could differ from its stored terms.
int effective_min(const FormalVectorField& v) {
  return std::min(v.min_term_degree(), v.trusted + 1);
}

int effective_min_positive(const FormalVectorField& v) {
  return std::min(v.min_positive_term_degree(), v.trusted + 1);
}

FormalVectorField map_as_tuple(const FormalMap& phi) {
  FormalVectorField f;
  f.dim = phi.dim;
  f.trusted = phi.trusted;
  f.comp = phi.comp;
  return f;
}

}  // namespace

FormalVectorField field_add(const FormalVectorField& a, const FormalVectorField& b) {
  require_same_space(a.dim, b.dim);
  FormalVectorField out = FormalVectorField::zero(a.dim, std::min(a.trusted, b.trusted));
  for (int j = 0; j < a.dim; ++j) {
    SparsePoly s = a.comp[j];
    s += b.comp[j];
    out.comp[j] = s.truncated(out.trusted);
  }
  return out;
}

FormalVectorField field_sub(const FormalVectorField& a, const FormalVectorField& b) {
  return field_add(a, field_scale(GaussianRational(-1), b));
}

FormalVectorField field_scale(const GaussianRational& c, const FormalVectorField& v) {
  FormalVectorField out = v;
  for (SparsePoly& p : out.comp) p *= c;
  return out;
}

bool field_equal_through(const FormalVectorField& a, const FormalVectorField& b, int through) {
  return field_sub(a, b).is_zero_through(through);
}

FormalVectorField field_combination(const std::vector<FormalVectorField>& fields,
                                    const Vec& coeffs) {
  if (fields.size() != coeffs.size())
    fail(ErrorKind::DimensionMismatch, "combination lengths differ");
  int trusted = kNoDegree;
  int dim = -1;
  for (size_t k = 0; k < fields.size(); ++k) {
    if (dim < 0) dim = fields[k].dim;
    require_same_space(dim, fields[k].dim);
    if (!coeffs[k].is_zero()) trusted = std::min(trusted, fields[k].trusted);
  }
  if (dim < 0) fail(ErrorKind::DimensionMismatch, "empty combination");
  if (trusted == kNoDegree) {
    trusted = 0;
    for (const FormalVectorField& f : fields) trusted = std::max(trusted, f.trusted);
  }
  FormalVectorField out = FormalVectorField::zero(dim, trusted);
  for (size_t k = 0; k < fields.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      SparsePoly scaled = fields[k].comp[j];
      scaled *= coeffs[k];
      out.comp[j] += scaled.truncated(trusted);
    }
  }
  return out;
}

FormalVectorField star(const FormalVectorField& v, const FormalVectorField& w) {
  require_same_space(v.dim, w.dim);
  // Unknown tails enter through v-tail times dw (degree >= v.trusted +
  // min_pos(w)) and through v times dw-tail (degree >= w.trusted +
  // min(v)); the product is exact strictly below both.
  int trusted =
      std::min(v.trusted + effective_min_positive(w), w.trusted + effective_min(v)) - 1;
  FormalVectorField out = FormalVectorField::zero(v.dim, trusted);
  if (trusted < 0) return out;
  for (int j = 0; j < v.dim; ++j)
    for (int i = 0; i < v.dim; ++i) {
      if (v.comp[i].is_zero()) continue;
      SparsePoly dw = w.comp[j].diff(i);
      if (dw.is_zero()) continue;
      out.comp[j] += SparsePoly::mul(v.comp[i], dw, trusted);
    }
  return out;
}

FormalVectorField bracket(const FormalVectorField& v, const FormalVectorField& w) {
  return field_sub(star(v, w), star(w, v));
}

FormalMap FormalMap::identity(int dim, int trusted) {
  FormalMap m;
  m.dim = dim;
  m.trusted = trusted;
  for (int j = 0; j < dim; ++j) m.comp.push_back(SparsePoly::variable(dim, j));
  return m;
}

FormalMap FormalMap::near_identity(const FormalVectorField& w, int trusted) {
  if (w.min_term_degree() < 1)
    fail(ErrorKind::ShapeViolation, "near-identity perturbation has a constant term");
  FormalMap m = identity(w.dim, trusted);
  for (int j = 0; j < w.dim; ++j) {
    m.comp[j] += w.comp[j];
    m.comp[j] = m.comp[j].truncated(trusted);
  }
  return m;
}

FormalMap FormalMap::linear(const Mat& m, int trusted) {
  int n = static_cast<int>(m.size());
  FormalMap out;
  out.dim = n;
  out.trusted = trusted;
  for (int j = 0; j < n; ++j) {
    SparsePoly p(n);
    for (int v = 0; v < n; ++v) p.add_term(unit_index(n, v), m[j][v]);
    out.comp.push_back(p);
  }
  return out;
}

bool FormalMap::is_identity() const {
  for (int j = 0; j < dim; ++j)
    if (!(comp[j] == SparsePoly::variable(dim, j))) return false;
  return true;
}

Mat FormalMap::linear_part() const { return map_as_tuple(*this).linear_matrix(); }

FormalVectorField apply_derivation(const FormalVectorField& t, const FormalMap& phi) {
  return star(t, map_as_tuple(phi));
}

FormalVectorField compose_field_map(const FormalVectorField& t, const FormalMap& phi) {
  require_same_space(t.dim, phi.dim);
  int trusted = std::min(t.trusted, phi.trusted + effective_min_positive(t) - 1);
  FormalVectorField out = FormalVectorField::zero(t.dim, trusted);
  if (trusted < 0) return out;
  for (int j = 0; j < t.dim; ++j) out.comp[j] = t.comp[j].subst(phi.comp, trusted);
  return out;
}

FormalMap compose_maps(const FormalMap& outer, const FormalMap& inner) {
  require_same_space(outer.dim, inner.dim);
  FormalVectorField composed = compose_field_map(map_as_tuple(outer), inner);
  FormalMap out;
  out.dim = outer.dim;
  out.trusted = composed.trusted;
  out.comp = std::move(composed.comp);
  for (const SparsePoly& p : out.comp)
    if (!p.constant_term().is_zero())
      fail(ErrorKind::ShapeViolation, "composition produced a constant term");
  return out;
}

FormalMap invert_map(const FormalMap& phi) {
  int n = phi.dim;
  std::optional<Mat> linv = inverse(phi.linear_part());
  if (!linv) fail(ErrorKind::SingularLinearPart, "map linear part is singular");
  FormalMap chi = FormalMap::linear(*linv, phi.trusted);
  for (int d = 2; d <= phi.trusted; ++d) {
    FormalMap probe = compose_maps(phi, chi);
    bool clean = true;
    std::vector<SparsePoly> residue(n, SparsePoly(n));
    for (int j = 0; j < n; ++j) {
      SparsePoly r = probe.comp[j];
      r -= SparsePoly::variable(n, j);
      residue[j] = r.degree_slice(d);
      clean = clean && residue[j].is_zero();
    }
    if (clean) continue;
    // phi(chi + c) = phi(chi) + L c + higher order, so one linear solve per
    // degree removes the residue.
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        if ((*linv)[j][m].is_zero()) continue;
        SparsePoly corr = residue[m];
        corr *= -(*linv)[j][m];
        chi.comp[j] += corr;
      }
  }
  FormalMap check = compose_maps(phi, chi);
  for (int j = 0; j < n; ++j) {
    SparsePoly r = check.comp[j];
    r -= SparsePoly::variable(n, j);
    if (r.min_degree() <= phi.trusted)
      fail(ErrorKind::SingularLinearPart, "inverse construction failed to converge");
  }
  return chi;
}

FormalVectorField pushforward(const FormalVectorField& t, const FormalMap& phi) {
  return pushforward(t, phi, invert_map(phi));
}

FormalVectorField pushforward(const FormalVectorField& t, const FormalMap& phi,
                              const FormalMap& phi_inverse) {
  return compose_field_map(apply_derivation(t, phi), phi_inverse);
}

std::string render_monomial(const MultiIndex& alpha, int p) {
  std::ostringstream os;
  bool any = false;
  for (size_t v = 0; v < alpha.size(); ++v) {
    if (alpha[v] == 0) continue;
    if (any) os << "*";
    if (p >= 0 && static_cast<int>(v) >= p)
      os << "y" << (v - p + 1);
    else
      os << "x" << (v + 1);
    if (alpha[v] > 1) os << "^" << alpha[v];
    any = true;
  }
  return any ? os.str() : "1";
}

namespace {

std::string var_name(int v, int p) {
  if (p >= 0 && v >= p) return "y" + std::to_string(v - p + 1);
  return "x" + std::to_string(v + 1);
}

std::string render_poly(const SparsePoly& poly, int p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, c] : poly.terms()) {
    if (!first) os << " + ";
    os << c.str() << "*" << render_monomial(alpha, p);
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string render_field(const FormalVectorField& v, int p) {
  std::ostringstream os;
  bool any = false;
  for (int j = 0; j < v.dim; ++j) {
    if (v.comp[j].is_zero()) continue;
    if (any) os << "\n";
    os << "d/d" << var_name(j, p) << ": " << render_poly(v.comp[j], p);
    any = true;
  }
  return any ? os.str() : "0";
}

std::string render_map(const FormalMap& m, int p) {
  std::ostringstream os;
  for (int j = 0; j < m.dim; ++j) {
    if (j) os << "\n";
    os << var_name(j, p) << " -> " << render_poly(m.comp[j], p);
  }
  return os.str();
}

}  // namespace lienf
