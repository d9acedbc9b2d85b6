#include "lienf/straighten.hpp"

#include <algorithm>
#include <string>

#include "lienf/errors.hpp"

namespace lienf {

namespace {

/// Re-index a polynomial in n variables into the last n slots of an
/// (offset + n)-variable ring.
SparsePoly embed_shifted(const SparsePoly& f, int offset) {
  SparsePoly out(offset + f.dim());
  for (const auto& [alpha, c] : f.terms()) {
    MultiIndex beta(offset + f.dim(), 0);
    for (int r = 0; r < f.dim(); ++r) beta[offset + r] = alpha[r];
    out.add_term(beta, c);
  }
  return out;
}

}  // namespace

FormalMap build_flow_map(const std::vector<FormalVectorField>& v,
                         const std::vector<int>& section, int maxdeg) {
  const int p = static_cast<int>(v.size());
  if (p == 0) fail(ErrorKind::DimensionMismatch, "flow map needs at least one field");
  const int n = v[0].dim;
  int trust = maxdeg;
  for (const auto& f : v) {
    if (f.dim != n) fail(ErrorKind::DimensionMismatch, "flow map fields must share a space");
    trust = std::min(trust, f.trusted + 1);
  }
  if (p + static_cast<int>(section.size()) != n)
    fail(ErrorKind::DegenerateFrame, "section size must complement the frame");

  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      FormalVectorField br = bracket(v[i], v[j]);
      if (!br.is_zero_through(br.trusted))
        fail(ErrorKind::NonCommuting, "fields " + std::to_string(i + 1) + " and " +
                                          std::to_string(j + 1) + " do not commute");
    }

  Mat frame = mat_zero(n, n);
  for (int j = 0; j < p; ++j) {
    Vec c = v[j].constant_part();
    for (int i = 0; i < n; ++i) frame[i][j] = c[i];
  }
  for (int k = 0; k < static_cast<int>(section.size()); ++k)
    frame[section[k]][p + k] = GaussianRational(1);
  if (!inverse(frame).has_value())
    fail(ErrorKind::DegenerateFrame, "frame constants and section do not span the space");

  // Extended ring: p flow times followed by the n original coordinates.
  const int ext = p + n;
  std::vector<std::vector<SparsePoly>> coeff(p);
  for (int i = 0; i < p; ++i)
    for (int r = 0; r < n; ++r) coeff[i].push_back(embed_shifted(v[i].comp[r], p));

  auto derive = [&](const SparsePoly& f) {
    SparsePoly out(ext);
    for (int r = 0; r < n; ++r) {
      SparsePoly df = f.diff(p + r);
      if (df.is_zero()) continue;
      for (int i = 0; i < p; ++i) {
        SparsePoly piece = SparsePoly::mul(coeff[i][r], df, maxdeg - 1);
        piece = SparsePoly::mul(piece, SparsePoly::variable(ext, i), maxdeg);
        out += piece;
      }
    }
    return out;
  };

  // Substitution targets: flow times keep their slot, section coordinates
  // become the trailing variables, all other coordinates start at zero.
  std::vector<SparsePoly> images(ext, SparsePoly(n));
  for (int i = 0; i < p; ++i) images[i] = SparsePoly::variable(n, i);
  for (int k = 0; k < static_cast<int>(section.size()); ++k)
    images[p + section[k]] = SparsePoly::variable(n, p + k);

  FormalMap psi;
  psi.dim = n;
  psi.trusted = trust;
  psi.comp.reserve(n);
  for (int j = 0; j < n; ++j) {
    SparsePoly term = SparsePoly::variable(ext, p + j);
    SparsePoly sum = term;
    for (int m = 1; m <= maxdeg; ++m) {
      term = derive(term).truncated(maxdeg);
      term *= GaussianRational::of(1, m);
      if (term.is_zero()) break;
      sum += term;
    }
    psi.comp.push_back(sum.subst(images, maxdeg));
  }
  return psi;
}

StraightenedIdeal straighten(const std::vector<FormalVectorField>& fields, int n,
                             int maxdeg) {
  StraightenedIdeal out;
  const int p = static_cast<int>(fields.size());
  out.p = p;
  out.q = n - p;
  if (p == 0) {
    out.phi = FormalMap::identity(n, maxdeg);
    for (int j = 0; j < n; ++j) out.section.push_back(j);
    return out;
  }
  if (fields[0].dim != n)
    fail(ErrorKind::DimensionMismatch, "fields do not live on the stated space");

  Mat mt_aug = mat_zero(p, n + p);
  for (int j = 0; j < p; ++j) {
    Vec c = fields[j].constant_part();
    for (int i = 0; i < n; ++i) mt_aug[j][i] = c[i];
    mt_aug[j][n + j] = GaussianRational(1);
  }
  std::vector<int> pivots = rref(mt_aug);
  int rank_in_space = 0;
  for (int col : pivots)
    if (col < n) ++rank_in_space;
  if (rank_in_space < p)
    fail(ErrorKind::DegenerateFrame, "constant parts of the fields are linearly dependent");

  // Column transform to reduced column echelon form of the constants.
  Mat a_inv = mat_zero(p, p);
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k) a_inv[k][i] = mt_aug[i][n + k];

  std::vector<FormalVectorField> recombined;
  recombined.reserve(p);
  for (int i = 0; i < p; ++i) {
    Vec col(p, GaussianRational(0));
    for (int j = 0; j < p; ++j) col[j] = a_inv[j][i];
    recombined.push_back(field_combination(fields, col));
  }

  Mat echelon = mat_zero(n, p);
  for (int i = 0; i < p; ++i) {
    Vec c = recombined[i].constant_part();
    for (int row = 0; row < n; ++row) echelon[row][i] = c[row];
  }
  Mat span = echelon;
  int current = rank(span);
  for (int j = 0; j < n && current < n; ++j) {
    Mat trial = span;
    for (int row = 0; row < n; ++row)
      trial[row].push_back(row == j ? GaussianRational(1) : GaussianRational(0));
    int r = rank(trial);
    if (r > current) {
      span = trial;
      current = r;
      out.section.push_back(j);
    }
  }

  FormalMap psi = build_flow_map(recombined, out.section, maxdeg);
  out.phi = invert_map(psi);
  out.a = *inverse(a_inv);

  out.straightened.reserve(p);
  for (int j = 0; j < p; ++j) {
    FormalVectorField s = pushforward(fields[j], out.phi, psi);
    FormalVectorField expected = FormalVectorField::zero(n, s.trusted);
    for (int i = 0; i < p; ++i)
      if (!out.a[i][j].is_zero()) expected.add_term(zero_index(n), i, out.a[i][j]);
    if (!field_equal_through(s, expected, s.trusted))
      fail(ErrorKind::StraighteningResidue,
           "field " + std::to_string(j + 1) + " is not constant after straightening: " +
               render_field(s, p));
    out.straightened.push_back(std::move(s));
  }
  return out;
}

}  // namespace lienf
