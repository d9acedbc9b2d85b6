#include "doctest.h"
#include "fixtures.hpp"
#include "lienf/errors.hpp"
#include "lienf/normal_form.hpp"

#include <string>

using namespace lienf;

namespace {

FormalVectorField field2(int trusted = 6) { return FormalVectorField::zero(2, trusted); }

/// -x d/dx - 1/2 y d/dy with optional extra terms, the workhorse shape.
FormalVectorField diag_half(int trusted = 6) {
  FormalVectorField t = field2(trusted);
  t.add_term({1, 0}, 0, GaussianRational(-1));
  t.add_term({0, 1}, 1, GaussianRational::of(-1, 2));
  return t;
}

bool clause_passed(const VerificationReport& rep, const std::string& name) {
  for (const auto& cl : rep.clauses)
    if (cl.name == name) return cl.passed;
  return false;
}

}  // namespace

TEST_CASE("ab_split extracts the three linear blocks") {
  FormalVectorField t = diag_half();
  t.add_term({0, 1}, 0, GaussianRational(3));   // cross term y d/dx
  t.add_term({0, 2}, 0, GaussianRational(1));   // transverse inhomogeneity
  ABSplit sp = ab_split(t, 1);
  CHECK(sp.k[0][0] == GaussianRational(-1));
  CHECK(sp.h[0][0] == GaussianRational::of(-1, 2));
  CHECK(sp.a1[0][0] == GaussianRational(3));
}

TEST_CASE("ab_split rejects fields outside the rigid shape") {
  FormalVectorField xy = diag_half();
  xy.add_term({1, 1}, 1, GaussianRational(1));
  CHECK_THROWS_WITH_AS(ab_split(xy, 1), doctest::Contains("transverse component"), Error);

  FormalVectorField sq = diag_half();
  sq.add_term({2, 0}, 0, GaussianRational(1));
  CHECK_THROWS_WITH_AS(ab_split(sq, 1), doctest::Contains("not affine"), Error);

  FormalVectorField cst = field2();
  cst.add_term({0, 0}, 0, GaussianRational(1));
  try {
    ab_split(cst, 1);
    FAIL("constant term accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ShapeViolation);
  }

  // x y d/dx is affine in x but its slope is not constant.
  FormalVectorField slope = diag_half();
  slope.add_term({1, 1}, 0, GaussianRational(1));
  CHECK_THROWS_AS(ab_split(slope, 1), Error);
}

TEST_CASE("split_linear separates diagonal, nilpotent, and cross parts") {
  Mat m = mat_zero(3, 3);
  m[0][0] = GaussianRational(-1);
  m[0][1] = GaussianRational(5);
  m[0][2] = GaussianRational(7);
  m[1][1] = GaussianRational(2);
  m[1][2] = GaussianRational(4);
  m[2][2] = GaussianRational(2);
  LinearSplit ls = split_linear(m, 1);
  CHECK(ls.diag == Vec{GaussianRational(-1), GaussianRational(2), GaussianRational(2)});
  CHECK(ls.n_upper[1][2] == GaussianRational(4));
  CHECK(ls.a_cross[0][1] == GaussianRational(5));
  CHECK(ls.a_cross[0][2] == GaussianRational(7));

  Mat low = mat_zero(3, 3);
  low[2][1] = GaussianRational(1);
  CHECK_THROWS_WITH_AS(split_linear(low, 1), doctest::Contains("below the diagonal"), Error);

  Mat feed = mat_zero(3, 3);
  feed[1][0] = GaussianRational(1);
  CHECK_THROWS_WITH_AS(split_linear(feed, 1), doctest::Contains("feeds a transverse"), Error);
}

TEST_CASE("homological step eliminates a cubic defect with nonzero weight") {
  FormalVectorField t = diag_half();
  t.add_term({0, 2}, 0, GaussianRational(1));
  t.add_term({0, 3}, 0, GaussianRational(1));
  Vec lam{GaussianRational(-1), GaussianRational::of(-1, 2)};
  HomologicalStep step = homological_step(t, 3, 1, lam);
  // Weight 3*(-1/2) - (-1) = -1/2, so the correction is -1 / (-1/2) = 2.
  CHECK(step.w.comp[0].coeff({0, 3}) == GaussianRational(2));
  CHECK(step.kernel.is_zero());
}

TEST_CASE("homological step keeps the resonant quadratic defect") {
  FormalVectorField t = diag_half();
  t.add_term({0, 2}, 0, GaussianRational(1));
  Vec lam{GaussianRational(-1), GaussianRational::of(-1, 2)};
  HomologicalStep step = homological_step(t, 2, 1, lam);
  CHECK(step.w.is_zero());
  CHECK(step.kernel.comp[0].coeff({0, 2}) == GaussianRational(1));
}

TEST_CASE("homological step at degree one acts on the cross block") {
  FormalVectorField t = diag_half();
  t.add_term({0, 1}, 0, GaussianRational(3));
  Vec lam{GaussianRational(-1), GaussianRational::of(-1, 2)};
  HomologicalStep step = homological_step(t, 1, 1, lam);
  // Weight -1/2 - (-1) = 1/2, so the correction is -3 / (1/2) = -6.
  CHECK(step.w.comp[0].coeff({0, 1}) == GaussianRational(-6));
  CHECK(step.kernel.is_zero());

  FormalVectorField res = field2();
  res.add_term({1, 0}, 0, GaussianRational(-1));
  res.add_term({0, 1}, 1, GaussianRational(-1));
  res.add_term({0, 1}, 0, GaussianRational(3));
  Vec lam2{GaussianRational(-1), GaussianRational(-1)};
  HomologicalStep kept = homological_step(res, 1, 1, lam2);
  CHECK(kept.w.is_zero());
  CHECK(kept.kernel.comp[0].coeff({0, 1}) == GaussianRational(3));
}

TEST_CASE("conjugate_rep moves the family and rechecks the brackets") {
  auto f = fixtures::aff1();
  FormalVectorField w = field2();
  w.add_term({0, 3}, 0, GaussianRational(2));
  FormalMap phi = FormalMap::near_identity(w, 6);
  auto moved = conjugate_rep(f.t.fields, f.g, phi);
  REQUIRE(moved.size() == 2);
  CHECK(moved[0].comp[0].coeff({0, 3}).is_zero());
  CHECK(moved[0].comp[0].coeff({0, 2}) == GaussianRational(1));
  auto plain = fixtures::aff1_plain();
  CHECK(field_equal_through(moved[0], plain.t.fields[0], moved[0].trusted));
  CHECK(field_equal_through(moved[1], plain.t.fields[1], moved[1].trusted));
}

TEST_CASE("normalize_full reduces the affine line to its resonant form") {
  auto f = fixtures::aff1();
  NormalizationResult res = normalize_full(f.g, f.d, f.t);

  CHECK(res.p == 1);
  CHECK(res.q == 1);
  CHECK(res.straightening_phi.is_identity());
  CHECK(res.a == Mat{{GaussianRational(1)}});
  CHECK(res.spectral.mu == std::vector<Vec>{Vec{GaussianRational(-1)}});
  CHECK(res.spectral.nu == std::vector<Vec>{Vec{GaussianRational::of(-1, 2)}});
  CHECK(res.roots == std::vector<Vec>{Vec{GaussianRational(0)}, Vec{GaussianRational(1)}});
  REQUIRE(res.x0.has_value());
  CHECK(*res.x0 == Vec{GaussianRational(1)});

  REQUIRE(res.stages.size() == 1);
  CHECK(res.stages[0].kind == "homological");
  CHECK(res.stages[0].degree == 3);
  CHECK(res.stages[0].map.comp[0].coeff({0, 3}) == GaussianRational(2));
  CHECK(res.phi_total.comp[0].coeff({0, 3}) == GaussianRational(2));

  auto plain = fixtures::aff1_plain();
  REQUIRE(res.normal_form[0].trusted >= 4);
  CHECK(field_equal_through(res.normal_form[0], plain.t.fields[0], res.normal_form[0].trusted));
  CHECK(field_equal_through(res.normal_form[1], plain.t.fields[1], res.normal_form[1].trusted));

  CHECK(res.verification.passed);
  CHECK(res.verification.clauses.size() == 12);
  REQUIRE(res.verification.notes.size() == 1);
  CHECK(res.verification.notes[0].zero);
}

TEST_CASE("normalize_full leaves an already resonant input alone") {
  auto f = fixtures::aff1_plain();
  NormalizationResult res = normalize_full(f.g, f.d, f.t);
  CHECK(res.stages.empty());
  CHECK(res.phi_total.is_identity());
  CHECK(field_equal_through(res.normal_form[0], f.t.fields[0], res.normal_form[0].trusted));
  CHECK(res.verification.passed);
}

TEST_CASE("normalize_full removes a non-resonant cross term") {
  auto f = fixtures::aff1_linmix();
  NormalizationResult res = normalize_full(f.g, f.d, f.t);
  REQUIRE(res.stages.size() == 1);
  CHECK(res.stages[0].kind == "homological");
  CHECK(res.stages[0].degree == 1);
  CHECK(res.stages[0].map.comp[0].coeff({0, 1}) == GaussianRational(-2));
  auto plain = fixtures::aff1_plain();
  CHECK(field_equal_through(res.normal_form[0], plain.t.fields[0], res.normal_form[0].trusted));
  CHECK(res.verification.passed);
}

TEST_CASE("normalize_full works over the Gaussian rationals") {
  auto f = fixtures::aff1_gauss();
  NormalizationResult res = normalize_full(f.g, f.d, f.t);
  CHECK(res.resonance.r.empty());
  CHECK(res.resonance.r0.empty());
  REQUIRE(res.resonance.rprime.size() == 1);
  CHECK(res.resonance.rprime[0] == ResonancePair{{1}, 0});

  // The quadratic weight is 2i + 1, so the correction coefficient is
  // -1/(1 + 2i) = -1/5 + 2i/5.
  REQUIRE(res.stages.size() == 1);
  CHECK(res.stages[0].degree == 2);
  CHECK(res.stages[0].map.comp[0].coeff({0, 2}) == GaussianRational::of(-1, 5, 2, 5));

  CHECK(res.normal_form[0].comp[0].terms().size() == 1);
  CHECK(res.normal_form[0].comp[0].coeff({1, 0}) == GaussianRational(-1));
  CHECK(res.normal_form[0].comp[1].coeff({0, 1}) == GaussianRational::i());
  CHECK(res.verification.passed);
}

TEST_CASE("normalize_full triangularizes a rotated radical block") {
  Vec minus_b(3, GaussianRational(0)), minus_a(3, GaussianRational(0));
  minus_b[2] = GaussianRational(-1);
  minus_a[1] = GaussianRational(-1);
  LieAlgebra g = fixtures::algebra({"R", "A", "B"}, {{0, 1, minus_b}, {0, 2, minus_a}});
  Decomposition d;
  d.m = {1, 2};
  d.g0 = {0};
  d.r = {0};
  d.s = {};
  NonlinearRep t;
  t.n = 2;
  t.degree = 3;
  FormalVectorField tr = FormalVectorField::zero(2, 3);
  tr.add_term({0, 1}, 0, GaussianRational(1));
  tr.add_term({1, 0}, 1, GaussianRational(1));
  FormalVectorField ta = FormalVectorField::zero(2, 3);
  ta.add_term({0, 0}, 0, GaussianRational(1));
  FormalVectorField tb = FormalVectorField::zero(2, 3);
  tb.add_term({0, 0}, 1, GaussianRational(1));
  t.fields = {tr, ta, tb};

  NormalizationResult res = normalize_full(g, d, t);
  REQUIRE(res.stages.size() == 1);
  CHECK(res.stages[0].kind == "triangularize");
  GaussianRational d0 = res.spectral.mu[0][0], d1 = res.spectral.mu[1][0];
  CHECK(((d0 == GaussianRational(1) && d1 == GaussianRational(-1)) ||
         (d0 == GaussianRational(-1) && d1 == GaussianRational(1))));
  CHECK(res.normal_form[0].comp[0].coeff({1, 0}) == d0);
  CHECK(res.normal_form[0].comp[1].coeff({0, 1}) == d1);
  CHECK(res.roots.size() == 3);
  CHECK(res.verification.passed);
}

TEST_CASE("normalize_full rejects a radical with irrational weights") {
  Vec minus_b(3, GaussianRational(0)), two_a(3, GaussianRational(0));
  minus_b[2] = GaussianRational(-1);
  two_a[1] = GaussianRational(2);
  LieAlgebra g = fixtures::algebra({"R", "A", "B"}, {{0, 1, minus_b}, {0, 2, two_a}});
  Decomposition d;
  d.m = {1, 2};
  d.g0 = {0};
  d.r = {0};
  d.s = {};
  NonlinearRep t;
  t.n = 2;
  t.degree = 3;
  FormalVectorField tr = FormalVectorField::zero(2, 3);
  tr.add_term({0, 1}, 0, GaussianRational(-2));
  tr.add_term({1, 0}, 1, GaussianRational(1));
  FormalVectorField ta = FormalVectorField::zero(2, 3);
  ta.add_term({0, 0}, 0, GaussianRational(1));
  FormalVectorField tb = FormalVectorField::zero(2, 3);
  tb.add_term({0, 0}, 1, GaussianRational(1));
  t.fields = {tr, ta, tb};

  try {
    normalize_full(g, d, t);
    FAIL("triangularization accepted eigenvalues outside Q(i)");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EigenvalueNotGaussianRational);
    CHECK(std::string(e.what()).find("triangularize") != std::string::npos);
  }
}

TEST_CASE("normalize_full linearizes the semisimple family") {
  auto f = fixtures::sl2c2();
  NormalizationResult res = normalize_full(f.g, f.d, f.t);

  CHECK(res.p == 2);
  CHECK(res.q == 1);
  CHECK(res.straightening_phi.is_identity());
  CHECK(res.roots.empty());
  CHECK_FALSE(res.x0.has_value());
  CHECK(res.resonance.r.empty());
  CHECK(res.resonance.rprime.empty());

  REQUIRE(res.stages.size() == 2);
  CHECK(res.stages[0].kind == "semisimple");
  CHECK(res.stages[0].degree == 2);
  CHECK(res.stages[0].map.comp[0].coeff({0, 0, 2}) == GaussianRational(-1));
  CHECK(res.stages[1].kind == "semisimple");
  CHECK(res.stages[1].degree == 3);
  CHECK(res.stages[1].map.comp[1].coeff({0, 0, 3}) == GaussianRational(-1));

  for (int sb : f.d.s) {
    const FormalVectorField& v = res.normal_form[sb];
    CHECK(field_equal_through(v, v.degree_slice(1), v.trusted));
  }
  Mat h = res.normal_form[0].linear_matrix();
  CHECK(h[0][0] == GaussianRational(-1));
  CHECK(h[1][1] == GaussianRational(1));
  CHECK(res.normal_form[1].linear_matrix()[0][1] == GaussianRational(-1));
  CHECK(res.normal_form[2].linear_matrix()[1][0] == GaussianRational(-1));
  CHECK(res.verification.passed);
}

TEST_CASE("normalize_full handles an empty ideal") {
  LieAlgebra g = fixtures::algebra({"R"}, {});
  Decomposition d;
  d.m = {};
  d.g0 = {0};
  d.r = {0};
  d.s = {};
  NonlinearRep t;
  t.n = 1;
  t.degree = 3;
  t.fields = {FormalVectorField::zero(1, 3)};

  NormalizationResult res = normalize_full(g, d, t);
  CHECK(res.p == 0);
  CHECK(res.q == 1);
  CHECK(res.stages.empty());
  CHECK(res.phi_total.is_identity());
  CHECK(res.roots == std::vector<Vec>{Vec{GaussianRational(0)}});
  REQUIRE(res.x0.has_value());
  CHECK(res.resonance.r.empty());
  CHECK(res.resonance.rprime.size() == 3);
  CHECK(res.verification.passed);
}

TEST_CASE("normalization is idempotent") {
  auto f = fixtures::aff1();
  NormalizationResult first = normalize_full(f.g, f.d, f.t);
  NonlinearRep again;
  again.n = first.n;
  again.degree = first.normal_form[0].trusted;
  for (const auto& v : first.normal_form)
    again.degree = std::min(again.degree, v.trusted);
  again.fields = first.normal_form;
  NormalizationResult second = normalize_full(f.g, f.d, again);
  CHECK(second.stages.empty());
  CHECK(second.phi_total.is_identity());
}

TEST_CASE("verify_result rejects tampered results") {
  auto f = fixtures::aff1();
  NormalizationResult res = normalize_full(f.g, f.d, f.t);
  REQUIRE(verify_result(f.g, f.d, f.t, res).passed);

  SUBCASE("non-resonant term in the normal form") {
    res.normal_form[0].add_term({0, 4}, 0, GaussianRational(1));
    VerificationReport rep = verify_result(f.g, f.d, f.t, res);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(clause_passed(rep, "radical-resonant"));
    CHECK_FALSE(clause_passed(rep, "equivalence"));
  }
  SUBCASE("uncertifiable distinguished element") {
    res.x0 = Vec{GaussianRational(0)};
    VerificationReport rep = verify_result(f.g, f.d, f.t, res);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(clause_passed(rep, "x0-certified"));
  }
  SUBCASE("transformation out of step with the stages") {
    res.phi_total.comp[0].add_term({0, 5}, GaussianRational(1));
    VerificationReport rep = verify_result(f.g, f.d, f.t, res);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(clause_passed(rep, "stage-composition"));
  }
  SUBCASE("wrong ideal constants") {
    res.a[0][0] = GaussianRational(2);
    VerificationReport rep = verify_result(f.g, f.d, f.t, res);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(clause_passed(rep, "ideal-constant"));
  }
  SUBCASE("wrong root list") {
    res.roots = {Vec{GaussianRational(0)}, Vec{GaussianRational(2)}};
    VerificationReport rep = verify_result(f.g, f.d, f.t, res);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(clause_passed(rep, "roots-match"));
  }
  SUBCASE("wrong spectral data") {
    res.spectral.mu[0] = Vec{GaussianRational(-2)};
    VerificationReport rep = verify_result(f.g, f.d, f.t, res);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(clause_passed(rep, "spectral-match"));
  }
  SUBCASE("missing resonance entry") {
    res.resonance.r.clear();
    VerificationReport rep = verify_result(f.g, f.d, f.t, res);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(clause_passed(rep, "resonance-match"));
  }
}

TEST_CASE("normalize_full refuses invalid input") {
  auto f = fixtures::aff1();
  f.d.s = {0};  // overlaps the radical
  try {
    normalize_full(f.g, f.d, f.t);
    FAIL("invalid decomposition accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValidationFailed);
  }
}
