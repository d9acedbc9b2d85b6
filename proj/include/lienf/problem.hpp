#pragma once

#include <string>
#include <vector>

#include "lienf/lie.hpp"
#include "lienf/normal_form.hpp"
#include "lienf/straighten.hpp"

namespace lienf {

/// One normalization problem as carried by a problem document: the algebra,
/// its decomposition, and the nonlinear representation.
struct LieProblem {
  LieAlgebra g;
  Decomposition d;
  NonlinearRep t;
};

/// Strict reader for problem documents.  ParseError on malformed text,
/// SchemaError on structural violations: missing or mistyped keys, indices
/// out of range, duplicate structure constants or terms, exponent vectors of
/// the wrong length, terms beyond the truncation degree.
LieProblem parse_problem(const std::string& text);

/// Canonical single-line rendering with sorted keys and reduced structure
/// constants; the embedded form inside result documents and the exact
/// payload of problem_hash.
std::string problem_json(const LieProblem& pb);

/// FNV-1a 64 over problem_json, rendered as "fnv1a64:" plus 16 hex digits.
std::string problem_hash(const LieProblem& pb);

/// Full result document, indented, byte-deterministic for a given result.
std::string result_json(const LieProblem& pb, const NormalizationResult& res);

struct ResultDocument {
  LieProblem problem;
  std::string input_hash;
  NormalizationResult result;
};

/// Strict reader for result documents, inverse of result_json.
ResultDocument parse_result(const std::string& text);

/// Document for the straightening stage alone: the recombination matrix, the
/// chart, the section, and the whole family transported through the chart.
std::string straightening_json(const LieProblem& pb, const StraightenedIdeal& st,
                               const std::vector<FormalVectorField>& moved);

std::string validation_json(const ValidationReport& rep);
std::string verification_json(const VerificationReport& rep);

/// Human-oriented renderings for the text output format.
std::string validation_text(const ValidationReport& rep);
std::string verification_text(const VerificationReport& rep);
std::string straightening_text(const LieProblem& pb, const StraightenedIdeal& st,
                               const std::vector<FormalVectorField>& moved);
std::string result_text(const LieProblem& pb, const NormalizationResult& res);

}  // namespace lienf
