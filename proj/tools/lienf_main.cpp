#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lienf/errors.hpp"
#include "lienf/problem.hpp"

namespace {

using namespace lienf;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorKind::IoError, "cannot read '" + path + "'");
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ValidationFailed:
      return 2;
    case ErrorKind::EigenvalueNotGaussianRational:
    case ErrorKind::RootSearchOverflow:
    case ErrorKind::SearchExhausted:
      return 3;
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::IoError:
    case ErrorKind::IndexOutOfRange:
      return 5;
    default:
      return 4;
  }
}

std::string iso_now() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string(buf);
}

/// Metadata lives outside the canonical payload: without --stamp the output
/// is byte-deterministic, with it only this field varies.
std::string add_stamp(const std::string& payload, const std::string& format) {
  if (format == "text") return payload + "stamp: " + iso_now() + "\n";
  nlohmann::json j = nlohmann::json::parse(payload);
  j["stamp"] = iso_now();
  return j.dump(2) + "\n";
}

void override_degree(LieProblem& pb, int degree) {
  if (degree <= 0) return;
  pb.t.degree = degree;
  for (auto& f : pb.t.fields) {
    f = f.truncated(degree);
    f.trusted = degree;
  }
}

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  int degree = 0;
  int max_box = 16;
  bool stamp = false;
};

int run_validate(const Options& opt) {
  LieProblem pb = parse_problem(read_file(opt.input));
  override_degree(pb, opt.degree);
  ValidationReport rep = validate_input(pb.g, pb.d, pb.t);
  std::string payload = opt.format == "text" ? validation_text(rep) : validation_json(rep);
  if (opt.stamp) payload = add_stamp(payload, opt.format);
  write_output(opt.output, payload);
  return rep.ok() ? 0 : 2;
}

int run_straighten(const Options& opt) {
  LieProblem pb = parse_problem(read_file(opt.input));
  override_degree(pb, opt.degree);
  ValidationReport vr = validate_input(pb.g, pb.d, pb.t);
  if (!vr.ok()) fail(ErrorKind::ValidationFailed, vr.first_failure());
  std::vector<FormalVectorField> mfields;
  for (int mj : pb.d.m) mfields.push_back(pb.t.fields[mj]);
  StraightenedIdeal st = straighten(mfields, pb.t.n, pb.t.degree);
  std::vector<FormalVectorField> moved =
      st.phi.is_identity() ? pb.t.fields : conjugate_rep(pb.t.fields, pb.g, st.phi);
  std::string payload = opt.format == "text" ? straightening_text(pb, st, moved)
                                             : straightening_json(pb, st, moved);
  if (opt.stamp) payload = add_stamp(payload, opt.format);
  write_output(opt.output, payload);
  return 0;
}

int run_normalize(const Options& opt) {
  LieProblem pb = parse_problem(read_file(opt.input));
  override_degree(pb, opt.degree);
  NormalizationResult res = normalize_full(pb.g, pb.d, pb.t, opt.max_box);
  std::string payload = opt.format == "text" ? result_text(pb, res) : result_json(pb, res);
  if (opt.stamp) payload = add_stamp(payload, opt.format);
  write_output(opt.output, payload);
  return 0;
}

int run_verify(const Options& opt) {
  ResultDocument doc = parse_result(read_file(opt.input));
  VerificationClause hash_clause;
  hash_clause.name = "input-hash";
  std::string expected = problem_hash(doc.problem);
  hash_clause.passed = expected == doc.input_hash;
  if (!hash_clause.passed)
    hash_clause.detail = "embedded problem hashes to " + expected + ", document claims " +
                         doc.input_hash;
  VerificationReport rep =
      verify_result(doc.problem.g, doc.problem.d, doc.problem.t, doc.result);
  rep.clauses.insert(rep.clauses.begin(), hash_clause);
  rep.passed = rep.passed && hash_clause.passed;
  std::string payload = opt.format == "text" ? verification_text(rep) : verification_json(rep);
  if (opt.stamp) payload = add_stamp(payload, opt.format);
  write_output(opt.output, payload);
  return rep.passed ? 0 : 4;
}

void report_error(const Error& e, const std::string& format) {
  if (format == "text") {
    std::cerr << "error: " << e.what() << "\n";
    return;
  }
  nlohmann::json j;
  j["error"]["kind"] = error_kind_name(e.kind());
  j["error"]["message"] = e.message();
  std::cerr << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normalization of nonlinear Lie algebra representations along an abelian ideal"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* validate = app.add_subcommand("validate", "check a problem document");
  CLI::App* straighten_cmd =
      app.add_subcommand("straighten", "straighten the ideal fields and report the chart");
  CLI::App* normalize = app.add_subcommand("normalize", "run the full normalization pipeline");
  CLI::App* verify =
      app.add_subcommand("verify", "recheck every certificate of a result document");

  for (CLI::App* sub : {validate, straighten_cmd, normalize, verify}) {
    sub->add_option("--input", opt.input, "input document path")->required();
    sub->add_option("--output", opt.output, "output path (default: standard output)");
    sub->add_option("--degree", opt.degree, "override the truncation degree");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--max-search-box", opt.max_box,
                    "enumeration bound for the distinguished element");
    sub->add_flag("--stamp", opt.stamp, "add a timestamp outside the canonical payload");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) return run_validate(opt);
    if (app.got_subcommand(straighten_cmd)) return run_straighten(opt);
    if (app.got_subcommand(normalize)) return run_normalize(opt);
    return run_verify(opt);
  } catch (const Error& e) {
    report_error(e, opt.format);
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
