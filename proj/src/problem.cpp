#include "lienf/problem.hpp"

#include <cstdint>
#include <cstdio>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "lienf/errors.hpp"

namespace lienf {

namespace {

using nlohmann::json;

const json& at(const json& j, const char* key) {
  if (!j.is_object()) fail(ErrorKind::SchemaError, "expected an object around '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorKind::SchemaError, "missing key '" + std::string(key) + "'");
  return *it;
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(ErrorKind::SchemaError, std::string(what) + " must be an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) fail(ErrorKind::SchemaError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::SchemaError, std::string(what) + " must be an array");
  return j;
}

const json& as_object(const json& j, const char* what) {
  if (!j.is_object()) fail(ErrorKind::SchemaError, std::string(what) + " must be an object");
  return j;
}

bool as_bool(const json& j, const char* what) {
  if (!j.is_boolean()) fail(ErrorKind::SchemaError, std::string(what) + " must be a boolean");
  return j.get<bool>();
}

/// 1-based document index into the 0-based internal one.
int as_index(const json& j, const char* what, int limit) {
  int v = as_int(j, what);
  if (v < 1 || v > limit)
    fail(ErrorKind::SchemaError,
         std::string(what) + " " + std::to_string(v) + " out of range 1.." + std::to_string(limit));
  return v - 1;
}

GaussianRational as_scalar(const json& j, const char* what) {
  return GaussianRational::parse(as_string(j, what));
}

json scalar_to(const GaussianRational& c) { return c.str(); }

json vec_to(const Vec& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(scalar_to(e));
  return out;
}

Vec vec_from(const json& j, const char* what) {
  Vec out;
  for (const auto& e : as_array(j, what)) out.push_back(as_scalar(e, what));
  return out;
}

json mat_to(const Mat& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(vec_to(row));
  return out;
}

Mat mat_from(const json& j, const char* what, int rows, int cols) {
  const json& arr = as_array(j, what);
  if (static_cast<int>(arr.size()) != rows)
    fail(ErrorKind::SchemaError, std::string(what) + " must have " + std::to_string(rows) + " rows");
  Mat out;
  for (const auto& row : arr) {
    Vec r = vec_from(row, what);
    if (static_cast<int>(r.size()) != cols)
      fail(ErrorKind::SchemaError, std::string(what) + " must have " + std::to_string(cols) + " columns");
    out.push_back(std::move(r));
  }
  return out;
}

json alpha_to(const MultiIndex& alpha) {
  json out = json::array();
  for (int e : alpha) out.push_back(e);
  return out;
}

MultiIndex alpha_from(const json& j, const char* what, int len) {
  const json& arr = as_array(j, what);
  if (len >= 0 && static_cast<int>(arr.size()) != len)
    fail(ErrorKind::SchemaError, std::string(what) + " must have length " + std::to_string(len));
  MultiIndex out;
  for (const auto& e : arr) {
    int v = as_int(e, what);
    if (v < 0) fail(ErrorKind::SchemaError, std::string(what) + " has a negative exponent");
    out.push_back(v);
  }
  return out;
}

/// Term list of a vector field, components in order, monomials canonical.
json terms_to(const FormalVectorField& f) {
  json out = json::array();
  for (int i = 0; i < f.dim; ++i)
    for (const auto& [alpha, c] : f.comp[i].terms()) {
      json t;
      t["alpha"] = alpha_to(alpha);
      t["coeff"] = scalar_to(c);
      t["target"] = i + 1;
      out.push_back(t);
    }
  return out;
}

FormalVectorField terms_from(const json& j, const char* what, int n, int trusted) {
  FormalVectorField f = FormalVectorField::zero(n, trusted);
  std::set<std::pair<MultiIndex, int>> seen;
  for (const auto& t : as_array(j, what)) {
    MultiIndex alpha = alpha_from(at(t, "alpha"), what, n);
    int target = as_index(at(t, "target"), what, n);
    GaussianRational c = as_scalar(at(t, "coeff"), what);
    if (!seen.insert({alpha, target}).second)
      fail(ErrorKind::SchemaError, std::string(what) + " repeats a term");
    f.add_term(alpha, target, c);
  }
  return f;
}

json field_to(const FormalVectorField& f) {
  json out;
  out["terms"] = terms_to(f);
  out["trusted"] = f.trusted;
  return out;
}

FormalVectorField field_from(const json& j, const char* what, int n) {
  int trusted = as_int(at(j, "trusted"), what);
  if (trusted < 0) fail(ErrorKind::SchemaError, std::string(what) + " has a negative trusted degree");
  return terms_from(at(j, "terms"), what, n, trusted);
}

json map_to(const FormalMap& m) {
  json comps = json::array();
  for (int i = 0; i < m.dim; ++i) {
    json terms = json::array();
    for (const auto& [alpha, c] : m.comp[i].terms()) {
      json t;
      t["alpha"] = alpha_to(alpha);
      t["coeff"] = scalar_to(c);
      terms.push_back(t);
    }
    comps.push_back(terms);
  }
  json out;
  out["components"] = comps;
  out["trusted"] = m.trusted;
  return out;
}

FormalMap map_from(const json& j, const char* what, int n) {
  const json& comps = as_array(at(j, "components"), what);
  if (static_cast<int>(comps.size()) != n)
    fail(ErrorKind::SchemaError, std::string(what) + " must have " + std::to_string(n) + " components");
  FormalMap m;
  m.dim = n;
  m.trusted = as_int(at(j, "trusted"), what);
  if (m.trusted < 0) fail(ErrorKind::SchemaError, std::string(what) + " has a negative trusted degree");
  for (const auto& comp : comps) {
    SparsePoly p(n);
    for (const auto& t : as_array(comp, what))
      p.add_term(alpha_from(at(t, "alpha"), what, n), as_scalar(at(t, "coeff"), what));
    m.comp.push_back(std::move(p));
  }
  return m;
}

json pairs_to(const std::vector<ResonancePair>& pairs) {
  json out = json::array();
  for (const auto& pr : pairs) {
    json t;
    t["alpha"] = alpha_to(pr.alpha);
    t["target"] = pr.target + 1;
    out.push_back(t);
  }
  return out;
}

std::vector<ResonancePair> pairs_from(const json& j, const char* what, int block) {
  std::vector<ResonancePair> out;
  for (const auto& t : as_array(j, what)) {
    ResonancePair pr;
    pr.alpha = alpha_from(at(t, "alpha"), what, -1);
    pr.target = as_index(at(t, "target"), what, block);
    out.push_back(std::move(pr));
  }
  return out;
}

std::vector<int> indices_from(const json& j, const char* what, int limit) {
  std::vector<int> out;
  for (const auto& e : as_array(j, what)) out.push_back(as_index(e, what, limit));
  return out;
}

json indices_to(const std::vector<int>& v) {
  json out = json::array();
  for (int e : v) out.push_back(e + 1);
  return out;
}

LieProblem problem_from(const json& j) {
  LieProblem pb;
  const int n = as_int(at(j, "dimension"), "dimension");
  if (n < 1) fail(ErrorKind::SchemaError, "dimension must be positive");
  const int K = as_int(at(j, "degree"), "degree");
  if (K < 1) fail(ErrorKind::SchemaError, "degree must be positive");

  const json& alg = as_object(at(j, "algebra"), "algebra");
  const int dim = as_int(at(alg, "dim"), "algebra.dim");
  if (dim < 1) fail(ErrorKind::SchemaError, "algebra.dim must be positive");
  const json& basis = as_array(at(alg, "basis"), "algebra.basis");
  if (static_cast<int>(basis.size()) != dim)
    fail(ErrorKind::SchemaError, "algebra.basis must list exactly algebra.dim names");
  std::set<std::string> unique;
  for (const auto& e : basis) {
    std::string name = as_string(e, "basis name");
    if (name.empty()) fail(ErrorKind::SchemaError, "basis names must be nonempty");
    if (!unique.insert(name).second)
      fail(ErrorKind::SchemaError, "duplicate basis name '" + name + "'");
    pb.g.names.push_back(std::move(name));
  }
  pb.g.c.assign(dim, std::vector<Vec>(dim, Vec(dim, GaussianRational(0))));
  std::set<std::tuple<int, int, int>> rows;
  for (const auto& row : as_array(at(alg, "structure_constants"), "structure_constants")) {
    int a = as_index(at(row, "a"), "structure constant index", dim);
    int b = as_index(at(row, "b"), "structure constant index", dim);
    int cc = as_index(at(row, "c"), "structure constant index", dim);
    GaussianRational v = as_scalar(at(row, "value"), "structure constant value");
    if (a == b) fail(ErrorKind::SchemaError, "structure constant brackets a basis element with itself");
    if (!rows.insert({std::min(a, b), std::max(a, b), cc}).second)
      fail(ErrorKind::SchemaError, "duplicate structure constant for (" + pb.g.names[a] + ", " +
                                       pb.g.names[b] + ") -> " + pb.g.names[cc]);
    pb.g.c[a][b][cc] = v;
    pb.g.c[b][a][cc] = -v;
  }

  const json& dec = as_object(at(j, "decomposition"), "decomposition");
  pb.d.m = indices_from(at(dec, "m"), "decomposition.m", dim);
  pb.d.g0 = indices_from(at(dec, "g0"), "decomposition.g0", dim);
  pb.d.r = indices_from(at(dec, "r"), "decomposition.r", dim);
  pb.d.s = indices_from(at(dec, "s"), "decomposition.s", dim);

  pb.t.n = n;
  pb.t.degree = K;
  const json& rep = as_object(at(j, "representation"), "representation");
  for (const auto& [key, value] : rep.items()) {
    (void)value;
    if (unique.find(key) == unique.end())
      fail(ErrorKind::SchemaError, "representation names unknown basis element '" + key + "'");
  }
  for (int i = 0; i < dim; ++i) {
    const std::string& name = pb.g.names[i];
    auto it = rep.find(name);
    if (it == rep.end())
      fail(ErrorKind::SchemaError, "representation is missing the field of '" + name + "'");
    FormalVectorField f = terms_from(*it, ("field of " + name).c_str(), n, K);
    for (int v = 0; v < n; ++v)
      if (f.comp[v].max_degree() > K)
        fail(ErrorKind::SchemaError, "field of " + name + " has a term beyond the truncation degree");
    pb.t.fields.push_back(std::move(f));
  }
  return pb;
}

json problem_to(const LieProblem& pb) {
  const int dim = pb.g.dim();
  json j;
  j["dimension"] = pb.t.n;
  j["degree"] = pb.t.degree;

  json alg;
  alg["dim"] = dim;
  alg["basis"] = pb.g.names;
  json rows = json::array();
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      for (int cc = 0; cc < dim; ++cc)
        if (!pb.g.c[a][b][cc].is_zero()) {
          json row;
          row["a"] = a + 1;
          row["b"] = b + 1;
          row["c"] = cc + 1;
          row["value"] = scalar_to(pb.g.c[a][b][cc]);
          rows.push_back(row);
        }
  alg["structure_constants"] = rows;
  j["algebra"] = alg;

  json dec;
  dec["m"] = indices_to(pb.d.m);
  dec["g0"] = indices_to(pb.d.g0);
  dec["r"] = indices_to(pb.d.r);
  dec["s"] = indices_to(pb.d.s);
  j["decomposition"] = dec;

  json rep;
  for (int i = 0; i < dim; ++i) rep[pb.g.names[i]] = terms_to(pb.t.fields[i]);
  j["representation"] = rep;
  return j;
}

std::string fnv1a64_hex(const std::string& payload) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : payload) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

json verification_to(const VerificationReport& rep) {
  json out;
  out["passed"] = rep.passed;
  json clauses = json::array();
  for (const auto& cl : rep.clauses) {
    json c;
    c["name"] = cl.name;
    c["passed"] = cl.passed;
    c["detail"] = cl.detail;
    clauses.push_back(c);
  }
  out["clauses"] = clauses;
  json notes = json::array();
  for (const auto& nt : rep.notes) {
    json c;
    c["name"] = nt.name;
    c["zero"] = nt.zero;
    c["terms"] = nt.terms;
    notes.push_back(c);
  }
  out["commutator_residues"] = notes;
  return out;
}

VerificationReport verification_from(const json& j) {
  VerificationReport rep;
  rep.passed = as_bool(at(j, "passed"), "verification.passed");
  for (const auto& c : as_array(at(j, "clauses"), "verification.clauses")) {
    VerificationClause cl;
    cl.name = as_string(at(c, "name"), "clause name");
    cl.passed = as_bool(at(c, "passed"), "clause flag");
    cl.detail = as_string(at(c, "detail"), "clause detail");
    rep.clauses.push_back(std::move(cl));
  }
  for (const auto& c : as_array(at(j, "commutator_residues"), "commutator_residues")) {
    CommutatorNote nt;
    nt.name = as_string(at(c, "name"), "residue name");
    nt.zero = as_bool(at(c, "zero"), "residue flag");
    nt.terms = as_int(at(c, "terms"), "residue terms");
    rep.notes.push_back(std::move(nt));
  }
  return rep;
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

std::string pair_str(const ResonancePair& pr, int p, bool transverse) {
  MultiIndex alpha(p + static_cast<int>(pr.alpha.size()), 0);
  for (std::size_t k = 0; k < pr.alpha.size(); ++k) alpha[p + k] = pr.alpha[k];
  std::string target = transverse ? "y" + std::to_string(pr.target + 1)
                                  : "x" + std::to_string(pr.target + 1);
  return render_monomial(alpha, p) + " -> " + target;
}

void append_mat(std::ostringstream& os, const std::string& label, const Mat& m) {
  os << label << ":";
  if (m.empty()) {
    os << " (empty)\n";
    return;
  }
  os << "\n";
  for (const auto& row : m) os << "  " << form_str(row) << "\n";
}

}  // namespace

LieProblem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  return problem_from(j);
}

std::string problem_json(const LieProblem& pb) { return problem_to(pb).dump(); }

std::string problem_hash(const LieProblem& pb) {
  return "fnv1a64:" + fnv1a64_hex(problem_json(pb));
}

std::string result_json(const LieProblem& pb, const NormalizationResult& res) {
  json j;
  j["format"] = "lienf-result";
  j["version"] = 1;
  j["problem"] = problem_to(pb);
  j["input_hash"] = problem_hash(pb);
  j["dimension"] = res.n;
  j["degree"] = res.degree;
  j["p"] = res.p;
  j["q"] = res.q;

  json st;
  st["a"] = mat_to(res.a);
  st["phi"] = map_to(res.straightening_phi);
  st["section"] = indices_to(res.section);
  j["straightening"] = st;

  json tri;
  tri["x_change"] = mat_to(res.spectral.x_change);
  tri["y_change"] = mat_to(res.spectral.y_change);
  j["triangularization"] = tri;

  json sp;
  json mu = json::array(), nu = json::array(), roots = json::array();
  for (const auto& f : res.spectral.mu) mu.push_back(vec_to(f));
  for (const auto& f : res.spectral.nu) nu.push_back(vec_to(f));
  for (const auto& f : res.roots) roots.push_back(vec_to(f));
  sp["mu"] = mu;
  sp["nu"] = nu;
  sp["roots"] = roots;
  j["spectral"] = sp;

  json rs;
  rs["X0"] = res.x0 ? vec_to(*res.x0) : json();
  rs["R"] = pairs_to(res.resonance.r);
  rs["Rprime"] = pairs_to(res.resonance.rprime);
  rs["R0"] = pairs_to(res.resonance.r0);
  rs["R0prime"] = pairs_to(res.resonance.r0prime);
  j["resonance"] = rs;

  json stages = json::array();
  for (const auto& stg : res.stages) {
    json s;
    s["kind"] = stg.kind;
    s["degree"] = stg.degree;
    s["map"] = map_to(stg.map);
    stages.push_back(s);
  }
  j["stages"] = stages;
  j["phi_total"] = map_to(res.phi_total);

  json nf;
  for (int i = 0; i < pb.g.dim(); ++i) nf[pb.g.names[i]] = field_to(res.normal_form[i]);
  j["normal_form"] = nf;

  j["verification"] = verification_to(res.verification);
  return j.dump(2) + "\n";
}

ResultDocument parse_result(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  if (as_string(at(j, "format"), "format") != "lienf-result")
    fail(ErrorKind::SchemaError, "not a result document");
  if (as_int(at(j, "version"), "version") != 1)
    fail(ErrorKind::SchemaError, "unsupported result version");

  ResultDocument doc;
  doc.problem = problem_from(at(j, "problem"));
  doc.input_hash = as_string(at(j, "input_hash"), "input_hash");

  NormalizationResult& res = doc.result;
  res.n = as_int(at(j, "dimension"), "dimension");
  res.degree = as_int(at(j, "degree"), "degree");
  res.p = as_int(at(j, "p"), "p");
  res.q = as_int(at(j, "q"), "q");
  if (res.n != doc.problem.t.n || res.degree != doc.problem.t.degree)
    fail(ErrorKind::SchemaError, "result dimensions disagree with the embedded problem");
  if (res.p != static_cast<int>(doc.problem.d.m.size()) || res.p + res.q != res.n)
    fail(ErrorKind::SchemaError, "block sizes disagree with the embedded problem");
  const int n = res.n, p = res.p, q = res.q;

  const json& st = as_object(at(j, "straightening"), "straightening");
  res.a = mat_from(at(st, "a"), "straightening.a", p, p);
  res.straightening_phi = map_from(at(st, "phi"), "straightening.phi", n);
  res.section = indices_from(at(st, "section"), "straightening.section", n);

  const json& tri = as_object(at(j, "triangularization"), "triangularization");
  res.spectral.p = p;
  res.spectral.q = q;
  res.spectral.x_change = mat_from(at(tri, "x_change"), "x_change", p, p);
  res.spectral.y_change = mat_from(at(tri, "y_change"), "y_change", q, q);

  const json& sp = as_object(at(j, "spectral"), "spectral");
  for (const auto& f : as_array(at(sp, "mu"), "spectral.mu"))
    res.spectral.mu.push_back(vec_from(f, "spectral.mu"));
  for (const auto& f : as_array(at(sp, "nu"), "spectral.nu"))
    res.spectral.nu.push_back(vec_from(f, "spectral.nu"));
  for (const auto& f : as_array(at(sp, "roots"), "spectral.roots"))
    res.roots.push_back(vec_from(f, "spectral.roots"));

  const json& rs = as_object(at(j, "resonance"), "resonance");
  const json& x0 = at(rs, "X0");
  if (!x0.is_null()) res.x0 = vec_from(x0, "resonance.X0");
  res.resonance.degree = res.degree;
  res.resonance.r = pairs_from(at(rs, "R"), "resonance.R", p);
  res.resonance.rprime = pairs_from(at(rs, "Rprime"), "resonance.Rprime", q);
  res.resonance.r0 = pairs_from(at(rs, "R0"), "resonance.R0", p);
  res.resonance.r0prime = pairs_from(at(rs, "R0prime"), "resonance.R0prime", q);

  for (const auto& s : as_array(at(j, "stages"), "stages")) {
    StageRecord stg;
    stg.kind = as_string(at(s, "kind"), "stage kind");
    if (stg.kind != "straighten" && stg.kind != "triangularize" && stg.kind != "homological" &&
        stg.kind != "semisimple")
      fail(ErrorKind::SchemaError, "unknown stage kind '" + stg.kind + "'");
    stg.degree = as_int(at(s, "degree"), "stage degree");
    stg.map = map_from(at(s, "map"), "stage map", n);
    res.stages.push_back(std::move(stg));
  }
  res.phi_total = map_from(at(j, "phi_total"), "phi_total", n);

  const json& nf = as_object(at(j, "normal_form"), "normal_form");
  for (const auto& name : doc.problem.g.names) {
    auto it = nf.find(name);
    if (it == nf.end())
      fail(ErrorKind::SchemaError, "normal form is missing the field of '" + name + "'");
    res.normal_form.push_back(field_from(*it, ("normal form of " + name).c_str(), n));
  }

  res.verification = verification_from(at(j, "verification"));
  return doc;
}

std::string straightening_json(const LieProblem& pb, const StraightenedIdeal& st,
                               const std::vector<FormalVectorField>& moved) {
  json j;
  j["a"] = mat_to(st.a);
  j["phi"] = map_to(st.phi);
  j["section"] = indices_to(st.section);
  json fields;
  for (int i = 0; i < pb.g.dim(); ++i) fields[pb.g.names[i]] = field_to(moved[i]);
  j["fields"] = fields;
  return j.dump(2) + "\n";
}

std::string validation_json(const ValidationReport& rep) {
  json j;
  j["ok"] = rep.ok();
  json checks = json::array();
  for (const auto& ch : rep.checks) {
    json c;
    c["name"] = ch.name;
    c["passed"] = ch.passed;
    c["detail"] = ch.detail;
    checks.push_back(c);
  }
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

std::string verification_json(const VerificationReport& rep) {
  return verification_to(rep).dump(2) + "\n";
}

std::string validation_text(const ValidationReport& rep) {
  std::ostringstream os;
  os << "input validation: " << (rep.ok() ? "ok" : "FAILED") << "\n";
  for (const auto& ch : rep.checks) {
    os << "  [" << (ch.passed ? "ok" : "FAIL") << "] " << ch.name;
    if (!ch.detail.empty()) os << ": " << ch.detail;
    os << "\n";
  }
  return os.str();
}

std::string verification_text(const VerificationReport& rep) {
  std::ostringstream os;
  os << "verification: " << (rep.passed ? "passed" : "FAILED") << "\n";
  for (const auto& cl : rep.clauses) {
    os << "  [" << (cl.passed ? "ok" : "FAIL") << "] " << cl.name;
    if (!cl.detail.empty()) os << ": " << cl.detail;
    os << "\n";
  }
  for (const auto& nt : rep.notes)
    os << "  commutator residue of " << nt.name << ": "
       << (nt.zero ? "zero" : std::to_string(nt.terms) + " terms") << "\n";
  return os.str();
}

std::string straightening_text(const LieProblem& pb, const StraightenedIdeal& st,
                               const std::vector<FormalVectorField>& moved) {
  std::ostringstream os;
  const int p = st.p;
  os << "p: " << st.p << "  q: " << st.q << "\n";
  append_mat(os, "a", st.a);
  os << "phi: " << render_map(st.phi, p) << "\n";
  os << "section:";
  for (int v : st.section) os << " " << (v + 1);
  os << "\n";
  os << "fields:\n";
  for (int i = 0; i < pb.g.dim(); ++i)
    os << "  " << pb.g.names[i] << ": " << render_field(moved[i], p) << "\n";
  return os.str();
}

std::string result_text(const LieProblem& pb, const NormalizationResult& res) {
  std::ostringstream os;
  const int p = res.p;
  os << "dimension: " << res.n << "  degree: " << res.degree << "  p: " << res.p
     << "  q: " << res.q << "\n";
  os << "input hash: " << problem_hash(pb) << "\n";

  os << "straightening phi: " << render_map(res.straightening_phi, p) << "\n";
  append_mat(os, "a", res.a);
  append_mat(os, "x_change", res.spectral.x_change);
  append_mat(os, "y_change", res.spectral.y_change);

  os << "mu:";
  for (const auto& f : res.spectral.mu) os << " " << form_str(f);
  os << "\nnu:";
  for (const auto& f : res.spectral.nu) os << " " << form_str(f);
  os << "\nroots:";
  for (const auto& f : res.roots) os << " " << form_str(f);
  os << "\nX0: " << (res.x0 ? form_str(*res.x0) : "(none)") << "\n";

  auto pairs_line = [&](const char* label, const std::vector<ResonancePair>& pairs,
                        bool transverse) {
    os << label << ":";
    if (pairs.empty()) os << " (empty)";
    for (const auto& pr : pairs) os << "  " << pair_str(pr, p, transverse);
    os << "\n";
  };
  pairs_line("R", res.resonance.r, false);
  pairs_line("Rprime", res.resonance.rprime, true);
  pairs_line("R0", res.resonance.r0, false);
  pairs_line("R0prime", res.resonance.r0prime, true);

  os << "stages:";
  if (res.stages.empty()) os << " (none)";
  os << "\n";
  for (const auto& st : res.stages) {
    os << "  " << st.kind;
    if (st.kind == "homological" || st.kind == "semisimple") os << " degree " << st.degree;
    os << ": " << render_map(st.map, p) << "\n";
  }
  os << "phi_total: " << render_map(res.phi_total, p) << "\n";

  os << "normal form:\n";
  for (int i = 0; i < pb.g.dim(); ++i)
    os << "  " << pb.g.names[i] << ": " << render_field(res.normal_form[i], p)
       << "  (trusted to degree " << res.normal_form[i].trusted << ")\n";

  os << verification_text(res.verification);
  return os.str();
}

}  // namespace lienf
