#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "magma/capabilities.hpp"
#include "magma/cnf.hpp"
#include "magma/corpus.hpp"
#include "magma/iso.hpp"
#include "magma/table.hpp"

namespace magma::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::uint64_t kSweepBudget = 50'000'000ULL;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string report = "text";
  std::optional<std::uint64_t> budget;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool strict_classifier = true;
  bool strict_given = false;

  CapabilityOptions options() const { return {strict_classifier}; }
};

struct Result {
  int code = kSuccess;
  json body = json::object();
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TableDocument load_file(const std::string& path) {
  try {
    return load_table(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// --- JSON building blocks ---------------------------------------------------

json rows_json(const CayleyTable& t) {
  json rows = json::array();
  for (int a = 0; a < t.size(); ++a) {
    json row = json::array();
    for (int b = 0; b < t.size(); ++b) row.push_back(t.at(a, b));
    rows.push_back(std::move(row));
  }
  return rows;
}

json elements_json(const std::vector<Element>& xs) {
  json out = json::array();
  for (Element x : xs) out.push_back(x);
  return out;
}

json pairs_json(const std::vector<RetractionPair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back({p.s, p.r});
  return out;
}

json triples_json(const std::vector<Triple>& ts) {
  json out = json::array();
  for (const auto& t : ts) out.push_back({t.a, t.b, t.c});
  return out;
}

json capabilities_json(const E2PM& m, const CapabilityReport& r) {
  json j;
  j["R"] = r.has_r();
  j["D"] = r.has_d();
  j["H"] = r.has_h();
  j["d_status"] = std::string(to_string(r.d.status));
  if (r.d.violation) {
    j["d_violation"] = {{"element", r.d.violation->element},
                        {"to_absorber", r.d.violation->to_absorber},
                        {"to_core", r.d.violation->to_core}};
  }
  if (!m.core().empty()) {
    auto d = decompose(m);
    if (auto* classes = std::get_if<Decomposition>(&d)) {
      j["classes"] = {{"Z", elements_json(classes->zeros)},
                      {"C", elements_json(classes->classifiers)},
                      {"N", elements_json(classes->nonclassifiers)}};
    }
  }
  j["retraction_pairs"] = pairs_json(r.r_mutual);
  j["icp_triples"] = triples_json(r.h);
  j["compose_inert_agrees"] = r.h == r.compose_inert;
  j["associative"] = r.associativity.associative;
  j["right_identity"] = r.right_identity ? json(*r.right_identity) : json(nullptr);
  j["commutative"] = r.commutativity.commutative;
  return j;
}

json constraints_json(const std::vector<Constraint>& cs) {
  json out = json::array();
  for (const auto& c : cs) {
    out.push_back({{"pred", std::string(to_string(c.predicate))}, {"polarity", c.required ? "+" : "-"}});
  }
  return out;
}

json roles_json(const FixedRoles& roles) {
  json out = json::object();
  auto add = [&](const char* name, const std::optional<Element>& v) {
    if (v) out[name] = *v;
  };
  add("s", roles.s);
  add("r", roles.r);
  add("tau", roles.tau);
  add("a", roles.a);
  add("b", roles.b);
  add("c", roles.c);
  return out;
}

json spec_json(const SearchSpec& spec) {
  json j;
  j["n"] = spec.n;
  j["constraints"] = constraints_json(spec.constraints);
  if (!spec.roles.empty()) j["fixed_roles"] = roles_json(spec.roles);
  j["limit"] = spec.limit ? json(*spec.limit) : json(nullptr);
  j["budget"] = spec.budget;
  j["symmetry_breaking"] = spec.symmetry_breaking;
  j["strict_classifier"] = spec.options.strict_classifier;
  return j;
}

json outcome_json(const SearchOutcome& o) {
  json j;
  j["status"] = std::string(to_string(o.status));
  j["exhaustive"] = o.exhaustive;
  j["explored"] = o.explored;
  j["pruned"] = o.pruned;
  j["nodes"] = o.nodes;
  return j;
}

json witness_json(const CayleyTable& t, const CapabilityOptions& options) {
  json j;
  j["rows"] = rows_json(t);
  if (!find_validation_error(t, 0, 1)) {
    auto m = E2PM::from_trusted(t, 0, 1);
    j["capabilities"] = capabilities_json(m, full_report(m, options));
  }
  return j;
}

int status_code(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return kSuccess;
    case SearchStatus::resource_limit: return kResourceLimit;
    case SearchStatus::unsat:
    case SearchStatus::inconclusive: return kMismatch;
  }
  return kMismatch;
}

// --- text rendering ---------------------------------------------------------

const char* mark(const json& v) { return v.get<bool>() ? "✓" : "✗"; }

std::string set_text(const json& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i].dump();
  return out + "}";
}

std::string tuple_list(const json& xs) {
  if (xs.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += i ? " " : "";
    out += "(";
    for (std::size_t k = 0; k < xs[i].size(); ++k) out += (k ? "," : "") + xs[i][k].dump();
    out += ")";
  }
  return out;
}

void print_rows(const json& rows, std::ostream& out, const std::string& indent = "  ") {
  for (const auto& row : rows) {
    out << indent;
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i].get<int>();
    out << '\n';
  }
}

void print_capabilities(const json& c, std::ostream& out) {
  out << "R" << mark(c["R"]) << " D" << mark(c["D"]) << " H" << mark(c["H"]) << '\n';
  out << "dichotomy: " << c["d_status"].get<std::string>();
  if (c.contains("d_violation")) {
    const auto& v = c["d_violation"];
    out << " (element " << v["element"] << " sends " << v["to_absorber"] << " to an absorber and "
        << v["to_core"] << " into the core)";
  }
  out << '\n';
  if (c.contains("classes")) {
    out << "Z = " << set_text(c["classes"]["Z"]) << "  C = " << set_text(c["classes"]["C"])
        << "  N = " << set_text(c["classes"]["N"]) << '\n';
  }
  out << "retraction pairs (s,r): " << tuple_list(c["retraction_pairs"]) << '\n';
  out << "ICP triples (a,b,c): " << tuple_list(c["icp_triples"]) << '\n';
  out << "compose+inert agrees: " << (c["compose_inert_agrees"].get<bool>() ? "yes" : "no") << '\n';
  out << "associative: " << (c["associative"].get<bool>() ? "yes" : "no")
      << "  right identity: " << (c["right_identity"].is_null() ? "none" : c["right_identity"].dump())
      << "  commutative: " << (c["commutative"].get<bool>() ? "yes" : "no") << '\n';
}

void print_outcome_line(const json& o, std::ostream& out) {
  out << o["status"].get<std::string>() << " (" << (o["exhaustive"].get<bool>() ? "exhaustive" : "not exhaustive")
      << ", explored " << o["explored"] << ", pruned " << o["pruned"] << ", nodes " << o["nodes"] << ")";
}

void text_verify_corpus(const json& b, std::ostream& out) {
  for (const auto& t : b["tables"]) {
    if (t["passed"].get<bool>()) {
      out << "PASS " << t["name"].get<std::string>() << "  R" << mark(t["R"]) << " D" << mark(t["D"]) << " H"
          << mark(t["H"]) << '\n';
    } else {
      out << "FAIL " << t["name"].get<std::string>() << ": " << t["detail"].get<std::string>() << '\n';
    }
  }
  out << b["passed"] << "/" << b["total"] << " tables match\n";
}

void text_check(const json& b, std::ostream& out) {
  out << b["file"].get<std::string>();
  if (b.contains("name")) out << " (" << b["name"].get<std::string>() << ")";
  out << ", n = " << b["n"] << '\n';
  if (!b["valid"].get<bool>()) {
    out << "not an extensional 2-pointed magma: " << b["error"].get<std::string>() << ": "
        << b["message"].get<std::string>() << '\n';
    return;
  }
  print_capabilities(b["capabilities"], out);
  if (b.contains("roles")) {
    out << "roles: " << (b["roles"]["ok"].get<bool>() ? "ok" : b["roles"]["detail"].get<std::string>()) << '\n';
  }
  if (b.contains("expected")) {
    out << "expected flags: "
        << (b["expected"]["ok"].get<bool>() ? "match" : b["expected"]["detail"].get<std::string>()) << '\n';
  }
}

void text_decompose(const json& b, std::ostream& out) {
  if (b.contains("error")) {
    out << b["error"].get<std::string>() << '\n';
  } else if (b.contains("violation")) {
    const auto& v = b["violation"];
    out << "no decomposition: element " << v["element"] << " sends " << v["to_absorber"] << " to an absorber and "
        << v["to_core"] << " into the core\n";
  } else {
    out << "Z = " << set_text(b["Z"]) << "\nC = " << set_text(b["C"]) << "\nN = " << set_text(b["N"]) << '\n';
  }
}

void text_search(const json& b, std::ostream& out) {
  out << "n = " << b["spec"]["n"] << ": ";
  print_outcome_line(b["outcome"], out);
  out << '\n';
  for (const auto& w : b["witnesses"]) {
    out << "witness (re-checked: " << (w["verified"].get<bool>() ? "pass" : "FAIL") << ")\n";
    print_rows(w["rows"], out);
    if (w.contains("capabilities")) print_capabilities(w["capabilities"], out);
  }
}

void text_bounds(const json& b, std::ostream& out) {
  for (const auto& s : b["sizes"]) {
    out << "n = " << s["n"] << ": ";
    print_outcome_line(s, out);
    out << '\n';
  }
  if (b["first_found"].is_null()) {
    out << "no witness in range\n";
  } else {
    out << "first Found at n = " << b["first_found"] << "; smaller sizes "
        << (b["certified"].get<bool>() ? "certified Unsat" : "NOT certified") << '\n';
    print_rows(b["witness"]["rows"], out);
    if (b["witness"].contains("capabilities")) print_capabilities(b["witness"]["capabilities"], out);
  }
}

void text_iso(const json& b, std::ostream& out) {
  if (b.contains("reason")) out << b["reason"].get<std::string>() << '\n';
  out << b["count"] << " isomorphism(s)\n";
  for (const auto& p : b["isomorphisms"]) {
    out << " ";
    for (std::size_t i = 0; i < p.size(); ++i) out << ' ' << i << "->" << p[i];
    out << '\n';
  }
  if (b.contains("invariance")) {
    const auto& inv = b["invariance"];
    out << "invariance under " << inv["samples"] << " sampled permutations (seed " << inv["seed"]
        << "): " << inv["failures"].size() << " failure(s)";
    out << (inv["functoriality_checked"].get<bool>() ? ", decomposition functoriality checked" : "") << '\n';
  }
}

void text_encode(const json& b, std::ostream& out) {
  out << "wrote " << b["output"].get<std::string>() << ": " << b["variables"] << " variables, " << b["clauses"]
      << " clauses\n";
}

void text_decode(const json& b, std::ostream& out) {
  if (b.contains("error")) {
    out << b["error"].get<std::string>() << '\n';
    return;
  }
  print_rows(b["rows"], out);
  if (b.contains("capabilities")) {
    print_capabilities(b["capabilities"], out);
  } else {
    out << "not an extensional 2-pointed magma\n";
  }
  if (b.contains("spec_satisfied")) out << "spec satisfied: " << (b["spec_satisfied"].get<bool>() ? "yes" : "no") << '\n';
}

void text_separation(const json& b, std::ostream& out) {
  print_outcome_line(b["outcome"], out);
  out << '\n';
  if (!b.contains("rows")) return;
  print_rows(b["rows"], out);
  out << "weak ICP (no non-triviality) triples: " << tuple_list(b["weak_triples"]) << '\n';
  out << "ICP triples: " << tuple_list(b["icp_triples"]) << '\n';
  out << "retraction pairs (s,r): " << tuple_list(b["retraction_pairs"]) << '\n';
  out << "matches frozen corpus entry: " << (b["matches_frozen"].get<bool>() ? "yes" : "no") << '\n';
}

void text_sweep(const json& b, std::ostream& out) {
  for (const auto& r : b["runs"]) {
    out << r["direction"].get<std::string>() << " n = " << r["n"] << ": " << r["status"].get<std::string>()
        << " (" << r["nodes"] << " nodes)\n";
  }
}

// --- commands ---------------------------------------------------------------

json verify_entry(const std::string& name, const E2PM& m, const RoleMap& roles, const ExpectedFlags& expected,
                  const CapabilityOptions& options, const E2PM* frozen) {
  json item;
  item["name"] = name;
  const auto report = full_report(m, options);
  item["R"] = report.has_r();
  item["D"] = report.has_d();
  item["H"] = report.has_h();
  std::optional<std::string> problem = compare_expected(report, expected);
  if (!problem) problem = verify_roles(m, roles, options);
  if (!problem) problem = recheck_witnesses(m, report, options);
  if (!problem && frozen && frozen->table() != m.table()) {
    problem = "cells differ from the frozen table";
  }
  item["passed"] = !problem;
  if (problem) item["detail"] = *problem;
  return item;
}

Result cmd_verify_corpus(const Globals& g, const std::string& dir, bool include_derived) {
  Result res;
  json tables = json::array();
  if (dir.empty()) {
    res.body["source"] = "builtin";
    std::vector<const NamedWitness*> entries;
    for (const auto& w : corpus_all()) entries.push_back(&w);
    if (include_derived) {
      for (const auto& w : corpus_derived()) entries.push_back(&w);
    }
    for (const auto* w : entries) {
      tables.push_back(verify_entry(w->name, w->table, w->roles, w->expected, g.options(), nullptr));
    }
  } else {
    res.body["source"] = dir;
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".tbl" || ext == ".json")) files.push_back(entry.path());
    }
    if (ec) throw UsageError("cannot list '" + dir + "'");
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      auto doc = load_file(path.string());
      const std::string name = doc.name.value_or(path.stem().string());
      const NamedWitness* known = corpus_find(name);
      try {
        auto m = E2PM::validate(doc.table, doc.z1, doc.z2);
        if (!doc.expected && !known) {
          tables.push_back({{"name", name}, {"passed", false}, {"detail", "no expected flags and no corpus entry"}});
          continue;
        }
        const ExpectedFlags& expected = doc.expected ? *doc.expected : known->expected;
        const RoleMap& roles = doc.roles.empty() && known ? known->roles : doc.roles;
        tables.push_back(verify_entry(name, m, roles, expected, g.options(), known ? &known->table : nullptr));
      } catch (const ValidationError& e) {
        tables.push_back({{"name", name},
                          {"passed", false},
                          {"detail", "not an E2PM: " + std::string(to_string(e.code())) + ": " + e.what()}});
      }
      tables.back()["file"] = path.filename().string();
    }
  }
  const auto passed = std::count_if(tables.begin(), tables.end(), [](const json& t) { return t["passed"].get<bool>(); });
  res.body["tables"] = tables;
  res.body["passed"] = passed;
  res.body["total"] = tables.size();
  res.code = (passed == static_cast<std::ptrdiff_t>(tables.size()) && !tables.empty()) ? kSuccess : kMismatch;
  return res;
}

Result cmd_check(const Globals& g, const std::string& file) {
  Result res;
  auto doc = load_file(file);
  res.body["file"] = file;
  if (doc.name) res.body["name"] = *doc.name;
  res.body["n"] = doc.table.size();
  if (auto err = find_validation_error(doc.table, doc.z1, doc.z2)) {
    res.body["valid"] = false;
    res.body["error"] = std::string(to_string(err->code()));
    res.body["message"] = err->what();
    res.code = kMismatch;
    return res;
  }
  res.body["valid"] = true;
  auto m = E2PM::from_trusted(doc.table, doc.z1, doc.z2);
  auto report = full_report(m, g.options());
  res.body["capabilities"] = capabilities_json(m, report);
  if (!doc.roles.empty()) {
    auto problem = verify_roles(m, doc.roles, g.options());
    res.body["roles"] = {{"ok", !problem}, {"detail", problem.value_or("")}};
    if (problem) res.code = kMismatch;
  }
  if (doc.expected) {
    auto problem = compare_expected(report, *doc.expected);
    res.body["expected"] = {{"ok", !problem}, {"detail", problem.value_or("")}};
    if (problem) res.code = kMismatch;
  }
  return res;
}

Result cmd_decompose(const std::string& file) {
  Result res;
  auto doc = load_file(file);
  auto m = E2PM::validate(doc.table, doc.z1, doc.z2);
  if (m.core().empty()) {
    res.body["error"] = "empty core";
    res.code = kMismatch;
    return res;
  }
  auto d = decompose(m);
  if (auto* classes = std::get_if<Decomposition>(&d)) {
    res.body["Z"] = elements_json(classes->zeros);
    res.body["C"] = elements_json(classes->classifiers);
    res.body["N"] = elements_json(classes->nonclassifiers);
  } else {
    const auto& v = std::get<DichotomyViolation>(d);
    res.body["violation"] = {{"element", v.element}, {"to_absorber", v.to_absorber}, {"to_core", v.to_core}};
    res.code = kMismatch;
  }
  return res;
}

void apply_globals(SearchSpec& spec, const Globals& g) {
  if (g.budget) spec.budget = *g.budget;
  spec.threads = g.threads;
  if (g.strict_given) spec.options.strict_classifier = g.strict_classifier;
}

Result run_search(const SearchSpec& spec) {
  Result res;
  auto outcome = search(spec);
  res.body["spec"] = spec_json(spec);
  res.body["outcome"] = outcome_json(outcome);
  json witnesses = json::array();
  for (const auto& w : outcome.witnesses) {
    auto j = witness_json(w, spec.options);
    j["verified"] = satisfies_all(w, spec);
    witnesses.push_back(std::move(j));
  }
  res.body["witnesses"] = witnesses;
  res.code = status_code(outcome.status);
  return res;
}

Result cmd_search(const Globals& g, const std::string& file, std::optional<std::size_t> limit, bool symmetry) {
  SearchSpec spec;
  try {
    spec = parse_spec_document(read_file(file));
  } catch (const ParseError& e) {
    throw UsageError(file + ": " + e.what());
  }
  apply_globals(spec, g);
  if (limit) spec.limit = limit;
  if (symmetry) spec.symmetry_breaking = true;
  return run_search(spec);
}

std::vector<Constraint> constraint_list(const std::vector<std::string>& names, bool required) {
  std::vector<Constraint> out;
  for (const auto& name : names) {
    auto p = predicate_from_string(name);
    if (!p) throw UsageError("unknown predicate '" + name + "'");
    out.push_back({*p, required});
  }
  return out;
}

Result cmd_bounds(const Globals& g, const std::vector<std::string>& require, const std::vector<std::string>& forbid,
                  int n_min, int n_max) {
  Result res;
  SearchSpec spec;
  spec.constraints = constraint_list(require, true);
  auto forbidden = constraint_list(forbid, false);
  spec.constraints.insert(spec.constraints.end(), forbidden.begin(), forbidden.end());
  apply_globals(spec, g);
  auto report = minimal_size(spec, n_min, n_max);
  res.body["constraints"] = constraints_json(spec.constraints);
  json sizes = json::array();
  bool budget_hit = false;
  for (const auto& s : report.sizes) {
    json j = {{"n", s.n}};
    j.update(outcome_json(s.outcome));
    sizes.push_back(std::move(j));
    budget_hit = budget_hit || s.outcome.status == SearchStatus::resource_limit;
  }
  res.body["sizes"] = sizes;
  res.body["first_found"] = report.first_found ? json(*report.first_found) : json(nullptr);
  res.body["certified"] = report.certified;
  if (report.first_found) {
    for (const auto& s : report.sizes) {
      if (s.n == *report.first_found) res.body["witness"] = witness_json(s.outcome.witnesses.front(), spec.options);
    }
  }
  res.code = budget_hit ? kResourceLimit : (report.first_found ? kSuccess : kMismatch);
  return res;
}

E2PM load_magma(const std::string& file) {
  auto doc = load_file(file);
  return E2PM::validate(doc.table, doc.z1, doc.z2);
}

Result cmd_iso(const Globals& g, const std::string& first, const std::string& second, std::size_t samples) {
  Result res;
  auto m1 = load_magma(first);
  auto m2 = second.empty() ? m1 : load_magma(second);
  json isos = json::array();
  if (m1.size() != m2.size()) {
    res.body["reason"] = "carrier sizes differ (" + std::to_string(m1.size()) + " vs " + std::to_string(m2.size()) + ")";
  } else {
    for (const auto& w : find_isomorphisms(m1, m2)) isos.push_back(elements_json(w.perm));
  }
  res.body["count"] = isos.size();
  res.body["isomorphisms"] = isos;
  res.code = isos.empty() ? kMismatch : kSuccess;
  if (samples > 0) {
    const bool functorial = check_dichotomy(m1, g.options()).holds();
    json failures = json::array();
    for (const auto& p : sample_absorber_fixing_permutations(m1, samples, g.seed)) {
      bool ok = verify_capability_invariance(m1, p, g.options());
      if (ok && functorial) ok = verify_functoriality(m1, p, g.options());
      if (!ok) failures.push_back(elements_json(p));
    }
    res.body["invariance"] = {{"samples", samples},
                              {"seed", g.seed},
                              {"functoriality_checked", functorial},
                              {"failures", failures}};
    if (!failures.empty()) res.code = kMismatch;
  }
  return res;
}

Result cmd_encode(const Globals& g, const std::string& file, const std::string& output, std::ostream& out,
                  bool& raw) {
  Result res;
  SearchSpec spec;
  try {
    spec = parse_spec_document(read_file(file));
  } catch (const ParseError& e) {
    throw UsageError(file + ": " + e.what());
  }
  apply_globals(spec, g);
  const auto doc = encode(spec);
  const auto text = to_dimacs(doc);
  if (output.empty()) {
    out << text;
    raw = true;
    return res;
  }
  std::ofstream f(output, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + output + "'");
  f << text;
  res.body["output"] = output;
  res.body["variables"] = doc.variable_count;
  res.body["clauses"] = doc.clauses.size();
  return res;
}

Result cmd_decode(const Globals& g, const std::string& file, int n, const std::string& spec_file) {
  Result res;
  Model model;
  try {
    model = parse_model(read_file(file));
  } catch (const ParseError& e) {
    throw UsageError(file + ": " + e.what());
  }
  CayleyTable table;
  try {
    table = decode(model, n);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::model_inconsistent) throw;
    res.body["error"] = e.what();
    res.code = kMismatch;
    return res;
  }
  res.body = witness_json(table, g.options());
  if (!spec_file.empty()) {
    SearchSpec spec;
    try {
      spec = parse_spec_document(read_file(spec_file));
    } catch (const ParseError& e) {
      throw UsageError(spec_file + ": " + e.what());
    }
    apply_globals(spec, g);
    if (spec.n != n) throw UsageError("spec order " + std::to_string(spec.n) + " differs from --n");
    const bool ok = satisfies_all(table, spec);
    res.body["spec_satisfied"] = ok;
    if (!ok) res.code = kMismatch;
  }
  return res;
}

Result cmd_derive_separation(const Globals& g) {
  Result res;
  auto spec = nontriviality_separation_spec();
  apply_globals(spec, g);
  auto outcome = search(spec);
  res.body["spec"] = spec_json(spec);
  res.body["outcome"] = outcome_json(outcome);
  res.code = status_code(outcome.status);
  if (outcome.status != SearchStatus::found) return res;

  const auto& table = outcome.witnesses.front();
  auto m = E2PM::validate(table, 0, 1);
  auto weak = find_weak_icp_no_nontriviality(m);
  auto icp = find_icp_triples(m);
  auto pairs = find_retraction_pairs(m, true, true);
  res.body["rows"] = rows_json(table);
  res.body["weak_triples"] = triples_json(weak);
  res.body["icp_triples"] = triples_json(icp);
  res.body["retraction_pairs"] = pairs_json(pairs);
  const NamedWitness* frozen = corpus_find("nontrivSep6");
  res.body["matches_frozen"] = frozen && frozen->table.table() == table;
  res.code = (!weak.empty() && icp.empty() && !pairs.empty()) ? kSuccess : kMismatch;
  return res;
}

Result cmd_sweep(const Globals& g, int n_min, int n_max, const std::string& only) {
  using P = Predicate;
  struct Direction {
    const char* name;
    std::vector<Constraint> constraints;
  };
  const std::vector<Direction> directions = {
      {"R_not_D", {{P::e2pm, true}, {P::r_mutual, true}, {P::d, false}}},
      {"R_not_H", {{P::e2pm, true}, {P::r_mutual, true}, {P::h, false}}},
      {"D_not_R", {{P::e2pm, true}, {P::d, true}, {P::r_mutual, false}}},
      {"D_not_H", {{P::e2pm, true}, {P::d, true}, {P::h, false}}},
      {"H_not_R", {{P::e2pm, true}, {P::h, true}, {P::r_mutual, false}}},
      {"H_not_D", {{P::e2pm, true}, {P::h, true}, {P::d, false}}},
  };
  if (n_min < 2 || n_max < n_min || n_max > kMaxSearchOrder) {
    throw UsageError("sweep range must satisfy 2 <= min <= max <= " + std::to_string(kMaxSearchOrder));
  }
  Result res;
  json runs = json::array();
  bool all_found = true;
  bool budget_hit = false;
  bool matched = false;
  for (const auto& d : directions) {
    if (!only.empty() && only != d.name) continue;
    matched = true;
    for (int n = n_min; n <= n_max; ++n) {
      SearchSpec spec;
      spec.n = n;
      spec.constraints = d.constraints;
      spec.limit = 1;
      spec.symmetry_breaking = true;
      spec.budget = kSweepBudget;
      apply_globals(spec, g);
      auto outcome = search(spec);
      runs.push_back({{"direction", d.name},
                      {"n", n},
                      {"status", std::string(to_string(outcome.status))},
                      {"nodes", outcome.nodes}});
      all_found = all_found && outcome.status == SearchStatus::found;
      budget_hit = budget_hit || outcome.status == SearchStatus::resource_limit;
    }
  }
  if (!matched) throw UsageError("unknown direction '" + only + "'");
  res.body["runs"] = runs;
  res.code = all_found ? kSuccess : (budget_hit ? kResourceLimit : kMismatch);
  return res;
}

}  // namespace

SearchSpec parse_spec_document(std::string_view text) {
  auto fail = [](const std::string& message) -> void { throw ParseError(ErrorCode::parse_error, 1, 1, message); };
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(ErrorCode::parse_error, line, column, e.what());
  }
  if (!j.is_object()) fail("spec must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) fail("spec needs an integer 'n'");
  if (!j.contains("constraints") || !j["constraints"].is_array()) fail("spec needs a 'constraints' array");
  SearchSpec spec;
  spec.n = j["n"].get<int>();
  for (const auto& c : j["constraints"]) {
    if (!c.is_object() || !c.contains("pred") || !c["pred"].is_string()) fail("constraint needs a string 'pred'");
    auto p = predicate_from_string(c["pred"].get<std::string>());
    if (!p) fail("unknown predicate '" + c["pred"].get<std::string>() + "'");
    std::string polarity = "+";
    if (c.contains("polarity")) {
      if (!c["polarity"].is_string()) fail("polarity must be \"+\" or \"-\"");
      polarity = c["polarity"].get<std::string>();
    }
    if (polarity != "+" && polarity != "-") fail("polarity must be \"+\" or \"-\"");
    spec.constraints.push_back({*p, polarity == "+"});
  }
  if (j.contains("fixed_roles")) {
    const auto& roles = j["fixed_roles"];
    if (!roles.is_object()) fail("'fixed_roles' must be an object");
    const std::pair<const char*, std::optional<Element>*> slots[] = {
        {"s", &spec.roles.s}, {"r", &spec.roles.r}, {"tau", &spec.roles.tau},
        {"a", &spec.roles.a}, {"b", &spec.roles.b}, {"c", &spec.roles.c}};
    for (const auto& [key, value] : roles.items()) {
      auto slot = std::find_if(std::begin(slots), std::end(slots), [&](const auto& s) { return key == s.first; });
      if (slot == std::end(slots)) fail("unknown role '" + key + "'");
      if (!value.is_number_integer()) fail("role '" + key + "' must be an integer");
      *slot->second = value.get<int>();
    }
  }
  if (j.contains("limit")) {
    if (!j["limit"].is_number_unsigned()) fail("'limit' must be a non-negative integer");
    spec.limit = j["limit"].get<std::size_t>();
  }
  if (j.contains("budget")) {
    if (!j["budget"].is_number_unsigned()) fail("'budget' must be a non-negative integer");
    spec.budget = j["budget"].get<std::uint64_t>();
  }
  if (j.contains("symmetry_breaking")) {
    if (!j["symmetry_breaking"].is_boolean()) fail("'symmetry_breaking' must be a boolean");
    spec.symmetry_breaking = j["symmetry_breaking"].get<bool>();
  }
  if (j.contains("strict_classifier")) {
    if (!j["strict_classifier"].is_boolean()) fail("'strict_classifier' must be a boolean");
    spec.options.strict_classifier = j["strict_classifier"].get<bool>();
  }
  return spec;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extensional 2-pointed magma toolkit"};
  app.name("magmactl");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--report", g.report, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", g.budget, "Search node budget");
  app.add_option("--threads", g.threads, "Search worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for permutation sampling");
  auto* strict_opt = app.add_option("--strict-classifier", g.strict_classifier,
                                    "Classifiers must send every element, absorbers included, into {z1, z2}");

  std::string dir, file, file2, output, spec_file;
  bool include_derived = false;
  bool symmetry = false;
  std::optional<std::size_t> limit;
  std::vector<std::string> require, forbid;
  int n_min = 2, n_max = 5, n = 0;
  std::size_t samples = 0;
  std::string direction;

  auto* verify = app.add_subcommand("verify-corpus", "Check every corpus table against its expected flags");
  verify->add_option("--dir", dir, "Directory of .tbl/.json corpus files (default: built-in corpus)");
  verify->add_flag("--include-derived", include_derived, "Also check entries produced by search");

  auto* check = app.add_subcommand("check", "Full capability report for one table");
  check->add_option("file", file, "Table file")->required();

  auto* decomp = app.add_subcommand("decompose", "Split the carrier into zeros, classifiers, non-classifiers");
  decomp->add_option("file", file, "Table file")->required();

  auto* search_cmd = app.add_subcommand("search", "Run a search spec");
  search_cmd->add_option("spec", file, "Spec document (JSON)")->required();
  search_cmd->add_option("--limit", limit, "Cap on witnesses");
  search_cmd->add_flag("--symmetry-breaking", symmetry, "Order core rows (forfeits exhaustiveness)");

  auto* bounds = app.add_subcommand("bounds", "Search each size in a range");
  bounds->add_option("--require", require, "Predicates that must hold")->delimiter(',');
  bounds->add_option("--forbid", forbid, "Predicates that must fail")->delimiter(',');
  bounds->add_option("--min", n_min, "Smallest size")->required();
  bounds->add_option("--max", n_max, "Largest size")->required();

  auto* iso = app.add_subcommand("iso", "Absorber-preserving isomorphisms (automorphisms with one file)");
  iso->add_option("file", file, "First table")->required();
  iso->add_option("other", file2, "Second table");
  iso->add_option("--samples", samples, "Check capability invariance under this many sampled permutations");

  auto* enc = app.add_subcommand("encode", "Write a spec as DIMACS CNF");
  enc->add_option("spec", file, "Spec document (JSON)")->required();
  enc->add_option("-o,--output", output, "Output path (default: standard output)");

  auto* dec = app.add_subcommand("decode", "Read a table back from a solver model");
  dec->add_option("model", file, "Model file")->required();
  dec->add_option("--n", n, "Table order")->required()->check(CLI::Range(1, kMaxOrder));
  dec->add_option("--spec", spec_file, "Spec the decoded table must satisfy");

  auto* derive = app.add_subcommand("derive-separation", "Search the 6-element non-triviality separation");

  auto* sweep = app.add_subcommand("sweep", "Witness search for the six non-implications over a size range");
  sweep->add_option("--min", n_min, "Smallest size")->default_val(5);
  sweep->add_option("--max", n_max, "Largest size")->default_val(8);
  sweep->add_option("--direction", direction, "Only this direction (e.g. H_not_D)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  }
  g.strict_given = strict_opt->count() > 0;

  std::string command;
  std::function<void(const json&, std::ostream&)> render;
  Result res;
  bool raw = false;
  try {
    if (*verify) {
      command = "verify-corpus";
      render = text_verify_corpus;
      res = cmd_verify_corpus(g, dir, include_derived);
    } else if (*check) {
      command = "check";
      render = text_check;
      res = cmd_check(g, file);
    } else if (*decomp) {
      command = "decompose";
      render = text_decompose;
      res = cmd_decompose(file);
    } else if (*search_cmd) {
      command = "search";
      render = text_search;
      res = cmd_search(g, file, limit, symmetry);
    } else if (*bounds) {
      command = "bounds";
      render = text_bounds;
      res = cmd_bounds(g, require, forbid, n_min, n_max);
    } else if (*iso) {
      command = "iso";
      render = text_iso;
      res = cmd_iso(g, file, file2, samples);
    } else if (*enc) {
      command = "encode";
      render = text_encode;
      res = cmd_encode(g, file, output, out, raw);
    } else if (*dec) {
      command = "decode";
      render = text_decode;
      res = cmd_decode(g, file, n, spec_file);
    } else if (*derive) {
      command = "derive-separation";
      render = text_separation;
      res = cmd_derive_separation(g);
    } else if (*sweep) {
      command = "sweep";
      render = text_sweep;
      res = cmd_sweep(g, n_min, n_max, direction);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: not an extensional 2-pointed magma: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kMismatch;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::spec_invalid ? kUsage : kMismatch;
  }

  if (raw) return res.code;
  if (g.report == "json") {
    json doc;
    doc["command"] = command;
    doc["args"] = args;
    doc["results"] = res.body;
    doc["exit_status"] = res.code;
    out << doc.dump(2) << '\n';
  } else {
    render(res.body, out);
  }
  return res.code;
}

}  // namespace magma::cli
