// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Runtime limits are wall-clock and pinned below.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "magma/cnf.hpp"
#include "magma/corpus.hpp"
#include "magma/iso.hpp"
#include "magma/search.hpp"
#include "support/oracle.hpp"

using namespace magma;
using P = Predicate;
namespace fs = std::filesystem;

namespace {

constexpr double kCorpusSeconds = 1.0;
constexpr double kOrder4Seconds = 10.0;
constexpr double kKCombinatorSeconds = 60.0;
constexpr int kRandomTables = 1000;
constexpr std::uint64_t kRandomSeed = 20240501;
constexpr std::size_t kLargeSamples = 1000;
constexpr std::uint64_t kSampleSeed = 7;

// A criterion returns the first problem it saw, or nothing.
using Problem = std::optional<std::string>;

SearchSpec spec_of(int n, std::vector<Constraint> constraints) {
  SearchSpec s;
  s.n = n;
  s.constraints = std::move(constraints);
  return s;
}

std::vector<CayleyTable> order4(const std::function<bool(const CayleyTable&)>& keep) {
  std::vector<CayleyTable> out;
  oracle::for_each_order4([&](const CayleyTable& t) {
    if (oracle::e2pm(t) && keep(t)) out.push_back(t);
  });
  return out;
}

const E2PM& named(std::string_view name) { return corpus_find(name)->table; }

template <typename Container, typename Value>
bool contains(const Container& c, const Value& v) {
  return std::find(c.begin(), c.end(), v) != c.end();
}

Problem timed(double limit, const std::function<Problem()>& body, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  Problem p = body();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!p && seconds >= limit) {
    std::ostringstream s;
    s << "took " << seconds << " s, limit " << limit << " s";
    p = s.str();
  }
  return p;
}

Problem corpus_golden() {
  for (const auto& w : corpus_all()) {
    auto report = full_report(w.table);
    if (auto m = compare_expected(report, w.expected)) return w.name + ": " + *m;
    if (auto m = verify_roles(w.table, w.roles)) return w.name + " roles: " + *m;
    if (auto m = recheck_witnesses(w.table, report)) return w.name + " recheck: " + *m;
  }
  if (!contains(find_icp_triples(named("witness5")), Triple{3, 2, 4})) return "witness5 lacks (3,2,4)";
  if (!contains(find_icp_triples(named("hNotD10")), Triple{8, 6, 7})) return "hNotD10 lacks (8,6,7)";
  bool kripke = false;
  for (const auto& p : find_retraction_pairs(named("kripke5"), true, true)) kripke = kripke || (p.s == 2 && p.r == 3);
  if (!kripke) return "kripke5 lacks pair (2,3)";
  if (!find_retraction_pairs(named("dNotS4"), false, false).empty()) return "dNotS4 has a retraction pair";
  return std::nullopt;
}

Problem order4_exhaustive() {
  if (!order4([](const CayleyTable& t) { return oracle::h(t); }).empty()) return "oracle found an order-4 ICP table";
  struct Family {
    const char* name;
    std::vector<Constraint> constraints;
    std::function<bool(const CayleyTable&)> keep;
  };
  const std::vector<Family> families = {
      {"E2PM", {{P::e2pm, true}}, [](const CayleyTable&) { return true; }},
      {"E2PM,D", {{P::e2pm, true}, {P::d, true}}, [](const CayleyTable& t) { return oracle::d(t); }},
      {"E2PM,H", {{P::e2pm, true}, {P::h, true}}, [](const CayleyTable& t) { return oracle::h(t); }},
      {"E2PM,R_mutual", {{P::e2pm, true}, {P::r_mutual, true}},
       [](const CayleyTable& t) { return oracle::r_mutual(t); }},
  };
  for (const auto& f : families) {
    auto got = search(spec_of(4, f.constraints));
    if (!got.exhaustive) return std::string(f.name) + ": search not exhaustive";
    if (got.witnesses != order4(f.keep)) return std::string(f.name) + ": search and oracle disagree";
  }
  auto h = search(spec_of(4, {{P::e2pm, true}, {P::h, true}}));
  if (h.status != SearchStatus::unsat) return "E2PM,H at n=4 is not Unsat";
  return std::nullopt;
}

Problem tight_bounds() {
  struct Bound {
    const char* name;
    std::vector<Constraint> constraints;
    int n_min;
    int n_found;
  };
  const std::vector<Bound> bounds = {
      {"D without R", {{P::e2pm, true}, {P::d, true}, {P::r_mutual, false}}, 3, 4},
      {"H without R", {{P::e2pm, true}, {P::h, true}, {P::r_mutual, false}}, 3, 5},
      {"H without D", {{P::e2pm, true}, {P::h, true}, {P::d, false}}, 3, 5},
      {"R+D+H", {{P::e2pm, true}, {P::r_mutual, true}, {P::d, true}, {P::h, true}}, 4, 5},
  };
  for (const auto& b : bounds) {
    auto report = minimal_size(spec_of(0, b.constraints), b.n_min, b.n_found);
    if (report.first_found != b.n_found) return std::string(b.name) + ": first Found differs";
    for (const auto& s : report.sizes) {
      if (s.n < b.n_found && (s.outcome.status != SearchStatus::unsat || !s.outcome.exhaustive)) {
        return std::string(b.name) + ": n=" + std::to_string(s.n) + " not an exhaustive Unsat";
      }
    }
    if (!report.certified) return std::string(b.name) + ": not certified";
    const auto& witness = report.sizes.back().outcome.witnesses.front();
    auto m = E2PM::validate(witness, 0, 1);
    auto full = full_report(m);
    if (auto r = recheck_witnesses(m, full)) return std::string(b.name) + ": " + *r;
    for (const auto& c : b.constraints) {
      const bool holds = c.predicate == P::e2pm || (c.predicate == P::r_mutual && full.has_r()) ||
                         (c.predicate == P::d && full.has_d()) || (c.predicate == P::h && full.has_h());
      if (holds != c.required) return std::string(b.name) + ": witness flags disagree with the spec";
    }
  }
  return std::nullopt;
}

Problem no_associativity() {
  int carriers = 0;
  Problem problem;
  oracle::for_each_order4([&](const CayleyTable& t) {
    if (problem || !oracle::e2pm(t)) return;
    bool classifier = false;
    for (int y = 2; y < 4; ++y) {
      bool tau = true;
      for (int x = 0; x < 4; ++x) tau = tau && oracle::is_abs(t.at(y, x));
      classifier = classifier || tau;
    }
    if (!classifier || oracle::retraction_pairs(t, false).empty()) return;
    ++carriers;
    if (is_associative(t).associative) problem = "associative order-4 table:\n" + format_grid(t);
  });
  if (problem) return problem;
  if (carriers == 0) return "no order-4 table carries both a classifier and a retraction pair";
  for (const auto& w : corpus_all()) {
    auto report = full_report(w.table);
    if (!report.has_r() || !report.has_d()) continue;
    if (report.associativity.associative) return w.name + " is associative";
    if (report.right_identity) return w.name + " has a right identity";
    if (report.commutativity.commutative) return w.name + " is commutative";
  }
  return std::nullopt;
}

Problem placement() {
  int checked = 0;
  for (const auto& w : corpus_all()) {
    auto report = full_report(w.table);
    if (!report.has_r() || !report.has_d()) continue;
    ++checked;
    if (!verify_placement(w.table)) return w.name + ": placement fails";
  }
  return checked ? std::nullopt : Problem("no corpus table has R and D");
}

Problem icp_equivalence() {
  auto agree = [](const E2PM& m) { return find_icp_triples(m) == find_compose_inert_triples(m); };
  for (const auto& w : corpus_all()) {
    if (!agree(w.table)) return w.name + ": ICP and Compose+Inert differ";
  }
  for (const auto& t : order4([](const CayleyTable&) { return true; })) {
    if (!agree(E2PM::validate(t, 0, 1))) return "order-4 disagreement:\n" + format_grid(t);
  }
  std::mt19937_64 rng(kRandomSeed);
  std::uniform_int_distribution<int> order(5, 8);
  for (int k = 0; k < kRandomTables; ++k) {
    auto t = oracle::random_e2pm(order(rng), rng);
    if (!agree(E2PM::validate(t, 0, 1))) return "random disagreement:\n" + format_grid(t);
  }
  const auto& k4 = named("kripke4");
  if (find_weak_icp_no_distinctness(k4).empty() || !find_icp_triples(k4).empty()) {
    return "kripke4 does not separate distinctness";
  }
  auto sep = E2PM::validate(derive_nontriviality_separation(), 0, 1);
  if (sep.size() != 6) return "separation table is not of order 6";
  if (!has_retraction(sep)) return "separation table has no mutual retraction pair";
  if (find_weak_icp_no_nontriviality(sep).empty() || !find_icp_triples(sep).empty()) {
    return "separation table does not separate non-triviality";
  }
  return std::nullopt;
}

Problem k_combinator() {
  if (search_k_combinator(1).status != SearchStatus::found) return "n=1 not Found";
  for (int n = 2; n <= 4; ++n) {
    auto got = search_k_combinator(n);
    if (got.status != SearchStatus::unsat || !got.exhaustive) return "n=" + std::to_string(n) + " not exhaustive Unsat";
  }
  return std::nullopt;
}

Problem invariance() {
  auto check = [](const NamedWitness& w, const std::vector<Permutation>& perms) -> Problem {
    const bool has_d = check_dichotomy(w.table).holds();
    for (const auto& p : perms) {
      if (!verify_capability_invariance(w.table, p)) return w.name + ": capabilities not invariant";
      if (has_d && !verify_functoriality(w.table, p)) return w.name + ": decomposition not functorial";
    }
    return std::nullopt;
  };
  int small = 0;
  int large = 0;
  for (const auto& w : corpus_all()) {
    if (w.table.size() <= 6) {
      auto perms = absorber_fixing_permutations(w.table);
      std::size_t expected = 1;
      for (int k = 2; k <= w.table.size() - 2; ++k) expected *= static_cast<std::size_t>(k);
      if (perms.size() != expected) return w.name + ": wrong permutation count";
      if (auto p = check(w, perms)) return p;
      ++small;
    } else if (w.table.size() == 8 || w.table.size() == 10) {
      if (auto p = check(w, sample_absorber_fixing_permutations(w.table, kLargeSamples, kSampleSeed))) return p;
      ++large;
    }
  }
  return small && large ? std::nullopt : Problem("corpus lacks tables in one of the size classes");
}

Problem cnf_pipeline() {
  auto spec = spec_of(5, {{P::e2pm, true}, {P::r_mutual, true}, {P::d, true}, {P::h, true}});
  spec.limit = 1;
  auto found = search(spec);
  if (found.status != SearchStatus::found) return "engine found no R+D+H table at n=5";
  auto doc = encode(spec);
  auto model = extend_model(doc, found.witnesses.front());
  if (!satisfied_by(doc, extend_assignment(doc, found.witnesses.front()))) return "engine table violates the CNF";
  auto decoded = E2PM::validate(decode(model, 5), 0, 1);
  auto report = full_report(decoded);
  if (!report.has_r() || !report.has_d() || !report.has_h()) return "decoded table fails full_report";

  const std::vector<std::pair<std::vector<Constraint>, std::function<bool(const CayleyTable&)>>> families = {
      {{{P::e2pm, true}}, [](const CayleyTable&) { return true; }},
      {{{P::e2pm, true}, {P::d, true}}, [](const CayleyTable& t) { return oracle::d(t); }},
      {{{P::e2pm, true}, {P::h, true}}, [](const CayleyTable& t) { return oracle::h(t); }},
      {{{P::e2pm, true}, {P::r_mutual, true}}, [](const CayleyTable& t) { return oracle::r_mutual(t); }},
  };
  for (const auto& [constraints, keep] : families) {
    auto cnf = encode(spec_of(4, constraints));
    oracle::Dpll solver(cnf.variable_count, cnf.clauses);
    Problem problem;
    oracle::for_each_order4([&](const CayleyTable& t) {
      if (problem) return;
      std::vector<int> units;
      for (const auto& c : table_units(t)) units.push_back(c.front());
      if (solver.solve(units) != (oracle::e2pm(t) && keep(t))) {
        problem = "CNF and checker disagree on:\n" + format_grid(t);
      }
    });
    if (problem) return problem;
  }
  return std::nullopt;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Problem properties() {
  int files = 0;
  for (const char* sub : {"corpus", "derived"}) {
    for (const auto& entry : fs::directory_iterator(fs::path(MAGMA_DATA_DIR) / sub)) {
      const auto text = slurp(entry.path());
      auto doc = load_table(text);
      const auto again = entry.path().extension() == ".tbl" ? save_table(doc.table, doc.z1, doc.z2, doc.name)
                                                            : save_document(doc);
      if (again != text) return entry.path().filename().string() + " does not round-trip";
      ++files;
    }
  }
  if (files != 26) return "expected 26 data files, saw " + std::to_string(files);

  for (const auto& w : corpus_all()) {
    if (w.table.size() > 5) continue;
    auto perms = absorber_fixing_permutations(w.table);
    for (const auto& p : perms) {
      if (transport(transport(w.table, p), inverse(p)) != w.table) return w.name + ": inverse law fails";
      for (const auto& q : perms) {
        if (transport(transport(w.table, q), p) != transport(w.table, compose(p, q))) {
          return w.name + ": composition law fails";
        }
      }
    }
    if (transport(w.table, identity_permutation(w.table.size())) != w.table) return w.name + ": identity law fails";
  }

  const std::vector<SearchSpec> specs = {
      spec_of(4, {{P::e2pm, true}, {P::d, true}}),
      spec_of(5, {{P::e2pm, true}, {P::h, true}, {P::d, false}}),
      spec_of(5, {{P::e2pm, true}, {P::r_mutual, true}, {P::d, true}, {P::h, true}}),
  };
  for (auto spec : specs) {
    spec.limit = 2;
    auto a = search(spec);
    auto b = search(spec);
    if (!(a == b)) return "search outcome differs between runs";
  }
  return std::nullopt;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit;
    Problem (*body)();
  };
  constexpr double kNoLimit = 1e9;
  const Criterion criteria[] = {
      {1, "corpus golden suite", kCorpusSeconds, corpus_golden},
      {2, "order-4 exhaustive enumeration", kOrder4Seconds, order4_exhaustive},
      {3, "tight size bounds", kNoLimit, tight_bounds},
      {4, "no associativity with classifier and retraction", kNoLimit, no_associativity},
      {5, "classifier placement", kNoLimit, placement},
      {6, "ICP equals Compose+Inert; necessity separations", kNoLimit, icp_equivalence},
      {7, "finite K-combinator non-existence", kKCombinatorSeconds, k_combinator},
      {8, "isomorphism invariance", kNoLimit, invariance},
      {9, "CNF pipeline", kNoLimit, cnf_pipeline},
      {10, "property suite", kNoLimit, properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    double seconds = 0;
    Problem problem;
    try {
      problem = timed(c.limit, c.body, seconds);
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    std::cout << (problem ? "FAIL" : "PASS") << ' ' << c.id << ' ' << c.title;
    if (problem) {
      std::cout << ": " << *problem;
      ++failures;
    }
    std::cout << " (" << static_cast<long>(seconds * 1000) << " ms)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
