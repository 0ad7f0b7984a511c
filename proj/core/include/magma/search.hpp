#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magma/capabilities.hpp"
#include "magma/table.hpp"

namespace magma {

enum class Predicate {
  e2pm,
  r_mutual,
  r_onesided,
  d,
  h,
  compose_inert,
  weak_icp_no_distinct,
  weak_icp_no_nontrivial,
  associative,
  right_identity,
  commutative,
  k_combinator,
};

std::string_view to_string(Predicate p);
// Accepts the names printed by to_string ("E2PM", "R_mutual", "H", ...).
std::optional<Predicate> predicate_from_string(std::string_view name);

struct Constraint {
  Predicate predicate = Predicate::e2pm;
  bool required = true;  // false: the predicate must fail

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Pins the witness of a required existential predicate. s/r apply to the
// retraction predicates, tau to D, a/b/c to the ICP family (a = eta,
// b = g, c = rho for Compose+Inert). Forbidden constraints ignore roles.
struct FixedRoles {
  std::optional<Element> s, r, tau, a, b, c;

  bool empty() const noexcept { return !s && !r && !tau && !a && !b && !c; }
  friend bool operator==(const FixedRoles&, const FixedRoles&) = default;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000ULL;
// Search refuses larger carriers unless the caller raises this explicitly.
inline constexpr int kMaxSearchOrder = 16;

struct SearchSpec {
  int n = 0;
  std::vector<Constraint> constraints;
  FixedRoles roles;
  std::optional<std::size_t> limit;  // cap on witnesses returned
  std::uint64_t budget = kDefaultNodeBudget;
  // Core rows forced into strictly increasing lexicographic order. Speeds up
  // witness finding but forfeits exhaustiveness.
  bool symmetry_breaking = false;
  unsigned threads = 1;
  CapabilityOptions options;

  bool demands(Predicate p) const;
  bool forbids(Predicate p) const;
};

// Throws Error(spec_invalid) describing the first problem.
void validate_spec(const SearchSpec& spec);

enum class SearchStatus {
  found,
  unsat,           // exhaustive, no witness
  inconclusive,    // no witness, but the run was not exhaustive
  resource_limit,  // node budget exhausted before completion
};

std::string_view to_string(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::unsat;
  std::vector<CayleyTable> witnesses;
  std::uint64_t explored = 0;  // complete assignments examined
  std::uint64_t pruned = 0;    // subtrees cut by a refutation
  std::uint64_t nodes = 0;     // cell assignments tried
  bool exhaustive = true;      // no symmetry breaking, no limit hit, no budget hit

  friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

// Depth-first search over the free cells in row-major order, values
// ascending. With E2PM required, rows 0 and 1 are the absorber rows and are
// fixed up front. Every leaf is re-checked with the capability checkers.
SearchOutcome search(const SearchSpec& spec);

// Evaluates one constraint on a complete table with the capability checkers
// (z1 = 0, z2 = 1), honouring fixed roles for required constraints.
bool satisfies(const CayleyTable& table, const Constraint& constraint,
               const FixedRoles& roles = {}, const CapabilityOptions& options = {});
bool satisfies_all(const CayleyTable& table, const SearchSpec& spec);

struct SizeResult {
  int n = 0;
  SearchOutcome outcome;
};

struct BoundsReport {
  std::vector<SizeResult> sizes;
  std::optional<int> first_found;
  // True when every size below first_found (or every size, if none was
  // found) is an exhaustive Unsat.
  bool certified = false;
};

// Runs the template at each n in [n_min, n_max]; `limit` defaults to 1.
BoundsReport minimal_size(SearchSpec spec_template, int n_min, int n_max);

// Tables of size n holding an element k with (k·a)·b = a for all a, b.
// Assigning k·a forces the row of k·a to be constant a; conflicts prune.
SearchOutcome search_k_combinator(int n, std::uint64_t budget = kDefaultNodeBudget);

// A 6-element E2PM with a mutual anchored retraction pair where ICP without
// non-triviality holds but ICP fails. Throws Error(precondition_unmet) if
// the search comes back empty.
CayleyTable derive_nontriviality_separation(std::uint64_t budget = kDefaultNodeBudget);
SearchSpec nontriviality_separation_spec();

}  // namespace magma
