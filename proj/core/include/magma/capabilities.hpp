#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "magma/table.hpp"

namespace magma {

struct CapabilityOptions {
  // When true a classifier must send every element (absorbers included) into
  // {z1, z2}; when false only core inputs are inspected.
  bool strict_classifier = true;
};

// Capability R: s, r in core with r·(s·x) = x on core. `mutual` records
// whether s·(r·x) = x also holds on core, `anchored` whether r·z1 = z1.
struct RetractionPair {
  Element s = 0;
  Element r = 0;
  bool mutual = false;
  bool anchored = false;

  friend bool operator==(const RetractionPair&, const RetractionPair&) = default;
};

// Ordered pairs from core satisfying r·(s·x) = x on core, filtered by the
// flags, ascending by (s, r). Capability R in the mutual-inverse convention
// is find_retraction_pairs(m, true, true) being non-empty.
std::vector<RetractionPair> find_retraction_pairs(const E2PM& m,
                                                  bool require_mutual,
                                                  bool require_anchor);

bool has_retraction(const E2PM& m);

enum class DichotomyStatus {
  holds,
  empty_core,
  mixed_element,     // some core element is partially classifying
  no_classifier,     // no element passes classifier existence
  no_nonclassifier,  // every core element classifies
};

std::string_view to_string(DichotomyStatus status);

struct DichotomyReport {
  DichotomyStatus status = DichotomyStatus::empty_core;
  // Core-quantified classes; empty when status is mixed_element/empty_core.
  std::vector<Element> classifiers;
  std::vector<Element> nonclassifiers;
  // Core elements passing classifier existence under the configured reading.
  std::vector<Element> existence_witnesses;
  std::optional<DichotomyViolation> violation;

  bool holds() const noexcept { return status == DichotomyStatus::holds; }
  bool degenerate() const noexcept {
    return status == DichotomyStatus::no_classifier ||
           status == DichotomyStatus::no_nonclassifier;
  }
};

// Capability D. Status checks run in the order empty core, mixed element,
// classifier existence, non-classifier existence.
DichotomyReport check_dichotomy(const E2PM& m, const CapabilityOptions& options = {});

struct Triple {
  Element a = 0;
  Element b = 0;
  Element c = 0;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Witness of the Internal Composition Property (capability H): a, b, c
// pairwise distinct in core, b core-preserving, a·x = c·(b·x) on core and a
// taking at least two values on core.
using IcpTriple = Triple;

std::vector<IcpTriple> find_icp_triples(const E2PM& m);

// Compose + Inert witnesses written as (eta, g, rho): eta·x = rho·(g·x) and
// g·x outside {z1, z2} on core, pairwise distinct, eta non-constant on core.
// Computed independently of find_icp_triples.
std::vector<Triple> find_compose_inert_triples(const E2PM& m);

// ICP with pairwise distinctness dropped.
std::vector<Triple> find_weak_icp_no_distinctness(const E2PM& m);
// ICP with non-triviality dropped.
std::vector<Triple> find_weak_icp_no_nontriviality(const E2PM& m);

struct AssociativityResult {
  bool associative = true;
  std::optional<std::array<Element, 3>> counterexample;  // first (a, b, c)
};
AssociativityResult is_associative(const CayleyTable& table);

std::optional<Element> right_identity(const CayleyTable& table);

struct CommutativityResult {
  bool commutative = true;
  std::optional<std::pair<Element, Element>> counterexample;
};
CommutativityResult is_commutative(const CayleyTable& table);

// Elements k with (k·a)·b = a for all a, b.
std::vector<Element> find_k_combinators(const CayleyTable& table);

// True iff every mutual anchored retraction pair has both s and r among the
// non-classifiers. Throws Error(precondition_unmet) unless m has R and D.
bool verify_placement(const E2PM& m, const CapabilityOptions& options = {});

struct CapabilityReport {
  std::vector<RetractionPair> r_onesided;  // anchored, one-sided
  std::vector<RetractionPair> r_mutual;    // anchored, mutual
  DichotomyReport d;
  std::vector<IcpTriple> h;
  std::vector<Triple> compose_inert;
  AssociativityResult associativity;
  std::optional<Element> right_identity;
  CommutativityResult commutativity;

  bool has_r() const noexcept { return !r_mutual.empty(); }
  bool has_d() const noexcept { return d.holds(); }
  bool has_h() const noexcept { return !h.empty(); }
};

CapabilityReport full_report(const E2PM& m, const CapabilityOptions& options = {});

// Re-evaluates every witness in `report` against the raw table of m by the
// defining equations. Returns a description of the first failure.
std::optional<std::string> recheck_witnesses(const E2PM& m,
                                             const CapabilityReport& report,
                                             const CapabilityOptions& options = {});

}  // namespace magma
