#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magma/capabilities.hpp"
#include "magma/table.hpp"

namespace magma {

// Capability summary a corpus entry is expected to reproduce. Named witnesses
// must appear in the corresponding checker output.
struct ExpectedFlags {
  bool r = false;
  bool d = false;
  bool h = false;
  std::optional<DichotomyStatus> d_status;
  std::optional<Element> d_violation;
  std::vector<std::pair<Element, Element>> pairs;
  std::vector<Triple> triples;
  std::vector<Element> classifiers;
  std::vector<Element> nonclassifiers;

  friend bool operator==(const ExpectedFlags&, const ExpectedFlags&) = default;
};

// Role labels per element: "z1", "z2", "s", "r", "tau", "a", "b", "c", ...
using RoleMap = std::map<Element, std::vector<std::string>>;

struct NamedWitness {
  std::string name;
  E2PM table;
  RoleMap roles;
  ExpectedFlags expected;
  bool derived = false;  // found by search rather than transcribed
};

// The twelve frozen published tables, in a stable order.
const std::vector<NamedWitness>& corpus_all();

// Entries reproduced by search and frozen afterwards.
const std::vector<NamedWitness>& corpus_derived();

// Lookup across both lists; nullptr when absent.
const NamedWitness* corpus_find(std::string_view name);

// Result of reading a table document in either format.
struct TableDocument {
  CayleyTable table;
  Element z1 = 0;
  Element z2 = 1;
  std::optional<std::string> name;
  RoleMap roles;
  std::optional<ExpectedFlags> expected;
};

// Reads a text grid ("n z1 z2" then n rows, optional leading "# name: X"
// line) or a structured JSON document (first non-blank character '{').
// Throws ParseError with code parse_error or domain_error.
TableDocument load_table(std::string_view source);

// Canonical text grid. load_table(save_table(...)) reproduces the input.
std::string save_table(const CayleyTable& table, Element z1, Element z2,
                       const std::optional<std::string>& name = std::nullopt);

// Canonical structured document with rows one per line.
std::string save_document(const TableDocument& doc);
std::string save_document(const NamedWitness& witness);

// Compares a report against expectations; returns the first mismatch.
std::optional<std::string> compare_expected(const CapabilityReport& report,
                                            const ExpectedFlags& expected);

// Checks that annotated roles hold: tau is a classifier under the given
// reading, every (s, r) annotation is an anchored retraction pair.
std::optional<std::string> verify_roles(const E2PM& m, const RoleMap& roles,
                                        const CapabilityOptions& options = {});

}  // namespace magma
