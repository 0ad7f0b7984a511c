#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "magma/error.hpp"

namespace magma {

// Elements of a carrier of size n are the indices 0..n-1.
using Element = int;

// Upper bound on carrier sizes accepted anywhere in the toolkit.
inline constexpr int kMaxOrder = 64;

// A total binary operation on {0..n-1}, stored row-major: at(a, b) is a·b.
class CayleyTable {
 public:
  CayleyTable() = default;

  // Throws Error(malformed_table) unless rows.size() == n, every row has n
  // entries and every entry lies in [0, n).
  explicit CayleyTable(const std::vector<std::vector<Element>>& rows);
  CayleyTable(int n, std::vector<Element> cells);

  int size() const noexcept { return n_; }
  Element at(Element a, Element b) const noexcept {
    return cells_[static_cast<std::size_t>(a * n_ + b)];
  }
  std::span<const Element> row(Element a) const noexcept {
    return {cells_.data() + static_cast<std::size_t>(a * n_),
            static_cast<std::size_t>(n_)};
  }
  const std::vector<Element>& cells() const noexcept { return cells_; }
  std::vector<std::vector<Element>> rows() const;

  friend bool operator==(const CayleyTable&, const CayleyTable&) = default;
  friend auto operator<=>(const CayleyTable&, const CayleyTable&) = default;

 private:
  int n_ = 0;
  std::vector<Element> cells_;
};

// Extensional 2-pointed magma: a Cayley table with exactly two designated
// left-absorbers z1 != z2, no other left-absorber, and pairwise distinct
// rows. Instances are immutable once built.
class E2PM {
 public:
  // Checks the axioms in a fixed order (same_absorbers, absorber rows of z1
  // then z2, extra absorbers ascending, extensionality on the
  // lexicographically first equal row pair) and throws ValidationError on the
  // first failure.
  static E2PM validate(CayleyTable table, Element z1, Element z2);

  // Builds the value without checking the axioms. Used to evaluate predicates
  // on arbitrary candidate tables (search leaves, negated constraints).
  static E2PM from_trusted(CayleyTable table, Element z1, Element z2);

  const CayleyTable& table() const noexcept { return table_; }
  int size() const noexcept { return table_.size(); }
  Element z1() const noexcept { return z1_; }
  Element z2() const noexcept { return z2_; }
  Element at(Element a, Element b) const noexcept { return table_.at(a, b); }
  bool is_absorber(Element e) const noexcept { return e == z1_ || e == z2_; }

  // All elements except z1 and z2, ascending.
  const std::vector<Element>& core() const noexcept { return core_; }

  friend bool operator==(const E2PM& x, const E2PM& y) {
    return x.table_ == y.table_ && x.z1_ == y.z1_ && x.z2_ == y.z2_;
  }

 private:
  E2PM(CayleyTable table, Element z1, Element z2);

  CayleyTable table_;
  Element z1_ = 0;
  Element z2_ = 1;
  std::vector<Element> core_;
};

// Non-throwing form of E2PM::validate.
std::optional<ValidationError> find_validation_error(const CayleyTable& table,
                                                     Element z1, Element z2);

std::vector<Element> core_elements(const E2PM& m);

struct Decomposition {
  std::vector<Element> zeros;
  std::vector<Element> classifiers;
  std::vector<Element> nonclassifiers;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

// A core element whose core row mixes absorber and non-absorber outputs:
// element·to_absorber is in {z1, z2}, element·to_core is not.
struct DichotomyViolation {
  Element element = 0;
  Element to_absorber = 0;
  Element to_core = 0;

  friend bool operator==(const DichotomyViolation&,
                         const DichotomyViolation&) = default;
};

using DecomposeResult = std::variant<Decomposition, DichotomyViolation>;

// Classifies each core element by its row restricted to core. Returns the
// first (ascending) mixed element if there is one. Throws Error(empty_core)
// when the core is empty.
DecomposeResult decompose(const E2PM& m);

// Table of the same operation after renaming every element e to perm[e]:
// result.at(perm[a], perm[b]) == perm[table.at(a, b)]. perm must be a
// permutation of 0..n-1 (unchecked).
CayleyTable relabel(const CayleyTable& table, std::span<const Element> perm);

// Renames elements so that z1 = 0 and z2 = 1, using the transposition
// (z1 0) followed by (z2' 1). Idempotent.
E2PM normalize(const E2PM& m);

// The renaming normalize() applies, as image-of-i-at-position-i.
std::vector<Element> normalizing_permutation(const E2PM& m);

std::string format_grid(const CayleyTable& table);

}  // namespace magma
