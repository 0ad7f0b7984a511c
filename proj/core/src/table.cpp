#include "magma/table.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace magma {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_table: return "MalformedTable";
    case ErrorCode::absorber_missing: return "AbsorberMissing";
    case ErrorCode::extra_absorber: return "ExtraAbsorber";
    case ErrorCode::extensionality_violation: return "ExtensionalityViolation";
    case ErrorCode::same_absorbers: return "SameAbsorbers";
    case ErrorCode::empty_core: return "EmptyCore";
    case ErrorCode::precondition_unmet: return "PreconditionUnmet";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::spec_invalid: return "SpecInvalid";
    case ErrorCode::not_permutation: return "NotPermutation";
    case ErrorCode::absorber_not_fixed: return "AbsorberNotFixed";
    case ErrorCode::size_mismatch: return "SizeMismatch";
    case ErrorCode::model_inconsistent: return "ModelInconsistent";
  }
  return "Unknown";
}

namespace {

std::string position_message(std::size_t line, std::size_t column,
                             const std::string& message) {
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": " << message;
  return out.str();
}

void check_cells(int n, const std::vector<Element>& cells) {
  if (n < 1 || n > kMaxOrder) {
    throw Error(ErrorCode::malformed_table,
                "table size " + std::to_string(n) + " outside [1, " +
                    std::to_string(kMaxOrder) + "]");
  }
  if (cells.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::malformed_table,
                "expected " + std::to_string(n * n) + " cells, got " +
                    std::to_string(cells.size()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < 0 || cells[i] >= n) {
      throw Error(ErrorCode::malformed_table,
                  "entry (" + std::to_string(i / n) + "," + std::to_string(i % n) +
                      ") = " + std::to_string(cells[i]) + " out of range");
    }
  }
}

bool is_constant_row(std::span<const Element> row, Element value) {
  return std::all_of(row.begin(), row.end(),
                     [value](Element v) { return v == value; });
}

}  // namespace

ParseError::ParseError(ErrorCode code, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(code, position_message(line, column, message)),
      line_(line),
      column_(column) {}

CayleyTable::CayleyTable(const std::vector<std::vector<Element>>& rows)
    : n_(static_cast<int>(rows.size())) {
  cells_.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw Error(ErrorCode::malformed_table, "table is not square");
    }
    cells_.insert(cells_.end(), row.begin(), row.end());
  }
  check_cells(n_, cells_);
}

CayleyTable::CayleyTable(int n, std::vector<Element> cells)
    : n_(n), cells_(std::move(cells)) {
  check_cells(n_, cells_);
}

std::vector<std::vector<Element>> CayleyTable::rows() const {
  std::vector<std::vector<Element>> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (Element a = 0; a < n_; ++a) {
    auto r = row(a);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::optional<ValidationError> find_validation_error(const CayleyTable& table,
                                                     Element z1, Element z2) {
  const int n = table.size();
  if (z1 < 0 || z1 >= n || z2 < 0 || z2 >= n) {
    return ValidationError(ErrorCode::malformed_table, z1, z2,
                           "designated absorber outside the carrier");
  }
  if (z1 == z2) {
    return ValidationError(ErrorCode::same_absorbers, z1, z2,
                           "z1 and z2 must be distinct (both are " +
                               std::to_string(z1) + ")");
  }
  for (Element z : {z1, z2}) {
    if (!is_constant_row(table.row(z), z)) {
      return ValidationError(ErrorCode::absorber_missing, z, z,
                             "element " + std::to_string(z) +
                                 " is not a left-absorber");
    }
  }
  for (Element e = 0; e < n; ++e) {
    if (e != z1 && e != z2 && is_constant_row(table.row(e), e)) {
      return ValidationError(ErrorCode::extra_absorber, e, e,
                             "element " + std::to_string(e) +
                                 " is an additional left-absorber");
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      auto ra = table.row(a);
      auto rb = table.row(b);
      if (std::equal(ra.begin(), ra.end(), rb.begin())) {
        return ValidationError(ErrorCode::extensionality_violation, a, b,
                               "elements " + std::to_string(a) + " and " +
                                   std::to_string(b) + " have identical rows");
      }
    }
  }
  return std::nullopt;
}

E2PM::E2PM(CayleyTable table, Element z1, Element z2)
    : table_(std::move(table)), z1_(z1), z2_(z2) {
  for (Element e = 0; e < table_.size(); ++e) {
    if (e != z1_ && e != z2_) core_.push_back(e);
  }
}

E2PM E2PM::validate(CayleyTable table, Element z1, Element z2) {
  if (auto err = find_validation_error(table, z1, z2)) throw *err;
  return E2PM(std::move(table), z1, z2);
}

E2PM E2PM::from_trusted(CayleyTable table, Element z1, Element z2) {
  return E2PM(std::move(table), z1, z2);
}

std::vector<Element> core_elements(const E2PM& m) { return m.core(); }

DecomposeResult decompose(const E2PM& m) {
  const auto& core = m.core();
  if (core.empty()) {
    throw Error(ErrorCode::empty_core, "decomposition needs a non-empty core");
  }
  Decomposition d;
  d.zeros = {std::min(m.z1(), m.z2()), std::max(m.z1(), m.z2())};
  for (Element y : core) {
    std::optional<Element> to_absorber;
    std::optional<Element> to_core;
    for (Element x : core) {
      if (m.is_absorber(m.at(y, x))) {
        if (!to_absorber) to_absorber = x;
      } else if (!to_core) {
        to_core = x;
      }
    }
    if (to_absorber && to_core) {
      return DichotomyViolation{y, *to_absorber, *to_core};
    }
    (to_absorber ? d.classifiers : d.nonclassifiers).push_back(y);
  }
  return d;
}

CayleyTable relabel(const CayleyTable& table, std::span<const Element> perm) {
  const int n = table.size();
  std::vector<Element> cells(static_cast<std::size_t>(n * n));
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      cells[static_cast<std::size_t>(perm[a] * n + perm[b])] = perm[table.at(a, b)];
    }
  }
  return CayleyTable(n, std::move(cells));
}

std::vector<Element> normalizing_permutation(const E2PM& m) {
  const int n = m.size();
  std::vector<Element> perm(static_cast<std::size_t>(n));
  for (Element i = 0; i < n; ++i) perm[i] = i;
  // Compose transpositions: first (z1 0), then (image of z2, 1).
  auto apply_swap = [&perm](Element x, Element y) {
    for (auto& v : perm) {
      if (v == x) {
        v = y;
      } else if (v == y) {
        v = x;
      }
    }
  };
  apply_swap(m.z1(), 0);
  apply_swap(perm[m.z2()], 1);
  return perm;
}

E2PM normalize(const E2PM& m) {
  auto perm = normalizing_permutation(m);
  return E2PM::from_trusted(relabel(m.table(), perm), 0, 1);
}

std::string format_grid(const CayleyTable& table) {
  std::ostringstream out;
  for (Element a = 0; a < table.size(); ++a) {
    for (Element b = 0; b < table.size(); ++b) {
      if (b) out << ' ';
      out << table.at(a, b);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace magma
