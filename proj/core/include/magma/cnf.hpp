#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "magma/search.hpp"
#include "magma/table.hpp"

namespace magma {

// Signed DIMACS literal: +v is variable v true, -v false.
using Literal = int;
using Clause = std::vector<Literal>;
// Solver model as a list of signed literals; unmentioned variables are false.
using Model = std::vector<Literal>;

// out <-> AND(inputs) or out <-> OR(inputs). The defining clauses are part of
// CnfDocument::clauses; the gate list lets a complete table be extended to a
// full assignment without a solver.
struct Gate {
  enum class Kind { conjunction, disjunction };
  Kind kind = Kind::conjunction;
  int output = 0;
  std::vector<Literal> inputs;
};

struct CnfDocument {
  int n = 0;
  int variable_count = 0;
  std::vector<Clause> clauses;
  std::vector<Gate> gates;  // in definition order, inputs before outputs
  std::vector<std::string> comments;
};

// x(i, j, v) = 1 + (i·n + j)·n + v is true iff cell (i, j) holds v.
constexpr int cell_variable(int n, int i, int j, int v) noexcept { return 1 + (i * n + j) * n + v; }

// Every cell is one-hot; with E2PM required the absorber rows are fixed by
// unit clauses. Each constraint is compiled to a gate literal asserted with
// the constraint's polarity. Throws Error(spec_invalid).
CnfDocument encode(const SearchSpec& spec);

std::string to_dimacs(const CnfDocument& doc);

// Accepts solver output: "s ..." and "c ..." lines are skipped, a leading
// "v" is stripped, literal 0 is a terminator. Throws ParseError.
Model parse_model(std::string_view text);

// Reads the table off the cell variables. Throws Error(model_inconsistent)
// naming the first cell without exactly one true value.
CayleyTable decode(const Model& model, int n);

// Assignment indexed by variable (slot 0 unused): cells from `table`,
// auxiliaries from the gate definitions.
std::vector<bool> extend_assignment(const CnfDocument& doc, const CayleyTable& table);
Model extend_model(const CnfDocument& doc, const CayleyTable& table);

bool satisfied_by(const CnfDocument& doc, const std::vector<bool>& assignment);

// Unit clauses pinning every cell of `table`.
std::vector<Clause> table_units(const CayleyTable& table);

}  // namespace magma
