#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "magma/search.hpp"

namespace magma::cli {

enum ExitCode : int {
  kSuccess = 0,
  kMismatch = 1,  // Unsat, inconclusive, failed check
  kUsage = 2,     // bad arguments, unreadable or unparsable input
  kResourceLimit = 3,
};

// Runs magmactl with `args` (program name excluded). Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// {"n": 5, "constraints": [{"pred": "H", "polarity": "+"}, ...],
//  "fixed_roles": {"s": 2}, "limit": 1, "budget": 1000000,
//  "symmetry_breaking": false, "strict_classifier": true}
// Throws ParseError for syntax or field errors.
SearchSpec parse_spec_document(std::string_view text);

}  // namespace magma::cli
