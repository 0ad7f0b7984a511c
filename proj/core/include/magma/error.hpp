#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace magma {

enum class ErrorCode {
  malformed_table,
  absorber_missing,
  extra_absorber,
  extensionality_violation,
  same_absorbers,
  empty_core,
  precondition_unmet,
  parse_error,
  domain_error,
  spec_invalid,
  not_permutation,
  absorber_not_fixed,
  size_mismatch,
  model_inconsistent,
};

std::string_view to_string(ErrorCode code);

// Base class for every error raised by the toolkit. Callers that only care
// about the category switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Failure of one of the extensional 2-pointed magma axioms. `first` and
// `second` carry the witnessing elements (second is meaningful only for
// extensionality and same-absorber failures).
class ValidationError : public Error {
 public:
  ValidationError(ErrorCode code, int first, int second, const std::string& what)
      : Error(code, what), first_(first), second_(second) {}

  int first() const noexcept { return first_; }
  int second() const noexcept { return second_; }

 private:
  int first_;
  int second_;
};

// Text or structured-document parse failure, positioned at a 1-based line
// and column. code() is parse_error or domain_error.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column,
             const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace magma
