#pragma once

#include <stdexcept>
#include <string>

namespace prodsum {

/// Base class of every error raised by the toolkit. `code()` is the stable
/// machine-readable name that ends up in reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define PRODSUM_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  };

PRODSUM_DEFINE_ERROR(DomainMismatch)
PRODSUM_DEFINE_ERROR(ParallelismViolation)
PRODSUM_DEFINE_ERROR(UnknownSymbol)
PRODSUM_DEFINE_ERROR(IndexLanguageError)
PRODSUM_DEFINE_ERROR(BudgetExhausted)
PRODSUM_DEFINE_ERROR(VariableAbsent)
PRODSUM_DEFINE_ERROR(Undecidable)
PRODSUM_DEFINE_ERROR(ModelUnsupported)
PRODSUM_DEFINE_ERROR(ShapeMismatch)
PRODSUM_DEFINE_ERROR(NotInvertible)
PRODSUM_DEFINE_ERROR(InvalidMorphism)
PRODSUM_DEFINE_ERROR(InvalidObject)
PRODSUM_DEFINE_ERROR(BaseRingMismatch)
PRODSUM_DEFINE_ERROR(NotDirectSumCoring)
PRODSUM_DEFINE_ERROR(SearchBoundExceeded)
PRODSUM_DEFINE_ERROR(UnknownCommand)
PRODSUM_DEFINE_ERROR(FileNotFound)
PRODSUM_DEFINE_ERROR(FixtureError)

#undef PRODSUM_DEFINE_ERROR

/// Parse failures carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& expected)
      : Error("ParseError", std::to_string(line) + ":" + std::to_string(col) +
                                ": expected " + expected),
        line_(line), col_(col), expected_(expected) {}
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int col_;
  std::string expected_;
};

}  // namespace prodsum
