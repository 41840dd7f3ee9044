#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ualg {

  //! A position in DSL source text, 1-based.
  struct SourceLocation {
    std::size_t line   = 0;
    std::size_t column = 0;
  };

  //! Base of every exception thrown by the library.
  //!
  //! Errors raised while parsing carry the location of the offending token;
  //! errors raised by the algebraic operations themselves carry none.
  class Error : public std::runtime_error {
   public:
    explicit Error(std::string const&            message,
                   std::optional<SourceLocation> where = std::nullopt)
        : std::runtime_error(decorate(message, where)), _where(where) {}

    std::optional<SourceLocation> const& where() const noexcept {
      return _where;
    }

    //! Short machine-readable class name, e.g. "arity-mismatch".
    virtual char const* kind() const noexcept {
      return "error";
    }

   private:
    static std::string decorate(std::string const&                   message,
                                std::optional<SourceLocation> const& where) {
      if (!where) {
        return message;
      }
      return std::to_string(where->line) + ":" + std::to_string(where->column)
             + ": " + message;
    }

    std::optional<SourceLocation> _where;
  };

#define UALG_DEFINE_ERROR(NAME, KIND)                  \
  class NAME : public Error {                          \
   public:                                             \
    using Error::Error;                                \
    char const* kind() const noexcept override {       \
      return KIND;                                     \
    }                                                  \
  };

  // Malformed source text: unexpected character or token.
  UALG_DEFINE_ERROR(SyntaxError, "syntax")
  // A term or table names an operation symbol that is not in the signature.
  UALG_DEFINE_ERROR(UnknownSymbolError, "unknown-symbol")
  // An operation symbol is applied to the wrong number of arguments.
  UALG_DEFINE_ERROR(ArityMismatchError, "arity-mismatch")
  // A declaration refers to a name that has not been declared before it.
  UALG_DEFINE_ERROR(DanglingReferenceError, "dangling-reference")
  // Tables, maps or subsets with the wrong shape or out-of-range entries.
  UALG_DEFINE_ERROR(ShapeError, "shape")
  // A name declared twice.
  UALG_DEFINE_ERROR(DuplicateError, "duplicate")
  // An exhaustive search would exceed its configured budget.
  UALG_DEFINE_ERROR(BudgetExceededError, "budget-exceeded")
  // An operation was called on inputs violating its documented precondition.
  UALG_DEFINE_ERROR(PreconditionError, "precondition")

#undef UALG_DEFINE_ERROR

}  // namespace ualg
