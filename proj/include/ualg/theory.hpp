#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ualg {

  //! An operation symbol together with its arity.
  struct OpSymbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(OpSymbol const&, OpSymbol const&) = default;
  };

  //! An ordered list of operation symbols with pairwise distinct names.
  class Signature {
   public:
    Signature() = default;
    explicit Signature(std::vector<OpSymbol> ops);

    //! Appends a symbol; throws DuplicateError if the name is taken.
    void add(std::string name, std::size_t arity);

    std::optional<std::size_t> find(std::string_view name) const;

    //! Index of \p name, throwing UnknownSymbolError if absent.
    std::size_t index_of(std::string_view name) const;

    OpSymbol const& operator[](std::size_t i) const {
      return _ops[i];
    }
    std::size_t size() const noexcept {
      return _ops.size();
    }
    bool empty() const noexcept {
      return _ops.empty();
    }
    std::vector<OpSymbol> const& ops() const noexcept {
      return _ops;
    }

    //! Symbol indices sorted by name; the tie-break order for clone search.
    std::vector<std::size_t> lexicographic_order() const;

    //! Indices of the arity-0 symbols, in declaration order.
    std::vector<std::size_t> constants() const;

    friend bool operator==(Signature const&, Signature const&) = default;

   private:
    std::vector<OpSymbol> _ops;
  };

  //! A term: either a variable (by dense index) or a symbol applied to terms.
  struct Term {
    std::string       symbol;  // empty for variables
    std::size_t       var = 0;
    std::vector<Term> args;

    static Term variable(std::size_t index);
    static Term apply(std::string symbol, std::vector<Term> args = {});

    bool is_var() const noexcept {
      return symbol.empty();
    }

    //! 0 for variables and constants' arguments; 1 + max child depth otherwise.
    std::size_t depth() const;

    //! One more than the largest variable index, or 0 for closed terms.
    std::size_t var_bound() const;

    //! Replaces each variable i by \p values[i].
    Term substitute(std::vector<Term> const& values) const;

    friend bool operator==(Term const&, Term const&) = default;
  };

  //! Throws UnknownSymbolError or ArityMismatchError if \p t is ill-formed.
  void validate_term(Signature const& sig, Term const& t);

  //! An equation lhs = rhs in nvars variables, indices 0 .. nvars - 1.
  struct Equation {
    Term        lhs;
    Term        rhs;
    std::size_t nvars = 0;

    //! Builds the equation and computes nvars from the terms.
    static Equation make(Term lhs, Term rhs);

    friend bool operator==(Equation const&, Equation const&) = default;
  };

  //! A one-sorted equational theory: signature plus axioms.
  struct Theory {
    std::string           name;
    Signature             signature;
    std::vector<Equation> axioms;

    //! Throws if any axiom is ill-formed over the signature.
    void validate() const;

    friend bool operator==(Theory const&, Theory const&) = default;
  };

  //! Prints a term with variables named prefix0, prefix1, ...
  std::string to_string(Term const& t, std::string_view var_prefix = "x");
  std::string to_string(Equation const& eq, std::string_view var_prefix = "x");

}  // namespace ualg
