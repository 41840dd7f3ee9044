#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/error.hpp"
#include "ualg/point.hpp"
#include "ualg/topology.hpp"

namespace ualg {

  //! A named topology on the carrier of a declared algebra.
  struct TopologyDecl {
    std::string name;
    AlgebraPtr  on;
    TopologyPtr topology;
  };

  using Declaration = std::variant<TheoryPtr, AlgebraPtr, TopologyDecl, Homomorphism, SplitPoint>;

  std::string const& declaration_name(Declaration const& d);
  //! "theory", "algebra", "topology", "hom" or "point".
  std::string_view declaration_kind(Declaration const& d);

  //! Structural equality; references compare by name.
  bool equivalent(Declaration const& a, Declaration const& b);

  //! Declarations visible to later ones; names share one namespace.
  class Scope {
   public:
    //! Throws DuplicateError if the name is taken.
    void add(Declaration d);

    Declaration const* find(std::string_view name) const;

    TheoryPtr    theory(std::string_view name) const;
    AlgebraPtr   algebra(std::string_view name) const;
    TopologyDecl const* topology(std::string_view name) const;
    Homomorphism const* hom(std::string_view name) const;
    SplitPoint const*   point(std::string_view name) const;

    std::vector<Declaration> const& declarations() const noexcept {
      return _decls;
    }

   private:
    std::vector<Declaration>                _decls;
    std::map<std::string, std::size_t, std::less<>> _index;
  };

  struct Warning {
    SourceLocation where;
    std::string    message;
  };

  struct ParseResult {
    std::vector<Declaration> declarations;  // in source order
    std::vector<Warning>     warnings;
  };

  //! Parses a whole file in one forward pass. New declarations are added to
  //! \p scope, which may already hold earlier files.
  ParseResult parse_source(std::string_view text, Scope& scope);
  ParseResult parse_source(std::string_view text);

  //! Parses a single term over \p sig; variables are interned in order of
  //! first occurrence into \p vars.
  Term parse_term(std::string_view text, Signature const& sig, std::vector<std::string>& vars);

  std::string format_theory(Theory const& th);
  std::string format_algebra(FiniteAlgebra const& alg);
  std::string format_topology(TopologyDecl const& t);
  std::string format_hom(Homomorphism const& h);
  std::string format_point(SplitPoint const& pt);
  std::string format_declaration(Declaration const& d);
  //! Declarations separated by blank lines.
  std::string format_source(std::vector<Declaration> const& decls);

  //! An operation table as nested lists: `[[0,1],[1,0]]`, or a bare
  //! element for constants.
  std::string format_table(std::vector<Element> const& table, std::size_t n, std::size_t arity);

}  // namespace ualg
