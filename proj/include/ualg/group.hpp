#pragma once

#include <string>
#include <vector>

#include "ualg/algebra.hpp"

namespace ualg {

  //! Names of the group operations inside a theory.
  struct GroupSymbols {
    std::string identity = "e";
    std::string inverse  = "inv";
    std::string multiply = "mul";
  };

  //! Read-only group interface over a FiniteAlgebra whose theory carries
  //! the three group symbols and whose tables satisfy the group laws.
  class GroupView {
   public:
    //! Throws PreconditionError("not a group ...") if the symbols are missing
    //! or the laws fail on \p alg.
    explicit GroupView(AlgebraPtr alg, GroupSymbols const& symbols = {});

    static bool is_group(AlgebraPtr const& alg, GroupSymbols const& symbols = {});

    Element identity() const noexcept {
      return _e;
    }
    Element inv(Element a) const {
      return _alg->apply(_inv, {a});
    }
    Element mul(Element a, Element b) const {
      return _alg->apply(_mul, {a, b});
    }
    std::size_t order() const noexcept {
      return _alg->size();
    }
    AlgebraPtr const& algebra() const noexcept {
      return _alg;
    }

    bool is_normal_subgroup(std::vector<Element> const& subset) const;
    bool is_abelian() const;
    //! Elements commuting with everything.
    std::vector<Element> center() const;
    //! Order of \p a as a group element.
    std::size_t element_order(Element a) const;

   private:
    AlgebraPtr  _alg;
    std::size_t _inv = 0, _mul = 0;
    Element     _e   = 0;
  };

}  // namespace ualg
