#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/verdict.hpp"

namespace ualg {

  //! The k-ary term operations of a finite algebra.
  //!
  //! Functions are value tables of length n^k in row-major tuple order. Each
  //! carries a witnessing term of minimal depth; among terms of equal depth
  //! the first one reached (symbols in name order, argument tuples in
  //! discovery order) wins.
  struct TermClone {
    AlgebraPtr                        over;
    std::size_t                       arity = 0;
    std::vector<std::vector<Element>> funcs;  // discovery order
    std::vector<Term>                 terms;  // parallel to funcs
    bool                              complete = true;  // false if stopped early

    std::size_t size() const noexcept {
      return funcs.size();
    }
    std::optional<std::size_t> find(std::vector<Element> const& f) const;
  };

  constexpr std::size_t default_clone_budget = 100'000;
  constexpr std::size_t max_clone_arity      = 4;

  //! Closure of the projections under the basic operations, breadth-first.
  //! Throws BudgetExceededError (with the partial size) past \p budget.
  TermClone generate_clone(AlgebraPtr const& alg,
                           std::size_t       arity,
                           std::size_t       budget = default_clone_budget);

  struct MaltsevWitness {
    Term p;  // ternary
  };

  struct ProtomodularWitness {
    std::vector<Term> constants;  // e_1 .. e_n, closed terms
    std::vector<Term> alphas;     // binary terms
    Term              theta;      // (n+1)-ary term

    std::size_t n() const noexcept {
      return alphas.size();
    }

    //! p(x, y, z) = theta(alpha_1(x, y), ..., alpha_n(x, y), z).
    Term maltsev_composite() const;
  };

  //! The group witnesses: e, x.y^-1, x.y and the composite x.(y^-1.z).
  ProtomodularWitness group_protomodular_witness();
  MaltsevWitness      group_maltsev_witness();

  enum class Decision { yes, no, unknown };

  struct MaltsevSearch {
    Decision            decision = Decision::unknown;
    std::optional<Term> term;        // when yes
    std::size_t         clone_size = 0;  // functions generated
    std::string         detail;
  };

  //! Searches the ternary clone for f with f(a,a,b) = b and f(a,b,b) = a.
  //! A "no" means the clone was generated completely.
  MaltsevSearch has_maltsev_term_operation(AlgebraPtr const& alg,
                                           std::size_t budget
                                           = default_clone_budget);

  Verdict check_maltsev_witness(FiniteAlgebra const& alg, MaltsevWitness const& w);

  struct LawVerdict {
    std::string                         law;
    bool                                holds = true;
    std::optional<std::vector<Element>> witness;  // (x, y)
  };

  struct ProtomodularVerdict {
    std::vector<LawVerdict> laws;  // alpha_1 .. alpha_n, then theta

    bool holds() const;
    Verdict summary() const;
  };

  ProtomodularVerdict check_protomodular_witness(FiniteAlgebra const&       alg,
                                                 ProtomodularWitness const& w);

  //! Exactly one constant symbol, used as every e_i, and the witness laws on
  //! every model given.
  Verdict check_semiabelian_preconditions(Theory const&                  th,
                                          ProtomodularWitness const&     w,
                                          std::vector<AlgebraPtr> const& models);

  struct ProtomodularSearch {
    Decision                           decision = Decision::unknown;
    std::optional<ProtomodularWitness> witness;
    std::string                        detail;
  };

  //! Tries n = 1 .. max_n. "no" only means none exists within the bound on
  //! this algebra; "unknown" means a clone exceeded its budget.
  ProtomodularSearch search_protomodular_witness(AlgebraPtr const& alg,
                                                 std::size_t       max_n,
                                                 std::size_t budget
                                                 = default_clone_budget);

}  // namespace ualg
