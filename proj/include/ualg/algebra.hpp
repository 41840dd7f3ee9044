#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ualg/theory.hpp"

namespace ualg {

  //! Carrier elements are always 0 .. n - 1.
  using Element = std::size_t;

  using TheoryPtr = std::shared_ptr<Theory const>;

  //! A finite algebra: a carrier {0..n-1} and one total table per symbol.
  //!
  //! The table of an arity-k symbol has n^k entries, indexed row-major by the
  //! argument tuple: (a_0, ..., a_{k-1}) lives at ((a_0 n + a_1) n + ...) .
  class FiniteAlgebra {
   public:
    //! Validates shape and range of every table; throws ShapeError.
    FiniteAlgebra(std::string                       name,
                  TheoryPtr                         theory,
                  std::size_t                       size,
                  std::vector<std::vector<Element>> tables);

    std::string const& name() const noexcept {
      return _name;
    }
    TheoryPtr const& theory() const noexcept {
      return _theory;
    }
    Signature const& signature() const noexcept {
      return _theory->signature;
    }
    std::size_t size() const noexcept {
      return _size;
    }
    std::vector<Element> const& table(std::size_t op) const {
      return _tables[op];
    }
    std::vector<std::vector<Element>> const& tables() const noexcept {
      return _tables;
    }

    Element apply(std::size_t op, std::span<Element const> args) const {
      return _tables[op][tuple_index(args)];
    }
    Element apply(std::size_t op, std::initializer_list<Element> args) const {
      return apply(op, std::span<Element const>(args.begin(), args.size()));
    }

    std::size_t tuple_index(std::span<Element const> args) const noexcept {
      std::size_t i = 0;
      for (auto a : args) {
        i = i * _size + a;
      }
      return i;
    }

    //! Structural equality: same name, theory name, size and tables.
    friend bool operator==(FiniteAlgebra const& a, FiniteAlgebra const& b);

   private:
    std::string                       _name;
    TheoryPtr                         _theory;
    std::size_t                       _size;
    std::vector<std::vector<Element>> _tables;
  };

  using AlgebraPtr = std::shared_ptr<FiniteAlgebra const>;

  //! n^k, throwing BudgetExceededError past \p cap.
  std::size_t checked_power(std::size_t n,
                            std::size_t k,
                            std::size_t cap = SIZE_MAX);

  //! Calls \p f on every tuple of {0..n-1}^k in lexicographic order.
  //! Stops early when \p f returns false; returns whether it ran to the end.
  template <typename F>
  bool for_each_tuple(std::size_t n, std::size_t k, F&& f) {
    std::vector<Element> t(k, 0);
    if (n == 0 && k > 0) {
      return true;
    }
    while (true) {
      if (!f(std::span<Element const>(t))) {
        return false;
      }
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (++t[i] < n) {
          break;
        }
        t[i] = 0;
        if (i == 0) {
          return true;
        }
      }
      if (k == 0) {
        return true;
      }
    }
  }

  //! A map between algebras over the same theory; not necessarily verified.
  struct Homomorphism {
    std::string          name;
    AlgebraPtr           dom;
    AlgebraPtr           cod;
    std::vector<Element> map;

    Element operator()(Element x) const {
      return map[x];
    }
  };

  bool operator==(Homomorphism const& a, Homomorphism const& b);

  Element eval_term(FiniteAlgebra const&     alg,
                    Term const&              t,
                    std::span<Element const> env);

  //! Outcome of an exhaustive equation check.
  struct EquationVerdict {
    bool                                holds = true;
    std::optional<std::vector<Element>> witness;  // first failing env
  };

  //! Checks lhs = rhs on all n^nvars environments, lexicographically.
  EquationVerdict satisfies(FiniteAlgebra const& alg, Equation const& eq);

  struct AxiomReport {
    std::vector<EquationVerdict> verdicts;  // one per axiom, in order

    bool all_hold() const;
  };

  AxiomReport is_algebra_of(FiniteAlgebra const& alg);

  struct HomFailure {
    std::string          symbol;
    std::vector<Element> args;
  };

  struct HomVerdict {
    bool                      holds = true;
    std::optional<HomFailure> witness;
  };

  //! Exhaustively checks f(w(a..)) = w(f(a)..) for every symbol and tuple.
  //! Symbols are tried by descending arity (declaration order among equals),
  //! tuples lexicographically; the witness is the first failure.
  HomVerdict check_hom(Homomorphism const& f);

  //! Throws PreconditionError unless dom and cod share a theory and the
  //! map has the right length and range.
  void check_hom_shape(Homomorphism const& f);

  struct Product {
    AlgebraPtr   algebra;
    Homomorphism first;
    Homomorphism second;
  };

  //! Componentwise product; (i, j) is encoded as i * |b| + j.
  Product product(AlgebraPtr const& a,
                  AlgebraPtr const& b,
                  std::string       name = {});

  //! Least subalgebra containing \p seed, sorted ascending.
  std::vector<Element> subalgebra_closure(FiniteAlgebra const&     alg,
                                          std::span<Element const> seed);

  bool is_subalgebra(FiniteAlgebra const& alg, std::span<Element const> subset);

  //! Every subalgebra (each sorted), as joins of the one-generated ones;
  //! sorted. Throws BudgetExceededError past \p budget subalgebras.
  std::vector<std::vector<Element>> enumerate_subalgebras(FiniteAlgebra const& alg,
                                                          std::size_t budget = 4096);

  //! A subalgebra re-indexed densely (in carrier order) and its inclusion.
  struct Subalgebra {
    AlgebraPtr   algebra;
    Homomorphism inclusion;
  };

  Subalgebra make_subalgebra(AlgebraPtr const&        alg,
                             std::span<Element const> subset,
                             std::string              name = {});

  constexpr std::size_t default_hom_budget = 1'000'000;

  //! All homomorphisms a -> b in lexicographic order of their maps.
  //! Throws BudgetExceededError if |b|^|a| exceeds \p budget.
  std::vector<Homomorphism> enumerate_homs(AlgebraPtr const& a,
                                           AlgebraPtr const& b,
                                           std::size_t budget
                                           = default_hom_budget);

  Homomorphism identity_hom(AlgebraPtr const& a);
  //! g after f.
  Homomorphism compose(Homomorphism const& g, Homomorphism const& f);

  bool is_injective(Homomorphism const& f);
  bool is_surjective(Homomorphism const& f);
  bool is_bijective(Homomorphism const& f);
  std::vector<Element> image(Homomorphism const& f);

  //! Inverse of a bijective map (not re-verified as a homomorphism).
  Homomorphism inverse(Homomorphism const& f);

  //! Brute-force isomorphism search by backtracking.
  std::optional<Homomorphism> find_isomorphism(AlgebraPtr const& a,
                                               AlgebraPtr const& b);

  //! The one-element algebra of \p theory.
  AlgebraPtr trivial_algebra(TheoryPtr const& theory, std::string name = {});

  //! Transports \p alg along the bijection x -> perm[x].
  AlgebraPtr relabel(FiniteAlgebra const&     alg,
                     std::span<Element const> perm,
                     std::string              name = {});

}  // namespace ualg
