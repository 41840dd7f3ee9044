#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/verdict.hpp"

namespace ualg {

  //! A relation R on {0..n-1}, stored as an n x n boolean matrix.
  class BinaryRelation {
   public:
    explicit BinaryRelation(std::size_t n = 0) : _n(n), _m(n * n, 0) {}

    static BinaryRelation diagonal(std::size_t n);
    static BinaryRelation full(std::size_t n);
    static BinaryRelation from_pairs(
        std::size_t                                       n,
        std::span<std::pair<Element, Element> const> pairs);

    std::size_t size() const noexcept {
      return _n;
    }
    bool contains(Element x, Element y) const {
      return _m[x * _n + y] != 0;
    }
    void set(Element x, Element y, bool value = true) {
      _m[x * _n + y] = value ? 1 : 0;
    }
    std::size_t count() const;
    std::vector<std::pair<Element, Element>> pairs() const;

    //! R is contained in S.
    bool is_subset_of(BinaryRelation const& s) const;
    BinaryRelation operator|(BinaryRelation const& s) const;

    friend bool operator==(BinaryRelation const&, BinaryRelation const&)
        = default;
    friend bool operator<(BinaryRelation const& a, BinaryRelation const& b) {
      return a._m < b._m;
    }

   private:
    std::size_t       _n;
    std::vector<char> _m;
  };

  //! A partition of the carrier, block ids dense from 0 in order of each
  //! block's smallest element.
  class Congruence {
   public:
    Congruence() = default;
    //! Normalises arbitrary labels to the canonical numbering.
    explicit Congruence(std::vector<std::size_t> labels);

    static Congruence diagonal(std::size_t n);
    static Congruence full(std::size_t n);
    //! Throws PreconditionError if \p r is not an equivalence.
    static Congruence from_relation(BinaryRelation const& r);

    std::size_t size() const noexcept {
      return _block.size();
    }
    std::size_t block_count() const noexcept {
      return _count;
    }
    std::size_t block_of(Element x) const {
      return _block[x];
    }
    std::vector<std::size_t> const& blocks() const noexcept {
      return _block;
    }
    //! Smallest element of each block.
    std::vector<Element> representatives() const;
    std::vector<std::vector<Element>> classes() const;
    BinaryRelation relation() const;

    //! Every block of this lies inside a block of \p other.
    bool refines(Congruence const& other) const;

    friend bool operator==(Congruence const&, Congruence const&) = default;
    friend bool operator<(Congruence const& a, Congruence const& b) {
      return a._block < b._block;
    }

   private:
    std::vector<std::size_t> _block;
    std::size_t              _count = 0;
  };

  struct RelationFlags {
    bool reflexive  = false;
    bool symmetric  = false;
    bool transitive = false;
    //! Closed under the componentwise operations, i.e. a subalgebra of A x A.
    bool compatible = false;

    bool is_congruence() const {
      return reflexive && symmetric && transitive && compatible;
    }
  };

  RelationFlags classify_relation(FiniteAlgebra const& alg, BinaryRelation const& r);

  //! Blocks are the fibres of \p f.
  Congruence kernel_pair(Homomorphism const& f);

  //! Least congruence containing \p seed.
  Congruence congruence_generated(FiniteAlgebra const&                         alg,
                                  std::span<std::pair<Element, Element> const> seed);

  //! Least congruence containing both.
  Congruence join(FiniteAlgebra const& alg, Congruence const& a, Congruence const& b);

  constexpr std::size_t default_relation_budget = 100'000;
  constexpr std::size_t default_carrier_cap     = 6;

  struct Quotient {
    AlgebraPtr   algebra;
    Homomorphism projection;
  };

  //! Throws PreconditionError if \p c is not compatible with the operations
  //! (the block tables would depend on the choice of representatives).
  Quotient quotient(AlgebraPtr const& alg, Congruence const& c, std::string name = {});

  //! The kernel pair of the quotient projection equals \p c.
  Verdict effectiveness_check(AlgebraPtr const& alg, Congruence const& c);

  struct Factorization {
    AlgebraPtr   middle;
    Homomorphism epi;   // surjective
    Homomorphism mono;  // injective
    Verdict      verdict;  // m.e = f, e onto, m one-to-one, both homs
  };

  Factorization factorize(Homomorphism const& f);

  //! Runs over the quotients A/c for every congruence c of f.dom; f factors
  //! as m.e through the projection e exactly when c refines R[f], and then
  //! R[e] = R[f] must coincide with m being injective. Detail: how many
  //! factorizations were tested.
  Verdict kernel_factor_law(Homomorphism const& f, std::size_t budget = default_relation_budget);

  //! For a commuting square v.f = g.u, the map theta between the middles of
  //! factorize(f) and factorize(g) with theta.e_f = e_g.u is well defined, a
  //! homomorphism, and satisfies m_g.theta = v.m_f.
  Verdict factorization_square_check(Homomorphism const& f,
                                     Homomorphism const& g,
                                     Homomorphism const& u,
                                     Homomorphism const& v);

  //! (x, z) in r.s iff some y has (x, y) in s and (y, z) in r.
  BinaryRelation compose_relations(BinaryRelation const& r, BinaryRelation const& s);

  //! All congruences: principal ones closed under pairwise join. Sorted.
  std::vector<Congruence> enumerate_congruences(FiniteAlgebra const& alg,
                                                std::size_t budget
                                                = default_relation_budget);

  //! Least subalgebra of A x A containing \p r.
  BinaryRelation compatible_closure(FiniteAlgebra const& alg, BinaryRelation const& r);

  //! All reflexive compatible relations: closures of the diagonal plus one
  //! pair, closed under pairwise join. Sorted.
  std::vector<BinaryRelation> enumerate_reflexive_compatible(
      FiniteAlgebra const& alg,
      std::size_t          budget = default_relation_budget);

  //! Every pair of congruences permutes; witness = first pair that doesn't.
  Verdict permutability_report(FiniteAlgebra const& alg,
                               std::size_t          carrier_cap = default_carrier_cap,
                               std::size_t          budget = default_relation_budget);

  //! Every reflexive compatible relation is symmetric and transitive.
  Verdict reflexive_implies_equivalence_report(
      FiniteAlgebra const& alg,
      std::size_t          carrier_cap = default_carrier_cap,
      std::size_t          budget      = default_relation_budget);

  std::string format_relation(BinaryRelation const& r);
  std::string format_congruence(Congruence const& c);

}  // namespace ualg
