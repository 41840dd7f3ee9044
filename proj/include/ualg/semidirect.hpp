#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/point.hpp"
#include "ualg/topalg.hpp"
#include "ualg/verdict.hpp"

namespace ualg {

  //! An action of the group q on the group k by automorphisms:
  //! phi[b] is the permutation of k's carrier by which b acts.
  struct GroupAction {
    std::string                       name;
    AlgebraPtr                        k;
    AlgebraPtr                        q;
    std::vector<std::vector<Element>> phi;
  };

  //! Each phi[b] is a bijective endomorphism, phi[e] = id and
  //! phi[b b'] = phi[b] . phi[b'].
  Verdict verify_action(GroupAction const& act);

  //! The trivial action of q on k.
  GroupAction trivial_action(AlgebraPtr const& k, AlgebraPtr const& q);

  //! Parses |q| lines, each a permutation of k's carrier written as
  //! space- or comma-separated naturals. Blank lines and '#' comments are
  //! skipped.
  GroupAction parse_action(std::string const& text,
                           AlgebraPtr const&  k,
                           AlgebraPtr const&  q,
                           std::string        name = "action");

  struct SemidirectProduct {
    AlgebraPtr   algebra;
    Homomorphism k_injection;  // a -> (a, e)
    Homomorphism q_injection;  // b -> (e, b)
    Homomorphism projection;   // (a, b) -> b
  };

  //! Carrier K x Q with (a, b) at a |Q| + b and
  //! (a, b)(a', b') = (a phi_b(a'), b b'). Throws PreconditionError if the
  //! action is invalid.
  SemidirectProduct build_semidirect(GroupAction const& act, std::string name = {});

  //! K normal, K meet Q = {e} and KQ = G. Subgroup and normality failures
  //! throw PreconditionError.
  Verdict complement_check(AlgebraPtr const&           g,
                           std::vector<Element> const& k_sub,
                           std::vector<Element> const& q_sub);

  struct SplitExactReport {
    Subalgebra kernel;  // kernel of p with its inclusion
    Verdict    verdict;
  };

  //! Kernel inclusion, surjectivity of p, p s = id, and the unique
  //! factorisation g = (s p(g)) (s p(g^-1) g). Throws PreconditionError if
  //! p s != id or the maps are not homomorphisms of groups.
  SplitExactReport split_exact_check(SplitPoint const& pt);

  //! Conjugation action of the base on the kernel: phi_g(x) = s(g) x s(g)^-1.
  GroupAction point_to_action(SplitPoint const& pt);

  //! The projection and Q-injection of the semidirect product.
  SplitPoint action_to_point(GroupAction const& act);

  struct PointIso {
    SemidirectProduct target;
    Homomorphism      u;  // A -> K x| B, x -> (x (s p x)^-1, p x)
    Verdict           verdict;
  };

  PointIso point_roundtrip_iso(SplitPoint const& pt);

  //! Pointed theory data: a closed term zero and binary terms plus, minus
  //! satisfying x+0 = x, 0+x = x, (x+y)-y = x, (x-y)+y = x.
  struct OmegaLoopSpec {
    std::string name;
    TheoryPtr   theory;
    Term        zero;
    Term        plus;
    Term        minus;
  };

  //! Runs the four axioms on \p alg; detail names the first failure.
  Verdict verify_omega_loop(OmegaLoopSpec const& spec, FiniteAlgebra const& alg);

  struct Reconstruction {
    std::vector<Element> kernel;  // X, in carrier order of A
    TopAlgebra           product;  // X x B with transported operations
    std::vector<Element> zeta;     // X x B -> A
    std::vector<Element> chi;      // A -> X x B
    std::vector<std::pair<std::string, Verdict>> checks;

    bool holds() const;
  };

  //! Rebuilds the point on X x B by transport along zeta / chi and checks
  //! the explicit operation formula and the product topology.
  Reconstruction reconstruct_omega_loop_point(OmegaLoopSpec const& spec, SplitPoint const& pt);

}  // namespace ualg
