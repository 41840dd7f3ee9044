#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/topology.hpp"
#include "ualg/verdict.hpp"
#include "ualg/witness.hpp"

namespace ualg {

  //! A finite algebra with a topology on the same carrier.
  struct TopAlgebra {
    AlgebraPtr               alg;
    TopologyPtr              top;
    std::vector<std::string> certified;  // symbols found continuous
  };

  struct CertifyResult {
    std::optional<TopAlgebra> algebra;  // set iff every operation is continuous
    std::string               failed_symbol;
    std::optional<PointSet>   failed_open;  // open of the carrier
  };

  //! Checks each arity-k operation is continuous from the k-fold product
  //! topology. Throws ShapeError if the carriers differ.
  CertifyResult certify(AlgebraPtr const& alg, TopologyPtr const& top);

  //! Like certify, but throws PreconditionError on failure.
  TopAlgebra certified(AlgebraPtr const& alg, TopologyPtr const& top);

  //! Left translations x -> b a^-1 x are homeomorphisms. Throws
  //! PreconditionError if the theory is not a group theory.
  Verdict homogeneity_check(TopAlgebra const& t);

  //! Separation checks that rely on a protomodular witness throw
  //! PreconditionError("witness invalid") when it fails on t.alg.

  //! {e_i} all closed <=> Hausdorff.
  Verdict hausdorff_iff_constants_closed(TopAlgebra const& t, ProtomodularWitness const& w);

  Verdict regularity_check(TopAlgebra const& t, ProtomodularWitness const& w);

  //! A subalgebra that is open is also closed. PreconditionError if
  //! \p sub is not an open subalgebra.
  Verdict open_subalgebra_closed(TopAlgebra const&          t,
                                 std::vector<Element> const& sub,
                                 ProtomodularWitness const&  w);

  //! The closure of a subalgebra is a subalgebra.
  Verdict closure_is_subalgebra(TopAlgebra const& t, std::vector<Element> const& sub);

  //! The sets meet_i alpha_i(-, a)^-1(U_i), U_i open around e_i, form a base
  //! of open neighbourhoods at a.
  Verdict neighborhood_base_check(TopAlgebra const&          t,
                                  ProtomodularWitness const& w,
                                  Element                    a);

  //! iota_a : x -> (alpha_i(x, a))_i and theta_a : y -> theta(y, a) are
  //! continuous, theta_a . iota_a = id and iota_a(a) = (e_1, ..., e_n).
  Verdict iota_theta_check(TopAlgebra const& t, ProtomodularWitness const& w, Element a);

  //! A homomorphism between topological algebras.
  struct TopHom {
    TopAlgebra   dom;
    TopAlgebra   cod;
    Homomorphism hom;
  };

  ContinuousMap underlying_map(TopHom const& f);

  struct RegularEpiReport {
    bool    surjective       = false;
    bool    quotient_topology = false;  // cod carries the quotient topology
    bool    open             = false;
    bool    regular_epi      = false;  // surjective and quotient topology
    bool    open_surjection  = false;
    Verdict verdict;                    // the two sides agree
  };

  //! Regular epis computed as coequalizers of kernel pairs (surjective with
  //! quotient topology) compared to open surjections. Requires a Maltsev
  //! witness valid on the domain and a continuous homomorphism.
  RegularEpiReport regular_epi_iff_open_surjection(TopHom const& f, MaltsevWitness const& w);

  struct PullbackReport {
    TopAlgebra                               pullback;
    std::vector<std::pair<Element, Element>> pairs;  // (s, t) with f(s) = g(t)
    Homomorphism                             projection;  // pullback -> g.dom
    Verdict                                  verdict;     // projection regular epi
  };

  //! Pulls the regular epi \p f back along \p g (shared codomain).
  PullbackReport pullback_stability_check(TopHom const&         f,
                                          TopHom const&         g,
                                          MaltsevWitness const& w);

}  // namespace ualg
