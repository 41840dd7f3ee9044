#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/verdict.hpp"

namespace ualg {

  //! A subset of a finite carrier, one bit per point.
  using PointSet = boost::dynamic_bitset<>;

  PointSet             make_set(std::size_t n, std::span<Element const> members);
  std::vector<Element> members(PointSet const& s);
  //! "{0,2,3}"
  std::string          format_set(PointSet const& s);

  //! A topology on {0..n-1}.
  //!
  //! Finite topologies are determined by the smallest open neighbourhood U_x
  //! of each point; every open set is a union of these. Storing the U_x keeps
  //! products of many factors tractable, where listing every open would not
  //! be. opens() enumerates the full lattice on demand.
  class FiniteTopology {
   public:
    //! Throws ShapeError unless x in U_x and y in U_x implies U_y in U_x.
    static FiniteTopology from_minimal_opens(std::vector<PointSet> minimal);
    static FiniteTopology discrete(std::size_t n);
    static FiniteTopology indiscrete(std::size_t n);

    std::size_t size() const noexcept {
      return _minimal.size();
    }
    PointSet const& minimal_open(Element x) const {
      return _minimal[x];
    }
    std::vector<PointSet> const& minimal_opens() const noexcept {
      return _minimal;
    }

    PointSet empty_set() const {
      return PointSet(size());
    }
    PointSet full_set() const {
      return ~PointSet(size());
    }

    bool is_open(PointSet const& s) const;
    bool is_closed(PointSet const& s) const {
      return is_open(~s);
    }
    //! Smallest open set containing \p s.
    PointSet open_hull(PointSet const& s) const;
    PointSet interior(PointSet const& s) const;
    //! Complement of the union of the opens disjoint from \p s.
    PointSet closure(PointSet const& s) const;

    //! Every open set, sorted; throws BudgetExceededError past \p limit.
    std::vector<PointSet> opens(std::size_t limit = 1u << 16) const;

    //! The distinct U_x, which form the coarsest base.
    std::vector<PointSet> base() const;

    //! Checks that the opens contain the empty and full sets and are closed
    //! under pairwise union and intersection, by enumeration.
    Verdict verify_closure_invariants(std::size_t limit = 1u << 12) const;

    friend bool operator==(FiniteTopology const&, FiniteTopology const&)
        = default;

   private:
    explicit FiniteTopology(std::vector<PointSet> minimal)
        : _minimal(std::move(minimal)) {}

    std::vector<PointSet> _minimal;
  };

  using TopologyPtr = std::shared_ptr<FiniteTopology const>;

  //! Least topology on n points containing \p generators.
  FiniteTopology close_to_topology(std::size_t n,
                                   std::span<PointSet const> generators);

  //! A candidate continuous map; continuity is checked, not assumed.
  struct ContinuousMap {
    TopologyPtr          dom;
    TopologyPtr          cod;
    std::vector<Element> map;
  };

  //! A verdict whose witness is a set of points.
  struct SetVerdict {
    bool                    holds = true;
    std::optional<PointSet> witness;

    explicit operator bool() const noexcept {
      return holds;
    }
  };

  PointSet preimage(ContinuousMap const& f, PointSet const& s);
  PointSet image(ContinuousMap const& f, PointSet const& s);

  //! Witness: the first open of the codomain (by point) whose preimage is
  //! not open.
  SetVerdict is_continuous(ContinuousMap const& f);

  //! Row-major pairing: (i, j) is point i * |b| + j.
  FiniteTopology product_topology(FiniteTopology const& a,
                                  FiniteTopology const& b);

  //! k-fold product built left to right, matching the algebra table layout.
  FiniteTopology power_topology(FiniteTopology const& a, std::size_t k);

  //! Induced topology on \p subset, re-indexed densely in carrier order.
  FiniteTopology subspace_topology(FiniteTopology const&    a,
                                   std::span<Element const> subset);

  //! Finest topology on {0..m-1} making \p map continuous. Throws
  //! PreconditionError if \p map is not onto.
  FiniteTopology quotient_topology(FiniteTopology const&    a,
                                   std::span<Element const> map,
                                   std::size_t              m);

  //! Witness: an open set of the domain with non-open image.
  SetVerdict is_open_map(ContinuousMap const& f);

  //! Witness when surjective: a non-open set with open preimage. A
  //! non-surjective map fails with no witness.
  SetVerdict is_quotient_map(ContinuousMap const& f);

  bool is_surjective(ContinuousMap const& f);
  bool is_homeomorphism(ContinuousMap const& f);

  struct SeparationFlags {
    bool t1        = false;
    bool hausdorff = false;
    bool regular   = false;
  };

  //! Regularity here is point/closed-set separation without requiring T1.
  SeparationFlags separation_report(FiniteTopology const& a);

  //! Data of the counterexample showing that quotient maps of spaces are not
  //! stable under pullback.
  struct TopNotRegularReport {
    FiniteTopology       a, b, c;
    std::vector<Element> f, g;  // A -> C, B -> C
    std::vector<std::pair<Element, Element>> pullback;  // pairs (s, t)
    FiniteTopology                           pullback_topology;
    bool                                     f_is_quotient = false;
    bool                                     pi2_is_quotient = true;
    std::optional<PointSet>                  pi2_witness;  // subset of B
    PointSet                                 witness_preimage;  // in pullback
  };

  TopNotRegularReport top_not_regular_counterexample();

}  // namespace ualg
