#pragma once

#include <memory>
#include <string>

#include "ualg/algebra.hpp"
#include "ualg/topology.hpp"

namespace ualg {

  //! A split epimorphism p : A -> B with a chosen section s : B -> A.
  //! Topologies on A and B are optional.
  struct SplitPoint {
    std::string  name;
    Homomorphism p;
    Homomorphism s;
    TopologyPtr  top_a;
    TopologyPtr  top_b;
    // Declared names of the topologies, for printing.
    std::string top_a_name;
    std::string top_b_name;

    AlgebraPtr const& total() const {
      return p.dom;
    }
    AlgebraPtr const& base() const {
      return p.cod;
    }
  };

  using PointPtr = std::shared_ptr<SplitPoint const>;

}  // namespace ualg
