#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/error.hpp"

namespace ualg::detail {

  // A term with symbols resolved to op indices, flattened in post-order so
  // that repeated evaluation over many environments needs no recursion.
  class CompiledTerm {
   public:
    CompiledTerm(Signature const& sig, Term const& t) {
      validate_term(sig, t);
      flatten(sig, t);
    }

    std::size_t var_bound() const noexcept {
      return _var_bound;
    }

    Element eval(FiniteAlgebra const& alg, std::span<Element const> env) const {
      std::vector<Element> scratch(_nodes.size());
      std::vector<Element> args;
      for (std::size_t i = 0; i < _nodes.size(); ++i) {
        auto const& node = _nodes[i];
        if (node.is_var) {
          if (node.var >= env.size()) {
            throw PreconditionError("environment does not cover variable "
                                    + std::to_string(node.var));
          }
          scratch[i] = env[node.var];
        } else {
          args.clear();
          for (auto c : node.children) {
            args.push_back(scratch[c]);
          }
          scratch[i] = alg.apply(node.op, args);
        }
      }
      return scratch.back();
    }

   private:
    struct Node {
      bool                     is_var = false;
      std::size_t              var    = 0;
      std::size_t              op     = 0;
      std::vector<std::size_t> children;
    };

    std::size_t flatten(Signature const& sig, Term const& t) {
      Node node;
      if (t.is_var()) {
        node.is_var = true;
        node.var    = t.var;
        _var_bound  = std::max(_var_bound, t.var + 1);
      } else {
        node.op = *sig.find(t.symbol);
        for (auto const& a : t.args) {
          node.children.push_back(flatten(sig, a));
        }
      }
      _nodes.push_back(std::move(node));
      return _nodes.size() - 1;
    }

    std::vector<Node> _nodes;
    std::size_t       _var_bound = 0;
  };

}  // namespace ualg::detail
