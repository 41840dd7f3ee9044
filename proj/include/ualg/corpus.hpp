#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ualg/semidirect.hpp"
#include "ualg/syntax.hpp"
#include "ualg/topalg.hpp"
#include "ualg/verdict.hpp"
#include "ualg/witness.hpp"

namespace ualg {

  struct CorpusFile {
    std::string_view name;
    std::string_view text;
  };

  //! The DSL files compiled into the library, in load order.
  std::span<CorpusFile const> builtin_corpus_files();

  //! Named models plus the entries that have no DSL form: actions, witnesses
  //! and Omega-loop specs. Immutable once loaded.
  struct Registry {
    Scope                                      scope;
    std::map<std::string, GroupAction>         actions;
    std::map<std::string, OmegaLoopSpec>       loop_specs;    // by spec name
    std::map<std::string, ProtomodularWitness> protomodular;  // by theory name
    std::map<std::string, MaltsevWitness>      maltsev;       // by theory name

    TheoryPtr           theory(std::string_view name) const;
    AlgebraPtr          algebra(std::string_view name) const;
    TopologyDecl const& topology(std::string_view name) const;
    Homomorphism const& hom(std::string_view name) const;
    SplitPoint const&   point(std::string_view name) const;
    GroupAction const&  action(std::string_view name) const;
    OmegaLoopSpec const& loop_spec(std::string_view name) const;

    std::vector<TheoryPtr>    theories() const;
    std::vector<AlgebraPtr>   algebras() const;
    std::vector<TopologyDecl> topologies() const;
    std::vector<Homomorphism> homs() const;
    std::vector<SplitPoint>   points() const;

    //! Models of the theory named Grp that satisfy the group laws.
    std::vector<AlgebraPtr> groups() const;
    //! Declared topologies on algebras with operations, certified.
    std::vector<TopAlgebra> top_algebras() const;
    //! Groups of order at most 8: the corpus groups plus products,
    //! semidirect products and quotients built from them.
    std::vector<AlgebraPtr> group_pool() const;
  };

  struct SweepItem {
    std::string kind;
    std::string name;
    Verdict     verdict;
  };

  //! Each entry's own invariants: axioms, topologies, certification,
  //! homomorphism laws, points, actions, witnesses and loop specs.
  std::vector<SweepItem> invariant_sweep(Registry const& reg);

  //! Parses the built-in files and registers the C++-side entries. Throws
  //! if the invariant sweep finds a failure.
  Registry load_builtin_corpus();

  //! Adds a user DSL file on top of \p reg; returns its parse warnings.
  std::vector<Warning> extend_corpus(Registry& reg, std::string_view text);

}  // namespace ualg
