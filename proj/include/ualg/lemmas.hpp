#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ualg/algebra.hpp"
#include "ualg/congruence.hpp"
#include "ualg/point.hpp"
#include "ualg/verdict.hpp"

namespace ualg {

  //! Lemma checks separate a violated hypothesis from a failed conclusion.
  enum class Outcome { holds, fails, precondition };

  std::string_view to_string(Outcome o);

  struct LemmaVerdict {
    Outcome     outcome = Outcome::holds;
    std::string detail;

    explicit operator bool() const noexcept {
      return outcome == Outcome::holds;
    }
  };

  //! K[f] -k-> X -f-> Y over K[f'] -k2-> X' -f2-> Y' with verticals a, b, c.
  //! The optional sections turn the rows into points.
  struct LadderDiagram {
    Homomorphism                k, f;
    Homomorphism                k2, f2;
    Homomorphism                a, b, c;
    std::optional<Homomorphism> s, s2;
  };

  //! Homomorphisms, genuine kernels, commuting squares (and the section
  //! square b s = s2 c when sections are present).
  Verdict verify_ladder(LadderDiagram const& d);

  //! Sections present, a and c bijective => b bijective.
  LemmaVerdict split_five_lemma_check(LadderDiagram const& d);
  //! f, f2 surjective, a and c bijective => b bijective.
  LemmaVerdict five_lemma_check(LadderDiagram const& d);

  //! The ladder of a point against its semidirect form, with b the
  //! round-trip isomorphism u and a, c identities on the kernel and base.
  LadderDiagram roundtrip_ladder(SplitPoint const& pt);

  //! obj[i][j]; row[i][j] : obj[i][j] -> obj[i][j+1];
  //! col[i][j] : obj[i][j] -> obj[i+1][j].
  struct ThreeByThree {
    std::array<std::array<AlgebraPtr, 3>, 3>   obj;
    std::array<std::array<Homomorphism, 2>, 3> row;
    std::array<std::array<Homomorphism, 3>, 2> col;
  };

  Verdict verify_grid(ThreeByThree const& g);

  //! m injective, e surjective, image m = e^-1(identity). Groups only.
  Verdict exact_check(Homomorphism const& m, Homomorphism const& e);

  //! Rows 2, 3 and all columns exact => row 1 exact.
  LemmaVerdict nine_lemma_special_check(ThreeByThree const& g);

  //! For H <= K normal subgroups of G: rows H -> K -> ker phi,
  //! H -> G -> G/H, 0 -> G/K = G/K; phi : G/H -> G/K.
  ThreeByThree third_isomorphism_grid(AlgebraPtr const&           g,
                                      std::vector<Element> const& k,
                                      std::vector<Element> const& h);

  //! (G/H)/(K/H) is isomorphic to G/K on a third_isomorphism_grid.
  Verdict third_isomorphism_check(ThreeByThree const& grid);

  //! R[f] -> X -f-> Y over R[f2] -> X' -f2-> Y' with verticals
  //! gamma = g x g, g, h.
  struct BarrKockInstance {
    Homomorphism f, f2, g, h;
  };

  //! Square 2 a pullback and f surjective => square 1 a pullback; g
  //! injective => h injective.
  LemmaVerdict barr_kock_instance_check(BarrKockInstance const& inst);

  struct EpiFlags {
    bool                        split      = false;
    bool                        surjective = false;
    bool                        injective  = false;
    std::optional<Homomorphism> section;  // first in enumeration order
    Verdict                     verdict;  // split => surjective, iso closure
  };

  EpiFlags epi_classify(Homomorphism const& f, std::size_t budget = default_hom_budget);

  //! Identity classes of the congruences, i.e. the normal subgroups.
  std::vector<std::vector<Element>> normal_subgroups(AlgebraPtr const& g);

  //! G/N with its projection.
  Quotient quotient_by_normal(AlgebraPtr const&           g,
                              std::vector<Element> const& n,
                              std::string                 name = {});

  constexpr std::size_t default_instance_count = 200;

  std::vector<LadderDiagram> generate_five_lemma_instances(std::vector<AlgebraPtr> const& pool,
                                                           std::uint64_t                  seed,
                                                           std::size_t                    count,
                                                           bool                           split);
  std::vector<ThreeByThree> generate_nine_lemma_instances(std::vector<AlgebraPtr> const& pool,
                                                          std::uint64_t                  seed,
                                                          std::size_t                    count);
  std::vector<BarrKockInstance> generate_barr_kock_instances(std::vector<AlgebraPtr> const& pool,
                                                             std::uint64_t                  seed,
                                                             std::size_t                    count);

  struct LemmaRun {
    std::string              lemma;
    std::uint64_t            seed  = 0;
    std::size_t              count = 0;
    std::size_t              passed = 0;
    std::size_t              failed = 0;
    std::size_t              skipped = 0;  // precondition outcomes
    std::vector<std::string> failures;

    bool holds() const {
      return failed == 0 && skipped == 0 && passed == count;
    }
  };

  //! \p lemma is one of five, split-five, nine, barr-kock; others throw
  //! PreconditionError.
  LemmaRun run_lemma(std::string_view               lemma,
                     std::vector<AlgebraPtr> const& pool,
                     std::uint64_t                  seed,
                     std::size_t                    count = default_instance_count);

}  // namespace ualg
