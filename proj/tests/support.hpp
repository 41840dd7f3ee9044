#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ualg/corpus.hpp"

namespace ualg::test {

  inline Registry const& corpus() {
    static Registry const reg = load_builtin_corpus();
    return reg;
  }

  inline AlgebraPtr alg(std::string_view name) {
    return corpus().algebra(name);
  }

  inline Homomorphism hom(std::string_view name) {
    return corpus().hom(name);
  }

  inline TopologyPtr top(std::string_view name) {
    return corpus().topology(name).topology;
  }

  //! The built-in theories, so test models can be declared in the DSL.
  inline Scope theory_scope() {
    Scope s;
    parse_source(builtin_corpus_files()[0].text, s);
    return s;
  }

  //! Declares \p text on top of the theories and returns its last algebra.
  inline AlgebraPtr algebra_from(std::string_view text) {
    auto s = theory_scope();
    auto r = parse_source(text, s);
    for (auto it = r.declarations.rbegin(); it != r.declarations.rend(); ++it) {
      if (auto const* a = std::get_if<AlgebraPtr>(&*it)) {
        return *a;
      }
    }
    return nullptr;
  }

  inline std::vector<Element> all_points(std::size_t n) {
    std::vector<Element> v(n);
    for (Element i = 0; i < n; ++i) {
      v[i] = i;
    }
    return v;
  }

}  // namespace ualg::test
