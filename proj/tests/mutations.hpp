#pragma once

#include <string>
#include <vector>

#include "ualg/corpus.hpp"

namespace ualg::test {

  //! The whole built-in corpus as one text.
  inline std::string corpus_text() {
    std::string all;
    for (auto const& f : builtin_corpus_files()) {
      all += std::string(f.text) + "\n";
    }
    return all;
  }

  //! Replaces the first occurrence of \p from in the corpus text by \p to;
  //! parsing the result must throw an error of class \p kind.
  struct Mutation {
    std::string from, to;
    std::string kind;
  };

  inline std::vector<Mutation> corpus_mutations() {
    return {
        {"axiom mul(x, e) = x;", "axiom mul(x) = x;", "arity-mismatch"},
        {"axiom mul(x, e) = x;", "axiom mul(x, e, e) = x;", "arity-mismatch"},
        {"axiom mul(x, e) = x;", "axiom mul(x, one(e)) = x;", "unknown-symbol"},
        {"axiom add(x, zero) = x;", "axiom plus(x, zero) = x;", "unknown-symbol"},
        {"algebra Z1 : Grp", "algebra Z1 : Group", "dangling-reference"},
        {"hom Z4_mod2 : Z4 -> Z2", "hom Z4_mod2 : Z4 -> Z9", "dangling-reference"},
        {"point S3pt { p = S3_sign;", "point S3pt { p = S3;", "dangling-reference"},
        {"topology D1 on P1", "topology D1 on Q1", "dangling-reference"},
        {"algebra Z2 : Grp { carrier = 2; e = 0; inv = [0,1]; mul = [[0,1],[1,0]]; }",
         "algebra Z2 : Grp { carrier = 2; e = 0; inv = [0,1]; mul = [[0,1],[1]]; }", "shape"},
        {"algebra Z2 : Grp { carrier = 2; e = 0; inv = [0,1]; mul = [[0,1],[1,0]]; }",
         "algebra Z2 : Grp { carrier = 2; e = 0; inv = [0,1]; mul = [[0,1],[1,2]]; }", "shape"},
        {"algebra Z2 : Grp { carrier = 2; e = 0; inv = [0,1]; mul = [[0,1],[1,0]]; }",
         "algebra Z2 : Grp { carrier = 2; e = 0; mul = [[0,1],[1,0]]; }", "shape"},
        {"algebra Z2 : Grp { carrier = 2; e = 0; inv = [0,1]; mul = [[0,1],[1,0]]; }",
         "algebra Z2 : Grp { carrier = 2; e = [0]; inv = [0,1]; mul = [[0,1],[1,0]]; }", "shape"},
        {"algebra Z2 : Grp { carrier = 2; e = 0; inv = [0,1]; mul = [[0,1],[1,0]]; }",
         "algebra Z2 : Grp { carrier = 2; e = 0; inv = [0,1]; mul = [0,1]; }", "shape"},
        {"algebra P1 : Set { carrier = 1; }", "algebra P1 : Set { carrier = 0; }", "shape"},
        {"hom Z4_mod2 : Z4 -> Z2 = [0,1,0,1];", "hom Z4_mod2 : Z4 -> Z2 = [0,1,0];", "shape"},
        {"hom Z4_mod2 : Z4 -> Z2 = [0,1,0,1];", "hom Z4_mod2 : Z4 -> Z2 = [0,1,0,2];", "shape"},
        {"topology Sierpinski on P2 { open {1}; }", "topology Sierpinski on P2 { open {2}; }", "shape"},
        {"  op inv/1;\n  op mul/2;\n  axiom mul(x, mul(y, z))", "  op inv/1;\n  op inv/2;\n  axiom mul(x, mul(y, z))",
         "duplicate"},
        {"algebra Z3 : Grp", "algebra Z2 : Grp", "duplicate"},
        {"algebra Z2 : Grp { carrier = 2; e = 0; inv = [0,1];", "algebra Z2 : Grp { carrier = 2; e = 0; e = 0; inv = [0,1];",
         "duplicate"},
        {"algebra Z2 : Grp { carrier = 2; e = 0;", "algebra Z2 : Grp { carrier = 2; e = 0; one = 0;", "unknown-symbol"},
        {"hom Z4_mod2 : Z4 -> Z2 = [0,1,0,1];", "hom Z4_mod2 : Z4 -> Z2 = [0,1,0,1]", "syntax"},
        {"theory Set { }", "theory Set { $ }", "syntax"},
        {"  op e/0;\n  op inv/1;", "  axiom e = e;\n  op inv/1;", "syntax"},
    };
  }

}  // namespace ualg::test
