#include <doctest.h>

#include "support.hpp"
#include "ualg/group.hpp"

using namespace ualg;
using ualg::test::alg;
using ualg::test::corpus;

TEST_CASE("the registry holds the standard theories") {
  auto grp = corpus().theory("Grp");
  CHECK(grp->axioms.size() == 5);
  CHECK(grp->signature.size() == 3);
  CHECK(corpus().theory("Mon")->axioms.size() == 3);
  CHECK(corpus().theory("Loop")->axioms.size() == 4);
  CHECK(corpus().theory("Set")->signature.empty());
  CHECK_THROWS_AS(corpus().theory("Ring"), DanglingReferenceError);
}

TEST_CASE("named models") {
  for (std::size_t n = 1; n <= 8; ++n) {
    auto z = alg("Z" + std::to_string(n));
    GroupView g(z);
    CHECK(g.order() == n);
    CHECK(g.is_abelian());
    CHECK(g.element_order(1 % n) == n);
  }
  GroupView s3(alg("S3"));
  CHECK(s3.order() == 6);
  CHECK(s3.center() == std::vector<Element>{0});
  CHECK(alg("M2")->theory()->name == "Mon");
  CHECK_FALSE(GroupView::is_group(alg("M2")));

  // L5 is a loop but not a group: addition is not associative.
  auto l5  = alg("L5");
  auto add = l5->signature().index_of("add");
  bool associative = true;
  for (Element x = 0; x < 5; ++x) {
    for (Element y = 0; y < 5; ++y) {
      for (Element z = 0; z < 5; ++z) {
        associative = associative
                      && l5->apply(add, {l5->apply(add, {x, y}), z}) == l5->apply(add, {x, l5->apply(add, {y, z})});
      }
    }
  }
  CHECK_FALSE(associative);
}

TEST_CASE("the invariant sweep passes on every entry") {
  auto items = invariant_sweep(corpus());
  CHECK(items.size() >= 100);
  std::set<std::string> kinds;
  for (auto const& item : items) {
    CAPTURE(item.kind);
    CAPTURE(item.name);
    CHECK(item.verdict.holds);
    kinds.insert(item.kind);
  }
  CHECK(kinds.size() >= 8);
}

TEST_CASE("entries of every kind are reachable by name") {
  CHECK(corpus().hom("Z4_mod2").map == std::vector<Element>{0, 1, 0, 1});
  CHECK(corpus().topology("Z4_coset").on == alg("Z4"));
  CHECK(corpus().point("S3pt").p.name == "S3_sign");
  CHECK(corpus().action("inversion").q == alg("Z2"));
  CHECK(corpus().loop_spec("Loop").theory->name == "Loop");
  CHECK(corpus().protomodular.contains("Grp"));
  CHECK(corpus().maltsev.contains("Loop"));
  CHECK_THROWS_AS(corpus().action("nope"), DanglingReferenceError);
  CHECK_THROWS_AS(corpus().point("nope"), DanglingReferenceError);
}

TEST_CASE("certified topological algebras") {
  auto        tops     = corpus().top_algebras();
  std::size_t expected = 0;
  for (auto const& t : corpus().topologies()) {
    expected += !t.on->signature().empty();
  }
  CHECK(tops.size() == expected);
  for (auto const& t : tops) {
    CHECK(t.certified.size() == t.alg->signature().size());
  }
}

TEST_CASE("the group pool") {
  auto pool = corpus().group_pool();
  CHECK(pool.size() >= 14);
  std::set<std::size_t> orders;
  for (auto const& g : pool) {
    CAPTURE(g->name());
    CHECK(GroupView::is_group(g));
    CHECK(g->size() <= 8);
    orders.insert(g->size());
  }
  CHECK(orders == std::set<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8});
  auto d4 = std::ranges::find_if(pool, [](auto const& g) { return g->name() == "D4"; });
  REQUIRE(d4 != pool.end());
  CHECK_FALSE(GroupView(*d4).is_abelian());
}

TEST_CASE("user files extend a copy of the registry") {
  Registry reg = corpus();
  auto     w   = extend_corpus(reg, "hom Z4_neg : Z4 -> Z4 = [0,3,2,1];\n"
                                    "theory P { op c/0; op f/1; axiom f(c) = c; }\n");
  CHECK(w.empty());
  CHECK(check_hom(reg.hom("Z4_neg")).holds);
  CHECK_THROWS_AS(corpus().hom("Z4_neg"), DanglingReferenceError);
  CHECK_THROWS_AS(extend_corpus(reg, "algebra Z2 : Grp { carrier = 1; e = 0; inv = [0]; mul = [[0]]; }"),
                  DuplicateError);
  CHECK_THROWS_AS(extend_corpus(reg, "hom h : Z4 -> Z10 = [0,0,0,0];"), DanglingReferenceError);
  auto w2 = extend_corpus(reg, "theory Q { op x/0; op g/1; axiom g(x) = x; }");
  CHECK(w2.size() == 2);
}

TEST_CASE("built-in files load in a fixed order") {
  auto files = builtin_corpus_files();
  REQUIRE(files.size() == 5);
  CHECK(files[0].name == "theories.ua");
  for (auto const& f : files) {
    CHECK_FALSE(f.text.empty());
  }
}
