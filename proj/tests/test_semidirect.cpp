#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "ualg/group.hpp"
#include "ualg/semidirect.hpp"

using namespace ualg;
using ualg::test::alg;
using ualg::test::corpus;
using ualg::test::top;

namespace {

  // Oracle: every action of Z2 on k, i.e. every involutive automorphism,
  // found by filtering all permutations.
  std::vector<GroupAction> z2_actions(AlgebraPtr const& k) {
    std::vector<GroupAction> out;
    auto                     perm = ualg::test::all_points(k->size());
    auto                     id   = perm;
    do {
      Homomorphism f{"phi", k, k, perm};
      bool         involution = true;
      for (Element x = 0; x < k->size(); ++x) {
        involution = involution && perm[perm[x]] == x;
      }
      if (involution && check_hom(f).holds) {
        out.push_back({"z2-action", k, alg("Z2"), {id, perm}});
      }
    } while (std::ranges::next_permutation(perm).found);
    return out;
  }

  SplitPoint product_point(AlgebraPtr const& k, AlgebraPtr const& q) {
    auto         pr = product(k, q);
    Homomorphism inj{"inj", q, pr.algebra, {}};
    GroupView    kg(k);
    for (Element b = 0; b < q->size(); ++b) {
      inj.map.push_back(kg.identity() * q->size() + b);
    }
    return {"prod", pr.second, inj, nullptr, nullptr, "", ""};
  }

  // The semidirect laws checked straight from the tables.
  void check_semidirect_laws(GroupAction const& act, SemidirectProduct const& sd) {
    GroupView const g(sd.algebra), k(act.k), q(act.q);
    auto const      nq = act.q->size();
    CHECK(is_algebra_of(*sd.algebra).all_hold());
    for (Element a = 0; a < act.k->size(); ++a) {
      for (Element b = 0; b < nq; ++b) {
        auto const ka = sd.k_injection(a), qb = sd.q_injection(b);
        // (1, b)(a, 1)(1, b)^-1 = (phi_b(a), 1)
        CHECK(g.mul(g.mul(qb, ka), g.inv(qb)) == sd.k_injection(act.phi[b][a]));
        // b a = phi_b(a) b
        CHECK(g.mul(qb, ka) == g.mul(sd.k_injection(act.phi[b][a]), qb));
        for (Element a2 = 0; a2 < act.k->size(); ++a2) {
          for (Element b2 = 0; b2 < nq; ++b2) {
            auto const lhs = g.mul(a * nq + b, a2 * nq + b2);
            auto const rhs = k.mul(a, act.phi[b][a2]) * nq + q.mul(b, b2);
            CHECK(lhs == rhs);
          }
        }
      }
    }
    CHECK(check_hom(sd.k_injection).holds);
    CHECK(check_hom(sd.q_injection).holds);
    CHECK(check_hom(sd.projection).holds);
  }

}  // namespace

TEST_CASE("semidirect products") {
  auto const& inv = corpus().action("inversion");
  auto        sd  = build_semidirect(inv);
  CHECK(sd.algebra->size() == 6);
  GroupView g(sd.algebra);
  CHECK_FALSE(g.is_abelian());
  CHECK(g.mul(0 * 2 + 1, 1 * 2 + 0) == 2 * 2 + 1);
  CHECK(find_isomorphism(sd.algebra, alg("S3")).has_value());
  check_semidirect_laws(inv, sd);

  auto triv = build_semidirect(trivial_action(alg("Z3"), alg("Z2")));
  CHECK(triv.algebra->tables() == product(alg("Z3"), alg("Z2")).algebra->tables());

  auto z2z2 = z2_actions(alg("Z2"));
  REQUIRE(z2z2.size() == 1);
  CHECK(find_isomorphism(build_semidirect(z2z2[0]).algebra, alg("Klein")).has_value());

  for (auto const& [name, act] : corpus().actions) {
    CAPTURE(name);
    CHECK(verify_action(act).holds);
    check_semidirect_laws(act, build_semidirect(act));
  }
}

TEST_CASE("every Z2 action builds a group") {
  for (auto name : {"Z3", "Z4", "Klein", "Z5", "Z6", "S3"}) {
    auto acts = z2_actions(alg(name));
    CAPTURE(name);
    REQUIRE_FALSE(acts.empty());
    for (auto const& act : acts) {
      CHECK(verify_action(act).holds);
      check_semidirect_laws(act, build_semidirect(act));
    }
  }
  CHECK(z2_actions(alg("Klein")).size() == 4);
}

TEST_CASE("invalid actions are rejected") {
  auto k = alg("Z3"), q = alg("Z2");
  GroupAction not_hom{"bad", k, q, {{0, 1, 2}, {1, 0, 2}}};
  CHECK_FALSE(verify_action(not_hom).holds);
  CHECK_THROWS_AS(build_semidirect(not_hom), PreconditionError);
  GroupAction moved_identity{"bad", k, q, {{0, 2, 1}, {0, 2, 1}}};
  CHECK_FALSE(verify_action(moved_identity).holds);
  // Z3 acting on Z3 by inversion is not an action: phi_1 phi_1 != phi_2.
  GroupAction not_action{"bad", k, k, {{0, 1, 2}, {0, 2, 1}, {0, 2, 1}}};
  CHECK_FALSE(verify_action(not_action).holds);
}

TEST_CASE("action files") {
  auto act = parse_action("# inversion\n0 1 2\n\n0,2,1\n", alg("Z3"), alg("Z2"));
  CHECK(act.phi == corpus().action("inversion").phi);
  CHECK_THROWS_AS(parse_action("0 1 2\n", alg("Z3"), alg("Z2")), ShapeError);
  CHECK_THROWS_AS(parse_action("0 1 2\n0 1 x\n", alg("Z3"), alg("Z2")), Error);
  CHECK_THROWS_AS(parse_action("0 1 2\n0 1 1\n", alg("Z3"), alg("Z2")), ShapeError);
}

TEST_CASE("complements") {
  auto s3 = alg("S3");
  CHECK(complement_check(s3, {0, 2, 4}, {0, 1}).holds);
  CHECK(complement_check(s3, ualg::test::all_points(6), {0}).holds);
  CHECK_FALSE(complement_check(alg("Z4"), {0, 2}, {0, 2}).holds);
  CHECK_THROWS_AS(complement_check(s3, {0, 1}, {0, 2, 4}), PreconditionError);  // not normal
  CHECK_THROWS_AS(complement_check(s3, {0, 2}, {0, 1}), PreconditionError);     // not a subgroup
}

TEST_CASE("split exact sequences") {
  auto r = split_exact_check(corpus().point("S3pt"));
  CHECK(r.verdict.holds);
  CHECK(r.kernel.algebra->size() == 3);
  CHECK(split_exact_check(product_point(alg("Z3"), alg("Z2"))).verdict.holds);
  for (auto const& pt : corpus().points()) {
    if (pt.total()->theory()->name == "Grp") {
      CHECK(split_exact_check(pt).verdict.holds);
    }
  }
  auto bogus = corpus().point("S3pt");
  bogus.s    = {"s", alg("Z2"), alg("S3"), {0, 2}};
  CHECK_THROWS_AS(split_exact_check(bogus), PreconditionError);
}

TEST_CASE("points and actions correspond") {
  auto phi = point_to_action(corpus().point("S3pt"));
  CHECK(phi.k->size() == 3);
  CHECK(phi.phi[1] == std::vector<Element>{0, 2, 1});
  auto triv = point_to_action(product_point(alg("Z3"), alg("Z2")));
  CHECK(triv.phi[1] == std::vector<Element>{0, 1, 2});
  CHECK(point_to_action(corpus().point("Kleinpt")).phi[1] == std::vector<Element>{0, 1});

  std::vector<GroupAction> acts;
  for (auto const& [name, act] : corpus().actions) {
    acts.push_back(act);
  }
  for (auto name : {"Z4", "Klein", "S3", "Z6"}) {
    for (auto const& a : z2_actions(alg(name))) {
      acts.push_back(a);
    }
  }
  for (auto const& act : acts) {
    auto pt = action_to_point(act);
    CHECK(split_exact_check(pt).verdict.holds);
    auto back = point_to_action(pt);
    CHECK(back.phi == act.phi);
    auto iso = point_roundtrip_iso(pt);
    CHECK(iso.verdict.holds);
  }
}

TEST_CASE("round-trip isomorphisms") {
  auto iso = point_roundtrip_iso(corpus().point("S3pt"));
  CHECK(iso.verdict.holds);
  CHECK(is_bijective(iso.u));
  CHECK(check_hom(iso.u).holds);
  CHECK(find_isomorphism(iso.target.algebra, alg("S3")).has_value());
  auto pp = point_roundtrip_iso(product_point(alg("Z3"), alg("Z2")));
  CHECK(pp.u.map == ualg::test::all_points(6));
  for (auto const& pt : corpus().points()) {
    if (pt.total()->theory()->name != "Grp") {
      continue;
    }
    auto r = point_roundtrip_iso(pt);
    CAPTURE(pt.name);
    CHECK(r.verdict.holds);
    CHECK(is_bijective(r.u));
    // A Pt_B isomorphism: it commutes with both projections and sections.
    CHECK(compose(r.target.projection, r.u).map == pt.p.map);
    CHECK(compose(r.u, pt.s).map == r.target.q_injection.map);
  }
}

TEST_CASE("omega-loop reconstruction") {
  auto const& grp = corpus().loop_spec("Grp");
  auto        d   = reconstruct_omega_loop_point(grp, corpus().point("S3pt_disc"));
  CHECK(d.holds());
  CHECK(d.kernel == std::vector<Element>{0, 2, 4});
  CHECK(*d.product.top == FiniteTopology::discrete(6));
  for (Element x = 0; x < 6; ++x) {
    CHECK(d.chi[d.zeta[x]] == x);
    CHECK(d.zeta[d.chi[x]] == x);
  }

  auto c = reconstruct_omega_loop_point(grp, corpus().point("S3pt_coset"));
  CHECK(c.holds());
  CHECK(*c.product.top == product_topology(FiniteTopology::indiscrete(3), FiniteTopology::discrete(2)));

  auto p = reconstruct_omega_loop_point(grp, corpus().point("Prodpt"));
  CHECK(p.holds());
  CHECK(p.zeta == ualg::test::all_points(6));

  auto l = reconstruct_omega_loop_point(corpus().loop_spec("Loop"), corpus().point("L5pt"));
  CHECK(l.holds());
  CHECK(l.kernel.size() == 5);

  for (auto const& pt : corpus().points()) {
    if (!pt.top_a) {
      continue;
    }
    auto const& spec = corpus().loop_spec(pt.total()->theory()->name);
    CAPTURE(pt.name);
    auto r = reconstruct_omega_loop_point(spec, pt);
    CHECK(r.holds());
    CHECK(r.checks.size() >= 4);
  }
}

TEST_CASE("omega-loop axioms") {
  auto const& grp = corpus().loop_spec("Grp");
  for (auto const& g : corpus().groups()) {
    CHECK(verify_omega_loop(grp, *g).holds);
  }
  CHECK(verify_omega_loop(corpus().loop_spec("Loop"), *alg("L5")).holds);
  auto m2g = ualg::test::algebra_from(
      "algebra M2g : Grp { carrier = 2; e = 0; inv = [0,1]; mul = [[0,1],[1,1]]; }");
  auto v = verify_omega_loop(grp, *m2g);
  CHECK_FALSE(v.holds);
  CHECK_FALSE(v.detail.empty());
}
