#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "ualg/topology.hpp"

using namespace ualg;
using ualg::test::top;

namespace {

  using Opens = std::set<PointSet>;

  PointSet set_of(std::size_t n, std::vector<Element> const& xs) {
    return make_set(n, xs);
  }

  // Oracle: close {empty, full} + generators under pairwise union and
  // intersection until nothing changes.
  Opens naive_topology(std::size_t n, std::vector<PointSet> const& gens) {
    Opens opens(gens.begin(), gens.end());
    opens.insert(PointSet(n));
    opens.insert(~PointSet(n));
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<PointSet> cur(opens.begin(), opens.end());
      for (auto const& a : cur) {
        for (auto const& b : cur) {
          grew = opens.insert(a | b).second || grew;
          grew = opens.insert(a & b).second || grew;
        }
      }
    }
    return opens;
  }

  Opens as_set(std::vector<PointSet> const& v) {
    return {v.begin(), v.end()};
  }

  std::vector<PointSet> random_generators(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> count(0, 4);
    std::uniform_int_distribution<unsigned>    bit(0, 2);
    std::vector<PointSet>                      gens;
    for (std::size_t i = count(rng); i > 0; --i) {
      PointSet s(n);
      for (std::size_t x = 0; x < n; ++x) {
        s[x] = bit(rng) == 0;
      }
      gens.push_back(s);
    }
    return gens;
  }

  // Small random spaces, reproducible.
  std::vector<FiniteTopology> sample_spaces(unsigned seed, std::size_t count) {
    std::mt19937                               rng(seed);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    std::vector<FiniteTopology>                out;
    for (std::size_t i = 0; i < count; ++i) {
      auto n = size(rng);
      out.push_back(close_to_topology(n, random_generators(rng, n)));
    }
    return out;
  }

  std::vector<PointSet> all_subsets(std::size_t n) {
    std::vector<PointSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      out.emplace_back(n, mask);
    }
    return out;
  }

  bool naive_continuous(ContinuousMap const& f) {
    for (auto const& v : f.cod->opens()) {
      PointSet pre(f.dom->size());
      for (Element x = 0; x < f.dom->size(); ++x) {
        pre[x] = v[f.map[x]];
      }
      if (!f.dom->is_open(pre)) {
        return false;
      }
    }
    return true;
  }

  TopologyPtr share(FiniteTopology t) {
    return std::make_shared<FiniteTopology const>(std::move(t));
  }

}  // namespace

TEST_CASE("generated topologies") {
  auto s = close_to_topology(2, std::vector{set_of(2, {0})});
  CHECK(as_set(s.opens()) == Opens{PointSet(2), set_of(2, {0}), set_of(2, {0, 1})});
  CHECK(close_to_topology(3, std::vector<PointSet>{}) == FiniteTopology::indiscrete(3));
  CHECK(close_to_topology(2, std::vector{set_of(2, {0}), set_of(2, {1})}) == FiniteTopology::discrete(2));
}

TEST_CASE("generated topologies agree with the naive closure") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n    = 1 + trial % 5;
    auto        gens = random_generators(rng, n);
    auto        t    = close_to_topology(n, gens);
    auto        want = naive_topology(n, gens);
    CHECK(as_set(t.opens()) == want);
    CHECK(t.verify_closure_invariants().holds);
    for (auto const& s : all_subsets(n)) {
      CHECK(t.is_open(s) == want.contains(s));
    }
  }
}

TEST_CASE("closure, interior and hull agree with their definitions") {
  for (auto const& t : sample_spaces(11, 60)) {
    auto const n     = t.size();
    auto const opens = t.opens();
    for (auto const& s : all_subsets(n)) {
      auto closure = ~PointSet(n), interior = PointSet(n), hull = ~PointSet(n);
      for (auto const& u : opens) {
        if (s.is_subset_of(~u)) {
          closure &= ~u;
        }
        if (u.is_subset_of(s)) {
          interior |= u;
        }
        if (s.is_subset_of(u)) {
          hull &= u;
        }
      }
      CHECK(t.closure(s) == closure);
      CHECK(t.interior(s) == interior);
      CHECK(t.open_hull(s) == hull);
      CHECK(t.is_closed(s) == (closure == s));
    }
  }
}

TEST_CASE("minimal opens are validated") {
  CHECK_THROWS_AS(FiniteTopology::from_minimal_opens({set_of(2, {1}), set_of(2, {1})}), ShapeError);
  CHECK_THROWS_AS(FiniteTopology::from_minimal_opens({set_of(3, {0, 1}), set_of(3, {1, 2}), set_of(3, {2})}),
                  ShapeError);
  auto t = FiniteTopology::from_minimal_opens({set_of(2, {0, 1}), set_of(2, {1})});
  CHECK(t == *top("Sierpinski"));
  CHECK(t.base().size() == 2);
}

TEST_CASE("continuity") {
  for (auto name : {"D3", "I3", "Sierpinski", "TA"}) {
    auto t = top(name);
    CHECK(is_continuous({t, t, ualg::test::all_points(t->size())}));
  }
  auto d2 = top("D2"), i2 = top("I2"), s = top("Sierpinski");
  for (auto const& m : {std::vector<Element>{0, 1}, {1, 0}, {0, 0}, {1, 1}}) {
    CHECK(is_continuous({d2, s, m}));
  }
  auto v = is_continuous({i2, s, {0, 1}});
  CHECK_FALSE(v.holds);
  CHECK(*v.witness == set_of(2, {1}));
  // Brute force over all maps between sample spaces.
  auto spaces = sample_spaces(3, 12);
  for (auto const& a : spaces) {
    for (auto const& b : spaces) {
      auto pa = share(a), pb = share(b);
      for_each_tuple(b.size(), a.size(), [&](std::span<Element const> m) {
        ContinuousMap f{pa, pb, {m.begin(), m.end()}};
        CHECK(is_continuous(f).holds == naive_continuous(f));
        return true;
      });
    }
  }
}

TEST_CASE("products") {
  CHECK(product_topology(*top("D2"), *top("D3")) == FiniteTopology::discrete(6));
  auto ix = product_topology(*top("I2"), *top("Sierpinski"));
  CHECK(as_set(ix.opens()) == Opens{PointSet(4), set_of(4, {1, 3}), ~PointSet(4)});

  // Sierpinski squared: opens are the up-sets of the componentwise order.
  auto  ss = product_topology(*top("Sierpinski"), *top("Sierpinski"));
  Opens up;
  for (auto const& s : all_subsets(4)) {
    bool closed_up = true;
    for (Element p = 0; p < 4; ++p) {
      for (Element q = 0; q < 4; ++q) {
        bool le = (p / 2 <= q / 2) && (p % 2 <= q % 2);
        closed_up = closed_up && !(s[p] && le && !s[q]);
      }
    }
    if (closed_up) {
      up.insert(s);
    }
  }
  CHECK(up.size() == 6);
  CHECK(as_set(ss.opens()) == up);

  // Against the naive closure of boxes, with continuous open projections.
  auto spaces = sample_spaces(5, 10);
  for (auto const& a : spaces) {
    for (auto const& b : spaces) {
      auto                  p = product_topology(a, b);
      std::vector<PointSet> boxes;
      for (auto const& u : a.opens()) {
        for (auto const& v : b.opens()) {
          PointSet box(a.size() * b.size());
          for (Element i = 0; i < a.size(); ++i) {
            for (Element j = 0; j < b.size(); ++j) {
              box[i * b.size() + j] = u[i] && v[j];
            }
          }
          boxes.push_back(box);
        }
      }
      CHECK(as_set(p.opens()) == naive_topology(p.size(), boxes));
      std::vector<Element> first, second;
      for (Element i = 0; i < a.size(); ++i) {
        for (Element j = 0; j < b.size(); ++j) {
          first.push_back(i);
          second.push_back(j);
        }
      }
      auto pp = share(p);
      for (auto const& [proj, cod] : {std::pair{first, share(a)}, {second, share(b)}}) {
        ContinuousMap f{pp, cod, proj};
        CHECK(is_continuous(f).holds);
        CHECK(is_open_map(f).holds);
      }
    }
  }
  CHECK(power_topology(*top("Sierpinski"), 2) == ss);
  CHECK(power_topology(*top("D2"), 3) == FiniteTopology::discrete(8));
}

TEST_CASE("subspaces and quotients") {
  auto s   = *top("Sierpinski");
  auto sub = subspace_topology(s, std::vector<Element>{1});
  CHECK(sub == FiniteTopology::discrete(1));
  auto sub0 = subspace_topology(*top("TA"), std::vector<Element>{1, 2});
  CHECK(sub0 == FiniteTopology::from_minimal_opens({set_of(2, {0}), set_of(2, {0, 1})}));

  for (auto const& t : sample_spaces(17, 40)) {
    auto pt = share(t);
    auto n  = t.size();
    // Collapse points to x mod 2.
    std::vector<Element> m(n);
    for (Element x = 0; x < n; ++x) {
      m[x] = x % 2;
    }
    std::size_t const k = std::min<std::size_t>(n, 2);
    auto              q = quotient_topology(t, m, k);
    ContinuousMap     f{pt, share(q), m};
    CHECK(is_continuous(f).holds);
    CHECK(is_quotient_map(f).holds);
    // Finest: exactly the sets whose preimage is open.
    for (auto const& s2 : all_subsets(k)) {
      CHECK(q.is_open(s2) == t.is_open(preimage(f, s2)));
    }
  }
  CHECK_THROWS_AS(quotient_topology(s, std::vector<Element>{0, 0}, 2), PreconditionError);
}

TEST_CASE("open and quotient maps") {
  auto coset = top("Z4_coset"), z2d = top("Z2_disc");
  ContinuousMap mod2{coset, z2d, {0, 1, 0, 1}};
  CHECK(is_open_map(mod2).holds);
  CHECK(is_quotient_map(mod2).holds);

  auto          d2 = top("D2"), s = top("Sierpinski"), d1 = top("D1");
  ContinuousMap constant{d2, s, {1, 1}};
  CHECK(is_continuous(constant).holds);
  auto q = is_quotient_map(constant);
  CHECK_FALSE(q.holds);
  CHECK_FALSE(q.witness.has_value());
  CHECK_FALSE(is_surjective(constant));

  CHECK(is_open_map({d1, s, {1}}).holds);
  auto bad = is_open_map({d1, s, {0}});
  CHECK_FALSE(bad.holds);
  CHECK(*bad.witness == set_of(1, {0}));

  CHECK(is_homeomorphism({s, s, {0, 1}}));
  CHECK_FALSE(is_homeomorphism({d2, s, {0, 1}}));
  CHECK_FALSE(is_homeomorphism({s, s, {1, 0}}));
}

TEST_CASE("separation agrees with brute force") {
  for (auto const& t : sample_spaces(23, 80)) {
    auto const opens = t.opens();
    auto const n     = t.size();
    bool       t1 = true, t2 = true, reg = true;
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (x == y) {
          continue;
        }
        bool sep = false, disjoint = false;
        for (auto const& u : opens) {
          sep = sep || (u[x] && !u[y]);
          for (auto const& v : opens) {
            disjoint = disjoint || (u[x] && v[y] && (u & v).none());
          }
        }
        t1 = t1 && sep;
        t2 = t2 && disjoint;
      }
    }
    for (auto const& u : opens) {
      auto const f = ~u;  // closed
      for (Element x = 0; x < n; ++x) {
        if (f[x]) {
          continue;
        }
        bool found = false;
        for (auto const& a : opens) {
          for (auto const& b : opens) {
            found = found || (a[x] && f.is_subset_of(b) && (a & b).none());
          }
        }
        reg = reg && found;
      }
    }
    auto flags = separation_report(t);
    CHECK(flags.t1 == t1);
    CHECK(flags.hausdorff == t2);
    CHECK(flags.regular == reg);
    // A finite T1 space is discrete.
    CHECK(t1 == (t == FiniteTopology::discrete(n)));
  }
  auto s = separation_report(*top("Sierpinski"));
  CHECK_FALSE(s.t1);
  CHECK_FALSE(s.regular);
  auto i = separation_report(*top("I3"));
  CHECK_FALSE(i.t1);
  CHECK(i.regular);
}

TEST_CASE("quotients are not stable under pullback") {
  auto r = top_not_regular_counterexample();
  CHECK(r.f_is_quotient);
  CHECK_FALSE(r.pi2_is_quotient);
  REQUIRE(r.pi2_witness);
  CHECK(*r.pi2_witness == set_of(3, {0}));  // b_1, zero-based
  // Pullback: exactly the pairs with f(s) = g(t).
  std::vector<std::pair<Element, Element>> expected;
  for (Element s = 0; s < r.a.size(); ++s) {
    for (Element t = 0; t < r.b.size(); ++t) {
      if (r.f[s] == r.g[t]) {
        expected.emplace_back(s, t);
      }
    }
  }
  CHECK(r.pullback == expected);
  // The witness really is not open while its preimage is.
  CHECK_FALSE(r.b.is_open(*r.pi2_witness));
  CHECK(r.pullback_topology.is_open(r.witness_preimage));
  for (std::size_t i = 0; i < r.pullback.size(); ++i) {
    CHECK(r.witness_preimage[i] == (*r.pi2_witness)[r.pullback[i].second]);
  }
}

TEST_CASE("large products stay in minimal-open form") {
  auto p = power_topology(*top("D5"), 2);
  CHECK(p == FiniteTopology::discrete(25));
  CHECK_THROWS_AS(p.opens(), BudgetExceededError);
  CHECK(p.is_open(set_of(25, {3, 17})));
  CHECK(format_set(set_of(25, {3, 17})) == "{3,17}");
}
