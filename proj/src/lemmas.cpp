#include "ualg/lemmas.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include "ualg/error.hpp"
#include "ualg/group.hpp"
#include "ualg/semidirect.hpp"

namespace ualg {

  namespace {

    LemmaVerdict holds(std::string d) {
      return {Outcome::holds, std::move(d)};
    }
    LemmaVerdict fails(std::string d) {
      return {Outcome::fails, std::move(d)};
    }
    LemmaVerdict unmet(std::string d) {
      return {Outcome::precondition, std::move(d)};
    }

    bool same(AlgebraPtr const& a, AlgebraPtr const& b) {
      return a == b || (a && b && *a == *b);
    }

    // Shape, then the exhaustive homomorphism law; empty string when fine.
    std::string hom_problem(Homomorphism const& h) {
      try {
        check_hom_shape(h);
      } catch (Error const& e) {
        return h.name + ": " + e.what();
      }
      if (auto v = check_hom(h); !v.holds) {
        return h.name + " is not a homomorphism at " + v.witness->symbol;
      }
      return {};
    }

    std::vector<Element> fiber_of_identity(Homomorphism const& f) {
      Element              e = GroupView(f.cod).identity();
      std::vector<Element> out;
      for (Element x = 0; x < f.dom->size(); ++x) {
        if (f(x) == e) {
          out.push_back(x);
        }
      }
      return out;
    }

    bool is_kernel_of(Homomorphism const& k, Homomorphism const& f) {
      if (!is_injective(k)) {
        return false;
      }
      auto img = image(k);
      std::sort(img.begin(), img.end());
      return img == fiber_of_identity(f);
    }

    bool same_map(Homomorphism const& l, Homomorphism const& r) {
      return l.map == r.map;
    }

    using Rng = std::mt19937_64;

    // rng() % n rather than a std distribution: the raw engine output is
    // specified by the standard, so instances agree across platforms.
    std::size_t pick(Rng& rng, std::size_t n) {
      return static_cast<std::size_t>(rng() % n);
    }

    std::vector<Element> random_perm(Rng& rng, std::size_t n) {
      std::vector<Element> p(n);
      std::iota(p.begin(), p.end(), 0);
      for (std::size_t i = n; i > 1; --i) {
        std::swap(p[i - 1], p[pick(rng, i)]);
      }
      return p;
    }

    std::vector<Element> identity_perm(std::size_t n) {
      std::vector<Element> p(n);
      std::iota(p.begin(), p.end(), 0);
      return p;
    }

    // h carried along relabelings of its domain and codomain (old -> new).
    Homomorphism transport(Homomorphism const&         h,
                           AlgebraPtr const&           dom,
                           std::vector<Element> const& pd,
                           AlgebraPtr const&           cod,
                           std::vector<Element> const& pc) {
      Homomorphism out{h.name, dom, cod, std::vector<Element>(h.map.size())};
      for (Element x = 0; x < h.map.size(); ++x) {
        out.map[pd[x]] = pc[h(x)];
      }
      return out;
    }

    std::vector<Element> index_in(std::vector<Element> const& sorted, std::size_t n) {
      std::vector<Element> idx(n, sorted.size());
      for (Element i = 0; i < sorted.size(); ++i) {
        idx[sorted[i]] = i;
      }
      return idx;
    }

    constexpr std::size_t generator_hom_budget = std::size_t{1} << 25;

    class Generator {
     public:
      Generator(std::vector<AlgebraPtr> const& pool, std::uint64_t seed)
          : _pool(pool), _rng(seed) {
        if (_pool.empty()) {
          throw PreconditionError("empty group pool");
        }
      }

      Rng& rng() {
        return _rng;
      }

      AlgebraPtr const& any_group() {
        return _pool[pick(_rng, _pool.size())];
      }

      std::vector<std::vector<Element>> const& normals(AlgebraPtr const& g) {
        auto it = _normals.find(g);
        if (it == _normals.end()) {
          it = _normals.emplace(g, normal_subgroups(g)).first;
        }
        return it->second;
      }

      std::vector<Homomorphism> const& endos(AlgebraPtr const& g) {
        auto it = _endos.find(g);
        if (it == _endos.end()) {
          it = _endos.emplace(g, enumerate_homs(g, g, generator_hom_budget)).first;
        }
        return it->second;
      }

      // All actions of q on k, by exhaustive search over maps q -> Aut(k).
      std::vector<GroupAction> const& actions(AlgebraPtr const& k, AlgebraPtr const& q) {
        auto key = std::make_pair(k, q);
        auto it  = _actions.find(key);
        if (it != _actions.end()) {
          return it->second;
        }
        std::vector<std::vector<Element>> auts;
        for (auto const& h : endos(k)) {
          if (is_bijective(h)) {
            auts.push_back(h.map);
          }
        }
        std::vector<GroupAction> found;
        std::size_t total = 1;
        bool        small = true;
        for (std::size_t i = 0; i < q->size() && small; ++i) {
          total *= auts.size();
          small = total <= 100'000;
        }
        if (small) {
          for_each_tuple(auts.size(), q->size(), [&](std::span<Element const> choice) {
            GroupAction act{"action", k, q, {}};
            for (auto c : choice) {
              act.phi.push_back(auts[c]);
            }
            if (verify_action(act)) {
              act.name = "action" + std::to_string(found.size());
              found.push_back(std::move(act));
            }
            return true;
          });
        } else {
          found.push_back(trivial_action(k, q));
        }
        return _actions.emplace(key, std::move(found)).first->second;
      }

      SemidirectProduct const& semidirect(AlgebraPtr const& k, AlgebraPtr const& q, std::size_t i) {
        auto key = std::make_tuple(k, q, i);
        auto it  = _products.find(key);
        if (it == _products.end()) {
          it = _products.emplace(key, build_semidirect(actions(k, q)[i])).first;
        }
        return it->second;
      }

     private:
      std::vector<AlgebraPtr> const&                                  _pool;
      Rng                                                             _rng;
      // Keyed by pointer; holding the pointers keeps the keys alive.
      std::map<AlgebraPtr, std::vector<std::vector<Element>>>          _normals;
      std::map<AlgebraPtr, std::vector<Homomorphism>>                  _endos;
      std::map<std::pair<AlgebraPtr, AlgebraPtr>, std::vector<GroupAction>> _actions;
      std::map<std::tuple<AlgebraPtr, AlgebraPtr, std::size_t>, SemidirectProduct> _products;
    };

    // The row K -k-> X -f-> Y (with optional section) shared by the five
    // lemma generators.
    struct Row {
      AlgebraPtr                  kernel, total, base;
      Homomorphism                k, f;
      std::optional<Homomorphism> s;
    };

    // Endomorphisms of the total object preserving the kernel, with the
    // induced maps on kernel and base bijective.
    struct Vertical {
      Homomorphism a, b, c;
    };

    std::vector<Vertical> admissible_verticals(Generator& gen, Row const& row) {
      std::size_t          nk = row.kernel->size();
      std::vector<Element> kidx(row.total->size(), nk);
      for (Element j = 0; j < nk; ++j) {
        kidx[row.k(j)] = j;
      }
      std::vector<Element> lift(row.base->size());
      for (Element x = 0; x < row.total->size(); ++x) {
        lift[row.f(x)] = x;
      }
      std::vector<Vertical> out;
      for (auto const& beta : gen.endos(row.total)) {
        Homomorphism a{"a", row.kernel, row.kernel, {}};
        bool         keeps = true;
        for (Element i = 0; i < nk && keeps; ++i) {
          Element img = kidx[beta(row.k(i))];
          keeps       = img < nk;
          a.map.push_back(img);
        }
        if (!keeps) {
          continue;
        }
        Homomorphism c{"c", row.base, row.base, {}};
        for (Element y = 0; y < row.base->size(); ++y) {
          c.map.push_back(row.f(beta(lift[y])));
        }
        if (!is_bijective(a) || !is_bijective(c)) {
          continue;
        }
        Homomorphism b{"b", row.total, row.total, beta.map};
        if (row.s && compose(b, *row.s).map != compose(*row.s, c).map) {
          continue;
        }
        out.push_back({std::move(a), std::move(b), std::move(c)});
      }
      return out;
    }

    LadderDiagram relabelled_ladder(Generator& gen, Row const& row, Vertical const& v) {
      auto& rng = gen.rng();
      auto  pk  = random_perm(rng, row.kernel->size());
      auto  px  = random_perm(rng, row.total->size());
      auto  py  = random_perm(rng, row.base->size());
      auto  k2  = relabel(*row.kernel, pk, row.kernel->name() + "'");
      auto  x2  = relabel(*row.total, px, row.total->name() + "'");
      auto  y2  = relabel(*row.base, py, row.base->name() + "'");
      auto  ik  = identity_perm(row.kernel->size());
      auto  ix  = identity_perm(row.total->size());
      auto  iy  = identity_perm(row.base->size());

      LadderDiagram d{row.k,
                      row.f,
                      transport(row.k, k2, pk, x2, px),
                      transport(row.f, x2, px, y2, py),
                      transport(v.a, row.kernel, ik, k2, pk),
                      transport(v.b, row.total, ix, x2, px),
                      transport(v.c, row.base, iy, y2, py),
                      std::nullopt,
                      std::nullopt};
      d.k2.name = "k'";
      d.f2.name = "f'";
      if (row.s) {
        d.s  = row.s;
        d.s2 = transport(*row.s, y2, py, x2, px);
        d.s2->name = "s'";
      }
      return d;
    }

  }  // namespace

  std::string_view to_string(Outcome o) {
    switch (o) {
      case Outcome::holds:
        return "holds";
      case Outcome::fails:
        return "fails";
      case Outcome::precondition:
        return "precondition";
    }
    return "?";
  }

  Verdict verify_ladder(LadderDiagram const& d) {
    std::vector<Homomorphism const*> all = {&d.k, &d.f, &d.k2, &d.f2, &d.a, &d.b, &d.c};
    if (d.s) {
      all.push_back(&*d.s);
    }
    if (d.s2) {
      all.push_back(&*d.s2);
    }
    for (auto const* h : all) {
      if (auto p = hom_problem(*h); !p.empty()) {
        return Verdict::fail(p);
      }
    }
    if (!same(d.k.cod, d.f.dom) || !same(d.k2.cod, d.f2.dom) || !same(d.a.dom, d.k.dom)
        || !same(d.a.cod, d.k2.dom) || !same(d.b.dom, d.f.dom) || !same(d.b.cod, d.f2.dom)
        || !same(d.c.dom, d.f.cod) || !same(d.c.cod, d.f2.cod)) {
      return Verdict::fail("maps are not composable as a ladder");
    }
    if (!is_kernel_of(d.k, d.f)) {
      return Verdict::fail("k is not the kernel of f");
    }
    if (!is_kernel_of(d.k2, d.f2)) {
      return Verdict::fail("k' is not the kernel of f'");
    }
    if (!same_map(compose(d.b, d.k), compose(d.k2, d.a))) {
      return Verdict::fail("left square does not commute");
    }
    if (!same_map(compose(d.c, d.f), compose(d.f2, d.b))) {
      return Verdict::fail("right square does not commute");
    }
    if (d.s) {
      if (compose(d.f, *d.s).map != identity_hom(d.f.cod).map) {
        return Verdict::fail("s is not a section of f");
      }
    }
    if (d.s2) {
      if (compose(d.f2, *d.s2).map != identity_hom(d.f2.cod).map) {
        return Verdict::fail("s' is not a section of f'");
      }
    }
    if (d.s && d.s2 && !same_map(compose(d.b, *d.s), compose(*d.s2, d.c))) {
      return Verdict::fail("section square does not commute");
    }
    return Verdict::pass();
  }

  LemmaVerdict split_five_lemma_check(LadderDiagram const& d) {
    if (!d.s || !d.s2) {
      return unmet("f and f' need sections");
    }
    if (auto v = verify_ladder(d); !v) {
      return unmet(v.detail);
    }
    if (!is_bijective(d.a) || !is_bijective(d.c)) {
      return unmet("a and c must be bijective");
    }
    return is_bijective(d.b) ? holds("b is bijective") : fails("b is not bijective");
  }

  LemmaVerdict five_lemma_check(LadderDiagram const& d) {
    if (auto v = verify_ladder(d); !v) {
      return unmet(v.detail);
    }
    if (!is_surjective(d.f) || !is_surjective(d.f2)) {
      return unmet("f and f' must be surjective");
    }
    if (!is_bijective(d.a) || !is_bijective(d.c)) {
      return unmet("a and c must be bijective");
    }
    return is_bijective(d.b) ? holds("b is bijective") : fails("b is not bijective");
  }

  LadderDiagram roundtrip_ladder(SplitPoint const& pt) {
    auto exact = split_exact_check(pt);
    auto iso   = point_roundtrip_iso(pt);
    auto const& sd = iso.target;
    Homomorphism a = identity_hom(exact.kernel.algebra);
    a.cod          = sd.k_injection.dom;
    a.name         = "a";
    Homomorphism c = identity_hom(pt.p.cod);
    c.name         = "c";
    return {exact.kernel.inclusion, pt.p, sd.k_injection, sd.projection, a, iso.u, c, pt.s,
            sd.q_injection};
  }

  Verdict verify_grid(ThreeByThree const& g) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        auto const& h = g.row[i][j];
        if (auto p = hom_problem(h); !p.empty()) {
          return Verdict::fail(p);
        }
        if (!same(h.dom, g.obj[i][j]) || !same(h.cod, g.obj[i][j + 1])) {
          return Verdict::fail("row map " + std::to_string(i) + "," + std::to_string(j)
                               + " has the wrong ends");
        }
      }
    }
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        auto const& h = g.col[i][j];
        if (auto p = hom_problem(h); !p.empty()) {
          return Verdict::fail(p);
        }
        if (!same(h.dom, g.obj[i][j]) || !same(h.cod, g.obj[i + 1][j])) {
          return Verdict::fail("column map " + std::to_string(i) + "," + std::to_string(j)
                               + " has the wrong ends");
        }
      }
    }
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        if (!same_map(compose(g.col[i][j + 1], g.row[i][j]),
                      compose(g.row[i + 1][j], g.col[i][j]))) {
          return Verdict::fail("square " + std::to_string(i) + "," + std::to_string(j)
                               + " does not commute");
        }
      }
    }
    return Verdict::pass();
  }

  Verdict exact_check(Homomorphism const& m, Homomorphism const& e) {
    for (auto const* h : {&m, &e}) {
      if (auto p = hom_problem(*h); !p.empty()) {
        return Verdict::fail(p);
      }
    }
    if (!is_injective(m)) {
      return Verdict::fail(m.name + " is not injective");
    }
    if (!is_surjective(e)) {
      return Verdict::fail(e.name + " is not surjective");
    }
    if (!is_kernel_of(m, e)) {
      return Verdict::fail("image of " + m.name + " is not the kernel of " + e.name);
    }
    return Verdict::pass();
  }

  LemmaVerdict nine_lemma_special_check(ThreeByThree const& g) {
    if (auto v = verify_grid(g); !v) {
      return unmet(v.detail);
    }
    for (std::size_t i = 1; i < 3; ++i) {
      if (auto v = exact_check(g.row[i][0], g.row[i][1]); !v) {
        return unmet("row " + std::to_string(i + 1) + " not exact: " + v.detail);
      }
    }
    for (std::size_t j = 0; j < 3; ++j) {
      if (auto v = exact_check(g.col[0][j], g.col[1][j]); !v) {
        return unmet("column " + std::to_string(j + 1) + " not exact: " + v.detail);
      }
    }
    if (auto v = exact_check(g.row[0][0], g.row[0][1]); !v) {
      return fails("row 1 not exact: " + v.detail);
    }
    return holds("row 1 exact");
  }

  std::vector<std::vector<Element>> normal_subgroups(AlgebraPtr const& g) {
    GroupView                         grp(g);
    std::vector<std::vector<Element>> out;
    for (auto const& c : enumerate_congruences(*g)) {
      auto cls = c.classes()[c.block_of(grp.identity())];
      out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(), [](auto const& l, auto const& r) {
      return l.size() != r.size() ? l.size() < r.size() : l < r;
    });
    return out;
  }

  Quotient quotient_by_normal(AlgebraPtr const&           g,
                              std::vector<Element> const& n,
                              std::string                 name) {
    GroupView                                grp(g);
    std::vector<std::pair<Element, Element>> seed;
    for (auto x : n) {
      seed.emplace_back(x, grp.identity());
    }
    auto c   = congruence_generated(*g, seed);
    auto cls = c.classes()[c.block_of(grp.identity())];
    auto sorted = n;
    std::sort(sorted.begin(), sorted.end());
    if (cls != sorted) {
      throw PreconditionError("not a normal subgroup: " + format_set(make_set(g->size(), n)));
    }
    return quotient(g, c, std::move(name));
  }

  ThreeByThree third_isomorphism_grid(AlgebraPtr const&           g,
                                      std::vector<Element> const& k,
                                      std::vector<Element> const& h) {
    GroupView grp(g);
    auto      ks = k, hs = h;
    std::sort(ks.begin(), ks.end());
    std::sort(hs.begin(), hs.end());
    if (!std::includes(ks.begin(), ks.end(), hs.begin(), hs.end())) {
      throw PreconditionError("H is not contained in K");
    }
    for (auto const* s : {&ks, &hs}) {
      if (subalgebra_closure(*g, *s) != *s || !grp.is_normal_subgroup(*s)) {
        throw PreconditionError("not a normal subgroup: " + format_set(make_set(g->size(), *s)));
      }
    }
    auto sub_h = make_subalgebra(g, hs, "H");
    auto sub_k = make_subalgebra(g, ks, "K");
    auto q_h   = quotient_by_normal(g, hs, "G/H");
    auto q_k   = quotient_by_normal(g, ks, "G/K");
    auto zero  = trivial_algebra(g->theory(), "0");

    Homomorphism phi{"phi", q_h.algebra, q_k.algebra, std::vector<Element>(q_h.algebra->size())};
    for (Element x = 0; x < g->size(); ++x) {
      phi.map[q_h.projection(x)] = q_k.projection(x);
    }
    auto ker_phi = fiber_of_identity(phi);
    auto sub_kp  = make_subalgebra(q_h.algebra, ker_phi, "K/H");
    auto kp_idx  = index_in(ker_phi, q_h.algebra->size());
    auto k_idx   = index_in(ks, g->size());

    Homomorphism h_to_k{"i", sub_h.algebra, sub_k.algebra, {}};
    for (auto x : hs) {
      h_to_k.map.push_back(k_idx[x]);
    }
    Homomorphism k_to_kp{"q", sub_k.algebra, sub_kp.algebra, {}};
    for (auto x : ks) {
      k_to_kp.map.push_back(kp_idx[q_h.projection(x)]);
    }
    Homomorphism into_gk{"0", zero, q_k.algebra, {GroupView(q_k.algebra).identity()}};
    Homomorphism h_to_zero{"0", sub_h.algebra, zero, std::vector<Element>(hs.size(), 0)};

    ThreeByThree grid;
    grid.obj = {{{sub_h.algebra, sub_k.algebra, sub_kp.algebra},
                 {sub_h.algebra, g, q_h.algebra},
                 {zero, q_k.algebra, q_k.algebra}}};
    grid.row = {{{h_to_k, k_to_kp},
                 {sub_h.inclusion, q_h.projection},
                 {into_gk, identity_hom(q_k.algebra)}}};
    grid.col = {{{identity_hom(sub_h.algebra), sub_k.inclusion, sub_kp.inclusion},
                 {h_to_zero, q_k.projection, phi}}};
    return grid;
  }

  Verdict third_isomorphism_check(ThreeByThree const& grid) {
    auto gh  = grid.obj[1][2];
    auto img = image(grid.col[0][2]);
    auto q   = quotient_by_normal(gh, img, "(G/H)/(K/H)");
    if (auto iso = find_isomorphism(q.algebra, grid.obj[2][2])) {
      return Verdict::pass("(G/H)/(K/H) ~ G/K, order " + std::to_string(q.algebra->size()));
    }
    return Verdict::fail("(G/H)/(K/H) has no isomorphism onto G/K");
  }

  LemmaVerdict barr_kock_instance_check(BarrKockInstance const& inst) {
    auto const& [f, f2, g, h] = inst;
    for (auto const* m : {&f, &f2, &g, &h}) {
      if (auto p = hom_problem(*m); !p.empty()) {
        return unmet(p);
      }
    }
    if (!same(f.dom, g.dom) || !same(f2.dom, g.cod) || !same(f.cod, h.dom)
        || !same(f2.cod, h.cod)) {
      return unmet("maps are not composable as two squares");
    }
    if (!same_map(compose(h, f), compose(f2, g))) {
      return unmet("square 1 does not commute");
    }
    if (!is_surjective(f)) {
      return unmet("f is not surjective");
    }
    // Square 2 is a pullback iff g maps each f-class bijectively onto the
    // f'-class of its image.
    std::size_t nx = f.dom->size(), nx2 = f2.dom->size();
    for (Element x = 0; x < nx; ++x) {
      std::vector<Element> moved, target;
      for (Element y = 0; y < nx; ++y) {
        if (f(y) == f(x)) {
          moved.push_back(g(y));
        }
      }
      for (Element y = 0; y < nx2; ++y) {
        if (f2(y) == f2(g(x))) {
          target.push_back(y);
        }
      }
      std::sort(moved.begin(), moved.end());
      if (std::adjacent_find(moved.begin(), moved.end()) != moved.end() || moved != target) {
        return unmet("square 2 is not a pullback at " + std::to_string(x));
      }
    }
    std::vector<std::pair<Element, Element>> pullback;
    for (Element x2 = 0; x2 < nx2; ++x2) {
      for (Element y = 0; y < h.dom->size(); ++y) {
        if (f2(x2) == h(y)) {
          pullback.emplace_back(x2, y);
        }
      }
    }
    std::vector<std::pair<Element, Element>> pairs;
    for (Element x = 0; x < nx; ++x) {
      pairs.emplace_back(g(x), f(x));
    }
    std::sort(pairs.begin(), pairs.end());
    if (pairs != pullback) {
      return fails("square 1 is not a pullback: X has " + std::to_string(nx)
                   + " elements, the pullback " + std::to_string(pullback.size()));
    }
    std::string detail = "square 1 is a pullback (" + std::to_string(nx) + " elements)";
    if (is_injective(g)) {
      if (!is_injective(h)) {
        return fails("g injective but h is not");
      }
      detail += "; g and h injective";
    }
    return holds(detail);
  }

  EpiFlags epi_classify(Homomorphism const& f, std::size_t budget) {
    check_hom_shape(f);
    EpiFlags flags;
    flags.surjective = is_surjective(f);
    flags.injective  = is_injective(f);
    auto id          = identity_hom(f.cod).map;
    for (auto& s : enumerate_homs(f.cod, f.dom, budget)) {
      if (compose(f, s).map == id) {
        s.name        = "s";
        flags.section = std::move(s);
        flags.split   = true;
        break;
      }
    }
    if (flags.split && !flags.surjective) {
      flags.verdict = Verdict::fail("split but not surjective");
    } else if (flags.surjective && flags.injective && !check_hom(inverse(f)).holds) {
      flags.verdict = Verdict::fail("bijective but the inverse is not a homomorphism");
    } else {
      flags.verdict = Verdict::pass();
    }
    return flags;
  }

  std::vector<LadderDiagram> generate_five_lemma_instances(std::vector<AlgebraPtr> const& pool,
                                                           std::uint64_t                  seed,
                                                           std::size_t                    count,
                                                           bool                           split) {
    Generator                  gen(pool, seed);
    std::vector<LadderDiagram> out;
    while (out.size() < count) {
      Row row;
      if (split) {
        auto k = gen.any_group();
        auto q = gen.any_group();
        if (k->size() * q->size() > 8) {
          continue;
        }
        auto const& acts = gen.actions(k, q);
        auto const& sd   = gen.semidirect(k, q, pick(gen.rng(), acts.size()));
        row              = {k, sd.algebra, q, sd.k_injection, sd.projection, sd.q_injection};
      } else {
        auto        x  = gen.any_group();
        auto const& ns = gen.normals(x);
        auto const& n  = ns[pick(gen.rng(), ns.size())];
        auto        q  = quotient_by_normal(x, n, "Y");
        auto        k  = make_subalgebra(x, n, "K");
        row            = {k.algebra, x, q.algebra, k.inclusion, q.projection, std::nullopt};
      }
      row.k.name = "k";
      row.f.name = "f";
      auto verticals = admissible_verticals(gen, row);
      // The identity is always admissible, so this is never empty.
      auto const& v = verticals[pick(gen.rng(), verticals.size())];
      out.push_back(relabelled_ladder(gen, row, v));
    }
    return out;
  }

  std::vector<ThreeByThree> generate_nine_lemma_instances(std::vector<AlgebraPtr> const& pool,
                                                          std::uint64_t                  seed,
                                                          std::size_t                    count) {
    Generator                 gen(pool, seed);
    std::vector<ThreeByThree> out;
    while (out.size() < count) {
      auto        g  = gen.any_group();
      auto const& ns = gen.normals(g);
      auto const& k  = ns[pick(gen.rng(), ns.size())];
      std::vector<std::vector<Element> const*> inside;
      for (auto const& h : ns) {
        if (std::includes(k.begin(), k.end(), h.begin(), h.end())) {
          inside.push_back(&h);
        }
      }
      out.push_back(third_isomorphism_grid(g, k, *inside[pick(gen.rng(), inside.size())]));
    }
    return out;
  }

  std::vector<BarrKockInstance> generate_barr_kock_instances(std::vector<AlgebraPtr> const& pool,
                                                             std::uint64_t                  seed,
                                                             std::size_t                    count) {
    Generator                     gen(pool, seed);
    std::vector<BarrKockInstance> out;
    while (out.size() < count) {
      auto        x2 = gen.any_group();
      auto const& ns = gen.normals(x2);
      auto        q  = quotient_by_normal(x2, ns[pick(gen.rng(), ns.size())], "Y'");
      auto        y  = gen.any_group();
      auto        hs = enumerate_homs(y, q.algebra, generator_hom_budget);
      auto        h  = hs[pick(gen.rng(), hs.size())];
      h.name         = "h";

      // X is the pullback of f' along h, relabelled at random.
      auto                 prod = product(x2, y, "X'xY");
      std::vector<Element> pairs;
      for (Element a = 0; a < x2->size(); ++a) {
        for (Element b = 0; b < y->size(); ++b) {
          if (q.projection(a) == h(b)) {
            pairs.push_back(a * y->size() + b);
          }
        }
      }
      auto sub  = make_subalgebra(prod.algebra, pairs, "P");
      auto perm = random_perm(gen.rng(), pairs.size());
      auto x    = relabel(*sub.algebra, perm, "X");
      auto g    = transport(compose(prod.first, sub.inclusion), x, perm, x2,
                            identity_perm(x2->size()));
      auto f    = transport(compose(prod.second, sub.inclusion), x, perm, y,
                            identity_perm(y->size()));
      g.name    = "g";
      f.name    = "f";
      auto f2   = q.projection;
      f2.name   = "f'";
      out.push_back({std::move(f), std::move(f2), std::move(g), std::move(h)});
    }
    return out;
  }

  LemmaRun run_lemma(std::string_view               lemma,
                     std::vector<AlgebraPtr> const& pool,
                     std::uint64_t                  seed,
                     std::size_t                    count) {
    LemmaRun run{std::string(lemma), seed, count};
    auto     tally = [&](std::size_t i, LemmaVerdict const& v) {
      if (v.outcome == Outcome::holds) {
        ++run.passed;
        return;
      }
      (v.outcome == Outcome::fails ? run.failed : run.skipped) += 1;
      run.failures.push_back("instance " + std::to_string(i) + ": " + std::string(to_string(v.outcome))
                             + ": " + v.detail);
    };
    if (lemma == "five" || lemma == "split-five") {
      bool split = lemma == "split-five";
      auto ds    = generate_five_lemma_instances(pool, seed, count, split);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        tally(i, split ? split_five_lemma_check(ds[i]) : five_lemma_check(ds[i]));
      }
    } else if (lemma == "nine") {
      auto gs = generate_nine_lemma_instances(pool, seed, count);
      for (std::size_t i = 0; i < gs.size(); ++i) {
        auto v = nine_lemma_special_check(gs[i]);
        if (v) {
          if (auto t = third_isomorphism_check(gs[i]); !t) {
            v = fails(t.detail);
          }
        }
        tally(i, v);
      }
    } else if (lemma == "barr-kock") {
      auto is = generate_barr_kock_instances(pool, seed, count);
      for (std::size_t i = 0; i < is.size(); ++i) {
        tally(i, barr_kock_instance_check(is[i]));
      }
    } else {
      throw PreconditionError("unknown lemma '" + std::string(lemma)
                              + "' (expected five, split-five, nine, barr-kock)");
    }
    return run;
  }

}  // namespace ualg
