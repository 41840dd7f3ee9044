#include "ualg/semidirect.hpp"

#include <algorithm>
#include <sstream>

#include "ualg/detail/compiled_term.hpp"
#include "ualg/error.hpp"
#include "ualg/group.hpp"

namespace ualg {

  namespace {

    // Looks up the group symbols in a theory restricted to exactly e, inv,
    // mul; the semidirect tables are built symbol by symbol.
    struct GroupOps {
      std::size_t e, inv, mul;
    };

    GroupOps group_ops(Signature const& sig) {
      GroupSymbols names;
      auto         e   = sig.find(names.identity);
      auto         inv = sig.find(names.inverse);
      auto         mul = sig.find(names.multiply);
      if (!e || !inv || !mul || sig.size() != 3) {
        throw PreconditionError("not a group theory: expected exactly e, inv, mul");
      }
      return {*e, *inv, *mul};
    }

    void require_group_maps(SplitPoint const& pt) {
      GroupView{pt.p.dom};
      GroupView{pt.p.cod};
      check_hom_shape(pt.p);
      check_hom_shape(pt.s);
      if (pt.s.dom != pt.p.cod || pt.s.cod != pt.p.dom) {
        throw PreconditionError("section does not run B -> A");
      }
      if (!check_hom(pt.p).holds || !check_hom(pt.s).holds) {
        throw PreconditionError("p and s must be homomorphisms");
      }
      for (Element b = 0; b < pt.p.cod->size(); ++b) {
        if (pt.p(pt.s(b)) != b) {
          throw PreconditionError("p . s != id at " + std::to_string(b));
        }
      }
    }

    std::vector<Element> kernel_of(SplitPoint const& pt) {
      GroupView            base(pt.p.cod);
      std::vector<Element> k;
      for (Element a = 0; a < pt.p.dom->size(); ++a) {
        if (pt.p(a) == base.identity()) {
          k.push_back(a);
        }
      }
      return k;
    }

  }  // namespace

  Verdict verify_action(GroupAction const& act) {
    GroupView   k(act.k);
    GroupView   q(act.q);
    std::size_t nk = k.order();
    if (act.phi.size() != q.order()) {
      return Verdict::fail("expected " + std::to_string(q.order()) + " permutations, got "
                           + std::to_string(act.phi.size()));
    }
    for (Element b = 0; b < q.order(); ++b) {
      auto const& f = act.phi[b];
      if (f.size() != nk) {
        return Verdict::fail("phi[" + std::to_string(b) + "] has wrong length");
      }
      Homomorphism h{"phi", act.k, act.k, f};
      for (auto x : f) {
        if (x >= nk) {
          return Verdict::fail("phi[" + std::to_string(b) + "] out of range");
        }
      }
      if (!is_bijective(h)) {
        return Verdict::fail("phi[" + std::to_string(b) + "] is not a bijection");
      }
      if (!check_hom(h).holds) {
        return Verdict::fail("phi[" + std::to_string(b) + "] is not a homomorphism");
      }
    }
    for (Element x = 0; x < nk; ++x) {
      if (act.phi[q.identity()][x] != x) {
        return Verdict::fail("phi[e] is not the identity");
      }
    }
    for (Element b = 0; b < q.order(); ++b) {
      for (Element c = 0; c < q.order(); ++c) {
        auto const& bc = act.phi[q.mul(b, c)];
        for (Element x = 0; x < nk; ++x) {
          if (bc[x] != act.phi[b][act.phi[c][x]]) {
            return Verdict::fail("phi[" + std::to_string(b) + "*" + std::to_string(c)
                                 + "] != phi[" + std::to_string(b) + "] . phi["
                                 + std::to_string(c) + "] at " + std::to_string(x));
          }
        }
      }
    }
    return Verdict::pass();
  }

  GroupAction trivial_action(AlgebraPtr const& k, AlgebraPtr const& q) {
    std::vector<Element> id(k->size());
    for (Element x = 0; x < id.size(); ++x) {
      id[x] = x;
    }
    return {"trivial", k, q, std::vector<std::vector<Element>>(q->size(), id)};
  }

  GroupAction parse_action(std::string const& text,
                           AlgebraPtr const&  k,
                           AlgebraPtr const&  q,
                           std::string        name) {
    GroupAction        act{std::move(name), k, q, {}};
    std::istringstream in(text);
    std::string        line;
    std::size_t        lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream   row(line);
      std::vector<Element> perm;
      std::string          tok;
      while (row >> tok) {
        if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          throw SyntaxError("expected a natural number, got '" + tok + "'",
                            SourceLocation{lineno, 1});
        }
        perm.push_back(std::stoul(tok));
      }
      if (!perm.empty()) {
        act.phi.push_back(std::move(perm));
      }
    }
    if (act.phi.size() != q->size()) {
      throw ShapeError("action needs " + std::to_string(q->size()) + " permutation lines, got "
                       + std::to_string(act.phi.size()));
    }
    for (std::size_t b = 0; b < act.phi.size(); ++b) {
      auto const& p = act.phi[b];
      if (p.size() != k->size()) {
        throw ShapeError("each permutation needs " + std::to_string(k->size()) + " entries");
      }
      auto sorted = p;
      std::ranges::sort(sorted);
      for (Element i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) {
          throw ShapeError("permutation " + std::to_string(b) + " is not a permutation of 0.."
                           + std::to_string(k->size() - 1));
        }
      }
    }
    return act;
  }

  SemidirectProduct build_semidirect(GroupAction const& act, std::string name) {
    if (auto v = verify_action(act); !v) {
      throw PreconditionError("invalid action: " + v.detail);
    }
    GroupView   k(act.k);
    GroupView   q(act.q);
    auto        ops = group_ops(act.k->signature());
    std::size_t nk = k.order(), nq = q.order(), n = nk * nq;
    auto        enc = [nq](Element a, Element b) { return a * nq + b; };

    std::vector<std::vector<Element>> tables(3);
    tables[ops.e] = {enc(k.identity(), q.identity())};
    tables[ops.inv].resize(n);
    tables[ops.mul].resize(n * n);
    for (Element a = 0; a < nk; ++a) {
      for (Element b = 0; b < nq; ++b) {
        Element binv              = q.inv(b);
        tables[ops.inv][enc(a, b)] = enc(act.phi[binv][k.inv(a)], binv);
        for (Element a2 = 0; a2 < nk; ++a2) {
          for (Element b2 = 0; b2 < nq; ++b2) {
            tables[ops.mul][enc(a, b) * n + enc(a2, b2)]
                = enc(k.mul(a, act.phi[b][a2]), q.mul(b, b2));
          }
        }
      }
    }
    if (name.empty()) {
      name = act.k->name() + "x|" + act.q->name();
    }
    auto g = std::make_shared<FiniteAlgebra const>(name, act.k->theory(), n, std::move(tables));

    SemidirectProduct sd{g, {"k", act.k, g, {}}, {"s", act.q, g, {}}, {"p", g, act.q, {}}};
    for (Element a = 0; a < nk; ++a) {
      sd.k_injection.map.push_back(enc(a, q.identity()));
    }
    for (Element b = 0; b < nq; ++b) {
      sd.q_injection.map.push_back(enc(k.identity(), b));
    }
    for (Element x = 0; x < n; ++x) {
      sd.projection.map.push_back(x % nq);
    }
    return sd;
  }

  Verdict complement_check(AlgebraPtr const&           g,
                           std::vector<Element> const& k_sub,
                           std::vector<Element> const& q_sub) {
    GroupView grp(g);
    auto      sorted = [](std::vector<Element> v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    };
    auto k = sorted(k_sub);
    auto q = sorted(q_sub);
    for (auto const* s : {&k, &q}) {
      if (s->empty() || s->back() >= g->size()) {
        throw PreconditionError("subset out of range");
      }
      if (subalgebra_closure(*g, *s) != *s) {
        throw PreconditionError("not a subgroup: " + format_set(make_set(g->size(), *s)));
      }
    }
    if (!grp.is_normal_subgroup(k)) {
      throw PreconditionError("not a normal subgroup: " + format_set(make_set(g->size(), k)));
    }
    std::vector<Element> meet;
    std::set_intersection(k.begin(), k.end(), q.begin(), q.end(), std::back_inserter(meet));
    if (meet.size() != 1) {
      return Verdict::fail("K meet Q = " + format_set(make_set(g->size(), meet)) + ", not {e}");
    }
    PointSet kq(g->size());
    for (auto a : k) {
      for (auto b : q) {
        kq.set(grp.mul(a, b));
      }
    }
    if (!kq.all()) {
      return Verdict::fail("KQ = " + format_set(kq) + " misses part of the carrier");
    }
    return Verdict::pass("K meet Q = {e}, KQ = G");
  }

  SplitExactReport split_exact_check(SplitPoint const& pt) {
    require_group_maps(pt);
    auto      a = pt.p.dom;
    GroupView ga(a);
    GroupView gb(pt.p.cod);
    auto      kern = kernel_of(pt);
    SplitExactReport rep{make_subalgebra(a, kern, "K"), Verdict::pass()};
    auto const& k = rep.kernel.inclusion;

    // k is the kernel: an injective homomorphism onto the fiber of e.
    if (!check_hom(k).holds || !is_injective(k)) {
      rep.verdict = Verdict::fail("kernel inclusion is not an injective homomorphism");
      return rep;
    }
    for (Element x = 0; x < k.dom->size(); ++x) {
      if (pt.p(k(x)) != gb.identity()) {
        rep.verdict = Verdict::fail("p . k is not trivial");
        return rep;
      }
    }
    if (!is_surjective(pt.p)) {
      rep.verdict = Verdict::fail("p is not surjective");
      return rep;
    }
    PointSet in_k = make_set(a->size(), kern);
    PointSet in_q(a->size());
    for (Element b = 0; b < gb.order(); ++b) {
      in_q.set(pt.s(b));
    }
    for (Element g = 0; g < a->size(); ++g) {
      Element left  = pt.s(pt.p(g));
      Element right = ga.mul(pt.s(pt.p(ga.inv(g))), g);
      if (ga.mul(left, right) != g) {
        rep.verdict = Verdict::fail("factorisation fails at " + std::to_string(g));
        return rep;
      }
      if (!in_k.test(right)) {
        rep.verdict = Verdict::fail("s p(g^-1) g leaves the kernel at " + std::to_string(g));
        return rep;
      }
      // Uniqueness: exactly one (q, k) in s(B) x K with q k = g.
      std::size_t count = 0;
      for (Element x = 0; x < a->size(); ++x) {
        if (!in_q.test(x)) {
          continue;
        }
        for (auto y : kern) {
          count += ga.mul(x, y) == g;
        }
      }
      if (count != 1) {
        rep.verdict = Verdict::fail(std::to_string(count) + " factorisations of "
                                    + std::to_string(g));
        return rep;
      }
    }
    rep.verdict = Verdict::pass("every element factors uniquely through s(B) K");
    return rep;
  }

  GroupAction point_to_action(SplitPoint const& pt) {
    auto rep = split_exact_check(pt);
    if (!rep.verdict) {
      throw PreconditionError("not split exact: " + rep.verdict.detail);
    }
    GroupView   ga(pt.p.dom);
    auto const& k  = rep.kernel.inclusion;
    std::size_t nk = k.dom->size();
    std::vector<Element> index(pt.p.dom->size(), nk);
    for (Element x = 0; x < nk; ++x) {
      index[k(x)] = x;
    }
    GroupAction act{"conjugation", k.dom, pt.p.cod, {}};
    for (Element g = 0; g < pt.p.cod->size(); ++g) {
      Element              sg = pt.s(g);
      std::vector<Element> phi(nk);
      for (Element x = 0; x < nk; ++x) {
        Element conj = ga.mul(ga.mul(sg, k(x)), ga.inv(sg));
        if (index[conj] == nk) {
          throw PreconditionError("conjugate leaves the kernel");
        }
        phi[x] = index[conj];
      }
      act.phi.push_back(std::move(phi));
    }
    if (auto v = verify_action(act); !v) {
      throw PreconditionError("conjugation is not an action: " + v.detail);
    }
    return act;
  }

  SplitPoint action_to_point(GroupAction const& act) {
    auto sd = build_semidirect(act);
    return {act.name + "-point", sd.projection, sd.q_injection, nullptr, nullptr};
  }

  PointIso point_roundtrip_iso(SplitPoint const& pt) {
    auto act = point_to_action(pt);
    auto sd  = build_semidirect(act);
    auto a   = pt.p.dom;
    GroupView ga(a);
    auto      kern = kernel_of(pt);
    std::vector<Element> index(a->size(), kern.size());
    for (Element x = 0; x < kern.size(); ++x) {
      index[kern[x]] = x;
    }
    std::size_t nb = pt.p.cod->size();
    PointIso    out{sd, {"u", a, sd.algebra, {}}, Verdict::pass()};
    for (Element x = 0; x < a->size(); ++x) {
      Element x0 = ga.mul(x, ga.inv(pt.s(pt.p(x))));
      out.u.map.push_back(index[x0] * nb + pt.p(x));
    }
    if (auto h = check_hom(out.u); !h.holds) {
      out.verdict = Verdict::fail("u is not a homomorphism at " + h.witness->symbol);
    } else if (!is_bijective(out.u)) {
      out.verdict = Verdict::fail("u is not bijective");
    } else if (compose(sd.projection, out.u).map != pt.p.map) {
      out.verdict = Verdict::fail("projection . u != p");
    } else if (compose(out.u, pt.s).map != sd.q_injection.map) {
      out.verdict = Verdict::fail("u . s != Q-injection");
    } else {
      out.verdict = Verdict::pass("u is an isomorphism of points");
    }
    return out;
  }

  Verdict verify_omega_loop(OmegaLoopSpec const& spec, FiniteAlgebra const& alg) {
    auto x    = Term::variable(0);
    auto y    = Term::variable(1);
    auto plus = [&](Term const& l, Term const& r) { return spec.plus.substitute({l, r}); };
    auto minus = [&](Term const& l, Term const& r) { return spec.minus.substitute({l, r}); };
    std::pair<char const*, Equation> laws[] = {
        {"x+0=x", Equation::make(plus(x, spec.zero), x)},
        {"0+x=x", Equation::make(plus(spec.zero, x), x)},
        {"(x+y)-y=x", Equation::make(minus(plus(x, y), y), x)},
        {"(x-y)+y=x", Equation::make(plus(minus(x, y), y), x)},
    };
    for (auto const& [name, eq] : laws) {
      auto v = satisfies(alg, eq);
      if (!v.holds) {
        std::string env;
        for (auto e : *v.witness) {
          env += (env.empty() ? "" : ",") + std::to_string(e);
        }
        return Verdict::fail(std::string(name) + " fails on " + alg.name() + " at (" + env + ")");
      }
    }
    return Verdict::pass();
  }

  bool Reconstruction::holds() const {
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.second.holds; });
  }

  Reconstruction reconstruct_omega_loop_point(OmegaLoopSpec const& spec, SplitPoint const& pt) {
    if (!pt.top_a || !pt.top_b) {
      throw PreconditionError("point " + pt.name + " carries no topologies");
    }
    auto a = pt.p.dom;
    auto b = pt.p.cod;
    for (auto const& m : {a, b}) {
      if (m->theory() != spec.theory && !(*m->theory() == *spec.theory)) {
        throw PreconditionError(m->name() + " is not a model of " + spec.theory->name);
      }
      if (auto v = verify_omega_loop(spec, *m); !v) {
        throw PreconditionError(v.detail);
      }
    }
    check_hom_shape(pt.p);
    check_hom_shape(pt.s);
    if (!check_hom(pt.p).holds || !check_hom(pt.s).holds) {
      throw PreconditionError("p and s must be homomorphisms");
    }
    for (Element y = 0; y < b->size(); ++y) {
      if (pt.p(pt.s(y)) != y) {
        throw PreconditionError("p . s != id at " + std::to_string(y));
      }
    }
    auto ta = certified(a, pt.top_a);
    auto tb = certified(b, pt.top_b);
    if (!is_continuous({pt.top_a, pt.top_b, pt.p.map}) || !is_continuous({pt.top_b, pt.top_a, pt.s.map})) {
      throw PreconditionError("p and s must be continuous");
    }

    auto const&           sig = a->signature();
    detail::CompiledTerm  zero(sig, spec.zero);
    detail::CompiledTerm  plus(sig, spec.plus);
    detail::CompiledTerm  minus(sig, spec.minus);
    auto                  add = [&](Element l, Element r) {
      Element env[] = {l, r};
      return plus.eval(*a, env);
    };
    auto sub = [&](Element l, Element r) {
      Element env[] = {l, r};
      return minus.eval(*a, env);
    };
    Element zero_b = zero.eval(*b, {});

    Reconstruction rec;
    for (Element x = 0; x < a->size(); ++x) {
      if (pt.p(x) == zero_b) {
        rec.kernel.push_back(x);
      }
    }
    std::size_t nx = rec.kernel.size(), nb = b->size(), n = nx * nb;
    std::vector<Element> index(a->size(), nx);
    for (Element i = 0; i < nx; ++i) {
      index[rec.kernel[i]] = i;
    }

    rec.zeta.resize(n);
    for (Element i = 0; i < nx; ++i) {
      for (Element y = 0; y < nb; ++y) {
        rec.zeta[i * nb + y] = add(rec.kernel[i], pt.s(y));
      }
    }
    rec.chi.resize(a->size());
    bool chi_defined = true;
    for (Element x = 0; x < a->size(); ++x) {
      Element d = index[sub(x, pt.s(pt.p(x)))];
      if (d == nx) {
        chi_defined = false;
        break;
      }
      rec.chi[x] = d * nb + pt.p(x);
    }
    if (!chi_defined) {
      rec.checks.emplace_back("chi", Verdict::fail("a - s p(a) leaves the kernel"));
      return rec;
    }
    bool inverse_pair = true;
    for (Element x = 0; x < a->size() && inverse_pair; ++x) {
      inverse_pair = rec.zeta[rec.chi[x]] == x;
    }
    for (Element c = 0; c < n && inverse_pair; ++c) {
      inverse_pair = rec.chi[rec.zeta[c]] == c;
    }
    rec.checks.emplace_back("zeta/chi inverse",
                            inverse_pair ? Verdict::pass()
                                         : Verdict::fail("chi . zeta or zeta . chi is not the identity"));
    if (!inverse_pair) {
      return rec;
    }

    // Transport every operation and compare with the explicit formula.
    std::vector<std::vector<Element>> tables(sig.size());
    Verdict second = Verdict::pass(), first = Verdict::pass();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t k = sig[op].arity;
      auto&       t = tables[op];
      t.resize(checked_power(n, k));
      std::vector<Element> lifted(k), bs(k), sbs(k);
      for_each_tuple(n, k, [&](std::span<Element const> args) {
        for (std::size_t i = 0; i < k; ++i) {
          lifted[i] = rec.zeta[args[i]];
          bs[i]     = args[i] % nb;
          sbs[i]    = pt.s(bs[i]);
        }
        Element value = a->apply(op, lifted);
        Element c     = rec.chi[value];
        std::size_t at = 0;
        for (auto x : args) {
          at = at * n + x;
        }
        t[at] = c;
        Element wb    = b->apply(op, bs);
        if (second && c % nb != wb) {
          second = Verdict::fail(sig[op].name + ": second component differs from omega_B");
        }
        if (first && rec.kernel[c / nb] != sub(value, pt.s(wb))) {
          first = Verdict::fail(sig[op].name + ": first component differs from the formula");
        }
        return true;
      });
    }
    rec.checks.emplace_back("(i) second component", second);
    rec.checks.emplace_back("(ii) first component", first);

    auto prod_top = std::make_shared<FiniteTopology const>(
        product_topology(subspace_topology(*pt.top_a, rec.kernel), *pt.top_b));
    std::vector<PointSet> moved(n, PointSet(n));
    for (Element x = 0; x < a->size(); ++x) {
      for (auto y : members(pt.top_a->minimal_open(x))) {
        moved[rec.chi[x]].set(rec.chi[y]);
      }
    }
    auto transported = FiniteTopology::from_minimal_opens(std::move(moved));
    rec.checks.emplace_back("(iii) product topology",
                            transported == *prod_top
                                ? Verdict::pass()
                                : Verdict::fail("transported topology differs from X x B"));

    bool zeta_cont = is_continuous({prod_top, pt.top_a, rec.zeta}).holds;
    bool chi_cont  = is_continuous({pt.top_a, prod_top, rec.chi}).holds;
    rec.checks.emplace_back("(iv) continuity",
                            zeta_cont && chi_cont
                                ? Verdict::pass()
                                : Verdict::fail(zeta_cont ? "chi is not continuous"
                                                          : "zeta is not continuous"));

    auto alg = std::make_shared<FiniteAlgebra const>(
        "XxB", a->theory(), n, std::move(tables));
    auto cert = certify(alg, prod_top);
    if (cert.algebra) {
      rec.product = *cert.algebra;
    } else {
      rec.product = {alg, prod_top, {}};
      rec.checks.emplace_back("certified",
                              Verdict::fail(cert.failed_symbol + " is not continuous on X x B"));
    }
    return rec;
  }

}  // namespace ualg
