#include "ualg/topalg.hpp"

#include <algorithm>
#include <map>

#include "ualg/detail/compiled_term.hpp"
#include "ualg/error.hpp"
#include "ualg/group.hpp"

namespace ualg {

  namespace {

    void require_witness(TopAlgebra const& t, ProtomodularWitness const& w) {
      auto const v = check_protomodular_witness(*t.alg, w).summary();
      if (!v) {
        throw PreconditionError("witness invalid on '" + t.alg->name() + "': " + v.detail);
      }
    }

    std::vector<Element> constant_values(TopAlgebra const& t, ProtomodularWitness const& w) {
      std::vector<Element> out;
      for (auto const& e : w.constants) {
        out.push_back(eval_term(*t.alg, e, {}));
      }
      return out;
    }

    std::string yes_no(bool b) {
      return b ? "true" : "false";
    }

  }  // namespace

  CertifyResult certify(AlgebraPtr const& alg, TopologyPtr const& top) {
    if (alg->size() != top->size()) {
      throw ShapeError("algebra '" + alg->name() + "' has "
                       + std::to_string(alg->size()) + " elements but the topology has "
                       + std::to_string(top->size()) + " points");
    }
    // On finite spaces f is continuous iff f(U_a) lies in U_f(a) for every
    // point a; in the product, U_(a_1..a_k) = U_a_1 x ... x U_a_k. This
    // avoids materialising the k-fold power topology.
    auto const&                       sig = alg->signature();
    auto const                        n   = alg->size();
    std::vector<std::vector<Element>> nbhd(n);
    for (Element a = 0; a < n; ++a) {
      nbhd[a] = members(top->minimal_open(a));
    }
    CertifyResult out;
    TopAlgebra    t{alg, top, {}};
    for (std::size_t op = 0; op < sig.size(); ++op) {
      auto const           k = sig[op].arity;
      std::vector<Element> pos(k), b(k);
      std::optional<Element> bad;
      for_each_tuple(n, k, [&](std::span<Element const> a) {
        auto const& target = top->minimal_open(alg->apply(op, a));
        std::fill(pos.begin(), pos.end(), 0);
        while (true) {
          for (std::size_t i = 0; i < k; ++i) {
            b[i] = nbhd[a[i]][pos[i]];
          }
          if (!target.test(alg->apply(op, b))) {
            bad = alg->apply(op, a);
            return false;
          }
          std::size_t i = k;
          while (i > 0 && ++pos[i - 1] == nbhd[a[i - 1]].size()) {
            pos[--i] = 0;
          }
          if (i == 0) {
            return true;
          }
        }
      });
      if (bad) {
        out.failed_symbol = sig[op].name;
        out.failed_open   = top->minimal_open(*bad);
        return out;
      }
      t.certified.push_back(sig[op].name);
    }
    out.algebra = std::move(t);
    return out;
  }

  TopAlgebra certified(AlgebraPtr const& alg, TopologyPtr const& top) {
    auto r = certify(alg, top);
    if (!r.algebra) {
      throw PreconditionError("'" + r.failed_symbol + "' of '" + alg->name()
                              + "' is not continuous: preimage of "
                              + format_set(*r.failed_open) + " is not open");
    }
    return std::move(*r.algebra);
  }

  Verdict homogeneity_check(TopAlgebra const& t) {
    GroupView const g(t.alg);
    auto const      n = g.order();
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        auto const           c = g.mul(b, g.inv(a));
        std::vector<Element> map(n);
        for (Element x = 0; x < n; ++x) {
          map[x] = g.mul(c, x);
        }
        if (map[a] != b) {
          return Verdict::fail("translation does not carry " + std::to_string(a)
                               + " to " + std::to_string(b));
        }
        if (!is_homeomorphism(ContinuousMap{t.top, t.top, map})) {
          return Verdict::fail("translation carrying " + std::to_string(a) + " to "
                               + std::to_string(b) + " is not a homeomorphism");
        }
      }
    }
    return Verdict::pass();
  }

  Verdict hausdorff_iff_constants_closed(TopAlgebra const& t, ProtomodularWitness const& w) {
    require_witness(t, w);
    bool closed = true;
    for (auto e : constant_values(t, w)) {
      PointSet s = t.top->empty_set();
      s.set(e);
      closed = closed && t.top->is_closed(s);
    }
    bool const hausdorff = separation_report(*t.top).hausdorff;
    std::string detail = "constants closed: " + yes_no(closed) + ", hausdorff: " + yes_no(hausdorff);
    return closed == hausdorff ? Verdict::pass(detail) : Verdict::fail(detail);
  }

  Verdict regularity_check(TopAlgebra const& t, ProtomodularWitness const& w) {
    require_witness(t, w);
    return separation_report(*t.top).regular ? Verdict::pass()
                                              : Verdict::fail("space is not regular");
  }

  Verdict open_subalgebra_closed(TopAlgebra const&           t,
                                 std::vector<Element> const& sub,
                                 ProtomodularWitness const&  w) {
    require_witness(t, w);
    if (!is_subalgebra(*t.alg, sub)) {
      throw PreconditionError("subset is not a subalgebra");
    }
    auto const s = make_set(t.alg->size(), sub);
    if (!t.top->is_open(s)) {
      throw PreconditionError("subalgebra " + format_set(s) + " is not open");
    }
    return t.top->is_closed(s) ? Verdict::pass()
                               : Verdict::fail("open subalgebra " + format_set(s) + " is not closed");
  }

  Verdict closure_is_subalgebra(TopAlgebra const& t, std::vector<Element> const& sub) {
    if (!is_subalgebra(*t.alg, sub)) {
      throw PreconditionError("subset is not a subalgebra");
    }
    auto const c       = t.top->closure(make_set(t.alg->size(), sub));
    auto const closure = members(c);
    if (subalgebra_closure(*t.alg, closure) != closure) {
      return Verdict::fail("closure " + format_set(c) + " is not a subalgebra");
    }
    return Verdict::pass("closure " + format_set(c));
  }

  Verdict neighborhood_base_check(TopAlgebra const&          t,
                                  ProtomodularWitness const& w,
                                  Element                    a) {
    require_witness(t, w);
    auto const  n      = t.alg->size();
    auto const& sig    = t.alg->signature();
    auto const  consts = constant_values(t, w);

    // The family is monotone in each U_i, so its smallest member comes from
    // the minimal opens U_{e_i}, and it is a base at a iff that member is U_a.
    // Members are open iff each preimage of an open around e_i is open; the
    // least such open through a point y is U_{e_i} u U_y.
    PointSet smallest = t.top->full_set();
    for (std::size_t i = 0; i < w.n(); ++i) {
      detail::CompiledTerm const c(sig, w.alphas[i]);
      std::vector<Element>       slice(n);
      for (Element x = 0; x < n; ++x) {
        std::vector<Element> env{x, a};
        slice[x] = c.eval(*t.alg, env);
      }
      auto const& ue = t.top->minimal_open(consts[i]);
      for (Element x = 0; x < n; ++x) {
        auto const around = ue | t.top->minimal_open(slice[x]);
        for (auto y : members(t.top->minimal_open(x))) {
          if (!around.test(slice[y])) {
            return Verdict::fail("preimage of " + format_set(around) + " under alpha_" + std::to_string(i + 1)
                                 + "(-, " + std::to_string(a) + ") is not open");
          }
        }
      }
      PointSet pre(n);
      for (Element x = 0; x < n; ++x) {
        if (ue.test(slice[x])) {
          pre.set(x);
        }
      }
      smallest &= pre;
    }
    if (!smallest.test(a)) {
      return Verdict::fail(format_set(smallest) + " is not a neighbourhood of " + std::to_string(a));
    }
    if (smallest != t.top->minimal_open(a)) {
      return Verdict::fail("open " + format_set(t.top->minimal_open(a)) + " around " + std::to_string(a)
                           + " contains no member of the family");
    }
    return Verdict::pass("smallest member " + format_set(smallest));
  }

  Verdict iota_theta_check(TopAlgebra const& t, ProtomodularWitness const& w, Element a) {
    require_witness(t, w);
    auto const  n   = t.alg->size();
    auto const  k   = w.n();
    auto const& sig = t.alg->signature();
    auto const  power = std::make_shared<FiniteTopology const>(power_topology(*t.top, k));
    auto const  points = power->size();

    std::vector<detail::CompiledTerm> alphas;
    for (auto const& alpha : w.alphas) {
      alphas.emplace_back(sig, alpha);
    }
    detail::CompiledTerm const theta(sig, w.theta);

    std::vector<Element> iota(n);
    for (Element x = 0; x < n; ++x) {
      std::vector<Element> env{x, a};
      std::size_t          idx = 0;
      for (auto const& c : alphas) {
        idx = idx * n + c.eval(*t.alg, env);
      }
      iota[x] = idx;
    }
    std::vector<Element> theta_a(points);
    for_each_tuple(n, k, [&](std::span<Element const> ys) {
      std::vector<Element> args(ys.begin(), ys.end());
      args.push_back(a);
      std::size_t idx = 0;
      for (auto y : ys) {
        idx = idx * n + y;
      }
      theta_a[idx] = theta.eval(*t.alg, args);
      return true;
    });

    if (!is_continuous(ContinuousMap{t.top, power, iota})) {
      return Verdict::fail("iota_" + std::to_string(a) + " is not continuous");
    }
    if (!is_continuous(ContinuousMap{power, t.top, theta_a})) {
      return Verdict::fail("theta_" + std::to_string(a) + " is not continuous");
    }
    for (Element x = 0; x < n; ++x) {
      if (theta_a[iota[x]] != x) {
        return Verdict::fail("theta_a . iota_a moves " + std::to_string(x));
      }
    }
    std::size_t e_idx = 0;
    for (auto e : constant_values(t, w)) {
      e_idx = e_idx * n + e;
    }
    if (iota[a] != e_idx) {
      return Verdict::fail("iota_a(a) is not (e_1, ..., e_n)");
    }
    return Verdict::pass();
  }

  ContinuousMap underlying_map(TopHom const& f) {
    return ContinuousMap{f.dom.top, f.cod.top, f.hom.map};
  }

  RegularEpiReport regular_epi_iff_open_surjection(TopHom const& f, MaltsevWitness const& w) {
    if (auto v = check_maltsev_witness(*f.dom.alg, w); !v) {
      throw PreconditionError("no Maltsev witness on '" + f.dom.alg->name() + "': " + v.detail);
    }
    if (!check_hom(f.hom).holds) {
      throw PreconditionError("'" + f.hom.name + "' is not a homomorphism");
    }
    auto const map = underlying_map(f);
    if (!is_continuous(map)) {
      throw PreconditionError("'" + f.hom.name + "' is not continuous");
    }
    RegularEpiReport r;
    r.surjective = is_surjective(f.hom);
    if (r.surjective) {
      r.quotient_topology = quotient_topology(*f.dom.top, f.hom.map, f.cod.alg->size()) == *f.cod.top;
    }
    r.open            = is_open_map(map).holds;
    r.regular_epi     = r.surjective && r.quotient_topology;
    r.open_surjection = r.surjective && r.open;
    std::string detail = "regular epi: " + yes_no(r.regular_epi)
                       + ", open surjection: " + yes_no(r.open_surjection);
    r.verdict = r.regular_epi == r.open_surjection ? Verdict::pass(detail) : Verdict::fail(detail);
    return r;
  }

  PullbackReport pullback_stability_check(TopHom const&         f,
                                          TopHom const&         g,
                                          MaltsevWitness const& w) {
    auto const fr = regular_epi_iff_open_surjection(f, w);
    if (!fr.regular_epi) {
      throw PreconditionError("'" + f.hom.name + "' is not a regular epimorphism");
    }
    if (f.cod.alg->name() != g.cod.alg->name() || f.cod.alg->size() != g.cod.alg->size()) {
      throw PreconditionError("'" + f.hom.name + "' and '" + g.hom.name
                              + "' do not share a codomain");
    }
    if (!check_hom(g.hom).holds || !is_continuous(underlying_map(g))) {
      throw PreconditionError("'" + g.hom.name + "' is not a continuous homomorphism");
    }
    auto const m    = g.dom.alg->size();
    auto const prod = product(f.dom.alg, g.dom.alg);
    PullbackReport r;
    std::vector<Element> subset;
    for (Element s = 0; s < f.dom.alg->size(); ++s) {
      for (Element t = 0; t < m; ++t) {
        if (f.hom(s) == g.hom(t)) {
          r.pairs.emplace_back(s, t);
          subset.push_back(s * m + t);
        }
      }
    }
    auto const sub = make_subalgebra(prod.algebra, subset,
                                     f.dom.alg->name() + "x_" + g.dom.alg->name());
    auto const top = std::make_shared<FiniteTopology const>(subspace_topology(
        product_topology(*f.dom.top, *g.dom.top), subset));
    auto cert = certify(sub.algebra, top);
    if (!cert.algebra) {
      r.pullback = TopAlgebra{sub.algebra, top, {}};
      r.verdict  = Verdict::fail("pullback is not a topological algebra");
      return r;
    }
    r.pullback = std::move(*cert.algebra);
    std::vector<Element> pi;
    for (auto const& [s, t] : r.pairs) {
      pi.push_back(t);
    }
    r.projection = Homomorphism{"pi2", sub.algebra, g.dom.alg, pi};
    auto const map = ContinuousMap{top, g.dom.top, pi};
    bool const surjective = is_surjective(r.projection);
    bool const open       = is_open_map(map).holds;
    bool const hom        = check_hom(r.projection).holds && is_continuous(map).holds;
    std::string detail = "pullback of " + std::to_string(r.pairs.size())
                       + " points; projection surjective: " + yes_no(surjective)
                       + ", open: " + yes_no(open);
    r.verdict = (surjective && open && hom) ? Verdict::pass(detail) : Verdict::fail(detail);
    return r;
  }

}  // namespace ualg
