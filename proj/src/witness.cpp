#include "ualg/witness.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "ualg/detail/compiled_term.hpp"
#include "ualg/error.hpp"

namespace ualg {

  namespace {

    struct TableHash {
      std::size_t operator()(std::vector<Element> const& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) {
          h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
      }
    };

    using Predicate = std::function<bool(std::vector<Element> const&)>;

    // Breadth-first closure; stops as soon as `stop` accepts a new function.
    TermClone build_clone(AlgebraPtr const& alg,
                          std::size_t       arity,
                          std::size_t       budget,
                          Predicate const&  stop) {
      if (arity > max_clone_arity) {
        throw PreconditionError("clone arity " + std::to_string(arity)
                                + " exceeds the cap of "
                                + std::to_string(max_clone_arity));
      }
      auto const& sig    = alg->signature();
      auto const  n      = alg->size();
      auto const  points = checked_power(n, arity, 1u << 20);

      TermClone clone{alg, arity, {}, {}, true};
      std::unordered_map<std::vector<Element>, std::size_t, TableHash> index;

      auto add = [&](std::vector<Element> f, Term t) -> bool {
        auto [it, inserted] = index.emplace(f, clone.funcs.size());
        if (!inserted) {
          return false;
        }
        clone.funcs.push_back(std::move(f));
        clone.terms.push_back(std::move(t));
        if (clone.funcs.size() > budget) {
          throw BudgetExceededError(
              "clone of arity " + std::to_string(arity) + " on '" + alg->name()
              + "' exceeds the budget of " + std::to_string(budget)
              + " functions (partial size " + std::to_string(clone.funcs.size())
              + ")");
        }
        if (stop && stop(clone.funcs.back())) {
          clone.complete = false;
          return true;
        }
        return false;
      };

      // Level 0: projections.
      for (std::size_t i = 0; i < arity; ++i) {
        std::vector<Element> f;
        f.reserve(points);
        for_each_tuple(n, arity, [&](std::span<Element const> t) {
          f.push_back(t[i]);
          return true;
        });
        if (add(std::move(f), Term::variable(i))) {
          return clone;
        }
      }

      auto const  order      = sig.lexicographic_order();
      std::size_t prev_start = 0;
      std::size_t prev_end   = clone.funcs.size();
      bool        first_level = true;
      std::vector<Element> args;
      while (true) {
        for (auto op : order) {
          auto const k = sig[op].arity;
          if (k == 0) {
            if (first_level
                && add(std::vector<Element>(points, alg->apply(op, std::span<Element const>{})),
                       Term::apply(sig[op].name))) {
              return clone;
            }
            continue;
          }
          bool stopped = false;
          for_each_tuple(prev_end, k, [&](std::span<Element const> idx) {
            if (std::all_of(idx.begin(), idx.end(), [&](auto i) { return i < prev_start; })) {
              return true;
            }
            std::vector<Element> g(points);
            for (std::size_t p = 0; p < points; ++p) {
              args.clear();
              for (auto i : idx) {
                args.push_back(clone.funcs[i][p]);
              }
              g[p] = alg->apply(op, args);
            }
            if (index.count(g)) {
              return true;
            }
            std::vector<Term> sub;
            for (auto i : idx) {
              sub.push_back(clone.terms[i]);
            }
            stopped = add(std::move(g), Term::apply(sig[op].name, std::move(sub)));
            return !stopped;
          });
          if (stopped) {
            return clone;
          }
        }
        first_level = false;
        if (clone.funcs.size() == prev_end) {
          return clone;
        }
        prev_start = prev_end;
        prev_end   = clone.funcs.size();
      }
    }

    bool is_maltsev_table(std::vector<Element> const& f, std::size_t n) {
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          if (f[(a * n + a) * n + b] != b || f[(a * n + b) * n + b] != a) {
            return false;
          }
        }
      }
      return true;
    }

    std::string format_env(std::vector<Element> const& env) {
      std::string out = "(";
      for (std::size_t i = 0; i < env.size(); ++i) {
        if (i != 0) {
          out += ",";
        }
        out += std::to_string(env[i]);
      }
      return out + ")";
    }

  }  // namespace

  std::optional<std::size_t> TermClone::find(std::vector<Element> const& f) const {
    auto it = std::find(funcs.begin(), funcs.end(), f);
    if (it == funcs.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - funcs.begin());
  }

  TermClone generate_clone(AlgebraPtr const& alg, std::size_t arity, std::size_t budget) {
    return build_clone(alg, arity, budget, nullptr);
  }

  Term ProtomodularWitness::maltsev_composite() const {
    std::vector<Term> args;
    for (auto const& a : alphas) {
      args.push_back(a.substitute({Term::variable(0), Term::variable(1)}));
    }
    args.push_back(Term::variable(2));
    return theta.substitute(args);
  }

  ProtomodularWitness group_protomodular_witness() {
    auto const x = Term::variable(0), y = Term::variable(1);
    return {{Term::apply("e")},
            {Term::apply("mul", {x, Term::apply("inv", {y})})},
            Term::apply("mul", {x, y})};
  }

  MaltsevWitness group_maltsev_witness() {
    auto const x = Term::variable(0), y = Term::variable(1), z = Term::variable(2);
    return {Term::apply("mul", {x, Term::apply("mul", {Term::apply("inv", {y}), z})})};
  }

  MaltsevSearch has_maltsev_term_operation(AlgebraPtr const& alg, std::size_t budget) {
    MaltsevSearch out;
    auto const    n = alg->size();
    try {
      auto clone = build_clone(alg, 3, budget, [n](auto const& f) {
        return is_maltsev_table(f, n);
      });
      out.clone_size = clone.size();
      if (!clone.complete) {
        out.decision = Decision::yes;
        out.term     = clone.terms.back();
        out.detail   = "Maltsev term operation " + to_string(*out.term)
                     + " (found after " + std::to_string(clone.size())
                     + " clone functions)";
      } else {
        out.decision = Decision::no;
        out.detail   = "no Maltsev term operation (clone exhausted, size "
                     + std::to_string(clone.size()) + ")";
      }
    } catch (BudgetExceededError const& e) {
      out.decision = Decision::unknown;
      out.detail   = std::string("unknown: ") + e.what();
    }
    return out;
  }

  Verdict check_maltsev_witness(FiniteAlgebra const& alg, MaltsevWitness const& w) {
    detail::CompiledTerm const p(alg.signature(), w.p);
    if (p.var_bound() > 3) {
      throw PreconditionError("Maltsev witness uses more than three variables");
    }
    auto const n = alg.size();
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        std::vector<Element> env{a, a, b};
        if (p.eval(alg, env) != b) {
          return Verdict::fail("p(x,x,y) = y fails at (x,y) = " + format_env({a, b}));
        }
        env = {a, b, b};
        if (p.eval(alg, env) != a) {
          return Verdict::fail("p(x,y,y) = x fails at (x,y) = " + format_env({a, b}));
        }
      }
    }
    return Verdict::pass();
  }

  bool ProtomodularVerdict::holds() const {
    return std::all_of(laws.begin(), laws.end(), [](auto const& l) { return l.holds; });
  }

  Verdict ProtomodularVerdict::summary() const {
    for (auto const& l : laws) {
      if (!l.holds) {
        return Verdict::fail(l.law + " fails at (x,y) = " + format_env(*l.witness));
      }
    }
    return Verdict::pass();
  }

  ProtomodularVerdict check_protomodular_witness(FiniteAlgebra const&       alg,
                                                 ProtomodularWitness const& w) {
    auto const nw = w.n();
    if (w.constants.size() != nw || nw == 0) {
      throw PreconditionError("protomodular witness needs n >= 1 constants and alphas");
    }
    auto const&                       sig = alg.signature();
    std::vector<detail::CompiledTerm> consts, alphas;
    for (std::size_t i = 0; i < nw; ++i) {
      consts.emplace_back(sig, w.constants[i]);
      alphas.emplace_back(sig, w.alphas[i]);
      if (consts.back().var_bound() != 0) {
        throw PreconditionError("e_" + std::to_string(i + 1) + " is not a closed term");
      }
      if (alphas.back().var_bound() > 2) {
        throw PreconditionError("alpha_" + std::to_string(i + 1) + " is not binary");
      }
    }
    detail::CompiledTerm const theta(sig, w.theta);
    if (theta.var_bound() > nw + 1) {
      throw PreconditionError("theta has more than n + 1 variables");
    }

    ProtomodularVerdict out;
    auto const          n = alg.size();
    for (std::size_t i = 0; i < nw; ++i) {
      LawVerdict law{"alpha_" + std::to_string(i + 1) + "(x,x) = e_" + std::to_string(i + 1)};
      auto const e = consts[i].eval(alg, {});
      for (Element x = 0; x < n && law.holds; ++x) {
        std::vector<Element> env{x, x};
        if (alphas[i].eval(alg, env) != e) {
          law.holds   = false;
          law.witness = env;
        }
      }
      out.laws.push_back(std::move(law));
    }
    LawVerdict law{"theta(alpha_1(x,y),...,alpha_n(x,y),y) = x"};
    for (Element x = 0; x < n && law.holds; ++x) {
      for (Element y = 0; y < n && law.holds; ++y) {
        std::vector<Element> env{x, y}, args;
        for (auto const& a : alphas) {
          args.push_back(a.eval(alg, env));
        }
        args.push_back(y);
        if (theta.eval(alg, args) != x) {
          law.holds   = false;
          law.witness = env;
        }
      }
    }
    out.laws.push_back(std::move(law));
    return out;
  }

  Verdict check_semiabelian_preconditions(Theory const&                  th,
                                          ProtomodularWitness const&     w,
                                          std::vector<AlgebraPtr> const& models) {
    auto const consts = th.signature.constants();
    if (consts.size() != 1) {
      return Verdict::fail("theory '" + th.name + "' has "
                           + std::to_string(consts.size())
                           + " constant symbols, a semi-abelian witness needs exactly one");
    }
    auto const& name = th.signature[consts.front()].name;
    for (auto const& e : w.constants) {
      if (e != Term::apply(name)) {
        return Verdict::fail("witness constant " + to_string(e) + " is not the constant " + name);
      }
    }
    for (auto const& m : models) {
      auto v = check_protomodular_witness(*m, w).summary();
      if (!v) {
        return Verdict::fail("model '" + m->name() + "': " + v.detail);
      }
    }
    return Verdict::pass("holds on all " + std::to_string(models.size())
                         + " registered models");
  }

  ProtomodularSearch search_protomodular_witness(AlgebraPtr const& alg,
                                                 std::size_t       max_n,
                                                 std::size_t       budget) {
    ProtomodularSearch out;
    auto const         n = alg->size();
    try {
      auto const closed = generate_clone(alg, 0, budget);
      auto const binary = generate_clone(alg, 2, budget);

      // Candidate alphas: binary term operations with alpha(x,x) equal to
      // the value of a closed term.
      std::vector<std::size_t> alphas;
      std::vector<std::size_t> alpha_const;
      for (std::size_t i = 0; i < binary.size(); ++i) {
        auto const& f = binary.funcs[i];
        auto const  c = f[0];
        bool        diagonal_constant = true;
        for (Element x = 0; x < n && diagonal_constant; ++x) {
          diagonal_constant = f[x * n + x] == c;
        }
        if (!diagonal_constant) {
          continue;
        }
        if (auto k = closed.find(std::vector<Element>{c})) {
          alphas.push_back(i);
          alpha_const.push_back(*k);
        }
      }

      for (std::size_t nw = 1; nw <= max_n; ++nw) {
        if (alphas.empty()) {
          break;
        }
        auto const  thetas = nw == 1 ? binary : generate_clone(alg, nw + 1, budget);
        std::size_t found_theta = thetas.size();
        std::vector<std::size_t> pick;
        for_each_tuple(alphas.size(), nw, [&](std::span<Element const> choice) {
          // Row-major index of (alpha_1(x,y), ..., alpha_n(x,y), y).
          std::vector<std::size_t> at(n * n);
          for (Element x = 0; x < n; ++x) {
            for (Element y = 0; y < n; ++y) {
              std::size_t idx = 0;
              for (auto c : choice) {
                idx = idx * n + binary.funcs[alphas[c]][x * n + y];
              }
              at[x * n + y] = idx * n + y;
            }
          }
          for (std::size_t t = 0; t < thetas.size(); ++t) {
            bool ok = true;
            for (Element x = 0; x < n && ok; ++x) {
              for (Element y = 0; y < n && ok; ++y) {
                ok = thetas.funcs[t][at[x * n + y]] == x;
              }
            }
            if (ok) {
              found_theta = t;
              pick.assign(choice.begin(), choice.end());
              return false;
            }
          }
          return true;
        });
        if (found_theta != thetas.size()) {
          ProtomodularWitness w;
          for (auto c : pick) {
            w.constants.push_back(closed.terms[alpha_const[c]]);
            w.alphas.push_back(binary.terms[alphas[c]]);
          }
          w.theta      = thetas.terms[found_theta];
          out.decision = Decision::yes;
          out.witness  = std::move(w);
          out.detail   = "witness with n = " + std::to_string(nw);
          return out;
        }
      }
      out.decision = Decision::no;
      out.detail   = "no witness with n <= " + std::to_string(max_n)
                   + " on this algebra (not a proof at theory level)";
    } catch (BudgetExceededError const& e) {
      out.decision = Decision::unknown;
      out.detail   = std::string("unknown: ") + e.what();
    }
    return out;
  }

}  // namespace ualg
