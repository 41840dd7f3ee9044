#include "ualg/algebra.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <numeric>
#include <set>

#include "ualg/detail/compiled_term.hpp"
#include "ualg/error.hpp"

namespace ualg {

  FiniteAlgebra::FiniteAlgebra(std::string                       name,
                               TheoryPtr                         theory,
                               std::size_t                       size,
                               std::vector<std::vector<Element>> tables)
      : _name(std::move(name)),
        _theory(std::move(theory)),
        _size(size),
        _tables(std::move(tables)) {
    if (!_theory) {
      throw PreconditionError("algebra '" + _name + "' has no theory");
    }
    if (_size == 0) {
      throw ShapeError("algebra '" + _name + "' has an empty carrier");
    }
    auto const& sig = _theory->signature;
    if (_tables.size() != sig.size()) {
      throw ShapeError("algebra '" + _name + "' has "
                       + std::to_string(_tables.size()) + " tables but "
                       + _theory->name + " has " + std::to_string(sig.size())
                       + " symbols");
    }
    for (std::size_t op = 0; op < sig.size(); ++op) {
      auto const expected = checked_power(_size, sig[op].arity);
      if (_tables[op].size() != expected) {
        throw ShapeError("table of '" + sig[op].name + "' in '" + _name
                         + "' has " + std::to_string(_tables[op].size())
                         + " entries, expected " + std::to_string(expected));
      }
      for (auto v : _tables[op]) {
        if (v >= _size) {
          throw ShapeError("table of '" + sig[op].name + "' in '" + _name
                           + "' has entry " + std::to_string(v)
                           + " outside the carrier");
        }
      }
    }
  }

  bool operator==(FiniteAlgebra const& a, FiniteAlgebra const& b) {
    return a._name == b._name && a._theory->name == b._theory->name
           && a._size == b._size && a._tables == b._tables;
  }

  bool operator==(Homomorphism const& a, Homomorphism const& b) {
    return a.name == b.name && a.dom->name() == b.dom->name()
           && a.cod->name() == b.cod->name() && a.map == b.map;
  }

  std::size_t checked_power(std::size_t n, std::size_t k, std::size_t cap) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (n != 0 && r > cap / n) {
        throw BudgetExceededError(std::to_string(n) + "^" + std::to_string(k)
                                  + " exceeds the budget of "
                                  + std::to_string(cap));
      }
      r *= n;
    }
    if (r > cap) {
      throw BudgetExceededError(std::to_string(n) + "^" + std::to_string(k)
                                + " = " + std::to_string(r)
                                + " exceeds the budget of "
                                + std::to_string(cap));
    }
    return r;
  }

  Element eval_term(FiniteAlgebra const&     alg,
                    Term const&              t,
                    std::span<Element const> env) {
    if (t.is_var()) {
      if (t.var >= env.size()) {
        throw PreconditionError("environment does not cover variable "
                                + std::to_string(t.var));
      }
      return env[t.var];
    }
    auto const& sig = alg.signature();
    auto const  op  = sig.index_of(t.symbol);
    if (sig[op].arity != t.args.size()) {
      throw ArityMismatchError("'" + t.symbol + "' expects "
                               + std::to_string(sig[op].arity)
                               + " argument(s), got "
                               + std::to_string(t.args.size()));
    }
    std::vector<Element> args;
    args.reserve(t.args.size());
    for (auto const& a : t.args) {
      args.push_back(eval_term(alg, a, env));
    }
    return alg.apply(op, args);
  }

  EquationVerdict satisfies(FiniteAlgebra const& alg, Equation const& eq) {
    detail::CompiledTerm const lhs(alg.signature(), eq.lhs);
    detail::CompiledTerm const rhs(alg.signature(), eq.rhs);
    if (std::max(lhs.var_bound(), rhs.var_bound()) > eq.nvars) {
      throw ShapeError("equation uses a variable outside its declared range");
    }
    EquationVerdict verdict;
    for_each_tuple(alg.size(), eq.nvars, [&](std::span<Element const> env) {
      if (lhs.eval(alg, env) != rhs.eval(alg, env)) {
        verdict.holds = false;
        verdict.witness.emplace(env.begin(), env.end());
        return false;
      }
      return true;
    });
    return verdict;
  }

  bool AxiomReport::all_hold() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](auto const& v) {
      return v.holds;
    });
  }

  AxiomReport is_algebra_of(FiniteAlgebra const& alg) {
    AxiomReport report;
    for (auto const& ax : alg.theory()->axioms) {
      report.verdicts.push_back(satisfies(alg, ax));
    }
    return report;
  }

  void check_hom_shape(Homomorphism const& f) {
    if (!f.dom || !f.cod) {
      throw PreconditionError("homomorphism '" + f.name
                              + "' lacks a domain or codomain");
    }
    if (f.dom->theory()->name != f.cod->theory()->name
        || f.dom->signature() != f.cod->signature()) {
      throw PreconditionError("'" + f.dom->name() + "' and '" + f.cod->name()
                              + "' are algebras over different theories");
    }
    if (f.map.size() != f.dom->size()) {
      throw ShapeError("map '" + f.name + "' has "
                       + std::to_string(f.map.size()) + " entries, expected "
                       + std::to_string(f.dom->size()));
    }
    for (auto v : f.map) {
      if (v >= f.cod->size()) {
        throw ShapeError("map '" + f.name + "' sends an element to "
                         + std::to_string(v) + ", outside '" + f.cod->name()
                         + "'");
      }
    }
  }

  HomVerdict check_hom(Homomorphism const& f) {
    check_hom_shape(f);
    auto const&          sig = f.dom->signature();
    HomVerdict           verdict;
    std::vector<Element> image_args;
    std::vector<std::size_t> order(sig.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::stable_sort(order, std::greater{}, [&](std::size_t op) { return sig[op].arity; });
    for (std::size_t op : order) {
      if (!verdict.holds) {
        break;
      }
      for_each_tuple(
          f.dom->size(), sig[op].arity, [&](std::span<Element const> args) {
            image_args.clear();
            for (auto a : args) {
              image_args.push_back(f.map[a]);
            }
            if (f.map[f.dom->apply(op, args)] != f.cod->apply(op, image_args)) {
              verdict.holds = false;
              verdict.witness
                  = HomFailure{sig[op].name, {args.begin(), args.end()}};
              return false;
            }
            return true;
          });
    }
    return verdict;
  }

  Product product(AlgebraPtr const& a, AlgebraPtr const& b, std::string name) {
    if (a->theory()->name != b->theory()->name) {
      throw PreconditionError("cannot multiply algebras over different theories");
    }
    if (name.empty()) {
      name = a->name() + "x" + b->name();
    }
    auto const& sig = a->signature();
    auto const  n = a->size(), m = b->size(), nm = n * m;
    std::vector<std::vector<Element>> tables;
    std::vector<Element>              left, right;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      auto const           k = sig[op].arity;
      std::vector<Element> table;
      table.reserve(checked_power(nm, k));
      for_each_tuple(nm, k, [&](std::span<Element const> args) {
        left.clear();
        right.clear();
        for (auto x : args) {
          left.push_back(x / m);
          right.push_back(x % m);
        }
        table.push_back(a->apply(op, left) * m + b->apply(op, right));
        return true;
      });
      tables.push_back(std::move(table));
    }
    auto alg = std::make_shared<FiniteAlgebra const>(
        std::move(name), a->theory(), nm, std::move(tables));
    Homomorphism p1{"pi1", alg, a, std::vector<Element>(nm)};
    Homomorphism p2{"pi2", alg, b, std::vector<Element>(nm)};
    for (Element x = 0; x < nm; ++x) {
      p1.map[x] = x / m;
      p2.map[x] = x % m;
    }
    return {alg, std::move(p1), std::move(p2)};
  }

  std::vector<Element> subalgebra_closure(FiniteAlgebra const&     alg,
                                          std::span<Element const> seed) {
    auto const&       sig = alg.signature();
    std::vector<char> in(alg.size(), 0);
    for (auto s : seed) {
      if (s >= alg.size()) {
        throw ShapeError("seed element " + std::to_string(s)
                         + " outside the carrier");
      }
      in[s] = 1;
    }
    // One-step closure to a fixpoint; arity-0 tables contribute constants.
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Element> members;
      for (Element x = 0; x < alg.size(); ++x) {
        if (in[x]) {
          members.push_back(x);
        }
      }
      std::vector<Element> args;
      for (std::size_t op = 0; op < sig.size(); ++op) {
        for_each_tuple(members.size(),
                       sig[op].arity,
                       [&](std::span<Element const> idx) {
                         args.clear();
                         for (auto i : idx) {
                           args.push_back(members[i]);
                         }
                         auto const r = alg.apply(op, args);
                         if (!in[r]) {
                           in[r]   = 1;
                           changed = true;
                         }
                         return true;
                       });
      }
    }
    std::vector<Element> out;
    for (Element x = 0; x < alg.size(); ++x) {
      if (in[x]) {
        out.push_back(x);
      }
    }
    return out;
  }

  bool is_subalgebra(FiniteAlgebra const& alg, std::span<Element const> subset) {
    auto closed = subalgebra_closure(alg, subset);
    std::vector<Element> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return closed == sorted;
  }

  std::vector<std::vector<Element>> enumerate_subalgebras(FiniteAlgebra const& alg,
                                                          std::size_t          budget) {
    std::set<std::vector<Element>> found;
    std::vector<std::vector<Element>> atoms;
    found.insert(subalgebra_closure(alg, {}));
    for (Element x = 0; x < alg.size(); ++x) {
      Element const seed[] = {x};
      auto          s      = subalgebra_closure(alg, seed);
      if (found.insert(s).second) {
        atoms.push_back(std::move(s));
      }
    }
    // Every subalgebra is the join of the one-generated ones it contains.
    std::vector<std::vector<Element>> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
      std::vector<std::vector<Element>> next;
      for (auto const& s : frontier) {
        for (auto const& a : atoms) {
          if (std::includes(s.begin(), s.end(), a.begin(), a.end())) {
            continue;
          }
          std::vector<Element> u;
          std::set_union(s.begin(), s.end(), a.begin(), a.end(), std::back_inserter(u));
          auto j = subalgebra_closure(alg, u);
          if (found.insert(j).second) {
            if (found.size() > budget) {
              throw BudgetExceededError("more than " + std::to_string(budget) + " subalgebras");
            }
            next.push_back(std::move(j));
          }
        }
      }
      frontier = std::move(next);
    }
    return {found.begin(), found.end()};
  }

  Subalgebra make_subalgebra(AlgebraPtr const&        alg,
                             std::span<Element const> subset,
                             std::string              name) {
    if (!is_subalgebra(*alg, subset)) {
      throw PreconditionError("subset is not closed under the operations of '"
                              + alg->name() + "'");
    }
    std::vector<Element> members(subset.begin(), subset.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::vector<Element> index(alg->size(), alg->size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      index[members[i]] = i;
    }
    auto const&                       sig = alg->signature();
    std::vector<std::vector<Element>> tables;
    std::vector<Element>              args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> table;
      for_each_tuple(members.size(),
                     sig[op].arity,
                     [&](std::span<Element const> idx) {
                       args.clear();
                       for (auto i : idx) {
                         args.push_back(members[i]);
                       }
                       table.push_back(index[alg->apply(op, args)]);
                       return true;
                     });
      tables.push_back(std::move(table));
    }
    if (name.empty()) {
      name = alg->name() + "_sub";
    }
    auto sub = std::make_shared<FiniteAlgebra const>(
        std::move(name), alg->theory(), members.size(), std::move(tables));
    return {sub, Homomorphism{"incl", sub, alg, members}};
  }

  namespace {

    // Depth-first search over maps a -> b in lexicographic order, pruning as
    // soon as a fully assigned tuple violates the homomorphism condition.
    class HomSearch {
     public:
      HomSearch(FiniteAlgebra const& a, FiniteAlgebra const& b, bool bijective)
          : _a(a),
            _b(b),
            _bijective(bijective),
            _map(a.size(), 0),
            _used(b.size(), 0) {}

      void run(std::function<bool(std::vector<Element> const&)> const& emit) {
        _emit = &emit;
        descend(0);
      }

     private:
      bool consistent(Element last) const {
        auto const&          sig = _a.signature();
        std::vector<Element> img;
        for (std::size_t op = 0; op < sig.size(); ++op) {
          bool ok = for_each_tuple(
              last + 1, sig[op].arity, [&](std::span<Element const> args) {
                auto const r = _a.apply(op, args);
                if (r > last) {
                  return true;
                }
                bool touches = (r == last);
                for (auto x : args) {
                  touches = touches || x == last;
                }
                if (!touches) {
                  return true;
                }
                img.clear();
                for (auto x : args) {
                  img.push_back(_map[x]);
                }
                return _map[r] == _b.apply(op, img);
              });
          if (!ok) {
            return false;
          }
        }
        return true;
      }

      bool descend(Element i) {
        if (i == _a.size()) {
          return (*_emit)(_map);
        }
        for (Element v = 0; v < _b.size(); ++v) {
          if (_bijective && _used[v]) {
            continue;
          }
          _map[i]  = v;
          _used[v] = 1;
          bool keep_going = true;
          if (consistent(i)) {
            keep_going = descend(i + 1);
          }
          _used[v] = 0;
          if (!keep_going) {
            return false;
          }
        }
        return true;
      }

      FiniteAlgebra const&                                    _a;
      FiniteAlgebra const&                                    _b;
      bool                                                    _bijective;
      std::vector<Element>                                    _map;
      std::vector<char>                                       _used;
      std::function<bool(std::vector<Element> const&)> const* _emit = nullptr;
    };

  }  // namespace

  std::vector<Homomorphism> enumerate_homs(AlgebraPtr const& a,
                                           AlgebraPtr const& b,
                                           std::size_t       budget) {
    if (a->theory()->name != b->theory()->name) {
      throw PreconditionError("cannot enumerate homomorphisms between "
                              "algebras over different theories");
    }
    try {
      checked_power(b->size(), a->size(), budget);
    } catch (BudgetExceededError const&) {
      throw BudgetExceededError(
          "enumerating maps " + a->name() + " -> " + b->name() + " needs "
          + std::to_string(b->size()) + "^" + std::to_string(a->size())
          + " candidates, over the budget of " + std::to_string(budget));
    }
    std::vector<Homomorphism> out;
    HomSearch                 search(*a, *b, false);
    search.run([&](std::vector<Element> const& map) {
      out.push_back(Homomorphism{"h" + std::to_string(out.size()), a, b, map});
      return true;
    });
    return out;
  }

  std::optional<Homomorphism> find_isomorphism(AlgebraPtr const& a,
                                               AlgebraPtr const& b) {
    if (a->size() != b->size() || a->theory()->name != b->theory()->name) {
      return std::nullopt;
    }
    std::optional<Homomorphism> found;
    HomSearch                   search(*a, *b, true);
    search.run([&](std::vector<Element> const& map) {
      found = Homomorphism{"iso", a, b, map};
      return false;
    });
    return found;
  }

  Homomorphism identity_hom(AlgebraPtr const& a) {
    std::vector<Element> map(a->size());
    std::iota(map.begin(), map.end(), 0);
    return {"id", a, a, std::move(map)};
  }

  Homomorphism compose(Homomorphism const& g, Homomorphism const& f) {
    if (f.cod->size() != g.dom->size()) {
      throw PreconditionError("cannot compose '" + g.name + "' after '"
                              + f.name + "': codomain/domain mismatch");
    }
    std::vector<Element> map(f.map.size());
    for (std::size_t x = 0; x < map.size(); ++x) {
      map[x] = g.map[f.map[x]];
    }
    return {g.name + "." + f.name, f.dom, g.cod, std::move(map)};
  }

  bool is_injective(Homomorphism const& f) {
    std::vector<char> seen(f.cod->size(), 0);
    for (auto v : f.map) {
      if (seen[v]) {
        return false;
      }
      seen[v] = 1;
    }
    return true;
  }

  bool is_surjective(Homomorphism const& f) {
    return image(f).size() == f.cod->size();
  }

  bool is_bijective(Homomorphism const& f) {
    return is_injective(f) && is_surjective(f);
  }

  std::vector<Element> image(Homomorphism const& f) {
    std::vector<Element> img(f.map);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
  }

  Homomorphism inverse(Homomorphism const& f) {
    if (!is_bijective(f)) {
      throw PreconditionError("'" + f.name + "' is not bijective");
    }
    std::vector<Element> map(f.map.size());
    for (std::size_t x = 0; x < map.size(); ++x) {
      map[f.map[x]] = x;
    }
    return {f.name + "^-1", f.cod, f.dom, std::move(map)};
  }

  AlgebraPtr trivial_algebra(TheoryPtr const& theory, std::string name) {
    std::vector<std::vector<Element>> tables(theory->signature.size(),
                                             std::vector<Element>{0});
    if (name.empty()) {
      name = "trivial";
    }
    return std::make_shared<FiniteAlgebra const>(
        std::move(name), theory, 1, std::move(tables));
  }

  AlgebraPtr relabel(FiniteAlgebra const&     alg,
                     std::span<Element const> perm,
                     std::string              name) {
    auto const n = alg.size();
    if (perm.size() != n) {
      throw ShapeError("relabelling has the wrong length");
    }
    std::vector<Element> inv(n, n);
    for (Element x = 0; x < n; ++x) {
      if (perm[x] >= n || inv[perm[x]] != n) {
        throw ShapeError("relabelling is not a permutation");
      }
      inv[perm[x]] = x;
    }
    auto const&                       sig = alg.signature();
    std::vector<std::vector<Element>> tables;
    std::vector<Element>              args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> table;
      for_each_tuple(n, sig[op].arity, [&](std::span<Element const> t) {
        args.clear();
        for (auto y : t) {
          args.push_back(inv[y]);
        }
        table.push_back(perm[alg.apply(op, args)]);
        return true;
      });
      tables.push_back(std::move(table));
    }
    if (name.empty()) {
      name = alg.name() + "'";
    }
    return std::make_shared<FiniteAlgebra const>(
        std::move(name), alg.theory(), n, std::move(tables));
  }

}  // namespace ualg
