#include "ualg/congruence.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "ualg/error.hpp"

namespace ualg {

  BinaryRelation BinaryRelation::diagonal(std::size_t n) {
    BinaryRelation r(n);
    for (Element x = 0; x < n; ++x) {
      r.set(x, x);
    }
    return r;
  }

  BinaryRelation BinaryRelation::full(std::size_t n) {
    BinaryRelation r(n);
    std::fill(r._m.begin(), r._m.end(), 1);
    return r;
  }

  BinaryRelation BinaryRelation::from_pairs(
      std::size_t                                  n,
      std::span<std::pair<Element, Element> const> pairs) {
    BinaryRelation r(n);
    for (auto [x, y] : pairs) {
      if (x >= n || y >= n) {
        throw ShapeError("pair (" + std::to_string(x) + "," + std::to_string(y)
                         + ") outside the carrier");
      }
      r.set(x, y);
    }
    return r;
  }

  std::size_t BinaryRelation::count() const {
    return static_cast<std::size_t>(std::count(_m.begin(), _m.end(), 1));
  }

  std::vector<std::pair<Element, Element>> BinaryRelation::pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (Element x = 0; x < _n; ++x) {
      for (Element y = 0; y < _n; ++y) {
        if (contains(x, y)) {
          out.emplace_back(x, y);
        }
      }
    }
    return out;
  }

  bool BinaryRelation::is_subset_of(BinaryRelation const& s) const {
    for (std::size_t i = 0; i < _m.size(); ++i) {
      if (_m[i] && !s._m[i]) {
        return false;
      }
    }
    return true;
  }

  BinaryRelation BinaryRelation::operator|(BinaryRelation const& s) const {
    BinaryRelation r(*this);
    for (std::size_t i = 0; i < _m.size(); ++i) {
      r._m[i] = static_cast<char>(_m[i] | s._m[i]);
    }
    return r;
  }

  Congruence::Congruence(std::vector<std::size_t> labels) {
    std::vector<std::size_t> renumber;
    std::vector<std::size_t> seen_label;
    _block.resize(labels.size());
    for (std::size_t x = 0; x < labels.size(); ++x) {
      auto it = std::find(seen_label.begin(), seen_label.end(), labels[x]);
      if (it == seen_label.end()) {
        seen_label.push_back(labels[x]);
        _block[x] = seen_label.size() - 1;
      } else {
        _block[x] = static_cast<std::size_t>(it - seen_label.begin());
      }
    }
    _count = seen_label.size();
  }

  Congruence Congruence::diagonal(std::size_t n) {
    std::vector<std::size_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    return Congruence(std::move(labels));
  }

  Congruence Congruence::full(std::size_t n) {
    return Congruence(std::vector<std::size_t>(n, 0));
  }

  Congruence Congruence::from_relation(BinaryRelation const& r) {
    auto const n = r.size();
    for (Element x = 0; x < n; ++x) {
      if (!r.contains(x, x)) {
        throw PreconditionError("relation is not reflexive");
      }
      for (Element y = 0; y < n; ++y) {
        if (r.contains(x, y) != r.contains(y, x)) {
          throw PreconditionError("relation is not symmetric");
        }
        for (Element z = 0; z < n; ++z) {
          if (r.contains(x, y) && r.contains(y, z) && !r.contains(x, z)) {
            throw PreconditionError("relation is not transitive");
          }
        }
      }
    }
    std::vector<std::size_t> labels(n);
    for (Element x = 0; x < n; ++x) {
      Element first = 0;
      while (!r.contains(x, first)) {
        ++first;
      }
      labels[x] = first;
    }
    return Congruence(std::move(labels));
  }

  std::vector<Element> Congruence::representatives() const {
    std::vector<Element> reps(_count, size());
    for (Element x = size(); x-- > 0;) {
      reps[_block[x]] = x;
    }
    return reps;
  }

  std::vector<std::vector<Element>> Congruence::classes() const {
    std::vector<std::vector<Element>> out(_count);
    for (Element x = 0; x < size(); ++x) {
      out[_block[x]].push_back(x);
    }
    return out;
  }

  BinaryRelation Congruence::relation() const {
    BinaryRelation r(size());
    for (Element x = 0; x < size(); ++x) {
      for (Element y = 0; y < size(); ++y) {
        if (_block[x] == _block[y]) {
          r.set(x, y);
        }
      }
    }
    return r;
  }

  bool Congruence::refines(Congruence const& other) const {
    return relation().is_subset_of(other.relation());
  }

  RelationFlags classify_relation(FiniteAlgebra const& alg, BinaryRelation const& r) {
    auto const n = r.size();
    if (n != alg.size()) {
      throw ShapeError("relation and algebra have different carriers");
    }
    RelationFlags f{true, true, true, true};
    for (Element x = 0; x < n; ++x) {
      f.reflexive = f.reflexive && r.contains(x, x);
      for (Element y = 0; y < n; ++y) {
        if (r.contains(x, y) && !r.contains(y, x)) {
          f.symmetric = false;
        }
        if (!r.contains(x, y)) {
          continue;
        }
        for (Element z = 0; z < n && f.transitive; ++z) {
          if (r.contains(y, z) && !r.contains(x, z)) {
            f.transitive = false;
          }
        }
      }
    }
    f.compatible = compatible_closure(alg, r) == r;
    return f;
  }

  Congruence kernel_pair(Homomorphism const& f) {
    return Congruence(f.map);
  }

  namespace {
    struct UnionFind {
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (b < a) {
          std::swap(a, b);
        }
        parent[b] = a;
        return true;
      }
      std::vector<std::size_t> parent;
    };

    Congruence close_congruence(FiniteAlgebra const& alg, UnionFind& uf) {
      auto const& sig = alg.signature();
      auto const  n   = alg.size();
      // Substituting related elements into one argument position at a time
      // (unary polynomials) and merging results, until nothing changes.
      bool changed = true;
      std::vector<Element> args, other;
      while (changed) {
        changed = false;
        for (std::size_t op = 0; op < sig.size(); ++op) {
          auto const k = sig[op].arity;
          for (std::size_t pos = 0; pos < k; ++pos) {
            for_each_tuple(n, k - 1, [&](std::span<Element const> rest) {
              for (Element x = 0; x < n; ++x) {
                auto const root = uf.find(x);
                if (root == x) {
                  continue;
                }
                args.assign(rest.begin(), rest.begin() + pos);
                args.push_back(x);
                args.insert(args.end(), rest.begin() + pos, rest.end());
                other = args;
                other[pos] = root;
                if (uf.unite(alg.apply(op, args), alg.apply(op, other))) {
                  changed = true;
                }
              }
              return true;
            });
          }
        }
      }
      std::vector<std::size_t> labels(n);
      for (Element x = 0; x < n; ++x) {
        labels[x] = uf.find(x);
      }
      return Congruence(std::move(labels));
    }
  }  // namespace

  Congruence congruence_generated(FiniteAlgebra const&                         alg,
                                  std::span<std::pair<Element, Element> const> seed) {
    UnionFind uf(alg.size());
    for (auto [a, b] : seed) {
      if (a >= alg.size() || b >= alg.size()) {
        throw ShapeError("seed pair outside the carrier");
      }
      uf.unite(a, b);
    }
    return close_congruence(alg, uf);
  }

  Congruence join(FiniteAlgebra const& alg, Congruence const& a, Congruence const& b) {
    UnionFind uf(alg.size());
    for (Element x = 0; x < alg.size(); ++x) {
      uf.unite(x, a.representatives()[a.block_of(x)]);
      uf.unite(x, b.representatives()[b.block_of(x)]);
    }
    return close_congruence(alg, uf);
  }

  Quotient quotient(AlgebraPtr const& alg, Congruence const& c, std::string name) {
    if (c.size() != alg->size()) {
      throw ShapeError("congruence and algebra have different carriers");
    }
    auto const& sig  = alg->signature();
    auto const  reps = c.representatives();
    auto const  m    = c.block_count();
    std::vector<std::vector<Element>> tables;
    std::vector<Element>              args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::vector<Element> table;
      for_each_tuple(m, sig[op].arity, [&](std::span<Element const> blocks) {
        args.clear();
        for (auto b : blocks) {
          args.push_back(reps[b]);
        }
        table.push_back(c.block_of(alg->apply(op, args)));
        return true;
      });
      // Well-definedness: every representative choice gives the same block.
      for_each_tuple(alg->size(), sig[op].arity, [&](std::span<Element const> t) {
        std::size_t idx = 0;
        for (auto x : t) {
          idx = idx * m + c.block_of(x);
        }
        if (c.block_of(alg->apply(op, t)) != table[idx]) {
          throw PreconditionError("partition is not compatible with '"
                                  + sig[op].name + "'");
        }
        return true;
      });
      tables.push_back(std::move(table));
    }
    if (name.empty()) {
      name = alg->name() + "/~";
    }
    auto q = std::make_shared<FiniteAlgebra const>(
        std::move(name), alg->theory(), m, std::move(tables));
    return {q, Homomorphism{"proj", alg, q, c.blocks()}};
  }

  Verdict effectiveness_check(AlgebraPtr const& alg, Congruence const& c) {
    auto const q  = quotient(alg, c);
    auto const kp = kernel_pair(q.projection);
    if (kp.relation() != c.relation()) {
      return Verdict::fail("kernel pair of the projection is "
                           + format_congruence(kp) + ", not "
                           + format_congruence(c));
    }
    return Verdict::pass();
  }

  Factorization factorize(Homomorphism const& f) {
    auto const kp = kernel_pair(f);
    auto       q  = quotient(f.dom, kp, f.dom->name() + "/R[" + f.name + "]");
    std::vector<Element> m_map(kp.block_count());
    auto const           reps = kp.representatives();
    for (std::size_t b = 0; b < reps.size(); ++b) {
      m_map[b] = f.map[reps[b]];
    }
    Factorization out{q.algebra,
                      q.projection,
                      Homomorphism{"m", q.algebra, f.cod, std::move(m_map)},
                      Verdict::pass()};
    out.epi.name = "e";
    if (compose(out.mono, out.epi).map != f.map) {
      out.verdict = Verdict::fail("m.e differs from f");
    } else if (!is_surjective(out.epi)) {
      out.verdict = Verdict::fail("e is not surjective");
    } else if (!is_injective(out.mono)) {
      out.verdict = Verdict::fail("m is not injective");
    } else if (!check_hom(out.epi).holds || !check_hom(out.mono).holds) {
      out.verdict = Verdict::fail("e or m is not a homomorphism");
    }
    return out;
  }

  Verdict kernel_factor_law(Homomorphism const& f, std::size_t budget) {
    auto const  kf     = kernel_pair(f);
    std::size_t tested = 0;
    for (auto const& c : enumerate_congruences(*f.dom, budget)) {
      if (!c.refines(kf)) {
        continue;  // f does not factor through A/c
      }
      auto const           q = quotient(f.dom, c);
      std::vector<Element> m_map(c.block_count());
      auto const           reps = c.representatives();
      for (std::size_t b = 0; b < reps.size(); ++b) {
        m_map[b] = f.map[reps[b]];
      }
      Homomorphism const m{"m", q.algebra, f.cod, std::move(m_map)};
      if (compose(m, q.projection).map != f.map || !check_hom(m).holds) {
        return Verdict::fail("m.e != f through " + format_congruence(c));
      }
      bool const same = kernel_pair(q.projection) == kf;
      if (same != is_injective(m)) {
        return Verdict::fail("through " + format_congruence(c) + ": R[e] = R[f] is "
                             + (same ? "true" : "false") + " but m injective is "
                             + (same ? "false" : "true"));
      }
      ++tested;
    }
    return Verdict::pass(std::to_string(tested) + " factorization(s)");
  }

  Verdict factorization_square_check(Homomorphism const& f,
                                     Homomorphism const& g,
                                     Homomorphism const& u,
                                     Homomorphism const& v) {
    if (compose(v, f).map != compose(g, u).map) {
      throw PreconditionError("square does not commute");
    }
    auto const ff = factorize(f);
    auto const fg = factorize(g);
    std::vector<Element> theta(ff.middle->size(), SIZE_MAX);
    for (Element x = 0; x < f.dom->size(); ++x) {
      auto const i = ff.epi(x);
      auto const j = fg.epi(u(x));
      if (theta[i] == SIZE_MAX) {
        theta[i] = j;
      } else if (theta[i] != j) {
        return Verdict::fail("theta is not well defined at block " + std::to_string(i));
      }
    }
    Homomorphism const t{"theta", ff.middle, fg.middle, theta};
    if (auto h = check_hom(t); !h.holds) {
      return Verdict::fail("theta is not a homomorphism at '" + h.witness->symbol + "'");
    }
    if (compose(fg.mono, t).map != compose(v, ff.mono).map) {
      return Verdict::fail("m_g.theta != v.m_f");
    }
    return Verdict::pass();
  }

  BinaryRelation compose_relations(BinaryRelation const& r, BinaryRelation const& s) {
    auto const n = r.size();
    if (s.size() != n) {
      throw ShapeError("cannot compose relations on different carriers");
    }
    BinaryRelation out(n);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        if (!s.contains(x, y)) {
          continue;
        }
        for (Element z = 0; z < n; ++z) {
          if (r.contains(y, z)) {
            out.set(x, z);
          }
        }
      }
    }
    return out;
  }

  std::vector<Congruence> enumerate_congruences(FiniteAlgebra const& alg,
                                                std::size_t          budget) {
    std::set<Congruence> found{Congruence::diagonal(alg.size())};
    std::vector<Congruence> frontier;
    for (Element a = 0; a < alg.size(); ++a) {
      for (Element b = a + 1; b < alg.size(); ++b) {
        std::pair<Element, Element> seed[] = {{a, b}};
        auto c = congruence_generated(alg, seed);
        if (found.insert(c).second) {
          frontier.push_back(std::move(c));
        }
      }
    }
    // Close under pairwise join.
    while (!frontier.empty()) {
      std::vector<Congruence> next;
      std::vector<Congruence> snapshot(found.begin(), found.end());
      for (auto const& a : frontier) {
        for (auto const& b : snapshot) {
          auto c = join(alg, a, b);
          if (found.insert(c).second) {
            if (found.size() > budget) {
              throw BudgetExceededError("more than " + std::to_string(budget)
                                        + " congruences");
            }
            next.push_back(std::move(c));
          }
        }
      }
      frontier = std::move(next);
    }
    return {found.begin(), found.end()};
  }

  BinaryRelation compatible_closure(FiniteAlgebra const& alg, BinaryRelation const& r) {
    auto const& sig = alg.signature();
    auto        out = r;
    bool        changed = true;
    std::vector<Element> xs, ys;
    while (changed) {
      changed          = false;
      auto const pairs = out.pairs();
      for (std::size_t op = 0; op < sig.size(); ++op) {
        for_each_tuple(pairs.size(), sig[op].arity, [&](std::span<Element const> idx) {
          xs.clear();
          ys.clear();
          for (auto i : idx) {
            xs.push_back(pairs[i].first);
            ys.push_back(pairs[i].second);
          }
          auto const x = alg.apply(op, xs), y = alg.apply(op, ys);
          if (!out.contains(x, y)) {
            out.set(x, y);
            changed = true;
          }
          return true;
        });
      }
    }
    return out;
  }

  namespace {
    // Smaller relations first, then by their sorted pair lists.
    bool relation_order(BinaryRelation const& a, BinaryRelation const& b) {
      auto const ca = a.count(), cb = b.count();
      if (ca != cb) {
        return ca < cb;
      }
      return a.pairs() < b.pairs();
    }
  }  // namespace

  std::vector<BinaryRelation> enumerate_reflexive_compatible(FiniteAlgebra const& alg,
                                                             std::size_t budget) {
    auto const               n    = alg.size();
    auto const               diag = BinaryRelation::diagonal(n);
    std::set<BinaryRelation> found{compatible_closure(alg, diag)};
    std::vector<BinaryRelation> frontier;
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        if (a == b) {
          continue;
        }
        auto r = diag;
        r.set(a, b);
        r = compatible_closure(alg, r);
        if (found.insert(r).second) {
          frontier.push_back(std::move(r));
        }
      }
    }
    while (!frontier.empty()) {
      std::vector<BinaryRelation> next;
      std::vector<BinaryRelation> snapshot(found.begin(), found.end());
      for (auto const& a : frontier) {
        for (auto const& b : snapshot) {
          if (a.is_subset_of(b) || b.is_subset_of(a)) {
            continue;
          }
          auto r = compatible_closure(alg, a | b);
          if (found.insert(r).second) {
            if (found.size() > budget) {
              throw BudgetExceededError("more than " + std::to_string(budget)
                                        + " reflexive compatible relations");
            }
            next.push_back(std::move(r));
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<BinaryRelation> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), relation_order);
    return out;
  }

  namespace {
    void check_cap(FiniteAlgebra const& alg, std::size_t cap) {
      if (alg.size() > cap) {
        throw BudgetExceededError("carrier of '" + alg.name() + "' has "
                                  + std::to_string(alg.size())
                                  + " elements, over the relation cap of "
                                  + std::to_string(cap));
      }
    }
  }  // namespace

  Verdict permutability_report(FiniteAlgebra const& alg,
                               std::size_t          carrier_cap,
                               std::size_t          budget) {
    check_cap(alg, carrier_cap);
    auto const congruences = enumerate_congruences(alg, budget);
    for (std::size_t i = 0; i < congruences.size(); ++i) {
      auto const r = congruences[i].relation();
      for (std::size_t j = i + 1; j < congruences.size(); ++j) {
        auto const s = congruences[j].relation();
        if (compose_relations(r, s) != compose_relations(s, r)) {
          return Verdict::fail(format_congruence(congruences[i]) + " and "
                               + format_congruence(congruences[j])
                               + " do not permute");
        }
      }
    }
    return Verdict::pass(std::to_string(congruences.size())
                         + " congruences, all pairs permute");
  }

  Verdict reflexive_implies_equivalence_report(FiniteAlgebra const& alg,
                                               std::size_t          carrier_cap,
                                               std::size_t          budget) {
    check_cap(alg, carrier_cap);
    auto const relations = enumerate_reflexive_compatible(alg, budget);
    for (auto const& r : relations) {
      auto const flags = classify_relation(alg, r);
      if (!flags.symmetric || !flags.transitive) {
        return Verdict::fail(format_relation(r) + " is reflexive and compatible but not "
                             + (flags.symmetric ? "transitive" : "symmetric"));
      }
    }
    return Verdict::pass(std::to_string(relations.size())
                         + " reflexive compatible relations, all equivalences");
  }

  std::string format_relation(BinaryRelation const& r) {
    std::string out = "{";
    bool        first = true;
    for (auto [x, y] : r.pairs()) {
      if (!first) {
        out += ',';
      }
      first = false;
      out += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
    return out + "}";
  }

  std::string format_congruence(Congruence const& c) {
    std::string out;
    for (auto const& cls : c.classes()) {
      out += '{';
      for (std::size_t i = 0; i < cls.size(); ++i) {
        if (i != 0) {
          out += ',';
        }
        out += std::to_string(cls[i]);
      }
      out += '}';
    }
    return out;
  }

}  // namespace ualg
