#include "ualg/topology.hpp"

#include <algorithm>
#include <set>

#include "ualg/error.hpp"

namespace ualg {

  PointSet make_set(std::size_t n, std::span<Element const> elems) {
    PointSet s(n);
    for (auto x : elems) {
      if (x >= n) {
        throw ShapeError("point " + std::to_string(x) + " outside a carrier of "
                         + std::to_string(n));
      }
      s.set(x);
    }
    return s;
  }

  std::vector<Element> members(PointSet const& s) {
    std::vector<Element> out;
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) {
      out.push_back(i);
    }
    return out;
  }

  std::string format_set(PointSet const& s) {
    std::string out = "{";
    bool        first = true;
    for (auto x : members(s)) {
      if (!first) {
        out += ',';
      }
      first = false;
      out += std::to_string(x);
    }
    return out + "}";
  }

  FiniteTopology FiniteTopology::from_minimal_opens(std::vector<PointSet> minimal) {
    auto const n = minimal.size();
    for (Element x = 0; x < n; ++x) {
      if (minimal[x].size() != n) {
        throw ShapeError("minimal open of point " + std::to_string(x)
                         + " has the wrong carrier size");
      }
      if (!minimal[x].test(x)) {
        throw ShapeError("minimal open of point " + std::to_string(x)
                         + " does not contain it");
      }
    }
    for (Element x = 0; x < n; ++x) {
      for (auto y : members(minimal[x])) {
        if (!minimal[y].is_subset_of(minimal[x])) {
          throw ShapeError("minimal opens are not nested: point "
                           + std::to_string(y) + " lies in U_"
                           + std::to_string(x) + " but U_" + std::to_string(y)
                           + " does not");
        }
      }
    }
    return FiniteTopology(std::move(minimal));
  }

  FiniteTopology FiniteTopology::discrete(std::size_t n) {
    std::vector<PointSet> minimal(n, PointSet(n));
    for (Element x = 0; x < n; ++x) {
      minimal[x].set(x);
    }
    return FiniteTopology(std::move(minimal));
  }

  FiniteTopology FiniteTopology::indiscrete(std::size_t n) {
    return FiniteTopology(std::vector<PointSet>(n, ~PointSet(n)));
  }

  bool FiniteTopology::is_open(PointSet const& s) const {
    for (auto x : members(s)) {
      if (!_minimal[x].is_subset_of(s)) {
        return false;
      }
    }
    return true;
  }

  PointSet FiniteTopology::open_hull(PointSet const& s) const {
    PointSet out(size());
    for (auto x : members(s)) {
      out |= _minimal[x];
    }
    return out;
  }

  PointSet FiniteTopology::interior(PointSet const& s) const {
    PointSet out(size());
    for (Element x = 0; x < size(); ++x) {
      if (_minimal[x].is_subset_of(s)) {
        out.set(x);
      }
    }
    return out;
  }

  PointSet FiniteTopology::closure(PointSet const& s) const {
    // x lies outside the closure iff some open around x misses s, i.e. U_x
    // misses s.
    PointSet out(size());
    for (Element x = 0; x < size(); ++x) {
      if (_minimal[x].intersects(s)) {
        out.set(x);
      }
    }
    return out;
  }

  std::vector<PointSet> FiniteTopology::opens(std::size_t limit) const {
    std::set<PointSet> all{empty_set()};
    for (auto const& u : base()) {
      std::vector<PointSet> grown;
      for (auto const& s : all) {
        grown.push_back(s | u);
      }
      for (auto& g : grown) {
        all.insert(std::move(g));
        if (all.size() > limit) {
          throw BudgetExceededError("space of " + std::to_string(size())
                                    + " points has more than "
                                    + std::to_string(limit) + " open sets");
        }
      }
    }
    if (size() == 0) {
      return {all.begin(), all.end()};
    }
    all.insert(full_set());
    return {all.begin(), all.end()};
  }

  std::vector<PointSet> FiniteTopology::base() const {
    std::set<PointSet> distinct(_minimal.begin(), _minimal.end());
    return {distinct.begin(), distinct.end()};
  }

  Verdict FiniteTopology::verify_closure_invariants(std::size_t limit) const {
    auto const         all = opens(limit);
    std::set<PointSet> lookup(all.begin(), all.end());
    if (!lookup.count(empty_set())) {
      return Verdict::fail("empty set is not open");
    }
    if (!lookup.count(full_set())) {
      return Verdict::fail("full set is not open");
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (!lookup.count(all[i] | all[j])) {
          return Verdict::fail("union of " + format_set(all[i]) + " and "
                               + format_set(all[j]) + " is not open");
        }
        if (!lookup.count(all[i] & all[j])) {
          return Verdict::fail("intersection of " + format_set(all[i])
                               + " and " + format_set(all[j])
                               + " is not open");
        }
      }
    }
    return Verdict::pass(std::to_string(all.size()) + " open sets");
  }

  FiniteTopology close_to_topology(std::size_t               n,
                                   std::span<PointSet const> generators) {
    std::vector<PointSet> minimal(n, ~PointSet(n));
    for (auto const& g : generators) {
      if (g.size() != n) {
        throw ShapeError("generator has the wrong carrier size");
      }
      for (auto x : members(g)) {
        minimal[x] &= g;
      }
    }
    return FiniteTopology::from_minimal_opens(std::move(minimal));
  }

  namespace {
    void check_shape(ContinuousMap const& f) {
      if (!f.dom || !f.cod || f.map.size() != f.dom->size()) {
        throw ShapeError("map has the wrong length for its domain");
      }
      for (auto v : f.map) {
        if (v >= f.cod->size()) {
          throw ShapeError("map sends a point outside its codomain");
        }
      }
    }
  }  // namespace

  PointSet preimage(ContinuousMap const& f, PointSet const& s) {
    PointSet out(f.dom->size());
    for (Element x = 0; x < f.map.size(); ++x) {
      if (s.test(f.map[x])) {
        out.set(x);
      }
    }
    return out;
  }

  PointSet image(ContinuousMap const& f, PointSet const& s) {
    PointSet out(f.cod->size());
    for (auto x : members(s)) {
      out.set(f.map[x]);
    }
    return out;
  }

  SetVerdict is_continuous(ContinuousMap const& f) {
    check_shape(f);
    // Preimages commute with unions, so the minimal opens suffice.
    for (Element y = 0; y < f.cod->size(); ++y) {
      auto const& u = f.cod->minimal_open(y);
      if (!f.dom->is_open(preimage(f, u))) {
        return {false, u};
      }
    }
    return {};
  }

  FiniteTopology product_topology(FiniteTopology const& a,
                                  FiniteTopology const& b) {
    auto const            n = a.size(), m = b.size();
    std::vector<PointSet> minimal(n * m, PointSet(n * m));
    for (Element i = 0; i < n; ++i) {
      for (Element j = 0; j < m; ++j) {
        auto& box = minimal[i * m + j];
        for (auto x : members(a.minimal_open(i))) {
          for (auto y : members(b.minimal_open(j))) {
            box.set(x * m + y);
          }
        }
      }
    }
    return FiniteTopology::from_minimal_opens(std::move(minimal));
  }

  FiniteTopology power_topology(FiniteTopology const& a, std::size_t k) {
    auto result = FiniteTopology::discrete(1);
    for (std::size_t i = 0; i < k; ++i) {
      result = product_topology(result, a);
    }
    return result;
  }

  FiniteTopology subspace_topology(FiniteTopology const&    a,
                                   std::span<Element const> subset) {
    std::vector<Element> pts(subset.begin(), subset.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (auto p : pts) {
      if (p >= a.size()) {
        throw ShapeError("subspace point outside the carrier");
      }
    }
    std::vector<PointSet> minimal(pts.size(), PointSet(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (a.minimal_open(pts[i]).test(pts[j])) {
          minimal[i].set(j);
        }
      }
    }
    return FiniteTopology::from_minimal_opens(std::move(minimal));
  }

  FiniteTopology quotient_topology(FiniteTopology const&    a,
                                   std::span<Element const> map,
                                   std::size_t              m) {
    if (map.size() != a.size()) {
      throw ShapeError("quotient map has the wrong length");
    }
    std::vector<char> hit(m, 0);
    for (auto v : map) {
      if (v >= m) {
        throw ShapeError("quotient map leaves the target");
      }
      hit[v] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
      throw PreconditionError("quotient map is not surjective");
    }
    // The smallest set V containing y with open preimage: grow V by the
    // images of the minimal opens of points in its preimage.
    std::vector<PointSet> minimal(m, PointSet(m));
    for (Element y = 0; y < m; ++y) {
      auto& v = minimal[y];
      v.set(y);
      bool changed = true;
      while (changed) {
        changed = false;
        for (Element x = 0; x < a.size(); ++x) {
          if (!v.test(map[x])) {
            continue;
          }
          for (auto z : members(a.minimal_open(x))) {
            if (!v.test(map[z])) {
              v.set(map[z]);
              changed = true;
            }
          }
        }
      }
    }
    return FiniteTopology::from_minimal_opens(std::move(minimal));
  }

  SetVerdict is_open_map(ContinuousMap const& f) {
    check_shape(f);
    for (Element x = 0; x < f.dom->size(); ++x) {
      auto const& u = f.dom->minimal_open(x);
      if (!f.cod->is_open(image(f, u))) {
        return {false, u};
      }
    }
    return {};
  }

  bool is_surjective(ContinuousMap const& f) {
    PointSet hit(f.cod->size());
    for (auto v : f.map) {
      hit.set(v);
    }
    return hit.all();
  }

  SetVerdict is_quotient_map(ContinuousMap const& f) {
    check_shape(f);
    if (!is_surjective(f)) {
      return {false, std::nullopt};
    }
    if (auto c = is_continuous(f); !c) {
      return c;
    }
    auto const q = quotient_topology(*f.dom, f.map, f.cod->size());
    for (Element y = 0; y < f.cod->size(); ++y) {
      if (q.minimal_open(y) != f.cod->minimal_open(y)) {
        return {false, q.minimal_open(y)};
      }
    }
    return {};
  }

  bool is_homeomorphism(ContinuousMap const& f) {
    if (f.dom->size() != f.cod->size() || !is_surjective(f)) {
      return false;
    }
    std::vector<Element> inv(f.map.size());
    for (Element x = 0; x < f.map.size(); ++x) {
      inv[f.map[x]] = x;
    }
    return is_continuous(f).holds
           && is_continuous(ContinuousMap{f.cod, f.dom, inv}).holds;
  }

  SeparationFlags separation_report(FiniteTopology const& a) {
    SeparationFlags flags;
    auto const      n = a.size();
    // T1: every singleton closed, i.e. no point lies in another's U_x.
    flags.t1 = true;
    for (Element x = 0; x < n && flags.t1; ++x) {
      flags.t1 = a.minimal_open(x).count() == 1;
    }
    flags.hausdorff = true;
    for (Element x = 0; x < n && flags.hausdorff; ++x) {
      for (Element y = x + 1; y < n && flags.hausdorff; ++y) {
        flags.hausdorff = !a.minimal_open(x).intersects(a.minimal_open(y));
      }
    }
    // The largest closed set avoiding x is the complement of U_x; separating
    // x from it is the hardest case, and its smallest open neighbourhood is
    // the open hull.
    flags.regular = true;
    for (Element x = 0; x < n && flags.regular; ++x) {
      auto const& ux = a.minimal_open(x);
      flags.regular  = !ux.intersects(a.open_hull(~ux));
    }
    return flags;
  }

  TopNotRegularReport top_not_regular_counterexample() {
    TopNotRegularReport r{
        close_to_topology(4, std::vector<PointSet>{make_set(4, std::vector<Element>{0, 1})}),
        close_to_topology(3, std::vector<PointSet>{make_set(3, std::vector<Element>{0, 2})}),
        FiniteTopology::indiscrete(3),
        {0, 1, 1, 2},
        {0, 2, 2},
        {},
        FiniteTopology::discrete(0),
    };
    auto const a = std::make_shared<FiniteTopology const>(r.a);
    auto const b = std::make_shared<FiniteTopology const>(r.b);
    auto const c = std::make_shared<FiniteTopology const>(r.c);
    r.f_is_quotient = is_quotient_map(ContinuousMap{a, c, r.f}).holds;

    std::vector<Element> pts;
    for (Element s = 0; s < 4; ++s) {
      for (Element t = 0; t < 3; ++t) {
        if (r.f[s] == r.g[t]) {
          r.pullback.emplace_back(s, t);
          pts.push_back(s * 3 + t);
        }
      }
    }
    r.pullback_topology = subspace_topology(product_topology(r.a, r.b), pts);
    std::vector<Element> pi2;
    for (auto const& [s, t] : r.pullback) {
      pi2.push_back(t);
    }
    auto const p = std::make_shared<FiniteTopology const>(r.pullback_topology);
    auto const v = is_quotient_map(ContinuousMap{p, b, pi2});
    r.pi2_is_quotient = v.holds;
    r.pi2_witness     = v.witness;
    if (v.witness) {
      r.witness_preimage = preimage(ContinuousMap{p, b, pi2}, *v.witness);
    }
    return r;
  }

}  // namespace ualg
