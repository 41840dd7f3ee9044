#include "ualg/group.hpp"

#include <algorithm>

#include "ualg/error.hpp"

namespace ualg {

  GroupView::GroupView(AlgebraPtr alg, GroupSymbols const& symbols)
      : _alg(std::move(alg)) {
    auto const& sig = _alg->signature();
    auto        e   = sig.find(symbols.identity);
    auto        iv  = sig.find(symbols.inverse);
    auto        mu  = sig.find(symbols.multiply);
    if (!e || !iv || !mu || sig[*e].arity != 0 || sig[*iv].arity != 1
        || sig[*mu].arity != 2) {
      throw PreconditionError("not a group theory: '" + _alg->theory()->name
                              + "' lacks " + symbols.identity + "/0, "
                              + symbols.inverse + "/1, " + symbols.multiply
                              + "/2");
    }
    _e   = _alg->apply(*e, std::span<Element const>{});
    _inv = *iv;
    _mul = *mu;
    auto const n = _alg->size();
    for (Element a = 0; a < n; ++a) {
      if (mul(a, _e) != a || mul(_e, a) != a || mul(a, inv(a)) != _e
          || mul(inv(a), a) != _e) {
        throw PreconditionError("not a group: '" + _alg->name()
                                + "' fails the identity or inverse law at "
                                + std::to_string(a));
      }
      for (Element b = 0; b < n; ++b) {
        for (Element c = 0; c < n; ++c) {
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            throw PreconditionError("not a group: '" + _alg->name()
                                    + "' is not associative");
          }
        }
      }
    }
  }

  bool GroupView::is_group(AlgebraPtr const& alg, GroupSymbols const& symbols) {
    try {
      GroupView g(alg, symbols);
      return true;
    } catch (PreconditionError const&) {
      return false;
    }
  }

  bool GroupView::is_normal_subgroup(std::vector<Element> const& subset) const {
    std::vector<char> in(order(), 0);
    for (auto x : subset) {
      in[x] = 1;
    }
    if (!in[_e]) {
      return false;
    }
    for (auto a : subset) {
      if (!in[inv(a)]) {
        return false;
      }
      for (auto b : subset) {
        if (!in[mul(a, b)]) {
          return false;
        }
      }
      for (Element g = 0; g < order(); ++g) {
        if (!in[mul(mul(g, a), inv(g))]) {
          return false;
        }
      }
    }
    return true;
  }

  bool GroupView::is_abelian() const {
    return center().size() == order();
  }

  std::vector<Element> GroupView::center() const {
    std::vector<Element> out;
    for (Element a = 0; a < order(); ++a) {
      bool central = true;
      for (Element b = 0; b < order() && central; ++b) {
        central = mul(a, b) == mul(b, a);
      }
      if (central) {
        out.push_back(a);
      }
    }
    return out;
  }

  std::size_t GroupView::element_order(Element a) const {
    std::size_t k = 1;
    for (Element x = a; x != _e; x = mul(x, a)) {
      ++k;
    }
    return k;
  }

}  // namespace ualg
