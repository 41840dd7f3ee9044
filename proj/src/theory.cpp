#include "ualg/theory.hpp"

#include <algorithm>
#include <numeric>

#include "ualg/error.hpp"

namespace ualg {

  Signature::Signature(std::vector<OpSymbol> ops) {
    for (auto& op : ops) {
      add(std::move(op.name), op.arity);
    }
  }

  void Signature::add(std::string name, std::size_t arity) {
    if (find(name)) {
      throw DuplicateError("operation symbol '" + name + "' declared twice");
    }
    _ops.push_back({std::move(name), arity});
  }

  std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < _ops.size(); ++i) {
      if (_ops[i].name == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t Signature::index_of(std::string_view name) const {
    auto i = find(name);
    if (!i) {
      throw UnknownSymbolError("unknown operation symbol '" + std::string(name)
                               + "'");
    }
    return *i;
  }

  std::vector<std::size_t> Signature::lexicographic_order() const {
    std::vector<std::size_t> order(_ops.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [this](auto a, auto b) {
      return _ops[a].name < _ops[b].name;
    });
    return order;
  }

  std::vector<std::size_t> Signature::constants() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < _ops.size(); ++i) {
      if (_ops[i].arity == 0) {
        out.push_back(i);
      }
    }
    return out;
  }

  Term Term::variable(std::size_t index) {
    Term t;
    t.var = index;
    return t;
  }

  Term Term::apply(std::string symbol, std::vector<Term> args) {
    Term t;
    t.symbol = std::move(symbol);
    t.args   = std::move(args);
    return t;
  }

  std::size_t Term::depth() const {
    if (is_var()) {
      return 0;
    }
    std::size_t d = 0;
    for (auto const& a : args) {
      d = std::max(d, a.depth());
    }
    return d + 1;
  }

  std::size_t Term::var_bound() const {
    if (is_var()) {
      return var + 1;
    }
    std::size_t b = 0;
    for (auto const& a : args) {
      b = std::max(b, a.var_bound());
    }
    return b;
  }

  Term Term::substitute(std::vector<Term> const& values) const {
    if (is_var()) {
      if (var >= values.size()) {
        throw PreconditionError("substitution does not cover variable "
                                + std::to_string(var));
      }
      return values[var];
    }
    std::vector<Term> new_args;
    new_args.reserve(args.size());
    for (auto const& a : args) {
      new_args.push_back(a.substitute(values));
    }
    return apply(symbol, std::move(new_args));
  }

  void validate_term(Signature const& sig, Term const& t) {
    if (t.is_var()) {
      return;
    }
    auto const i = sig.index_of(t.symbol);
    if (sig[i].arity != t.args.size()) {
      throw ArityMismatchError("'" + t.symbol + "' expects "
                               + std::to_string(sig[i].arity)
                               + " argument(s), got "
                               + std::to_string(t.args.size()));
    }
    for (auto const& a : t.args) {
      validate_term(sig, a);
    }
  }

  Equation Equation::make(Term lhs, Term rhs) {
    auto const n = std::max(lhs.var_bound(), rhs.var_bound());
    return Equation{std::move(lhs), std::move(rhs), n};
  }

  void Theory::validate() const {
    for (auto const& ax : axioms) {
      validate_term(signature, ax.lhs);
      validate_term(signature, ax.rhs);
      if (std::max(ax.lhs.var_bound(), ax.rhs.var_bound()) > ax.nvars) {
        throw ShapeError("axiom uses a variable outside its declared range");
      }
    }
  }

  namespace {
    void print(std::string& out, Term const& t, std::string_view prefix) {
      if (t.is_var()) {
        out += prefix;
        out += std::to_string(t.var);
        return;
      }
      out += t.symbol;
      if (t.args.empty()) {
        return;
      }
      out += '(';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i != 0) {
          out += ", ";
        }
        print(out, t.args[i], prefix);
      }
      out += ')';
    }
  }  // namespace

  std::string to_string(Term const& t, std::string_view var_prefix) {
    std::string out;
    print(out, t, var_prefix);
    return out;
  }

  std::string to_string(Equation const& eq, std::string_view var_prefix) {
    return to_string(eq.lhs, var_prefix) + " = " + to_string(eq.rhs, var_prefix);
  }

}  // namespace ualg
