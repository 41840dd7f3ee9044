#include "ualg/syntax.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace ualg {

  // ---------------------------------------------------------------------
  // Declarations and scope

  namespace {
    template <class... Fs>
    struct overload : Fs... {
      using Fs::operator()...;
    };
    template <class... Fs>
    overload(Fs...) -> overload<Fs...>;
  }  // namespace

  std::string const& declaration_name(Declaration const& d) {
    return std::visit(overload{[](TheoryPtr const& t) -> std::string const& { return t->name; },
                               [](AlgebraPtr const& a) -> std::string const& { return a->name(); },
                               [](TopologyDecl const& t) -> std::string const& { return t.name; },
                               [](Homomorphism const& h) -> std::string const& { return h.name; },
                               [](SplitPoint const& p) -> std::string const& { return p.name; }},
                      d);
  }

  std::string_view declaration_kind(Declaration const& d) {
    static constexpr std::string_view kinds[] = {"theory", "algebra", "topology", "hom", "point"};
    return kinds[d.index()];
  }

  bool equivalent(Declaration const& a, Declaration const& b) {
    if (a.index() != b.index()) {
      return false;
    }
    return std::visit(
        overload{
            [&](TheoryPtr const& t) { return *t == *std::get<TheoryPtr>(b); },
            [&](AlgebraPtr const& x) { return *x == *std::get<AlgebraPtr>(b); },
            [&](TopologyDecl const& t) {
              auto const& u = std::get<TopologyDecl>(b);
              return t.name == u.name && t.on->name() == u.on->name() && *t.topology == *u.topology;
            },
            [&](Homomorphism const& h) {
              auto const& g = std::get<Homomorphism>(b);
              return h.name == g.name && h.dom->name() == g.dom->name()
                     && h.cod->name() == g.cod->name() && h.map == g.map;
            },
            [&](SplitPoint const& p) {
              auto const& q = std::get<SplitPoint>(b);
              return p.name == q.name && p.p.name == q.p.name && p.s.name == q.s.name
                     && p.top_a_name == q.top_a_name && p.top_b_name == q.top_b_name;
            }},
        a);
  }

  void Scope::add(Declaration d) {
    auto const& name = declaration_name(d);
    if (_index.count(name)) {
      throw DuplicateError("'" + name + "' is already declared");
    }
    _index.emplace(name, _decls.size());
    _decls.push_back(std::move(d));
  }

  Declaration const* Scope::find(std::string_view name) const {
    auto it = _index.find(name);
    return it == _index.end() ? nullptr : &_decls[it->second];
  }

  TheoryPtr Scope::theory(std::string_view name) const {
    auto const* d = find(name);
    return d && std::holds_alternative<TheoryPtr>(*d) ? std::get<TheoryPtr>(*d) : nullptr;
  }

  AlgebraPtr Scope::algebra(std::string_view name) const {
    auto const* d = find(name);
    return d && std::holds_alternative<AlgebraPtr>(*d) ? std::get<AlgebraPtr>(*d) : nullptr;
  }

  TopologyDecl const* Scope::topology(std::string_view name) const {
    auto const* d = find(name);
    return d ? std::get_if<TopologyDecl>(d) : nullptr;
  }

  Homomorphism const* Scope::hom(std::string_view name) const {
    auto const* d = find(name);
    return d ? std::get_if<Homomorphism>(d) : nullptr;
  }

  SplitPoint const* Scope::point(std::string_view name) const {
    auto const* d = find(name);
    return d ? std::get_if<SplitPoint>(d) : nullptr;
  }

  // ---------------------------------------------------------------------
  // Lexer

  namespace {

    enum class Tok { ident, nat, punct, end };

    struct Token {
      Tok            kind;
      std::string    text;
      SourceLocation where;
    };

    class Lexer {
     public:
      explicit Lexer(std::string_view src) : _src(src) {}

      std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
          skip_blank();
          SourceLocation at{_line, _col};
          if (_pos >= _src.size()) {
            out.push_back({Tok::end, "end of input", at});
            return out;
          }
          char c = _src[_pos];
          if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = _pos;
            while (_pos < _src.size()
                   && (std::isalnum(static_cast<unsigned char>(_src[_pos])) || _src[_pos] == '_')) {
              advance();
            }
            out.push_back({Tok::ident, std::string(_src.substr(start, _pos - start)), at});
          } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = _pos;
            while (_pos < _src.size() && std::isdigit(static_cast<unsigned char>(_src[_pos]))) {
              advance();
            }
            out.push_back({Tok::nat, std::string(_src.substr(start, _pos - start)), at});
          } else if (c == '-' && _pos + 1 < _src.size() && _src[_pos + 1] == '>') {
            advance();
            advance();
            out.push_back({Tok::punct, "->", at});
          } else if (std::string_view("{}()[];:,/=").find(c) != std::string_view::npos) {
            advance();
            out.push_back({Tok::punct, std::string(1, c), at});
          } else {
            throw SyntaxError(std::string("unexpected character '") + c + "'", at);
          }
        }
      }

     private:
      void advance() {
        if (_src[_pos] == '\n') {
          ++_line;
          _col = 1;
        } else {
          ++_col;
        }
        ++_pos;
      }

      void skip_blank() {
        while (_pos < _src.size()) {
          char c = _src[_pos];
          if (c == '#') {
            while (_pos < _src.size() && _src[_pos] != '\n') {
              advance();
            }
          } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
          } else {
            return;
          }
        }
      }

      std::string_view _src;
      std::size_t      _pos  = 0;
      std::size_t      _line = 1;
      std::size_t      _col  = 1;
    };

    std::string quoted(Token const& t) {
      return t.kind == Tok::end ? t.text : "'" + t.text + "'";
    }

    bool conventional_variable(std::string_view name) {
      if (name.size() == 1 && std::string_view("xyzuvw").find(name[0]) != std::string_view::npos) {
        return true;
      }
      if (name.size() > 1 && name[0] == 'x') {
        for (char c : name.substr(1)) {
          if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
          }
        }
        return true;
      }
      return false;
    }

    // Nested-list table as written, before it is checked against the arity.
    struct TableNode {
      SourceLocation         where;
      std::optional<Element> value;
      std::vector<TableNode> items;
    };

    // ---------------------------------------------------------------------
    // Parser

    class Parser {
     public:
      Parser(std::vector<Token> toks, Scope& scope, std::vector<Warning>& warnings)
          : _toks(std::move(toks)), _scope(scope), _warnings(warnings) {}

      bool at_end() const {
        return peek().kind == Tok::end;
      }

      Declaration declaration() {
        auto const& t = peek();
        if (t.kind == Tok::ident) {
          if (t.text == "theory") {
            return theory();
          }
          if (t.text == "algebra") {
            return algebra();
          }
          if (t.text == "topology") {
            return topology();
          }
          if (t.text == "hom") {
            return hom();
          }
          if (t.text == "point") {
            return point();
          }
        }
        throw SyntaxError("expected a declaration (theory, algebra, topology, hom, point), got "
                              + quoted(t),
                          t.where);
      }

      Term term(Signature const& sig, std::vector<std::string>& vars) {
        Token name = expect_ident("a term");
        if (is_punct("(")) {
          next();
          if (!sig.find(name.text)) {
            throw UnknownSymbolError("unknown symbol '" + name.text + "'", name.where);
          }
          std::vector<Term> args;
          args.push_back(term(sig, vars));
          while (is_punct(",")) {
            next();
            args.push_back(term(sig, vars));
          }
          expect_punct(")");
          auto arity = sig[*sig.find(name.text)].arity;
          if (arity != args.size()) {
            throw ArityMismatchError("'" + name.text + "' expects " + std::to_string(arity)
                                         + " argument(s), got " + std::to_string(args.size()),
                                     name.where);
          }
          return Term::apply(name.text, std::move(args));
        }
        if (auto op = sig.find(name.text)) {
          auto arity = sig[*op].arity;
          if (arity != 0) {
            throw ArityMismatchError("'" + name.text + "' expects " + std::to_string(arity)
                                         + " argument(s), got 0",
                                     name.where);
          }
          if (conventional_variable(name.text)) {
            _warnings.push_back({name.where, "'" + name.text
                                                 + "' reads as the constant, not a variable"});
          }
          return Term::apply(name.text);
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
          if (vars[i] == name.text) {
            return Term::variable(i);
          }
        }
        vars.push_back(name.text);
        return Term::variable(vars.size() - 1);
      }

      Token const& peek() const {
        return _toks[_pos];
      }

     private:
      Token next() {
        Token t = _toks[_pos];
        if (t.kind != Tok::end) {
          ++_pos;
        }
        return t;
      }

      bool is_punct(std::string_view p) const {
        return peek().kind == Tok::punct && peek().text == p;
      }
      bool is_keyword(std::string_view k) const {
        return peek().kind == Tok::ident && peek().text == k;
      }

      Token expect_punct(std::string_view p) {
        if (!is_punct(p)) {
          throw SyntaxError("expected '" + std::string(p) + "', got " + quoted(peek()), peek().where);
        }
        return next();
      }
      Token expect_keyword(std::string_view k) {
        if (!is_keyword(k)) {
          throw SyntaxError("expected '" + std::string(k) + "', got " + quoted(peek()), peek().where);
        }
        return next();
      }
      Token expect_ident(std::string_view what) {
        if (peek().kind != Tok::ident) {
          throw SyntaxError("expected " + std::string(what) + ", got " + quoted(peek()), peek().where);
        }
        return next();
      }
      std::pair<std::size_t, SourceLocation> expect_nat() {
        if (peek().kind != Tok::nat) {
          throw SyntaxError("expected a natural number, got " + quoted(peek()), peek().where);
        }
        auto        t = next();
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{}) {
          throw SyntaxError("number out of range: " + t.text, t.where);
        }
        return {v, t.where};
      }

      // A name not yet taken.
      Token fresh_name(std::string_view what) {
        auto t = expect_ident(what);
        if (_scope.find(t.text)) {
          throw DuplicateError("'" + t.text + "' is already declared", t.where);
        }
        return t;
      }

      template <typename T, typename Lookup>
      T reference(Token const& t, std::string_view kind, Lookup lookup) {
        auto found = lookup(t.text);
        if (!found) {
          auto const* other = _scope.find(t.text);
          throw DanglingReferenceError(
              other ? "'" + t.text + "' is a " + std::string(declaration_kind(*other)) + ", not a "
                          + std::string(kind)
                    : "undeclared " + std::string(kind) + " '" + t.text + "'",
              t.where);
        }
        return found;
      }

      AlgebraPtr algebra_ref(Token const& t) {
        return reference<AlgebraPtr>(t, "algebra", [&](auto n) { return _scope.algebra(n); });
      }

      Declaration theory() {
        next();
        auto name = fresh_name("a theory name");
        expect_punct("{");
        auto th  = std::make_shared<Theory>();
        th->name = name.text;
        while (is_keyword("op")) {
          next();
          auto sym = expect_ident("an operation symbol");
          expect_punct("/");
          auto [arity, _] = expect_nat();
          expect_punct(";");
          if (th->signature.find(sym.text)) {
            throw DuplicateError("operation '" + sym.text + "' declared twice", sym.where);
          }
          th->signature.add(sym.text, arity);
        }
        while (is_keyword("axiom")) {
          next();
          std::vector<std::string> vars;
          auto                     lhs = term(th->signature, vars);
          expect_punct("=");
          auto rhs = term(th->signature, vars);
          expect_punct(";");
          th->axioms.push_back(Equation::make(std::move(lhs), std::move(rhs)));
        }
        if (is_keyword("op")) {
          throw SyntaxError("operations must be declared before axioms", peek().where);
        }
        expect_punct("}");
        return TheoryPtr(std::move(th));
      }

      TableNode table() {
        TableNode node{peek().where, std::nullopt, {}};
        if (is_punct("[")) {
          next();
          node.items.push_back(table());
          while (is_punct(",")) {
            next();
            node.items.push_back(table());
          }
          expect_punct("]");
        } else {
          node.value = expect_nat().first;
        }
        return node;
      }

      void flatten(TableNode const&      node,
                   std::size_t           depth,
                   std::size_t           n,
                   std::string const&    sym,
                   std::vector<Element>& out) {
        if (depth == 0) {
          if (!node.value) {
            throw ShapeError("table of '" + sym + "' is nested too deeply", node.where);
          }
          if (*node.value >= n) {
            throw ShapeError("entry " + std::to_string(*node.value) + " of '" + sym
                                 + "' is outside the carrier of size " + std::to_string(n),
                             node.where);
          }
          out.push_back(*node.value);
          return;
        }
        if (node.value) {
          throw ShapeError("table of '" + sym + "' needs " + std::to_string(depth)
                               + " more level(s) of nesting",
                           node.where);
        }
        if (node.items.size() != n) {
          throw ShapeError("table of '" + sym + "' has a row of length "
                               + std::to_string(node.items.size()) + ", expected "
                               + std::to_string(n),
                           node.where);
        }
        for (auto const& item : node.items) {
          flatten(item, depth - 1, n, sym, out);
        }
      }

      Declaration algebra() {
        next();
        auto name = fresh_name("an algebra name");
        expect_punct(":");
        auto th_tok = expect_ident("a theory name");
        auto th     = reference<TheoryPtr>(th_tok, "theory", [&](auto n) { return _scope.theory(n); });
        expect_punct("{");
        expect_keyword("carrier");
        expect_punct("=");
        auto [n, n_at] = expect_nat();
        expect_punct(";");
        if (n == 0) {
          throw ShapeError("carrier must be non-empty", n_at);
        }
        auto const&                                     sig = th->signature;
        std::vector<std::optional<std::vector<Element>>> tables(sig.size());
        while (peek().kind == Tok::ident) {
          auto sym = next();
          auto op  = sig.find(sym.text);
          if (!op) {
            throw UnknownSymbolError("'" + th->name + "' has no symbol '" + sym.text + "'", sym.where);
          }
          if (tables[*op]) {
            throw DuplicateError("table for '" + sym.text + "' given twice", sym.where);
          }
          expect_punct("=");
          auto                 node = table();
          std::vector<Element> flat;
          flatten(node, sig[*op].arity, n, sym.text, flat);
          tables[*op] = std::move(flat);
          expect_punct(";");
        }
        auto close = expect_punct("}");
        std::vector<std::vector<Element>> done;
        for (std::size_t op = 0; op < sig.size(); ++op) {
          if (!tables[op]) {
            throw ShapeError("algebra '" + name.text + "' lacks a table for '" + sig[op].name + "'",
                             close.where);
          }
          done.push_back(std::move(*tables[op]));
        }
        return std::make_shared<FiniteAlgebra const>(name.text, th, n, std::move(done));
      }

      Declaration topology() {
        next();
        auto name = fresh_name("a topology name");
        expect_keyword("on");
        auto                  alg = algebra_ref(expect_ident("an algebra name"));
        std::size_t           n   = alg->size();
        std::vector<PointSet> gens;
        expect_punct("{");
        while (is_keyword("open")) {
          next();
          expect_punct("{");
          PointSet s(n);
          if (!is_punct("}")) {
            while (true) {
              auto [x, at] = expect_nat();
              if (x >= n) {
                throw ShapeError("point " + std::to_string(x) + " is outside the carrier of size "
                                     + std::to_string(n),
                                 at);
              }
              s.set(x);
              if (!is_punct(",")) {
                break;
              }
              next();
            }
          }
          expect_punct("}");
          expect_punct(";");
          gens.push_back(std::move(s));
        }
        expect_punct("}");
        auto top = std::make_shared<FiniteTopology const>(close_to_topology(n, gens));
        return TopologyDecl{name.text, alg, std::move(top)};
      }

      Declaration hom() {
        next();
        auto name = fresh_name("a homomorphism name");
        expect_punct(":");
        auto dom = algebra_ref(expect_ident("an algebra name"));
        expect_punct("->");
        auto cod = algebra_ref(expect_ident("an algebra name"));
        expect_punct("=");
        auto                 open = expect_punct("[");
        std::vector<Element> map;
        while (true) {
          auto [x, at] = expect_nat();
          if (x >= cod->size()) {
            throw ShapeError("value " + std::to_string(x) + " is outside '" + cod->name() + "'", at);
          }
          map.push_back(x);
          if (!is_punct(",")) {
            break;
          }
          next();
        }
        expect_punct("]");
        expect_punct(";");
        if (map.size() != dom->size()) {
          throw ShapeError("map has " + std::to_string(map.size()) + " entries, '" + dom->name()
                               + "' has " + std::to_string(dom->size()) + " elements",
                           open.where);
        }
        if (dom->theory()->name != cod->theory()->name) {
          throw ShapeError("'" + dom->name() + "' and '" + cod->name()
                               + "' are models of different theories",
                           name.where);
        }
        return Homomorphism{name.text, dom, cod, std::move(map)};
      }

      Homomorphism const& hom_ref(Token const& t) {
        return *reference<Homomorphism const*>(t, "hom", [&](auto n) { return _scope.hom(n); });
      }

      Declaration point() {
        next();
        auto name = fresh_name("a point name");
        expect_punct("{");
        expect_keyword("p");
        expect_punct("=");
        auto p_tok = expect_ident("a homomorphism name");
        expect_punct(";");
        expect_keyword("s");
        expect_punct("=");
        auto s_tok = expect_ident("a homomorphism name");
        expect_punct(";");
        SplitPoint pt{name.text, hom_ref(p_tok), hom_ref(s_tok), nullptr, nullptr, {}, {}};
        if (pt.s.dom->name() != pt.p.cod->name() || pt.s.cod->name() != pt.p.dom->name()) {
          throw ShapeError("'" + s_tok.text + "' does not run opposite to '" + p_tok.text + "'",
                           s_tok.where);
        }
        if (is_keyword("topologies")) {
          next();
          expect_punct("=");
          auto ta = expect_ident("a topology name");
          expect_punct(",");
          auto tb = expect_ident("a topology name");
          expect_punct(";");
          auto lookup = [&](auto n) { return _scope.topology(n); };
          auto da     = reference<TopologyDecl const*>(ta, "topology", lookup);
          auto db     = reference<TopologyDecl const*>(tb, "topology", lookup);
          if (da->on->name() != pt.p.dom->name()) {
            throw ShapeError("'" + ta.text + "' is not a topology on '" + pt.p.dom->name() + "'",
                             ta.where);
          }
          if (db->on->name() != pt.p.cod->name()) {
            throw ShapeError("'" + tb.text + "' is not a topology on '" + pt.p.cod->name() + "'",
                             tb.where);
          }
          pt.top_a      = da->topology;
          pt.top_b      = db->topology;
          pt.top_a_name = ta.text;
          pt.top_b_name = tb.text;
        }
        expect_punct("}");
        return pt;
      }

      std::vector<Token>    _toks;
      std::size_t           _pos = 0;
      Scope&                _scope;
      std::vector<Warning>& _warnings;
    };

  }  // namespace

  ParseResult parse_source(std::string_view text, Scope& scope) {
    ParseResult result;
    Parser      parser(Lexer(text).run(), scope, result.warnings);
    while (!parser.at_end()) {
      auto where = parser.peek().where;
      auto decl  = parser.declaration();
      try {
        scope.add(decl);
      } catch (DuplicateError const& e) {
        throw DuplicateError(e.what(), where);
      }
      result.declarations.push_back(std::move(decl));
    }
    return result;
  }

  ParseResult parse_source(std::string_view text) {
    Scope scope;
    return parse_source(text, scope);
  }

  Term parse_term(std::string_view text, Signature const& sig, std::vector<std::string>& vars) {
    std::vector<Warning> warnings;
    Scope                scope;
    Parser               parser(Lexer(text).run(), scope, warnings);
    auto                 t = parser.term(sig, vars);
    if (!parser.at_end()) {
      throw SyntaxError("unexpected " + quoted(parser.peek()) + " after term", parser.peek().where);
    }
    return t;
  }

  // ---------------------------------------------------------------------
  // Formatting

  std::string format_theory(Theory const& th) {
    if (th.signature.empty() && th.axioms.empty()) {
      return "theory " + th.name + " { }\n";
    }
    std::string out = "theory " + th.name + " {\n";
    for (auto const& op : th.signature.ops()) {
      out += "  op " + op.name + "/" + std::to_string(op.arity) + ";\n";
    }
    for (auto const& ax : th.axioms) {
      out += "  axiom " + to_string(ax) + ";\n";
    }
    return out + "}\n";
  }

  std::string format_table(std::vector<Element> const& table, std::size_t n, std::size_t arity) {
    std::string out;
    std::size_t at = 0;
    auto        go = [&](auto&& self, std::size_t depth) -> void {
      if (depth == 0) {
        out += std::to_string(table[at++]);
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < n; ++i) {
        if (i) {
          out += ',';
        }
        self(self, depth - 1);
      }
      out += ']';
    };
    go(go, arity);
    return out;
  }

  std::string format_algebra(FiniteAlgebra const& alg) {
    std::string out = "algebra " + alg.name() + " : " + alg.theory()->name
                      + " { carrier = " + std::to_string(alg.size()) + ";";
    auto const& sig = alg.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      out += " " + sig[op].name + " = " + format_table(alg.table(op), alg.size(), sig[op].arity) + ";";
    }
    return out + " }\n";
  }

  std::string format_topology(TopologyDecl const& t) {
    std::string out = "topology " + t.name + " on " + t.on->name() + " {";
    for (auto const& u : t.topology->base()) {
      if (!u.all()) {
        out += " open " + format_set(u) + ";";
      }
    }
    return out + " }\n";
  }

  std::string format_hom(Homomorphism const& h) {
    std::string out = "hom " + h.name + " : " + h.dom->name() + " -> " + h.cod->name() + " = [";
    for (std::size_t i = 0; i < h.map.size(); ++i) {
      out += (i ? "," : "") + std::to_string(h.map[i]);
    }
    return out + "];\n";
  }

  std::string format_point(SplitPoint const& pt) {
    std::string out = "point " + pt.name + " { p = " + pt.p.name + "; s = " + pt.s.name + ";";
    if (!pt.top_a_name.empty()) {
      out += " topologies = " + pt.top_a_name + ", " + pt.top_b_name + ";";
    }
    return out + " }\n";
  }

  std::string format_declaration(Declaration const& d) {
    return std::visit(overload{[](TheoryPtr const& t) { return format_theory(*t); },
                               [](AlgebraPtr const& a) { return format_algebra(*a); },
                               [](TopologyDecl const& t) { return format_topology(t); },
                               [](Homomorphism const& h) { return format_hom(h); },
                               [](SplitPoint const& p) { return format_point(p); }},
                      d);
  }

  std::string format_source(std::vector<Declaration> const& decls) {
    std::string out;
    for (auto const& d : decls) {
      if (!out.empty()) {
        out += '\n';
      }
      out += format_declaration(d);
    }
    return out;
  }

}  // namespace ualg
