#include "ualg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include "ualg/congruence.hpp"
#include "ualg/corpus.hpp"
#include "ualg/group.hpp"
#include "ualg/lemmas.hpp"
#include "ualg/semidirect.hpp"
#include "ualg/syntax.hpp"
#include "ualg/topalg.hpp"
#include "ualg/witness.hpp"

namespace ualg::cli {

  namespace {

    using json = nlohmann::ordered_json;

    class IoError : public Error {
     public:
      using Error::Error;
      char const* kind() const noexcept override {
        return "io";
      }
    };

    // A combination of options that CLI11 cannot express; exits as a usage error.
    class UsageError : public Error {
     public:
      using Error::Error;
      char const* kind() const noexcept override {
        return "usage";
      }
    };

    // Prefixes a parse error with its file, keeping the error class.
    class FileError : public Error {
     public:
      FileError(std::string const& path, Error const& e) : Error(path + ":" + e.what()), _kind(e.kind()) {}
      char const* kind() const noexcept override {
        return _kind;
      }

     private:
      char const* _kind;
    };

    struct Check {
      std::string name;
      bool        holds = true;
      std::string detail;
    };

    // What a command found. Human output keeps lines and checks in the
    // order they were produced.
    class Report {
     public:
      std::string                  command;
      json                         facts = json::object();
      std::vector<Check>           checks;
      std::optional<std::uint64_t> seed;

      void line(std::string s) {
        while (!s.empty() && s.back() == '\n') {
          s.pop_back();
        }
        _human.push_back(std::move(s));
      }

      void fact(std::string const& key, json value) {
        facts[key] = std::move(value);
      }

      void check(std::string name, bool holds, std::string detail = {}) {
        _human.push_back((holds ? "[pass] " : "[FAIL] ") + name + (detail.empty() ? "" : ": " + detail));
        checks.push_back({std::move(name), holds, std::move(detail)});
      }
      void check(std::string name, Verdict const& v) {
        check(std::move(name), v.holds, v.detail);
      }

      bool holds() const {
        return std::all_of(checks.begin(), checks.end(), [](Check const& c) { return c.holds; });
      }

      void print_human(std::ostream& out, std::optional<double> ms) const {
        for (auto const& l : _human) {
          out << l << '\n';
        }
        if (!checks.empty()) {
          auto const ok = std::count_if(checks.begin(), checks.end(), [](Check const& c) { return c.holds; });
          out << ok << "/" << checks.size() << " checks hold\n";
        }
        if (seed) {
          out << "seed: " << *seed << '\n';
        }
        if (ms) {
          out << "time: " << *ms << " ms\n";
        }
      }

      json to_json(std::optional<double> ms, int code) const {
        json j;
        j["command"] = command;
        j["facts"]   = facts;
        j["checks"]  = json::array();
        for (auto const& c : checks) {
          j["checks"].push_back({{"name", c.name},
                                 {"holds", c.holds},
                                 {"witness", c.holds ? json(nullptr) : json(c.detail)},
                                 {"detail", c.detail}});
        }
        j["holds"]     = holds();
        j["seed"]      = seed ? json(*seed) : json(nullptr);
        j["timing_ms"] = ms ? json(*ms) : json(nullptr);
        j["exit_code"] = code;
        return j;
      }

     private:
      std::vector<std::string> _human;
    };

    // ------------------------------------------------------------------
    // Argument helpers

    std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw IoError("cannot read '" + path + "'");
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    std::vector<Element> parse_elements(std::string const& text) {
      std::vector<Element> out;
      std::size_t          i = 0;
      while (i < text.size()) {
        if (text[i] == ',' || text[i] == ' ' || text[i] == '{' || text[i] == '}') {
          ++i;
          continue;
        }
        Element v{};
        auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
        if (ec != std::errc{}) {
          throw ShapeError("expected a list of naturals, got '" + text + "'");
        }
        out.push_back(v);
        i = static_cast<std::size_t>(p - text.data());
      }
      return out;
    }

    // "0:3,1:4"
    std::vector<std::pair<Element, Element>> parse_pairs(std::string const& text) {
      std::vector<std::pair<Element, Element>> out;
      std::string                              t = text;
      std::replace(t.begin(), t.end(), ':', ',');
      auto const flat = parse_elements(t);
      if (flat.size() % 2 != 0 || std::count(text.begin(), text.end(), ':') * 2 != static_cast<long>(flat.size())) {
        throw ShapeError("expected pairs written a:b, got '" + text + "'");
      }
      for (std::size_t i = 0; i < flat.size(); i += 2) {
        out.emplace_back(flat[i], flat[i + 1]);
      }
      return out;
    }

    void require_in_range(std::vector<Element> const& xs, std::size_t n, std::string const& what) {
      for (auto x : xs) {
        if (x >= n) {
          throw ShapeError(what + ": element " + std::to_string(x) + " is out of range (carrier "
                           + std::to_string(n) + ")");
        }
      }
    }

    std::string elements_string(std::vector<Element> const& xs) {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? "," : "") + std::to_string(xs[i]);
      }
      return out + "]";
    }

    std::string set_string(std::vector<Element> const& xs) {
      auto s = elements_string(xs);
      s.front() = '{';
      s.back()  = '}';
      return s;
    }

    std::string env_string(std::vector<std::string> const& vars, std::vector<Element> const& env) {
      std::string out;
      for (std::size_t i = 0; i < env.size(); ++i) {
        out += (i ? ", " : "") + (i < vars.size() ? vars[i] : "x" + std::to_string(i)) + "="
               + std::to_string(env[i]);
      }
      return out;
    }

    std::string base_string(FiniteTopology const& t) {
      std::string out;
      for (auto const& u : t.base()) {
        out += (out.empty() ? "" : " ") + format_set(u);
      }
      return out;
    }

    std::string subscript(std::size_t n) {
      static char const* const digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
      std::string              out;
      for (char c : std::to_string(n)) {
        out += digits[c - '0'];
      }
      return out;
    }

    std::string named_set(PointSet const& s, std::string_view letter) {
      std::string out = "{";
      for (auto x : members(s)) {
        out += (out.size() > 1 ? "," : "") + std::string(letter) + subscript(x + 1);
      }
      return out + "}";
    }

    std::string yes_no(bool b) {
      return b ? "yes" : "no";
    }

    // Folds per-item verdicts into one check that reports the first failure.
    template <typename Items, typename F>
    Verdict for_all(Items const& items, std::string const& noun, F&& f) {
      std::size_t n = 0;
      for (auto const& item : items) {
        if (auto v = f(item); !v) {
          return v;
        }
        ++n;
      }
      return Verdict::pass(std::to_string(n) + " " + noun);
    }

    // ------------------------------------------------------------------
    // Shared command state

    struct Globals {
      bool                     json_output = false;
      bool                     no_timing   = false;
      std::uint64_t            seed        = 42;
      std::size_t              count       = default_instance_count;
      std::vector<std::string> corpus_paths;
    };

    // Every option any subcommand takes; only the chosen one's are read.
    struct Args {
      std::vector<std::string> files;
      std::string              algebra, topology, witness, hom, term, at, equation, pairs;
      std::string              dom, cod, map, name, a, b, k, q, h, action, point, spec, group;
      std::string              from, to, show, lemma, example;
      std::size_t              arity  = 3;
      std::size_t              cap    = default_carrier_cap;
      std::size_t              budget = default_clone_budget;
      std::size_t              size   = 0;
      std::size_t              search = 0;
      bool                     all = false, list = false, with_corpus = false;
    };

    class Context {
     public:
      explicit Context(Globals const& g, std::ostream& err) : _g(g), _err(err) {}

      Registry& registry() {
        if (!_reg) {
          _reg = load_builtin_corpus();
          for (auto const& path : _g.corpus_paths) {
            for (auto const& w : extend_corpus(*_reg, read_file(path))) {
              _err << "warning: " << path << ":" << w.where.line << ":" << w.where.column << ": "
                   << w.message << '\n';
            }
          }
        }
        return *_reg;
      }

      Globals const& globals() const {
        return _g;
      }
      std::ostream& err() {
        return _err;
      }

     private:
      Globals const&          _g;
      std::ostream&           _err;
      std::optional<Registry> _reg;
    };

    TopologyPtr topology_on(Registry const& reg, std::string const& name, AlgebraPtr const& alg) {
      auto const& t = reg.topology(name);
      if (t.on->name() != alg->name()) {
        throw PreconditionError("topology '" + name + "' is on '" + t.on->name() + "', not '"
                                + alg->name() + "'");
      }
      return t.topology;
    }

    ProtomodularWitness const* witness_for(Registry const& reg, std::string const& theory) {
      auto it = reg.protomodular.find(theory);
      return it == reg.protomodular.end() ? nullptr : &it->second;
    }

    Homomorphism hom_from_args(Registry const& reg, Args const& a) {
      if (!a.hom.empty()) {
        return reg.hom(a.hom);
      }
      if (a.dom.empty() || a.cod.empty() || a.map.empty()) {
        throw UsageError("give --hom NAME or all of --dom, --cod and --map");
      }
      Homomorphism f{a.name.empty() ? "f" : a.name, reg.algebra(a.dom), reg.algebra(a.cod),
                     parse_elements(a.map)};
      check_hom_shape(f);
      return f;
    }

    // ------------------------------------------------------------------
    // Commands

    void cmd_check(Context& ctx, Args const& a, Report& r) {
      Registry reg;
      std::set<std::string> builtin;
      if (a.with_corpus) {
        reg = ctx.registry();
        for (auto const& d : reg.scope.declarations()) {
          builtin.insert(declaration_name(d));
        }
      }
      std::size_t decls = 0;
      for (auto const& path : a.files) {
        auto const text = read_file(path);
        ParseResult result;
        try {
          result = parse_source(text, reg.scope);
        } catch (Error const& e) {
          throw FileError(path, e);
        }
        decls += result.declarations.size();
        for (auto const& w : result.warnings) {
          r.line("warning: " + path + ":" + std::to_string(w.where.line) + ":"
                 + std::to_string(w.where.column) + ": " + w.message);
        }
      }
      r.line("parsed " + std::to_string(decls) + " declaration(s) from " + std::to_string(a.files.size())
             + " file(s)");
      r.fact("declarations", decls);
      for (auto const& item : invariant_sweep(reg)) {
        bool const declared = item.kind == "theory" || item.kind == "algebra" || item.kind == "topology"
                              || item.kind == "hom" || item.kind == "point";
        if (a.with_corpus && (!declared || builtin.contains(item.name))) {
          continue;  // already verified when the corpus loaded
        }
        r.check(item.kind + " " + item.name, item.verdict);
      }
    }

    void cmd_eval(Context& ctx, Args const& a, Report& r) {
      auto const               alg = ctx.registry().algebra(a.algebra);
      std::vector<std::string> vars;
      auto const               t = parse_term(a.term, alg->signature(), vars);
      r.fact("term", a.term);
      r.fact("variables", vars);
      if (!a.at.empty()) {
        auto const env = parse_elements(a.at);
        if (env.size() != vars.size()) {
          throw ShapeError("term has " + std::to_string(vars.size()) + " variable(s), got "
                           + std::to_string(env.size()) + " value(s)");
        }
        require_in_range(env, alg->size(), "--at");
        auto const v = eval_term(*alg, t, env);
        r.line(a.term + (env.empty() ? "" : " at " + env_string(vars, env)) + " = " + std::to_string(v));
        r.fact("value", v);
        return;
      }
      std::vector<Element> table;
      for_each_tuple(alg->size(), vars.size(), [&](std::span<Element const> env) {
        table.push_back(eval_term(*alg, t, env));
        return true;
      });
      r.line(a.term + " on " + alg->name() + " = " + format_table(table, alg->size(), vars.size()));
      r.fact("table", table);
    }

    void cmd_satisfies(Context& ctx, Args const& a, Report& r) {
      auto const alg = ctx.registry().algebra(a.algebra);
      if (a.equation.empty()) {
        auto const  rep = is_algebra_of(*alg);
        auto const& ax  = alg->theory()->axioms;
        for (std::size_t i = 0; i < ax.size(); ++i) {
          auto const& v = rep.verdicts[i];
          r.check(to_string(ax[i]), v.holds, v.holds ? "" : "fails at " + env_string({}, *v.witness));
        }
        r.fact("models_theory", rep.all_hold());
        return;
      }
      auto const eq = a.equation.find('=');
      if (eq == std::string::npos) {
        throw SyntaxError("expected an equation 'lhs = rhs'");
      }
      std::vector<std::string> vars;
      auto lhs = parse_term(a.equation.substr(0, eq), alg->signature(), vars);
      auto rhs = parse_term(a.equation.substr(eq + 1), alg->signature(), vars);
      auto const v = satisfies(*alg, Equation::make(std::move(lhs), std::move(rhs)));
      r.fact("holds", v.holds);
      if (v.holds) {
        r.line(alg->name() + " satisfies " + a.equation);
      } else {
        r.line(alg->name() + " does not satisfy " + a.equation + ": fails at " + env_string(vars, *v.witness));
        r.fact("witness", *v.witness);
      }
    }

    void cmd_hom(Context& ctx, Args const& a, Report& r) {
      auto const f = hom_from_args(ctx.registry(), a);
      r.line(f.name + " : " + f.dom->name() + " -> " + f.cod->name() + " = " + elements_string(f.map));
      auto const h = check_hom(f);
      r.check("homomorphism", h.holds,
              h.holds ? "" : "fails on '" + h.witness->symbol + "' at " + set_string(h.witness->args));
      if (!h.holds) {
        return;
      }
      r.fact("injective", is_injective(f));
      r.fact("surjective", is_surjective(f));
      r.fact("image", image(f));
      r.line("injective: " + yes_no(is_injective(f)) + ", surjective: " + yes_no(is_surjective(f))
             + ", image " + set_string(image(f)));
      try {
        auto const e = epi_classify(f);
        r.fact("split", e.split);
        r.line("split epi: " + yes_no(e.split)
               + (e.section ? ", section " + elements_string(e.section->map) : ""));
        r.check("split => regular => surjective", e.verdict);
      } catch (BudgetExceededError const& e) {
        r.fact("split", nullptr);
        r.line("split epi: not decided (" + std::string(e.what()) + ")");
      }
    }

    void cmd_product(Context& ctx, Args const& a, Report& r) {
      auto& reg = ctx.registry();
      auto  p   = product(reg.algebra(a.a), reg.algebra(a.b), a.name);
      r.line(format_algebra(*p.algebra));
      r.fact("size", p.algebra->size());
      auto const rep = is_algebra_of(*p.algebra);
      r.check("product satisfies " + p.algebra->theory()->name, rep.all_hold());
      r.check("first projection is a homomorphism", check_hom(p.first).holds);
      r.check("second projection is a homomorphism", check_hom(p.second).holds);
    }

    void report_flags(Report& r, RelationFlags const& fl) {
      r.check("reflexive", fl.reflexive);
      r.check("symmetric", fl.symmetric);
      r.check("transitive", fl.transitive);
      r.check("compatible", fl.compatible);
    }

    void cmd_kernel_pair(Context& ctx, Args const& a, Report& r) {
      auto const f  = hom_from_args(ctx.registry(), a);
      auto const kp = kernel_pair(f);
      r.line("R[" + f.name + "] = " + format_congruence(kp));
      r.fact("blocks", kp.blocks());
      report_flags(r, classify_relation(*f.dom, kp.relation()));
      r.check("effective", effectiveness_check(f.dom, kp));
    }

    Congruence congruence_from(AlgebraPtr const& alg, std::string const& pairs) {
      auto const seed = parse_pairs(pairs);
      for (auto [x, y] : seed) {
        require_in_range({x, y}, alg->size(), "--pairs");
      }
      return congruence_generated(*alg, seed);
    }

    void cmd_congruence(Context& ctx, Args const& a, Report& r) {
      auto const alg = ctx.registry().algebra(a.algebra);
      if (a.all) {
        auto const all = enumerate_congruences(*alg);
        json       list = json::array();
        for (auto const& c : all) {
          r.line(format_congruence(c));
          list.push_back(c.blocks());
        }
        r.fact("congruences", list);
        r.check("every congruence is effective", for_all(all, "congruence(s)", [&](Congruence const& c) {
                  auto v = effectiveness_check(alg, c);
                  return v ? v : Verdict::fail(format_congruence(c) + ": " + v.detail);
                }));
        return;
      }
      auto const c = congruence_from(alg, a.pairs);
      r.line("Cg(" + a.pairs + ") = " + format_congruence(c));
      r.fact("blocks", c.blocks());
      report_flags(r, classify_relation(*alg, c.relation()));
    }

    void cmd_quotient(Context& ctx, Args const& a, Report& r) {
      auto&      reg = ctx.registry();
      AlgebraPtr alg;
      Congruence c;
      if (!a.hom.empty()) {
        auto const& f = reg.hom(a.hom);
        alg           = f.dom;
        c             = kernel_pair(f);
      } else {
        alg = reg.algebra(a.algebra);
        c   = congruence_from(alg, a.pairs);
      }
      auto const q = quotient(alg, c, a.name);
      r.line(format_algebra(*q.algebra));
      r.line("projection: " + elements_string(q.projection.map));
      r.fact("size", q.algebra->size());
      r.fact("projection", q.projection.map);
      r.check("projection is a homomorphism", check_hom(q.projection).holds);
      r.check("projection is surjective", is_surjective(q.projection));
      r.check("kernel pair of the projection is the congruence", effectiveness_check(alg, c));
    }

    void cmd_factorize(Context& ctx, Args const& a, Report& r) {
      auto const f  = hom_from_args(ctx.registry(), a);
      auto const fz = factorize(f);
      r.line("middle: " + format_algebra(*fz.middle));
      r.line("e = " + elements_string(fz.epi.map));
      r.line("m = " + elements_string(fz.mono.map));
      r.fact("middle_size", fz.middle->size());
      r.fact("e", fz.epi.map);
      r.fact("m", fz.mono.map);
      r.check("f = m.e with e surjective, m injective", fz.verdict);
      r.check("R[e] = R[f] iff m injective", kernel_factor_law(f));
    }

    void cmd_permute(Context& ctx, Args const& a, Report& r) {
      auto const alg = ctx.registry().algebra(a.algebra);
      auto const v   = permutability_report(*alg, a.cap);
      r.fact("permutable", v.holds);
      r.fact("detail", v.detail);
      r.line((v ? "congruences permute: " : "congruences do not permute: ") + v.detail);
    }

    void cmd_reflexive_eq(Context& ctx, Args const& a, Report& r) {
      auto const alg = ctx.registry().algebra(a.algebra);
      auto const v   = reflexive_implies_equivalence_report(*alg, a.cap);
      r.fact("holds", v.holds);
      r.fact("detail", v.detail);
      r.line((v ? "every reflexive compatible relation is an equivalence: "
                : "a reflexive compatible relation is not an equivalence: ")
             + v.detail);
    }

    void cmd_clone(Context& ctx, Args const& a, Report& r) {
      auto const alg = ctx.registry().algebra(a.algebra);
      auto const c   = generate_clone(alg, a.arity, a.budget);
      r.line("clone of arity " + std::to_string(a.arity) + " on " + alg->name() + ": "
             + std::to_string(c.size()) + " term operation(s)");
      r.fact("arity", a.arity);
      r.fact("size", c.size());
      if (a.list) {
        json list = json::array();
        for (std::size_t i = 0; i < c.size(); ++i) {
          auto const term = to_string(c.terms[i]);
          r.line(term + " = " + format_table(c.funcs[i], alg->size(), a.arity));
          list.push_back({{"term", term}, {"table", c.funcs[i]}});
        }
        r.fact("operations", list);
      }
    }

    void cmd_maltsev(Context& ctx, Args const& a, Report& r) {
      auto&      reg = ctx.registry();
      auto const alg = reg.algebra(a.algebra);
      auto const s   = has_maltsev_term_operation(alg, a.budget);
      r.fact("clone_size", s.clone_size);
      switch (s.decision) {
        case Decision::yes:
          r.fact("maltsev", true);
          r.fact("term", to_string(*s.term));
          r.line("Maltsev term operation: " + to_string(*s.term) + " (clone size "
                 + std::to_string(s.clone_size) + ")");
          break;
        case Decision::no:
          r.fact("maltsev", false);
          r.line("no Maltsev term operation (clone exhausted, size " + std::to_string(s.clone_size) + ")");
          break;
        case Decision::unknown:
          r.fact("maltsev", nullptr);
          r.line("undecided: " + s.detail);
          break;
      }
      if (auto it = reg.maltsev.find(alg->theory()->name); it != reg.maltsev.end()) {
        r.check("witness " + to_string(it->second.p) + " of " + it->first,
                check_maltsev_witness(*alg, it->second));
      }
    }

    void cmd_protomodular(Context& ctx, Args const& a, Report& r) {
      auto&      reg = ctx.registry();
      auto const alg = reg.algebra(a.algebra);
      auto const w   = witness_for(reg, alg->theory()->name);
      if (w) {
        for (auto const& law : check_protomodular_witness(*alg, *w).laws) {
          r.check(law.law, law.holds, law.holds ? "" : "fails at " + env_string({"x", "y"}, *law.witness));
        }
        auto const p = w->maltsev_composite();
        r.check("composite " + to_string(p) + " is a Maltsev term", check_maltsev_witness(*alg, {p}));
        auto const sa = check_semiabelian_preconditions(*alg->theory(), *w, {alg});
        r.fact("semiabelian", sa.holds);
        r.line("semi-abelian witness: " + yes_no(sa.holds) + (sa.detail.empty() ? "" : " (" + sa.detail + ")"));
      }
      if (!w || a.search > 0) {
        auto const max_n = std::max<std::size_t>(a.search, 1);
        auto const s     = search_protomodular_witness(alg, max_n, a.budget);
        r.fact("search_max_n", max_n);
        r.fact("search", s.decision == Decision::yes ? "yes" : s.decision == Decision::no ? "no" : "unknown");
        if (s.decision == Decision::yes) {
          auto const& f = *s.witness;
          std::string consts, alphas;
          for (std::size_t i = 0; i < f.n(); ++i) {
            consts += (i ? ", " : "") + to_string(f.constants[i]);
            alphas += (i ? ", " : "") + to_string(f.alphas[i]);
          }
          r.line("protomodular witness with n = " + std::to_string(f.n()) + ": e = " + consts + "; alpha = "
                 + alphas + "; theta = " + to_string(f.theta));
        } else {
          r.line("no protomodular witness with n <= " + std::to_string(max_n) + ": " + s.detail);
        }
      }
    }

    void cmd_topcheck(Context& ctx, Args const& a, Report& r) {
      auto&      reg = ctx.registry();
      auto const alg = reg.algebra(a.algebra);
      auto const top = topology_on(reg, a.topology, alg);
      auto const c   = certify(alg, top);
      if (!c.algebra) {
        r.check("operations continuous", false,
                "'" + c.failed_symbol + "' is not continuous at open " + format_set(*c.failed_open));
        return;
      }
      r.check("operations continuous", true);
      TopAlgebra const& t = *c.algebra;
      r.fact("separation", {{"t1", separation_report(*top).t1},
                            {"hausdorff", separation_report(*top).hausdorff},
                            {"regular", separation_report(*top).regular}});
      if (GroupView::is_group(alg)) {
        r.check("translations are homeomorphisms", homogeneity_check(t));
      }
      ProtomodularWitness const* w = nullptr;
      if (!a.witness.empty()) {
        auto it = reg.protomodular.find(a.witness);
        if (it == reg.protomodular.end()) {
          throw DanglingReferenceError("no protomodular witness for '" + a.witness + "'");
        }
        w = &it->second;
      } else {
        w = witness_for(reg, alg->theory()->name);
      }
      auto const subs = enumerate_subalgebras(*alg);
      if (w) {
        auto const laws = check_protomodular_witness(*alg, *w).summary();
        r.check("witness laws", laws);
        if (!laws) {
          return;
        }
        r.check("regular", regularity_check(t, *w));
        r.check("Hausdorff iff constants closed", hausdorff_iff_constants_closed(t, *w));
        std::vector<Element> points(alg->size());
        std::iota(points.begin(), points.end(), Element{0});
        r.check("neighbourhood base at every point", for_all(points, "point(s)", [&](Element x) {
                  return neighborhood_base_check(t, *w, x);
                }));
        r.check("iota/theta retraction at every point", for_all(points, "point(s)", [&](Element x) {
                  return iota_theta_check(t, *w, x);
                }));
        std::vector<std::vector<Element>> open_subs;
        for (auto const& s : subs) {
          if (top->is_open(make_set(alg->size(), s))) {
            open_subs.push_back(s);
          }
        }
        r.check("open subalgebras are closed", for_all(open_subs, "open subalgebra(s)", [&](auto const& s) {
                  return open_subalgebra_closed(t, s, *w);
                }));
      }
      r.check("closures of subalgebras are subalgebras", for_all(subs, "subalgebra(s)", [&](auto const& s) {
                return closure_is_subalgebra(t, s);
              }));
    }

    void cmd_sep(Context& ctx, Args const& a, Report& r) {
      auto const& t  = ctx.registry().topology(a.topology);
      auto const  fl = separation_report(*t.topology);
      r.line("base: " + base_string(*t.topology));
      r.line("T1: " + yes_no(fl.t1) + ", Hausdorff: " + yes_no(fl.hausdorff) + ", regular: " + yes_no(fl.regular));
      r.fact("t1", fl.t1);
      r.fact("hausdorff", fl.hausdorff);
      r.fact("regular", fl.regular);
    }

    void cmd_quotient_top(Context& ctx, Args const& a, Report& r) {
      auto const& t   = ctx.registry().topology(a.topology);
      auto const  map = parse_elements(a.map);
      if (map.size() != t.topology->size()) {
        throw ShapeError("map has " + std::to_string(map.size()) + " entries, space has "
                         + std::to_string(t.topology->size()) + " points");
      }
      auto const m = a.size ? a.size : (map.empty() ? 0 : *std::max_element(map.begin(), map.end()) + 1);
      require_in_range(map, m, "--map");
      auto const     q = std::make_shared<FiniteTopology const>(quotient_topology(*t.topology, map, m));
      ContinuousMap const f{t.topology, q, map};
      r.line("quotient topology base: " + base_string(*q));
      json base = json::array();
      for (auto const& u : q->base()) {
        base.push_back(members(u));
      }
      r.fact("base", base);
      r.check("map is continuous", is_continuous(f).holds);
      r.check("map is a quotient map", is_quotient_map(f).holds);
    }

    void cmd_open_map(Context& ctx, Args const& a, Report& r) {
      auto&       reg  = ctx.registry();
      auto const& from = reg.topology(a.from);
      auto const& to   = reg.topology(a.to);
      std::optional<Homomorphism> hom;
      std::vector<Element>        map;
      if (!a.hom.empty()) {
        hom = reg.hom(a.hom);
        if (hom->dom->name() != from.on->name() || hom->cod->name() != to.on->name()) {
          throw PreconditionError("topologies must lie on '" + hom->dom->name() + "' and '" + hom->cod->name()
                                  + "'");
        }
        map = hom->map;
      } else {
        map = parse_elements(a.map);
        if (map.size() != from.topology->size()) {
          throw ShapeError("map has " + std::to_string(map.size()) + " entries, space has "
                           + std::to_string(from.topology->size()) + " points");
        }
        require_in_range(map, to.topology->size(), "--map");
      }
      ContinuousMap const f{from.topology, to.topology, map};
      auto const          cont = is_continuous(f);
      auto const          open = is_open_map(f);
      auto const          quot = is_quotient_map(f);
      r.fact("continuous", cont.holds);
      r.fact("surjective", is_surjective(f));
      r.fact("open", open.holds);
      r.fact("quotient", quot.holds);
      r.line("continuous: " + yes_no(cont.holds) + (cont.witness ? " (preimage of " + format_set(*cont.witness) + " not open)" : ""));
      r.line("surjective: " + yes_no(is_surjective(f)));
      r.line("open: " + yes_no(open.holds) + (open.witness ? " (image of " + format_set(*open.witness) + " not open)" : ""));
      r.line("quotient map: " + yes_no(quot.holds));
      if (!hom || !cont.holds) {
        return;
      }
      auto const mw = reg.maltsev.find(hom->dom->theory()->name);
      auto const cd = certify(hom->dom, from.topology);
      auto const cc = certify(hom->cod, to.topology);
      if (mw == reg.maltsev.end() || !cd.algebra || !cc.algebra || !check_hom(*hom).holds) {
        r.line("regular epi comparison skipped: needs certified topological algebras and a Maltsev witness");
        return;
      }
      auto const rep = regular_epi_iff_open_surjection({*cd.algebra, *cc.algebra, *hom}, mw->second);
      r.fact("regular_epi", rep.regular_epi);
      r.fact("open_surjection", rep.open_surjection);
      r.check("regular epi iff open surjection", rep.verdict);
    }

    GroupAction action_from_args(Registry const& reg, Args const& a) {
      if (!std::filesystem::exists(a.action) && reg.actions.contains(a.action)) {
        auto act = reg.action(a.action);
        if ((!a.k.empty() && a.k != act.k->name()) || (!a.q.empty() && a.q != act.q->name())) {
          throw PreconditionError("action '" + a.action + "' is of " + act.q->name() + " on " + act.k->name());
        }
        return act;
      }
      if (a.k.empty() || a.q.empty()) {
        throw UsageError("an action file needs --k and --q");
      }
      return parse_action(read_file(a.action), reg.algebra(a.k), reg.algebra(a.q),
                          std::filesystem::path(a.action).stem().string());
    }

    void cmd_semidirect(Context& ctx, Args const& a, Report& r) {
      auto const act = action_from_args(ctx.registry(), a);
      auto const va  = verify_action(act);
      r.check("action by automorphisms", va);
      if (!va) {
        return;
      }
      auto const sd = build_semidirect(act, a.name);
      GroupView  g(sd.algebra);
      r.line(format_algebra(*sd.algebra));
      r.fact("order", sd.algebra->size());
      r.fact("abelian", g.is_abelian());
      r.line("order " + std::to_string(sd.algebra->size()) + ", abelian: " + yes_no(g.is_abelian()));
      r.check("group axioms", is_algebra_of(*sd.algebra).all_hold());
      r.check("K is normal", g.is_normal_subgroup(image(sd.k_injection)));
      Verdict conj = Verdict::pass();
      for (Element b = 0; b < act.q->size() && conj; ++b) {
        for (Element x = 0; x < act.k->size(); ++x) {
          auto const lhs = g.mul(sd.q_injection(b), sd.k_injection(x));
          auto const rhs = g.mul(sd.k_injection(act.phi[b][x]), sd.q_injection(b));
          if (lhs != rhs) {
            conj = Verdict::fail("a = " + std::to_string(x) + ", b = " + std::to_string(b));
            break;
          }
        }
      }
      r.check("b a = phi_b(a) b", conj);
      r.check("split exact", split_exact_check(action_to_point(act)).verdict);
    }

    void cmd_complement(Context& ctx, Args const& a, Report& r) {
      auto const g  = ctx.registry().algebra(a.group);
      auto const ks = parse_elements(a.k);
      auto const qs = parse_elements(a.q);
      require_in_range(ks, g->size(), "--k");
      require_in_range(qs, g->size(), "--q");
      r.check("K normal, K meet Q = {e}, KQ = G", complement_check(g, ks, qs));
    }

    void report_point(SplitPoint const& pt, Report& r) {
      auto const iso = point_roundtrip_iso(pt);
      r.line("u = " + elements_string(iso.u.map) + " : " + pt.total()->name() + " -> "
             + iso.target.algebra->name());
      r.fact("u", iso.u.map);
      r.check("split exact", split_exact_check(pt).verdict);
      r.check("point is isomorphic to the semidirect point of its action", iso.verdict);
      r.check("split five lemma on the round-trip ladder",
              static_cast<bool>(split_five_lemma_check(roundtrip_ladder(pt))));
    }

    void cmd_point_roundtrip(Context& ctx, Args const& a, Report& r) {
      auto& reg = ctx.registry();
      if (!a.point.empty()) {
        report_point(reg.point(a.point), r);
        return;
      }
      if (a.action.empty()) {
        throw UsageError("give --point P or --action A");
      }
      auto const act  = action_from_args(reg, a);
      auto const pt   = action_to_point(act);
      auto const back = point_to_action(pt);
      r.check("action of the semidirect point is the action", back.phi == act.phi);
      report_point(pt, r);
    }

    void cmd_reconstruct(Context& ctx, Args const& a, Report& r) {
      auto&       reg  = ctx.registry();
      auto const& pt   = reg.point(a.point);
      auto const  rec  = reconstruct_omega_loop_point(reg.loop_spec(a.spec), pt);
      r.line("X = " + set_string(rec.kernel));
      r.line("zeta = " + elements_string(rec.zeta));
      r.line("chi = " + elements_string(rec.chi));
      r.fact("kernel", rec.kernel);
      r.fact("zeta", rec.zeta);
      r.fact("chi", rec.chi);
      for (auto const& [name, v] : rec.checks) {
        r.check(name, v);
      }
    }

    void cmd_lemma(Context& ctx, Args const& a, Report& r) {
      auto& reg = ctx.registry();
      if (a.lemma == "third-iso") {
        auto const g    = reg.algebra(a.group.empty() ? "Z8" : a.group);
        auto const k    = a.k.empty() ? std::vector<Element>{0, 2, 4, 6} : parse_elements(a.k);
        auto const h    = a.h.empty() ? std::vector<Element>{0, 4} : parse_elements(a.h);
        auto const grid = third_isomorphism_grid(g, k, h);
        r.line("G = " + g->name() + ", K = " + set_string(k) + ", H = " + set_string(h));
        r.line("(G/H)/(K/H) has order " + std::to_string(grid.obj[2][2]->size()));
        r.check("grid commutes", verify_grid(grid));
        r.check("nine lemma (special case)", static_cast<bool>(nine_lemma_special_check(grid)));
        r.check("(G/H)/(K/H) iso to G/K", third_isomorphism_check(grid));
        return;
      }
      auto const& g   = ctx.globals();
      auto const  run = run_lemma(a.lemma, reg.group_pool(), g.seed, g.count);
      r.seed          = g.seed;
      r.fact("lemma", run.lemma);
      r.fact("count", run.count);
      r.fact("passed", run.passed);
      r.fact("failed", run.failed);
      r.fact("precondition", run.skipped);
      r.line(std::to_string(run.count) + " instance(s): " + std::to_string(run.passed) + " hold, "
             + std::to_string(run.failed) + " fail, " + std::to_string(run.skipped) + " violate a hypothesis");
      r.check(run.lemma + " lemma on every instance", run.holds(), run.failures.empty() ? "" : run.failures.front());
    }

    void cmd_counterexample(Context&, Args const&, Report& r) {
      auto const  rep = top_not_regular_counterexample();
      auto const  letters = [](FiniteTopology const& t, std::string_view l) {
        std::string out;
        for (auto const& u : t.base()) {
          if (u != t.full_set()) {
            out += (out.empty() ? "" : " ") + named_set(u, l);
          }
        }
        return out.empty() ? std::string("none") : out;
      };
      r.line("A = {a₁,a₂,a₃,a₄}, proper opens generated by " + letters(rep.a, "a"));
      r.line("B = {b₁,b₂,b₃}, proper opens generated by " + letters(rep.b, "b"));
      r.line("C = {c₁,c₂,c₃}, indiscrete");
      std::string pb;
      for (auto [s, t] : rep.pullback) {
        pb += (pb.empty() ? "" : ",") + std::string("(a") + subscript(s + 1) + ",b" + subscript(t + 1) + ")";
      }
      r.line("A x_C B = {" + pb + "}");
      r.fact("f_is_quotient", rep.f_is_quotient);
      r.fact("pi2_is_quotient", rep.pi2_is_quotient);
      r.check("f is a quotient map", rep.f_is_quotient);
      if (rep.pi2_witness) {
        std::string pre;
        for (auto i : members(rep.witness_preimage)) {
          auto [s, t] = rep.pullback[i];
          pre += (pre.empty() ? "" : ",") + std::string("(a") + subscript(s + 1) + ",b" + subscript(t + 1) + ")";
        }
        r.fact("pi2_witness", members(*rep.pi2_witness));
        r.check("π₂ is not a quotient map", !rep.pi2_is_quotient,
                "witness " + named_set(*rep.pi2_witness, "b") + ", preimage {" + pre + "} is open");
      } else {
        r.check("π₂ is not a quotient map", !rep.pi2_is_quotient);
      }
    }

    void cmd_corpus(Context& ctx, Args const& a, Report& r) {
      auto& reg = ctx.registry();
      if (!a.show.empty()) {
        auto const* d = reg.scope.find(a.show);
        if (!d) {
          throw DanglingReferenceError("no declaration named '" + a.show + "'");
        }
        r.line(format_declaration(*d));
        return;
      }
      if (a.list) {
        std::map<std::string, std::vector<std::string>> by_kind;
        for (auto const& d : reg.scope.declarations()) {
          by_kind[std::string(declaration_kind(d))].push_back(declaration_name(d));
        }
        for (auto const& [name, _] : reg.actions) {
          by_kind["action"].push_back(name);
        }
        for (auto const& [name, _] : reg.loop_specs) {
          by_kind["loop spec"].push_back(name);
        }
        for (auto const& [kind, names] : by_kind) {
          std::string joined;
          for (auto const& n : names) {
            joined += (joined.empty() ? "" : " ") + n;
          }
          r.line(kind + ": " + joined);
          r.fact(kind, names);
        }
        return;
      }
      for (auto const& item : invariant_sweep(reg)) {
        r.check(item.kind + " " + item.name, item.verdict);
      }
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    Globals g;
    Args    a;
    CLI::App app{"Finite-model workbench for universal algebra", "ualg"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g.json_output, "Machine-readable report");
    app.add_flag("--no-timing", g.no_timing, "Omit timings from the report");
    app.add_option("--seed", g.seed, "Seed for randomized commands")->capture_default_str();
    app.add_option("--count", g.count, "Instances per randomized run")->capture_default_str();
    app.add_option("--corpus", g.corpus_paths, "Extra DSL files loaded after the built-in corpus");

    using Handler = std::function<void(Context&, Args const&, Report&)>;
    std::map<CLI::App*, Handler> handlers;
    auto sub = [&](std::string name, std::string help, Handler h) {
      auto* s = app.add_subcommand(std::move(name), std::move(help));
      handlers.emplace(s, std::move(h));
      return s;
    };

    auto* s = sub("check", "Parse DSL files and verify every declaration", cmd_check);
    s->add_option("files", a.files, "DSL files, parsed in order")->required()->check(CLI::ExistingFile);
    s->add_flag("--with-corpus", a.with_corpus, "Resolve names against the built-in corpus");

    s = sub("eval", "Evaluate a term in an algebra", cmd_eval);
    s->add_option("--algebra", a.algebra)->required();
    s->add_option("--term", a.term)->required();
    s->add_option("--at", a.at, "Values of the variables in order of first occurrence");

    s = sub("satisfies", "Check an equation, or the theory's axioms", cmd_satisfies);
    s->add_option("--algebra", a.algebra)->required();
    s->add_option("--equation", a.equation, "lhs = rhs");

    auto hom_opts = [&](CLI::App* c) {
      c->add_option("--hom", a.hom, "A declared homomorphism");
      c->add_option("--dom", a.dom);
      c->add_option("--cod", a.cod);
      c->add_option("--map", a.map, "Images of 0, 1, ...");
      c->add_option("--name", a.name);
    };
    hom_opts(sub("hom", "Verify a homomorphism and classify it as an epi", cmd_hom));
    hom_opts(sub("kernel-pair", "Kernel pair of a homomorphism", cmd_kernel_pair));
    hom_opts(sub("factorize", "Regular epi / mono factorization", cmd_factorize));

    s = sub("product", "Product of two algebras", cmd_product);
    s->add_option("--a", a.a)->required();
    s->add_option("--b", a.b)->required();
    s->add_option("--name", a.name);

    s = sub("congruence", "Congruence generated by pairs, or all congruences", cmd_congruence);
    s->add_option("--algebra", a.algebra)->required();
    s->add_option("--pairs", a.pairs, "Generating pairs a:b, comma separated");
    s->add_flag("--all", a.all, "List every congruence");

    s = sub("quotient", "Quotient by a generated congruence or a kernel pair", cmd_quotient);
    s->add_option("--algebra", a.algebra);
    s->add_option("--pairs", a.pairs);
    s->add_option("--hom", a.hom);
    s->add_option("--name", a.name);

    for (auto [name, help, h] : {std::tuple{"permute", "Do all congruences permute?", Handler(cmd_permute)},
                                 std::tuple{"reflexive-eq", "Is every reflexive compatible relation an equivalence?",
                                            Handler(cmd_reflexive_eq)}}) {
      s = sub(name, help, h);
      s->add_option("--algebra", a.algebra)->required();
      s->add_option("--cap", a.cap, "Largest carrier to enumerate")->capture_default_str();
    }

    s = sub("clone", "Term operations of a given arity", cmd_clone);
    s->add_option("--algebra", a.algebra)->required();
    s->add_option("--arity", a.arity)->capture_default_str()->check(CLI::Range(std::size_t{0}, max_clone_arity));
    s->add_option("--budget", a.budget)->capture_default_str();
    s->add_flag("--list", a.list, "Print every operation with its term");

    s = sub("maltsev", "Search the ternary clone for a Maltsev operation", cmd_maltsev);
    s->add_option("--algebra", a.algebra)->required();
    s->add_option("--budget", a.budget)->capture_default_str();

    s = sub("protomodular", "Check the theory's protomodular witness or search for one", cmd_protomodular);
    s->add_option("--algebra", a.algebra)->required();
    s->add_option("--search", a.search, "Search for a witness with n up to this bound");
    s->add_option("--budget", a.budget)->capture_default_str();

    s = sub("topcheck", "Certify a topological algebra and check its separation theorems", cmd_topcheck);
    s->add_option("--algebra", a.algebra)->required();
    s->add_option("--topology", a.topology)->required();
    s->add_option("--witness", a.witness, "Theory whose protomodular witness to use");

    s = sub("sep", "Separation properties of a space", cmd_sep);
    s->add_option("--topology", a.topology)->required();

    s = sub("quotient-top", "Quotient topology along a surjection", cmd_quotient_top);
    s->add_option("--topology", a.topology)->required();
    s->add_option("--map", a.map)->required();
    s->add_option("--size", a.size, "Points of the codomain (default: max + 1)");

    s = sub("open-map", "Continuity, openness and regular epis of a map", cmd_open_map);
    s->add_option("--from", a.from)->required();
    s->add_option("--to", a.to)->required();
    s->add_option("--hom", a.hom);
    s->add_option("--map", a.map);

    s = sub("semidirect", "Semidirect product of groups from an action", cmd_semidirect);
    s->add_option("--k", a.k);
    s->add_option("--q", a.q);
    s->add_option("--action", a.action, "Action file (|Q| permutation lines) or registered action")->required();
    s->add_option("--name", a.name);

    s = sub("complement", "Check K normal with complement Q", cmd_complement);
    s->add_option("--group", a.group)->required();
    s->add_option("--k", a.k)->required();
    s->add_option("--q", a.q)->required();

    s = sub("point-roundtrip", "Points and actions correspond", cmd_point_roundtrip);
    s->add_option("--point", a.point);
    s->add_option("--action", a.action);
    s->add_option("--k", a.k);
    s->add_option("--q", a.q);

    s = sub("reconstruct", "Rebuild a point of an Omega-loop theory on X x B", cmd_reconstruct);
    s->add_option("--spec", a.spec)->required();
    s->add_option("--point", a.point)->required();

    s = sub("lemma", "Seeded instance runs of the homological lemmas", cmd_lemma);
    s->add_option("name", a.lemma)->required()->check(
        CLI::IsMember({"five", "split-five", "nine", "barr-kock", "third-iso"}));
    s->add_option("--group", a.group, "third-iso: the group (default Z8)");
    s->add_option("--k", a.k, "third-iso: K (default 0,2,4,6)");
    s->add_option("--inner", a.h, "third-iso: H, normal and inside K (default 0,4)");

    s = sub("counterexample", "Reproduce a counterexample", cmd_counterexample);
    s->add_option("name", a.example)->required()->check(CLI::IsMember({"top-not-regular"}));

    s = sub("corpus", "Load the corpus and run its invariant sweep", cmd_corpus);
    s->add_flag("--list", a.list, "List names by kind");
    s->add_option("--show", a.show, "Print one declaration");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      auto const code = app.exit(e, out, err);
      return code == 0 ? exit_ok : exit_usage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    Report    r;
    for (std::size_t i = 0; i < args.size(); ++i) {
      r.command += (i ? " " : "") + args[i];
    }
    Context ctx(g, err);
    auto const start = std::chrono::steady_clock::now();
    try {
      handlers.at(chosen)(ctx, a, r);
    } catch (Error const& e) {
      int const code = dynamic_cast<UsageError const*>(&e) ? exit_usage : exit_input;
      if (g.json_output) {
        json j;
        j["command"]   = r.command;
        j["error"]     = {{"kind", e.kind()}, {"message", e.what()}};
        j["exit_code"] = code;
        out << j.dump(2) << '\n';
      } else {
        err << "error (" << e.kind() << "): " << e.what() << '\n';
      }
      return code;
    }
    std::optional<double> ms;
    if (!g.no_timing) {
      ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    int const code = r.holds() ? exit_ok : exit_failure;
    if (g.json_output) {
      out << r.to_json(ms, code).dump(2) << '\n';
    } else {
      r.print_human(out, ms);
    }
    return code;
  }

}  // namespace ualg::cli
