#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ualg/cli.hpp"

using nlohmann::json;

namespace {

  struct Run {
    int         code;
    std::string out;
    std::string err;
  };

  Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = ualg::cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), {"--json", "--no-timing"});
    auto r = run(std::move(args));
    auto j = json::parse(r.out);
    CHECK(j["exit_code"] == r.code);
    return j;
  }

  std::string temp_file(std::string const& name, std::string const& text) {
    auto path = std::filesystem::temp_directory_path() / ("ualg_test_" + name);
    std::ofstream(path) << text;
    return path.string();
  }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"--no-timing", "maltsev", "--algebra", "Z2"}).code == ualg::cli::exit_ok);
  CHECK(run({"--no-timing", "hom", "--dom", "Z4", "--cod", "Z2", "--map", "0,1,1,0"}).code
        == ualg::cli::exit_failure);
  CHECK(run({}).code == ualg::cli::exit_usage);
  CHECK(run({"bogus"}).code == ualg::cli::exit_usage);
  CHECK(run({"eval", "--algebra", "Z4"}).code == ualg::cli::exit_usage);
  CHECK(run({"eval", "--algebra", "Nope", "--term", "x"}).code == ualg::cli::exit_input);
  CHECK(run({"counterexample", "nope"}).code == ualg::cli::exit_usage);
  CHECK(run({"hom", "--dom", "Z4"}).code == ualg::cli::exit_usage);
  CHECK(run({"--help"}).code == ualg::cli::exit_ok);
}

TEST_CASE("facts do not affect the exit code") {
  auto j = run_json({"maltsev", "--algebra", "M2"});
  CHECK(j["command"] == "--json --no-timing maltsev --algebra M2");
  CHECK(j["facts"]["maltsev"] == false);
  CHECK(j["facts"]["clone_size"] == 8);
  CHECK(j["checks"].empty());
  CHECK(j["holds"] == true);
  CHECK(j["exit_code"] == 0);
  CHECK(j["timing_ms"].is_null());

  auto p = run_json({"permute", "--algebra", "P3"});
  CHECK(p["facts"]["permutable"] == false);
  CHECK(p["exit_code"] == 0);

  auto human = run({"--no-timing", "maltsev", "--algebra", "M2"});
  CHECK(human.out.find("no Maltsev term operation (clone exhausted, size 8)") != std::string::npos);
  CHECK(human.out.find("time:") == std::string::npos);
}

TEST_CASE("failed checks carry a witness") {
  auto j = run_json({"hom", "--dom", "Z4", "--cod", "Z2", "--map", "0,1,1,0"});
  CHECK(j["holds"] == false);
  CHECK(j["exit_code"] == 1);
  REQUIRE_FALSE(j["checks"].empty());
  auto const& c = j["checks"][0];
  CHECK(c["name"] == "homomorphism");
  CHECK(c["holds"] == false);
  CHECK(c["witness"].get<std::string>().find("'mul' at {1,1}") != std::string::npos);

  auto ok = run_json({"hom", "--dom", "Z4", "--cod", "Z2", "--map", "0,1,0,1"});
  CHECK(ok["holds"] == true);
  for (auto const& check : ok["checks"]) {
    CHECK(check.contains("detail"));
    CHECK(check["holds"] == true);
  }
}

TEST_CASE("errors have their own report shape") {
  auto j = run_json({"eval", "--algebra", "Nope", "--term", "x"});
  CHECK(j["error"]["kind"] == "dangling-reference");
  CHECK_FALSE(j["error"]["message"].get<std::string>().empty());
  CHECK(j["exit_code"] == 3);
  CHECK_FALSE(j.contains("checks"));
  auto u = run_json({"hom", "--dom", "Z4"});
  CHECK(u["error"]["kind"] == "usage");
  CHECK(u["exit_code"] == 2);

  auto bad = temp_file("bad.ua", "theory T { op c/0 }\n");
  auto s   = run_json({"check", bad});
  CHECK(s["error"]["kind"] == "syntax");
  CHECK(s["error"]["message"].get<std::string>().find(":1:19:") != std::string::npos);
}

TEST_CASE("check parses files in a fresh scope") {
  auto good = temp_file("good.ua", "theory T { op c/0; }\nalgebra A : T { carrier = 2; c = 1; }\n");
  auto r    = run({"--no-timing", "check", good});
  CHECK(r.code == 0);
  CHECK(r.out.find("2/2 checks hold") != std::string::npos);

  auto uses = temp_file("uses.ua", "hom h : Z2 -> Z2 = [0,1];\n");
  CHECK(run({"check", uses}).code == ualg::cli::exit_input);
  CHECK(run({"--no-timing", "check", "--with-corpus", uses}).code == ualg::cli::exit_ok);
}

TEST_CASE("extra corpus files are visible to every command") {
  auto extra = temp_file("extra.ua", "hom Z4_neg : Z4 -> Z4 = [0,3,2,1];\n");
  auto j     = run_json({"--corpus", extra, "hom", "--hom", "Z4_neg"});
  CHECK(j["holds"] == true);
  CHECK(j["facts"]["split"] == true);
  CHECK(run({"hom", "--hom", "Z4_neg"}).code == ualg::cli::exit_input);
}

TEST_CASE("seeded commands report their seed") {
  auto a = run_json({"--seed", "9", "--count", "5", "lemma", "five"});
  CHECK(a["seed"] == 9);
  CHECK(a["facts"]["count"] == 5);
  CHECK(a["facts"]["passed"] == 5);
  auto b = run_json({"--count", "5", "lemma", "barr-kock"});
  CHECK(b["seed"] == 42);
  CHECK(b["holds"] == true);
  CHECK(run_json({"congruence", "--algebra", "Z4", "--pairs", "0:2"})["seed"].is_null());
}

TEST_CASE("commands agree with the library") {
  auto c = run_json({"congruence", "--algebra", "Z4", "--pairs", "0:2"});
  CHECK(c["facts"]["blocks"] == json::array({0, 1, 0, 1}));
  auto t = run_json({"topcheck", "--algebra", "Z4", "--topology", "Z4_coset"});
  CHECK(t["holds"] == true);
  CHECK(t["facts"]["separation"]["hausdorff"] == false);
  CHECK(t["facts"]["separation"]["regular"] == true);
  auto ce = run({"--no-timing", "counterexample", "top-not-regular"});
  CHECK(ce.code == 0);
  CHECK(ce.out.find("witness {b₁}") != std::string::npos);
  auto sweep = run({"--no-timing", "corpus"});
  CHECK(sweep.code == 0);
  CHECK(sweep.out.find("[fail]") == std::string::npos);
}
