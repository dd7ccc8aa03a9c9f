#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli/cli_app.hpp"
#include "doctest.h"
#include "nlohmann/json.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code;
  json report;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = slocal::cli::run(args, out, err);
  CliResult r{code, json(), err.str()};
  if (!out.str().empty() && out.str().front() == '{') r.report = json::parse(out.str());
  return r;
}

}  // namespace

TEST_CASE("fourth-root subcommand") {
  const CliResult r = invoke({"fourth-root", "--p", "2", "--precision", "32"});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("r") == 31);
  CHECK(r.report.at("result").at("certificate") == "0");
}

TEST_CASE("ring subcommands") {
  CliResult r = invoke({"ring", "arith", "--op", "mul", "--char", "zero", "--p", "2",
                        "--precision", "16", "--a", "2", "--b", "2"});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("value") == "4");

  r = invoke({"ring", "valuation", "--char", "zero", "--p", "2", "--precision", "16",
              "--a", "6"});
  CHECK(r.report.at("result").at("valuation") == 1);

  r = invoke({"ring", "valuation", "--char", "zero", "--p", "2", "--precision", "16",
              "--a", "0"});
  CHECK(r.report.at("result").at("valuation") == "AtLeastPrecision");

  r = invoke({"ring", "level", "--char", "zero", "--p", "2", "--precision", "16",
              "--gens", "6"});
  CHECK(r.report.at("result").at("level") == 1);

  // positive characteristic elements travel as coefficient arrays
  r = invoke({"ring", "arith", "--op", "mul", "--char", "positive", "--p", "3",
              "--precision", "4", "--a", "[0,1]", "--b", "[0,1]"});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("value") == json::parse("[0,0,1,0]"));
}

TEST_CASE("hensel subcommand") {
  const CliResult r = invoke({"hensel", "--char", "zero", "--p", "2", "--precision", "16",
                              "--coeffs", "31,0,0,0,1", "--a", "1"});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("value_at_root") == "0");
}

TEST_CASE("decompose subcommand and exit codes") {
  const std::string doc =
      R"({"ring":{"char":"zero","p":5,"precision":12},"matrix":[["1","0"],["0","1"]]})";
  CliResult r = invoke({"decompose", "--json", doc});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("letters") == 0);
  CHECK(r.report.at("result").at("round_trip_exact") == true);

  // a non-SL matrix is a library failure: exit 1 with an error report
  const std::string bad =
      R"({"ring":{"char":"zero","p":5,"precision":12},"matrix":[["2","0"],["0","1"]]})";
  r = invoke({"decompose", "--json", bad});
  CHECK(r.code == 1);
  CHECK(r.report.at("error").at("code") == "NotSL");

  // usage problems exit 2
  CHECK(invoke({"decompose"}).code == 1);  // neither --input nor --json: BadArgument
  CHECK(invoke({"unknown-subcommand"}).code == 2);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("el-diagonal subcommand") {
  const CliResult r = invoke({"el-diagonal", "--char", "zero", "--p", "3", "--precision",
                              "8", "--k", "1", "--x", "1"});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("word").size() == 4);
  CHECK(r.report.at("result").at("min_letter_valuation") == 1);
  CHECK(r.report.at("result").at("product")[0][0] == "10");
}

TEST_CASE("congruence subcommands") {
  CliResult r = invoke({"congruence", "order", "--n", "2", "--p", "3", "--m", "1"});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("order") == 24);

  r = invoke({"congruence", "abelianization", "--n", "2", "--p", "3", "--m", "1"});
  CHECK(r.report.at("result").at("invariant_factors") == json::parse("[3]"));

  r = invoke({"congruence", "index", "--n", "2", "--p", "2", "--m", "2", "--k", "1"});
  // the level-1 kernel has index |SL2(Z/2)| = 6
  CHECK(r.report.at("result").at("index") == 6);

  r = invoke({"congruence", "el-index", "--n", "2", "--p", "3", "--k", "1", "--m", "2"});
  CHECK(r.report.at("result").at("value") == 72);
  CHECK(r.report.at("provenance") == "bfs_closure");

  r = invoke({"nontrivial-rep", "--p", "3", "--dim", "2"});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("cyclic_order") == 3);

  r = invoke({"nontrivial-rep", "--p", "5", "--dim", "2"});
  CHECK(r.code == 1);
}

TEST_CASE("flags subcommands") {
  const char* path = "cli_flags_input.json";
  {
    std::ofstream f(path);
    f << R"({"matrices":[[["1","1","0"],["0","1","1"],["0","0","1"]]]})";
  }
  CliResult r = invoke({"flags", "jh", "--input", path});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("dimensions") == json::parse("[0,1,2,3]"));

  const json flag = r.report.at("result").at("flag");
  {
    std::ofstream f(path);
    json doc;
    doc["matrices"] = json::parse(R"([[["1","1","0"],["0","1","1"],["0","0","1"]]])");
    doc["flag"] = flag;
    f << doc.dump();
  }
  r = invoke({"flags", "check-invariance", "--input", path});
  CHECK(r.code == 0);
  CHECK(r.report.at("result").at("invariant") == true);
  std::remove(path);
}

TEST_CASE("reports are byte-deterministic modulo wall time") {
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"fourth-root", "--p", "3", "--precision", "24"},
        std::vector<std::string>{"congruence", "el-index", "--n", "2", "--p", "2", "--k",
                                 "1", "--m", "2"},
        std::vector<std::string>{"verify-identities", "--instances", "50"}}) {
    json a = invoke(args).report;
    json b = invoke(args).report;
    a.erase("wall_time_ms");
    b.erase("wall_time_ms");
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("out file writing") {
  const char* path = "cli_out_report.json";
  const CliResult r = invoke({"--out", path, "fourth-root", "--p", "5", "--precision", "16"});
  CHECK(r.code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  json j;
  f >> j;
  CHECK(j.at("result").at("r") == 4);
  std::remove(path);
}
