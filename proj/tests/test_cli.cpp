#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "wfano/cli.hpp"

using namespace wfano;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "wfano");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classify --index 1 lists 95 records that load back") {
  const Result r = run({"classify", "--index", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto records = parse_catalog(r.out);
  CHECK(records.size() == 95);
  CHECK(catalog_json(records) == r.out);
  CHECK(run({"classify", "--index", "1", "--format", "json", "--jobs", "3"}).out == r.out);
}

TEST_CASE("monomials of degree 12 on P(1,2,3,3,4)") {
  const Result r = run({"monomials", "--weights", "1,2,3,3,4", "--degree", "12"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["count"] == "65");
  std::vector<std::string> expected;
  for (const auto& m : enumerate_monomials(WeightSystem({1, 2, 3, 3, 4}, 12), 12)) expected.push_back(format_monomial(m));
  CHECK(j["monomials"].get<std::vector<std::string>>() == expected);
}

TEST_CASE("verdict on X_36 in P(1,7,8,9,12)") {
  const Result r = run({"verdict", "--septuple", "1,7,8,9,12,36"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["values"] == Json::array({"3"}));
  CHECK(j["generalOnly"] == true);
  CHECK(j["justification"].size() == 4);
  const Result md = run({"verdict", "--septuple", "1,7,8,9,12,36,1", "--format", "markdown"});
  CHECK(md.out.rfind("d(X) in {3} for a general member", 0) == 0);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"normalize", "--septuple", "1,3,3,4,5,15", "--seed", "2"},
           {"autgroup", "--septuple", "1,2,3,3,4,12"},
           {"check", "--weights", "1,1,2,3,3", "--degree", "9", "--format", "markdown"},
           {"basket", "--septuple", "1,2,3,5,5,15"},
           {"stabilizer", "--points", "0,1,-1,inf"}}) {
    const Result a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  CHECK(run({"normalize", "--septuple", "1,3,3,4,5,15", "--seed", "2"}).out !=
        run({"normalize", "--septuple", "1,3,3,4,5,15", "--seed", "5"}).out);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  const Result unknown_flag = run({"verdict", "--bogus"});
  CHECK(unknown_flag.code == cli::kExitUsage);
  CHECK(unknown_flag.err.find("--septuple") != std::string::npos);  // help text follows
  CHECK(run({"monomials", "--weights", "1,2,3", "--degree", "12"}).code == cli::kExitUsage);
  CHECK(run({"monomials", "--weights", "1,2,x,3,4", "--degree", "12"}).code == cli::kExitUsage);
  CHECK(run({"verdict", "--septuple", "1,2,3,3,4,12,2"}).code == cli::kExitUsage);
  CHECK(run({"classify", "--format", "yaml"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);

  const Result domain = run({"verdict", "--septuple", "1,1,1,1,4,7"});
  CHECK(domain.code == cli::kExitDomain);
  const Json e = Json::parse(domain.err);
  CHECK(e["error"]["kind"] == "PreconditionError");
  CHECK(run({"normalize", "--septuple", "1,1,2,3,3,9"}).code == cli::kExitDomain);
}

TEST_CASE("output file and default catalog") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string out = (dir / "wfano_cli_catalog.json").string();
  REQUIRE(run({"classify", "--out", out}).code == 0);
  CHECK(load_catalog(out).size() == 130);

  ::setenv("WFANO_CATALOG", out.c_str(), 1);
  const Result report = run({"report", "--format", "markdown", "--index", "1"});
  ::unsetenv("WFANO_CATALOG");
  CHECK(report.code == 0);
  CHECK(report.out.find("| № | a1 | a2 | a3 | a4 | a5 | d | I |") != std::string::npos);

  ::setenv("WFANO_CATALOG", "/nonexistent/catalog.json", 1);
  const Result missing = run({"report"});
  ::unsetenv("WFANO_CATALOG");
  CHECK(missing.code == cli::kExitDomain);
  CHECK(Json::parse(missing.err)["error"]["kind"] == "IoError");
  std::remove(out.c_str());
}
