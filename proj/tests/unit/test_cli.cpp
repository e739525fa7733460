#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qdissect::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qdissect_cli_" + name)).string();
}

}  // namespace

TEST_CASE("expand") {
  const auto r = run({"expand", "f2*f3/(f1*f6^2)", "--precision", "8"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 1 1 1 1 2 3 4\n");
  CHECK(run({"expand", "f1", "--precision", "8", "--mod", "4"}).out == "1 3 3 0 0 1 0 1\n");

  const auto j = run({"expand", "f1", "--precision", "8", "--output", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["ring"] == "Z");
  CHECK(doc["coefficients"].size() == 8);
  CHECK(doc["coefficients"][1] == "-1");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"expand"}).code == 2);
  CHECK(run({"expand", "f1 +"}).code == 2);
  CHECK(run({"expand", "f1", "--precision", "4"}).code == 2);
  CHECK(run({"expand", "f1", "--precision", "abc"}).code == 2);
  CHECK(run({"--output", "xml", "expand", "f1"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "--all", "--id", "D2-0"}).code == 2);
  CHECK(run({"verify", "--id", "no-such-record"}).code == 2);
  CHECK(run({"scan", "--moduli", "8,x"}).code == 2);
  CHECK(run({"scan", "--min-support", "5"}).code == 2);
  CHECK(run({"internal", "--spec", "1,2,3"}).code == 2);
  CHECK(run({"oracle", "--max-n", "100"}).code == 2);
  CHECK(run({"dump-table", "--format", "binary"}).code == 2);
  const auto r = run({"frobnicate"});
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("dissect") {
  CHECK(run({"dissect", "@S[16,11]", "--rhs", "-(f2^4*f6^3)/(f1^2*f4^2)", "--mod", "8", "--precision", "200"}).code ==
        0);
  const auto bad = run({"dissect", "@S[16,11]", "--rhs", "f2^4*f6^3/(f1^2*f4^2)", "--mod", "8", "--precision", "50"});
  CHECK(bad.code == 1);
  CHECK(bad.out.rfind("FAIL", 0) == 0);
  CHECK(run({"dissect", "@S[2,1]", "--precision", "8"}).out == "1 1 2 4 4 7 12 14\n");
}

TEST_CASE("verify") {
  const auto one = run({"verify", "--id", "D4-1", "--id", "C16-8n+7", "--precision", "200",
                        "--congruence-precision", "300"});
  CHECK(one.code == 0);
  CHECK(lines(one.out).size() == 2);

  const auto path = temp_path("catalog.txt");
  {
    std::ofstream f(path);
    f << "good | f1^2 | f2*f8^5/(f4^2*f16^2) - 2*q*f2*f16^2/f8 | - | x\n"
      << "bad  | f1 | f2 | - | y\n";
  }
  const auto r = run({"verify", "--all", "--catalog", path, "--output", "json", "--precision", "60"});
  CHECK(r.code == 1);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(nlohmann::json::parse(ls[0])["status"] == "pass");
  const auto failed = nlohmann::json::parse(ls[1]);
  CHECK(failed["status"] == "fail");
  CHECK(failed["degree"] == 1);
  std::filesystem::remove(path);
}

TEST_CASE("scan, family and internal with a cache") {
  const auto cache = temp_path("table.bin");
  std::filesystem::remove(cache);
  const auto s1 = run({"--cache", cache, "--threads", "1", "--output", "json", "scan", "--table-size", "5000",
                       "--max-a", "64", "--moduli", "8,16"});
  CHECK(s1.code == 0);
  CHECK(std::filesystem::exists(cache));
  CHECK(s1.out.find(R"({"A":32,"B":31,"M":16,)") != std::string::npos);
  const auto s4 = run({"--cache", cache, "--threads", "4", "--output", "json", "scan", "--table-size", "5000",
                       "--max-a", "64", "--moduli", "8,16"});
  CHECK(s1.out == s4.out);

  const auto fam = run({"family", "--alpha-max", "4", "--table-size", "5000", "--cache", cache});
  CHECK(fam.code == 0);
  REQUIRE(lines(fam.out).size() == 5);
  CHECK(lines(fam.out)[3].find("holds-so-far") != std::string::npos);
  CHECK(lines(fam.out)[4].find("untestable") != std::string::npos);

  CHECK(run({"internal", "--table-size", "5000", "--cache", cache}).code == 0);
  const auto refuted = run({"internal", "--spec", "2,0,1,0,2", "--table-size", "500"});
  CHECK(refuted.code == 1);
  CHECK(refuted.out.find("refuted-at") != std::string::npos);
  std::filesystem::remove(cache);
}

TEST_CASE("environment cache overrides the flag") {
  const auto env_path = temp_path("env.bin");
  const auto flag_path = temp_path("flag.bin");
  std::filesystem::remove(env_path);
  std::filesystem::remove(flag_path);
  ::setenv("QDISSECT_CACHE", env_path.c_str(), 1);
  CHECK(run({"dump-table", "--table-size", "30", "--cache", flag_path}).code == 0);
  ::unsetenv("QDISSECT_CACHE");
  CHECK(std::filesystem::exists(env_path));
  CHECK_FALSE(std::filesystem::exists(flag_path));
  std::filesystem::remove(env_path);
}

TEST_CASE("dump-table and oracle") {
  CHECK(run({"dump-table", "--table-size", "6"}).out == "1\n1\n1\n1\n1\n2\n");
  const auto path = temp_path("dump.bin");
  CHECK(run({"dump-table", "--table-size", "100", "--format", "binary", "--out", path}).code == 0);
  CHECK(std::filesystem::file_size(path) > 5);
  std::filesystem::remove(path);
  const auto o = run({"oracle", "--max-n", "40"});
  CHECK(o.code == 0);
  CHECK(lines(o.out).size() == 41);
}

TEST_CASE("aaw-check") {
  const auto r = run({"aaw-check", "--precision", "100"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 8);
}
