#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ecogen/cli.hpp"
#include "ecogen/spec.hpp"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ecogen");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ecogen::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST_CASE("count") {
  auto r = run_cli({"count", "--system", "catalan", "-n", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "0 1\n1 2\n2 5\n3 14\n4 42\n5 132\n");

  r = run_cli({"count", "--system", "catalan", "-n", "5", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,k,count\n", 0) == 0);
  // row sums of the cell table are the totals
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  std::vector<long> totals(6);
  while (std::getline(in, line)) {
    long n, k, c;
    REQUIRE(std::sscanf(line.c_str(), "%ld,%ld,%ld", &n, &k, &c) == 3);
    totals[static_cast<std::size_t>(n)] += c;
  }
  CHECK(totals == std::vector<long>{1, 2, 5, 14, 42, 132});

  r = run_cli({"count", "--system", "motzkin", "-n", "6", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["totals"][6] == "51");
  CHECK(run_cli({"count", "--system", "catalan", "-n", "40", "--naive"}).out ==
        run_cli({"count", "--system", "catalan", "-n", "40"}).out);
}

TEST_CASE("classify from a file") {
  const std::string fib = temp_file("ecogen_fib.eco",
                                    "system fib { mode eco; axiom 1;\n"
                                    "  rule k mod 2 == 1 : (k) x k-1, (2) x 1;\n"
                                    "  rule k mod 2 == 0 : (k) x k-1, (1) x 1; }\n");
  auto r = run_cli({"classify", "--file", fib});
  CHECK(r.code == 0);
  CHECK(r.out.find("finite labels: yes (2)") != std::string::npos);
  CHECK(r.out.find("(1)/(1 - z - z^2)") != std::string::npos);
  r = run_cli({"classify", "--file", fib, "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["closed_form"]["denominator"] == nlohmann::json({"1", "-1", "-1"}));
}

TEST_CASE("canonical JSON files are accepted") {
  const std::string text = "system c { mode eco; axiom 2; rule always : interval(2, k+1); }";
  const std::string path = temp_file("ecogen_cat.json", ecogen::to_canonical_json(ecogen::parse_spec(text)));
  const auto r = run_cli({"count", "--file", path, "-n", "6"});
  CHECK(r.code == 0);
  CHECK(r.out == run_cli({"count", "--system", "catalan", "-n", "6"}).out);
  const std::string broken = temp_file("ecogen_broken.json", "{\"name\": 3}");
  CHECK(run_cli({"count", "--file", broken}).code == 2);
}

TEST_CASE("sample") {
  auto r = run_cli({"sample", "--system", "motzkin", "-n", "0", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  const auto a = run_cli({"sample", "--system", "motzkin", "-n", "40", "--seed", "9", "--count", "5"});
  const auto b = run_cli({"sample", "--system", "motzkin", "-n", "40", "--seed", "9", "--count", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run_cli({"sample", "--system", "motzkin", "-n", "40", "--seed", "10", "--count", "5"});
  CHECK(a.out != c.out);
  const auto seq = run_cli({"sample", "--system", "motzkin", "-n", "40", "--seed", "9", "--count", "5", "--strategy", "sequential"});
  CHECK(seq.out == a.out);
  const auto j = nlohmann::json::parse(run_cli({"sample", "--system", "catalan", "-n", "4", "--format", "json"}).out);
  CHECK(j["walks"][0].size() == 5);
}

TEST_CASE("gf and guess") {
  auto r = run_cli({"gf", "--system", "modified_motzkin", "--order", "12", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["F_z_1"][5] == "7");
  r = run_cli({"gf", "--system", "fibonacci"});
  CHECK(r.code != 0);
  r = run_cli({"guess", "--system", "fibonacci", "--order", "30"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1 - z - z^2") != std::string::npos);
}

TEST_CASE("catalog") {
  auto r = run_cli({"catalog", "--list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("catalan") != std::string::npos);
  r = run_cli({"catalog", "fibonacci", "involutions"});
  CHECK(r.code == 0);
  r = run_cli({"catalog", "no_such_entry"});
  CHECK(r.code == 2);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"count", "--system", "nope"}).code == 2);
  CHECK(run_cli({"count", "--system", "catalan", "--format", "xml"}).code == 2);
  CHECK(run_cli({"count", "--file", "/nonexistent/spec.eco"}).code == 2);
  const std::string bad = temp_file("ecogen_bad.eco", "system x { mode eco; axiom 1; rule always : (k) x; }");
  const auto r = run_cli({"count", "--file", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 1") != std::string::npos);
  CHECK(run_cli({"count", "--system", "three_plus_linear", "-n", "60"}).code == 1);
  CHECK(run_cli({"count", "--system", "catalan", "-n", "30", "--cap", "10"}).code == 1);
}
