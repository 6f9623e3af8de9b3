// Runs the command-line tool as a subprocess.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef MAGNETIC_CLI_PATH
#error "MAGNETIC_CLI_PATH must name the built executable"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + MAGNETIC_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("coeffs csv") {
  const auto r = run("coeffs --k 4 --d -3 --D 1 --nmax 3 --format csv");
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "n,value,certified,precision_bits,cutoff");
  CHECK(l[1].rfind("1,-8,true,", 0) == 0);
  CHECK(l[2].rfind("2,26688,true,", 0) == 0);
  CHECK(l[3].rfind("3,-25264224,true,", 0) == 0);
}

TEST_CASE("csv and json carry the same content") {
  const auto csv = lines(run("coeffs --k 3 --d -4 --D 1 --nmax 5").out);
  const auto js = run("coeffs --k 3 --d -4 --D 1 --nmax 5 --format json");
  CHECK(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  REQUIRE(j["rows"].size() == csv.size() - 1);
  for (std::size_t i = 0; i < j["rows"].size(); ++i) {
    const auto& row = j["rows"][i];
    CHECK(row["value"].is_string());
    std::ostringstream s;
    s << row["n"].get<long>() << "," << row["value"].get<std::string>() << ","
      << (row["certified"].get<bool>() ? "true" : "false") << "," << row["precision_bits"].get<long>() << ","
      << row["cutoff"].get<long>();
    CHECK(s.str() == csv[i + 1]);
  }
}

TEST_CASE("level-N, empty table and translate") {
  auto r = run("coeffs --k 2 --d -23 --D 1 --level 6 --r all-signed --nmax 1");
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(1).rfind("1,1,true,", 0) == 0);
  r = run("coeffs --k 4 --d -3 --D 1 --nmax 0");
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1);
  r = run("translate --k 6 --d -3 --D 1 --lambda 24,1 --nmax 1");
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(1).rfind("1,15360,true,", 0) == 0);
  const auto a = run("translate --k 6 --d -3 --D 1 --lambda auto --nmax 1");
  CHECK(a.out == r.out);
  const auto t1 = run("translate --k 4 --d -3 --D 1 --lambda 1 --nmax 2");
  const auto plain = run("coeffs --k 4 --d -3 --D 1 --nmax 2");
  CHECK(lines(t1.out).at(1).substr(0, 9) == lines(plain.out).at(1).substr(0, 9));
  CHECK(lines(t1.out).at(2).substr(0, 13) == lines(plain.out).at(2).substr(0, 13));
}

TEST_CASE("exit codes") {
  CHECK(run("coeffs --k 4 --d -2 --D 1 --nmax 1").code == 2);
  CHECK(run("coeffs --k 4 --d -3 --D 1").code == 2);
  CHECK(run("translate --k 6 --d -3 --D 1 --lambda 1,1 --nmax 1").code == 2);
  CHECK(run("verify nonexistent").code == 2);
  CHECK(run("jcoeff --n -2").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("coeffs --k 6 --d -3 --D 1 --nmax 1").code == 1);  // raw values with a cusp form
  CHECK(run("coeffs --k 6 --d -3 --D 1 --nmax 2 --correct-cusp").code == 0);
}

TEST_CASE("scalars") {
  CHECK(run("partition --n 24").out == "1575\n");
  CHECK(run("jcoeff --n -1").out == "1\n");
  CHECK(run("jcoeff --n 1").out == "196884\n");
}

TEST_CASE("verify with report and negative control") {
  const auto path = fs::temp_directory_path() / "magnetic_cli_report.json";
  fs::remove(path);
  CHECK(run("verify bessel --report " + path.string()).code == 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["suite"] == "bessel");
  CHECK(j["overall"] == "pass");
  fs::remove(path);
  CHECK(run("verify paper-tables").code == 0);
  CHECK(run("verify paper-tables --test-perturbation 1").code == 1);
}

TEST_CASE("cache round trip across processes") {
  const auto path = fs::temp_directory_path() / "magnetic_cli_cache.jsonl";
  fs::remove(path);
  const std::string args = "coeffs --k 2 --d -3 --D 1 --nmax 6 --cache " + path.string();
  const auto first = run(args);
  const auto second = run(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  // an uncertified row stays uncertified when read back
  const std::string raw = "coeffs --k 6 --d -3 --D 1 --nmax 1 --cache " + path.string();
  const auto r1 = run(raw);
  const auto r2 = run(raw);
  CHECK(r1.code == 1);
  CHECK(r2.code == 1);
  CHECK(r1.out == r2.out);
  CHECK(r2.out.find(",false,") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("precision override from the environment") {
  const auto r = run("coeffs --k 4 --d -3 --D 1 --nmax 1", "MAGNETIC_PRECISION_BITS=400");
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(1).rfind("1,-8,true,400,", 0) == 0);
  CHECK(run("coeffs --k 4 --d -3 --D 1 --nmax 1", "MAGNETIC_PRECISION_BITS=abc").code == 2);
}
