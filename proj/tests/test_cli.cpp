#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qsym/cli.hpp"

using namespace qsym;
using json = nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

std::vector<std::string> split_args(const std::string& line) {
  std::vector<std::string> args;
  std::string head = line, words;
  auto pos = line.find(" --words ");
  if (pos != std::string::npos) {
    head = line.substr(0, pos);
    words = line.substr(pos + 9);
  }
  std::istringstream in(head);
  std::string tok;
  while (in >> tok) args.push_back(tok);
  if (pos != std::string::npos) {
    args.push_back("--words");
    args.push_back(words);
  }
  return args;
}

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

Run run(const std::string& line) { return run(split_args(line)); }

// Structural equality with numbers compared to a relative 1e-9 (absolute below 1).
bool close(const json& a, const json& b, std::string path, std::string& why) {
  if (a.is_number() && b.is_number()) {
    double x = a.get<double>(), y = b.get<double>();
    if (std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)})) return true;
    why = path + ": " + a.dump() + " vs " + b.dump();
    return false;
  }
  if (a.type() != b.type()) {
    why = path + ": type differs";
    return false;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) {
      why = path + ": key count differs";
      return false;
    }
    for (const auto& [k, v] : a.items()) {
      if (!b.contains(k)) {
        why = path + ": missing key " + k;
        return false;
      }
      if (!close(v, b.at(k), path + "." + k, why)) return false;
    }
    return true;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      why = path + ": length differs";
      return false;
    }
    for (size_t i = 0; i < a.size(); ++i)
      if (!close(a[i], b[i], path + "[" + std::to_string(i) + "]", why)) return false;
    return true;
  }
  if (a != b) why = path + ": " + a.dump() + " vs " + b.dump();
  return a == b;
}

const std::string kRoot = QSYM_SOURCE_DIR;

}  // namespace

TEST_CASE("golden files") {
  std::ifstream cases(kRoot + "/golden/cases.txt");
  REQUIRE(cases.good());
  std::string line;
  int count = 0;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    REQUIRE(bar != std::string::npos);
    const std::string name = line.substr(0, bar), args = line.substr(bar + 1);
    CAPTURE(name);
    std::ifstream gf(kRoot + "/golden/" + name + ".json");
    REQUIRE(gf.good());
    json want = json::parse(gf);
    Run r = run(args);
    CHECK(r.rc == 0);
    json got = json::parse(r.out);
    std::string why;
    CHECK_MESSAGE(close(got, want, "$", why), why);
    CHECK(got["status"] == "ok");
    CHECK(got["command"] == name.substr(0, name.find('/')));
    ++count;
  }
  CHECK(count >= 15);
}

TEST_CASE("schema and determinism") {
  for (std::string line : {"kmatrix --n 3 --p 1 --c-p 0.8", "cayley-check --n 4 --p 2 --phi 0.7 --seed 9",
                           "kohno-drinfeld --n 2 --p 1 --strands 3", "cohomology --g sl2 --h so --max-weight 3"}) {
    CAPTURE(line);
    Run a = run(line), b = run(line);
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::ordered_json::parse(a.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"command", "config_echo", "results", "residuals", "status"});
  }
  // the spot check depends on the seed
  auto s1 = json::parse(run("cayley-check --n 3 --p 1 --seed 1").out);
  auto s2 = json::parse(run("cayley-check --n 3 --p 1 --seed 2").out);
  CHECK(s1["residuals"]["cobracket_random_element"] != s2["residuals"]["cobracket_random_element"]);
}

TEST_CASE("kmatrix example") {
  auto j = json::parse(run("kmatrix --n 2 --p 1 --h 0.1").out);
  const double c = std::exp(-0.05);
  auto re = j["results"]["K"]["re"];
  CHECK(std::abs(re[0][0].get<double>()) < 1e-15);
  CHECK(std::abs(re[0][1].get<double>() + c) < 1e-14);
  CHECK(std::abs(re[1][0].get<double>() - c) < 1e-14);
  CHECK(std::abs(re[1][1].get<double>()) < 1e-15);
  CHECK(std::abs(j["results"]["s_plus_mu"]["re"].get<double>()) < 1e-12);
  CHECK(std::abs(j["results"]["s_plus_mu"]["im"].get<double>()) < 1e-12);
  auto cc = json::parse(run("cayley-check --n 4 --p 2 --phi 0.7").out);
  CHECK(cc["status"] == "ok");
  for (const auto& [k, v] : cc["residuals"].items()) CHECK(v.get<double>() <= 1e-12);
}

TEST_CASE("csv tables") {
  Run r = run("cohomology --g sl2 --h zero --max-degree 2 --max-weight 2 --format csv");
  CHECK(r.rc == 0);
  CHECK(r.out.rfind("degree,weight,cochains,rank_out,dim_H\n", 0) == 0);
  CHECK(r.out.find("\n1,1,3,") != std::string::npos);
  CHECK(r.out.find("\n2,2,") != std::string::npos);
  Run kd = run("kohno-drinfeld --n 2 --p 1 --strands 2 --format csv --words r;s1");
  CHECK(kd.rc == 0);
  CHECK(std::count(kd.out.begin(), kd.out.end(), '\n') == 3);
  CHECK(run("kmatrix --format csv").rc == 11);
}

TEST_CASE("exit codes") {
  CHECK(run(std::vector<std::string>{}).rc == kExitUsage);
  CHECK(run("bogus").rc == kExitUsage);
  CHECK(run("kmatrix --n 1").rc == kExitUsage);
  CHECK(run("kmatrix --route sideways").rc == kExitUsage);
  CHECK(run("kmatrix --n 4 --p 2 --s-p 0.3").rc == 14);
  CHECK(run("kmatrix --n 4 --p 2 --s-p 0.3x").rc == 11);
  CHECK(run("kmatrix --n 3 --p 1 --route quasik").rc == 20);
  CHECK(run("braid-rep --strands 4").rc == kExitUsage);
  CHECK(run("cohomology --g sl2 --h so3").rc == 14);
  // a bound no computation meets gives status fail and exit 1
  Run tight = run("kz-psi --n 2 --p 1 --check-tol 1e-30");
  CHECK(tight.rc == kExitCheckFailed);
  CHECK(json::parse(tight.out)["status"] == "fail");
  Run err = run("kmatrix --n 4 --p 2 --s-p 0.3");
  auto j = json::parse(err.out);
  CHECK(j["status"] == "error");
  CHECK(j["error"]["code"] == 14);
  CHECK(err.err.find("domain") != std::string::npos);

  Run help = run("--help");
  CHECK(help.rc == 0);
  for (const char* s : {"usage or parse error", "10  invalid-dimension", "20  unsupported", "QSYM_TOL"})
    CHECK(help.out.find(s) != std::string::npos);
}

TEST_CASE("tolerance from the environment") {
  setenv("QSYM_TOL", "1e-9", 1);
  auto j = json::parse(run("pairing").out);
  CHECK(j["config_echo"]["tol"].get<double>() == 1e-9);
  auto k = json::parse(run("pairing --tol 1e-7").out);
  CHECK(k["config_echo"]["tol"].get<double>() == 1e-7);
  setenv("QSYM_TOL", "nope", 1);
  CHECK(run("pairing").rc == kExitUsage);
  unsetenv("QSYM_TOL");
}

TEST_CASE("verify-all") {
  Run r = run("verify-all");
  CHECK(r.rc == 0);
  auto j = json::parse(r.out);
  CHECK(j["results"]["criteria"].size() == 12);
  CHECK(j["residuals"]["failed_criteria"] == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 12);
  CHECK(json::parse(run("verify-all --serial").out)["results"] == j["results"]);
}

TEST_CASE("complex parsing and rounding") {
  CHECK(parse_complex("0.3i") == std::complex<double>(0, 0.3));
  CHECK(parse_complex("-i") == std::complex<double>(0, -1));
  CHECK(parse_complex("1.5") == std::complex<double>(1.5, 0));
  CHECK(parse_complex("1-2j") == std::complex<double>(1, -2));
  CHECK(parse_complex(" 2e-1 + 3i ") == std::complex<double>(0.2, 3));
  CHECK(parse_complex("-.5+i") == std::complex<double>(-0.5, 1));
  for (const char* bad : {"", "i2", "1+", "abc", "1 2"}) CHECK_THROWS(parse_complex(bad));
  CHECK(round15(0.1 + 0.2) == 0.3);
  CHECK(round15(-0.0) == 0.0);
  CHECK(std::signbit(round15(-0.0)) == false);
  CHECK(round15(1.0 / 3.0) == 0.333333333333333);
}
