#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "toda/io/params_io.hpp"

namespace fs = std::filesystem;
using toda::io::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("toda_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  const std::string cmd = std::string(TODA_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string write_doc(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::size_t count_lines(const std::string& s) { return std::size_t(std::count(s.begin(), s.end(), '\n')); }

const std::string kCanonical2 = R"({"n": 2, "gamma": ["0", "0"], "lambda": [1, 1, "auto"], "c": []})";

}  // namespace

TEST_CASE("build: summary for n = 2, gamma = 0") {
  const auto in = write_doc("canon.json", kCanonical2);
  const Run r = run("build --input " + in + " --format structured");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["summary"]["dimension"] == 8);
  CHECK(doc["summary"]["admissible_support"].size() == 3);
  CHECK(doc["summary"]["indicial_w"] == json::array({"0", "0"}));
  CHECK(doc["summary"]["lambda_product"]["ok"] == true);
  CHECK(run("build --input " + in).out.find("dimension N(gamma) = 8") != std::string::npos);
}

TEST_CASE("build: output re-ingests to the same summary, byte for byte") {
  const auto in = write_doc("mixed.json", R"({"n": 2, "gamma": ["1/3", "2/3"], "lambda": [0.5, "auto", 2],
                                              "c": [{"i": 2, "j": 0, "re": 0.25, "im": -1.5}]})");
  const Run first = run("build --input " + in + " --format structured");
  REQUIRE(first.code == 0);
  const auto again = write_doc("again.json", first.out);
  const Run second = run("build --input " + again + " --format structured");
  REQUIRE(second.code == 0);
  CHECK(first.out == second.out);
  const auto parsed = toda::io::parse_document(json::parse(first.out));
  CHECK(parsed.params.c.size() == 1);
  CHECK(!parsed.params.auto_slot);
}

TEST_CASE("invalid input exits 2 and names the violated invariant") {
  const Run vanishing = run("build --input " + write_doc("c20.json", R"({"n": 2, "gamma": ["1/3", "1/2"],
      "lambda": [1, 1, "auto"], "c": [{"i": 2, "j": 0, "re": 1, "im": 0}]})"));
  CHECK(vanishing.code == 2);
  CHECK(vanishing.err.find("c vanishing rule") != std::string::npos);

  const Run product = run("build --input " + write_doc("prod.json", R"({"n": 2, "gamma": ["0", "0"], "lambda": [1, 1, 1]})"));
  CHECK(product.code == 2);
  CHECK(product.err.find("lambda product normalization") != std::string::npos);

  const Run unknown = run("build --input " + write_doc("unknown.json", R"({"n": 2, "gamma": ["0", "0"],
      "lambda": [1, 1, "auto"], "c": [{"i": 1, "j": 0, "re": 1, "img": 0}]})"));
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("$.c[0].img") != std::string::npos);

  const Run top = run("build --input " + write_doc("top.json", R"({"n": 1, "gamma": ["0"], "lambda": [1, "auto"], "extra": 1})"));
  CHECK(top.code == 2);
  CHECK(top.err.find("$.extra") != std::string::npos);

  CHECK(run("build --input " + write_doc("broken.json", "{\"n\": 1,")).code == 2);
  const auto gamma = run("build --input " + write_doc("badgamma.json", R"({"n": 2, "gamma": [0, "-1"], "lambda": [1, 1, "auto"]})"));
  CHECK(gamma.code == 2);
  CHECK(gamma.err.find("gamma > -1") != std::string::npos);
  CHECK(gamma.err.find("$.gamma[1]") != std::string::npos);
  CHECK(run("build --input " + write_doc("twoauto.json", R"({"n": 1, "gamma": ["0"], "lambda": ["auto", "auto"]})")).err.find(
            "single auto lambda") != std::string::npos);
  CHECK(run("verify --input " + write_doc("ok.json", kCanonical2) + " --grid 1,0.5,4,4").code == 2);
  CHECK(run("frobnicate --input x").code == 2);
}

TEST_CASE("verify: canonical solution passes, output deterministic") {
  const auto in = write_doc("verify.json", kCanonical2);
  const Run a = run("verify --input " + in + " --format structured");
  const Run b = run("verify --input " + in + " --format structured");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["residual"]["pass"] == true);
  CHECK(doc["determinant"]["pass"] == true);
  CHECK(doc["invariants"]["pass"] == true);
  const Run human = run("verify --input " + in);
  CHECK(human.code == 0);
  CHECK(human.out.find("verify: PASS") != std::string::npos);
}

TEST_CASE("verify: corrupted lambda fails on D_{n+1} with its deviation") {
  const Run r = run("verify --format structured --input " +
                    write_doc("corrupt.json", R"({"n": 2, "gamma": ["0", "0"], "lambda": [1, 1, 0.004]})"));
  CHECK(r.code == 1);
  const json doc = json::parse(r.out);
  CHECK(doc["determinant"]["pass"] == false);
  CHECK(doc["determinant"]["top_rel_error"].get<double>() == doctest::Approx(0.024).epsilon(1e-9));
  CHECK(doc["lambda_product"]["ok"] == false);
}

TEST_CASE("verify: non-resonant gamma is radially symmetric") {
  const Run r = run("verify --format structured --input " +
                    write_doc("radial.json", R"({"n": 2, "gamma": ["1/3", "1/2"], "lambda": [2, "auto", 0.3]})"));
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["residual"]["radial_symmetry"].get<double>() < 1e-10);
}

TEST_CASE("quantize: worked masses and the unreachable tolerance path") {
  const Run two = run("quantize --format structured --input " + write_doc("q2.json", kCanonical2));
  REQUIRE(two.code == 0);
  const json doc = json::parse(two.out);
  for (const auto& m : doc["masses"]) {
    CHECK(m["mass"].get<double>() == doctest::Approx(8 * std::numbers::pi).epsilon(1e-6));
  }
  const auto n1 = write_doc("q1.json", R"({"n": 1, "gamma": ["1/2"], "lambda": [1, "auto"]})");
  const Run one = run("quantize --format structured --input " + n1);
  REQUIRE(one.code == 0);
  CHECK(json::parse(one.out)["masses"][0]["mass"].get<double>() == doctest::Approx(6 * std::numbers::pi).epsilon(1e-8));
  const Run hopeless = run("quantize --tol 1e-17 --input " + n1);
  CHECK(hopeless.code == 3);
  CHECK(hopeless.out.find("not converged") != std::string::npos);
}

TEST_CASE("sample: CSV layout, ray mode and oracle mode") {
  const auto in = write_doc("sample.json", R"({"n": 2, "gamma": ["0", "1/2"], "lambda": [1, 1, "auto"],
                                               "c": [{"i": 1, "j": 0, "re": 0.3, "im": 0.2}]})");
  const Run grid = run("sample --input " + in);
  REQUIRE(grid.code == 0);
  CHECK(count_lines(grid.out) == 129);
  CHECK(grid.out.substr(0, grid.out.find('\n')) == "re_z,im_z,u_1,u_2,eu_1,eu_2");
  CHECK(run("sample --input " + in).out == grid.out);

  const fs::path file = scratch() / "ray.csv";
  const Run ray = run("sample --mode ray --grid 0.1,1000,9,1 --input " + in + " --output " + file.string());
  REQUIRE(ray.code == 0);
  CHECK(ray.out.empty());
  std::istringstream rows(slurp(file));
  std::string line;
  std::getline(rows, line);
  double prev = 0.0;
  std::size_t count = 0;
  while (std::getline(rows, line)) {
    const double r = std::stod(line.substr(0, line.find(',')));
    CHECK(r > prev);
    if (count > 0) CHECK(r / prev == doctest::Approx(std::pow(10.0, 0.5)));
    prev = r;
    ++count;
  }
  CHECK(count == 9);

  const Run oracle = run("sample --mode oracle --grid 0.01,100,4,4 --input " + in);
  CHECK(oracle.code == 0);
  CHECK(oracle.out.find("rel_diff_1,rel_diff_2") != std::string::npos);
  CHECK(count_lines(oracle.out) == 17);
  const Run wrong_rank = run("sample --mode oracle --input " +
                             write_doc("n1.json", R"({"n": 1, "gamma": ["0"], "lambda": [1, "auto"]})"));
  CHECK(wrong_rank.code == 2);
}

TEST_CASE("nondegeneracy: ranks for the worked cases") {
  struct Case {
    std::string doc;
    int rank;
  };
  for (const auto& c : {Case{kCanonical2, 8},
                        Case{R"({"n": 2, "gamma": ["1/3", "1/2"], "lambda": [1, 1, "auto"]})", 2},
                        Case{R"({"n": 1, "gamma": ["0"], "lambda": [1, "auto"]})", 3}}) {
    const Run r = run("nondegeneracy --format structured --input " + write_doc("nd.json", c.doc));
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["rank"] == c.rank);
    CHECK(doc["target"] == c.rank);
  }
}
