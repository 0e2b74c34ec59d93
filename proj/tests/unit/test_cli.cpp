#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hamest/cli.hpp"
#include "hamest/policy.hpp"

using namespace hamest;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string output;
  std::string diagnostics;
};

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "hamest_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

Result run(std::vector<std::string> args, const std::string& out_name = "out.csv") {
  const auto out = scratch(out_name);
  fs::remove(out);
  args.insert(args.begin(), "hamest");
  args.push_back("--out");
  args.push_back(out.string());
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), err);
  std::ifstream in(out, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  return {status, text.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

double num(const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  REQUIRE(ec == std::errc());
  REQUIRE(p == s.data() + s.size());
  return v;
}

}  // namespace

TEST_CASE("risk-curve csv shape and round trip") {
  const auto r = run({"risk-curve", "--strategies", "nyquist-bayes", "--nmax", "2"});
  REQUIRE(r.status == 0);
  const auto t = rows(r.output);
  REQUIRE(t.size() == 3);
  CHECK(t[0] == std::vector<std::string>{"strategy", "n", "bayes_risk", "model", "notes"});
  const auto prior = make_uniform_prior(1000, 0.0, 1.0);
  for (int k = 1; k <= 2; ++k) {
    REQUIRE(t[k].size() == 5);
    CHECK(t[k][0] == "nyquist-bayes");
    CHECK(num(t[k][1]) == k);
    CHECK(num(t[k][2]) ==
          exact_bayes_risk_offline(nyquist_schedule(k, 1.0), prior, LikelihoodModel::ideal()));
    CHECK(t[k][3] == "ideal");
  }
  const auto again = run({"risk-curve", "--strategies", "nyquist-bayes", "--nmax", "2"});
  CHECK(again.output == r.output);
}

TEST_CASE("noisy risk-curve is never better than the ideal one") {
  const std::vector<std::string> base = {"risk-curve", "--strategies",
                                         "greedy-negvar,nyquist-bayes", "--nmax", "4",
                                         "--prior-points", "400"};
  auto noisy_args = base;
  noisy_args.insert(noisy_args.end(), {"--model", "noisy"});
  const auto ideal = rows(run(base).output);
  const auto noisy = rows(run(noisy_args).output);
  REQUIRE(ideal.size() == 9);
  REQUIRE(noisy.size() == 9);
  for (std::size_t k = 1; k < ideal.size(); ++k) {
    CHECK(noisy[k][0] == ideal[k][0]);
    CHECK(num(noisy[k][2]) >= num(ideal[k][2]));
    CHECK(noisy[k][3].rfind("noisy(", 0) == 0);
  }
}

TEST_CASE("cap failures are reported per strategy") {
  const auto r = run({"risk-curve", "--strategies", "global,nyquist-bayes", "--nmax", "7",
                      "--prior-points", "50"});
  CHECK(r.status != 0);
  CHECK(r.diagnostics.find("global") != std::string::npos);
  const auto t = rows(r.output);
  REQUIRE(t.size() == 1 + 1 + 7);
  CHECK(t[1][0] == "global");
  CHECK(t[1][4].rfind("error:", 0) == 0);
  CHECK(t[2][0] == "nyquist-bayes");
}

TEST_CASE("utility-scan") {
  SUBCASE("information gain under the prior") {
    const auto r = run({"utility-scan", "--utility", "infogain"});
    REQUIRE(r.status == 0);
    const auto t = rows(r.output);
    REQUIRE(t.size() == 241);
    CHECK(t[0] == std::vector<std::string>{"t", "expected_utility"});
    CHECK(num(t[1][0]) == 0.0);
    CHECK(std::abs(num(t[1][1])) < 1e-9);
  }
  SUBCASE("variance utility after a history") {
    const auto r = run({"utility-scan", "--utility", "negvar", "--history", "3.57:1,7.2:0,11:1"});
    REQUIRE(r.status == 0);
    const auto t = rows(r.output);
    REQUIRE(t.size() == 241);
    for (std::size_t k = 1; k < t.size(); ++k) {
      CHECK(num(t[k][1]) <= 0.0);
      CHECK(num(t[k][1]) >= -1.0 / 12.0 - 1e-12);
    }
  }
  SUBCASE("argmax under the prior is off the Nyquist grid") {
    const auto t = rows(run({"utility-scan", "--utility", "negvar"}).output);
    std::size_t best = 1;
    for (std::size_t k = 2; k < t.size(); ++k)
      if (num(t[k][1]) > num(t[best][1])) best = k;
    const double tb = num(t[best][0]);
    CHECK(std::abs(tb - std::round(tb / pi) * pi) > 1e-3);
  }
  SUBCASE("impossible history") {
    const auto r = run({"utility-scan", "--history", "0:1"});
    CHECK(r.status != 0);
    CHECK(r.diagnostics.find("posterior undefined") != std::string::npos);
  }
}

TEST_CASE("simulate") {
  SUBCASE("greedy trajectory") {
    const auto r = run({"simulate", "--strategies", "greedy-negvar", "--true-omega", "0.5",
                        "--nmax", "12", "--seed", "2024"});
    REQUIRE(r.status == 0);
    const auto t = rows(r.output);
    REQUIRE(t.size() == 13);
    CHECK(t[0] == std::vector<std::string>{"step", "t", "outcome", "posterior_mean",
                                           "posterior_variance"});
    CHECK(num(t[12][4]) < 1.0 / 12.0);
    // Same run through the library.
    const auto rec = run_adaptive(0.5, LikelihoodModel::ideal(), make_uniform_prior(1000, 0, 1),
                                  12, UtilityKind::NegVariance, DesignDomain{}, 2024);
    CHECK(num(t[12][3]) == rec.final_estimate);
  }
  SUBCASE("uninformative schedule") {
    const auto r = run({"simulate", "--strategies", "schedule", "--times", "0,0,0"});
    REQUIRE(r.status == 0);
    const auto t = rows(r.output);
    REQUIRE(t.size() == 4);
    for (std::size_t k = 1; k < t.size(); ++k) CHECK(std::abs(num(t[k][3]) - 0.5) < 1e-12);
  }
  SUBCASE("invalid strategy") {
    CHECK(run({"simulate", "--strategies", "bogus"}).status != 0);
    CHECK(run({"simulate", "--strategies", "global"}).status != 0);
  }
  SUBCASE("truth outside the prior") {
    CHECK(run({"simulate", "--strategies", "nyquist-bayes", "--true-omega", "2"}).status != 0);
  }
}

TEST_CASE("config file with flag override") {
  const auto cfg = scratch("run.cfg");
  {
    std::ofstream f(cfg);
    f << "strategies=nyquist-bayes\nnmax=3\nprior-points=200\nmodel=noisy\n";
  }
  const auto from_file = run({"risk-curve", "--config", cfg.string()});
  REQUIRE(from_file.status == 0);
  const auto t = rows(from_file.output);
  CHECK(t.size() == 4);
  CHECK(t[1][3].rfind("noisy(", 0) == 0);

  const auto overridden = run({"risk-curve", "--config", cfg.string(), "--nmax", "2"});
  REQUIRE(overridden.status == 0);
  CHECK(rows(overridden.output).size() == 3);
}

TEST_CASE("argument errors") {
  CHECK(run({"risk-curve", "--model", "quantum"}).status != 0);
  CHECK(run({"risk-curve", "--strategies", "fourier"}).status != 0);
  CHECK(run({"risk-curve", "--support", "1,0"}).status != 0);
  CHECK(run({"utility-scan", "--utility", "entropy"}).status != 0);
  CHECK(run({"utility-scan", "--history", "1.0:2"}).status != 0);
  CHECK(run({"risk-curve", "--visibility", "2", "--model", "noisy"}).status != 0);
  CHECK(run({}).status != 0);
}

TEST_CASE("history and times parsing") {
  const auto h = cli::parse_history("1.5:0, 2:1");
  REQUIRE(h.size() == 2);
  CHECK(h[0].first == 1.5);
  CHECK(h[0].second == Outcome::Zero);
  CHECK(h[1].second == Outcome::One);
  CHECK(cli::parse_history("").empty());
  CHECK_THROWS_AS(cli::parse_history("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_history("-1:0"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_times("1,,2"), std::invalid_argument);
  CHECK(cli::parse_times("0,3.5").size() == 2);
}
