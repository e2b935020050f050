#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "frachardy");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = frachardy::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("constant b") {
  const Run r = run({"constant", "b", "--N", "3", "--s", "0.5", "--theta", "1"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(0.6366198).epsilon(1e-7));
  CHECK(j["closed_form"].get<double>() == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(j["rel_diff"].get<double>() <= 1e-8);
}

TEST_CASE("invalid parameters and flags exit with 2") {
  const Run r = run({"constant", "b", "--N", "3", "--s", "0.5", "--theta", "3"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("theta") != std::string::npos);

  const Run bogus = run({"constant", "b", "--bogus", "1"});
  CHECK(bogus.code == 2);
  CHECK(bogus.err.find("Usage") != std::string::npos);

  CHECK(run({}).code == 2);
  CHECK(run({"--format", "xml", "constant", "cns"}).code == 2);
  CHECK(run({"constant", "b", "--N", "3,x"}).code == 2);
  CHECK(run({"--tol", "0", "constant", "cns"}).code == 2);
  CHECK(run({"verify", "hardy-rellich", "--profile", "family=bump,beta=1,R=1"}).code == 2);
  // one bad grid point rejects the whole sweep before anything is computed
  const Run sweep = run({"constant", "b", "--N", "3", "--s", "0.5", "--theta", "1,3"});
  CHECK(sweep.code == 2);
  CHECK(sweep.out.empty());
}

TEST_CASE("help") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("pohozaev example") {
  const Run r = run({"verify", "pohozaev", "--N", "3", "--s", "0.5", "--theta", "1", "--p", "2", "--t", "0.1",
                     "--profile", "family=bump,beta=2,R=0.8", "--domain", "full"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["residual"].get<double>() <= 1e-6);
  CHECK(j["integration_domain_for_B"] == "full_space_truncated");
}

TEST_CASE("csv sweeps come out in lexicographic order regardless of threads") {
  const std::vector<std::string> args{"--format", "csv", "constant", "b", "--N", "3,2", "--s", "0.25,0.5", "--theta",
                                      "0.5"};
  const Run a = run(args);
  std::vector<std::string> serial{"--threads", "1"};
  serial.insert(serial.end(), args.begin(), args.end());
  const Run b = run(serial);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].rfind("N,s,theta,p,", 0) == 0);
  CHECK(rows[1].rfind("3,0.25,", 0) == 0);
  CHECK(rows[2].rfind("3,0.5,", 0) == 0);
  CHECK(rows[3].rfind("2,0.25,", 0) == 0);
  CHECK(rows[4].rfind("2,0.5,", 0) == 0);
}

TEST_CASE("tables expand to one csv row per entry") {
  const Run r = run({"--format", "csv", "psi", "--N", "3", "--s", "0.5", "--r", "0.3,0.5"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "N,s,name,r,value");
}

TEST_CASE("environment overrides and budget") {
  setenv("FRACHARDY_TOL", "5", 1);
  CHECK(run({"constant", "cns"}).code == 2);
  setenv("FRACHARDY_TOL", "1e-6", 1);
  const Run loose = run({"constant", "fs", "--N", "1", "--s", "0.25", "--p", "3"});
  unsetenv("FRACHARDY_TOL");
  const Run tight = run({"constant", "fs", "--N", "1", "--s", "0.25", "--p", "3"});
  CHECK(loose.code == 0);
  CHECK(nlohmann::json::parse(loose.out)["evals"].get<long>() <= nlohmann::json::parse(tight.out)["evals"].get<long>());

  setenv("FRACHARDY_BUDGET", "42", 1);
  const Run starved = run({"verify", "hardy-rellich", "--N", "3", "--s", "0.5", "--theta", "0.5", "--p", "2"});
  unsetenv("FRACHARDY_BUDGET");
  CHECK(starved.code == 1);
  CHECK(nlohmann::json::parse(starved.out)["converged"] == false);
  const Run restored = run({"verify", "hardy-rellich", "--N", "3", "--s", "0.5", "--theta", "0.5", "--p", "2",
                            "--budget", "1000000"});
  CHECK(restored.code == 0);
}

TEST_CASE("subcommands run") {
  CHECK(run({"constant", "s1limit", "--N", "5", "--theta", "1"}).code == 0);
  CHECK(run({"constant", "classical", "--N", "5", "--theta", "0", "--p", "2"}).code == 0);
  CHECK(run({"phi", "--N", "2", "--s", "0.3", "--p", "3", "--r", "0.5"}).code == 0);
  CHECK(run({"fraclap", "vt", "--x", "0.7,1.4"}).code == 0);
  CHECK(run({"fraclap", "line", "--s", "0.3", "--x", "0,0.5"}).code == 0);
  CHECK(run({"fraclap", "radial", "--rho", "0,0.5,2"}).code == 0);
  CHECK(run({"limit", "s-one", "--N", "5", "--theta", "1"}).code == 0);
  CHECK(run({"limit", "t-zero", "--x", "0.7", "--t-seq", "0.2,0.1"}).code == 0);
  CHECK(run({"verify", "p1", "--theta", "0.5", "--s", "0.5"}).code == 0);
  CHECK(run({"verify", "cordoba", "--samples", "4"}).code == 0);
  CHECK(run({"verify", "fs-hardy-1d", "--s", "0.3"}).code == 0);
  const Run s = run({"sharpness", "--theta", "0.5", "--max-evals", "6"});
  CHECK(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["evaluations"].get<int>() <= 6);
}
