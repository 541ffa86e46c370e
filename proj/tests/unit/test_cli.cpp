#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "opacity/cli.hpp"
#include "support.hpp"

using namespace opacity;

namespace {

struct Outcome {
  int code = -1;
  std::string out, err;
  bool has(const std::string& line) const { return out.find(line + "\n") != std::string::npos; }
};

Outcome run(std::vector<std::string> args) {
  for (auto& a : args) {
    if (a.ends_with(".pts") || a.ends_with(".idtmc") || a.ends_with(".dpa") || a.ends_with(".txt")) {
      if (!a.starts_with("/")) a = testing::models_dir() + "/" + a;
    }
  }
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("opacity_cli_" + name)).string();
}

}  // namespace

TEST_CASE("disclose-pts prints the Fig 1 values") {
  auto o = run({"disclose-pts", "--model", "fig1a.pts", "--phi", "secret_b.dpa", "--observe", "a,c,d"});
  CHECK(o.code == cli::Positive);
  CHECK(o.has("value=1/4"));
  o = run({"disclose-pts", "--model", "fig1b.pts", "--phi", "secret_b.dpa", "--observe", "a,c,d"});
  CHECK(o.has("value=3/4"));
  o = run({"disclose-pts", "--model", "fig1a.pts", "--phi", "secret_b.dpa", "--observe", "a,c,d", "--symmetric"});
  CHECK(o.has("value=1/4"));
}

TEST_CASE("disclosure on Fig 4 specifications") {
  auto o = run({"disclosure", "--model", "fig4b.idtmc", "--phi", "secret_c.dpa", "--observe", "a,b"});
  CHECK(o.code == cli::Positive);
  CHECK(o.out.starts_with("0/1\n"));
  CHECK(o.has("closure_applied=yes"));
  o = run({"disclosure", "--model", "fig4a.idtmc", "--phi", "secret_c.dpa", "--observe", "a,b"});
  CHECK(o.code == cli::Negative);
  CHECK(o.has("reason=modal edges: a->c, a->b"));
}

TEST_CASE("decimal rendering is opt-in") {
  const auto o = run({"--format", "decimal", "4", "disclosure", "--model", "fig1c.idtmc", "--phi", "secret_b.dpa",
                      "--observe", "a,c,d"});
  CHECK(o.code == cli::Positive);
  CHECK(o.has("value=55/72"));
  CHECK(o.has("value_decimal=0.7639"));
}

TEST_CASE("policy and automaton outputs are written") {
  const auto policy = temp_path("policy.txt"), dpa = temp_path("v.dpa");
  const auto o = run({"disclosure", "--model", "fig1c.idtmc", "--phi", "secret_b.dpa", "--observe", "a,c,d",
                      "--policy-out", policy, "--dpa-out", dpa});
  REQUIRE(o.code == cli::Positive);
  CHECK(std::filesystem::file_size(policy) > 0);
  const auto p = run({"prob", "--model", "fig1a.pts", "--dpa", dpa});
  CHECK(p.code == cli::Positive);
  CHECK(p.has("value=1/4"));  // the disclosure automaton of S also discloses A1
  std::filesystem::remove(policy);
  std::filesystem::remove(dpa);
}

TEST_CASE("modal reports the blocked edges") {
  auto o = run({"modal", "--model", "fig4a.idtmc"});
  CHECK(o.code == cli::Negative);
  CHECK(o.has("modal=yes"));
  o = run({"modal", "--model", "fig4b.idtmc"});
  CHECK(o.code == cli::Positive);
  CHECK(o.has("modal=no"));
}

TEST_CASE("sat emits a witness that re-validates") {
  const auto w = temp_path("sat.txt");
  auto o = run({"sat", "--model", "fig2_a2.pts", "--spec", "fig2_s0.idtmc", "--witness-out", w});
  REQUIRE(o.code == cli::Positive);
  o = run({"sat", "--model", "fig2_a2.pts", "--spec", "fig2_s0.idtmc", "--witness-in", w});
  CHECK(o.code == cli::Positive);
  o = run({"sat", "--model", "fig2_a1.pts", "--spec", "fig2_s0.idtmc", "--witness-in", w});
  CHECK(o.code != cli::Positive);
  std::filesystem::remove(w);
}

TEST_CASE("sim, bisim and transfer verdicts") {
  auto o = run({"sim", "--s1", "fig3_s1.idtmc", "--s2", "fig3_s2.idtmc"});
  CHECK(o.code == cli::Positive);
  o = run({"bisim", "--a1", "fig1a.pts", "--a2", "fig1b.pts"});
  CHECK(o.code == cli::Negative);
  CHECK(o.has("bisimilar=no"));
  o = run({"bisim", "--a1", "fig2_a1.pts", "--a2", "fig2_a2.pts"});
  CHECK(o.code == cli::Positive);
  o = run({"transfer", "--s1", "fig3_s1.idtmc", "--s2", "fig3_s2.idtmc", "--choice", "fig3_choice.txt", "--depth",
           "4"});
  CHECK(o.code == cli::Positive);
  CHECK(o.has("max_discrepancy=0/1"));
}

TEST_CASE("monotonic on Fig 3") {
  const auto o = run({"monotonic", "--s1", "fig3_s1.idtmc", "--s2", "fig3_s2.idtmc", "--phi", "secret_ab.dpa",
                      "--observe", "a,b"});
  CHECK(o.code == cli::Positive);
  CHECK(o.has("simulates=yes"));
  CHECK(o.has("monotonic=yes"));
}

TEST_CASE("prob with Monte Carlo is reproducible") {
  const std::vector<std::string> args{"prob", "--model", "fig1a.pts", "--dpa", "secret_b.dpa", "--samples", "500",
                                      "--seed", "9"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == cli::Positive);
  CHECK(a.out == b.out);
  CHECK(a.has("value=1/2"));
}

TEST_CASE("input errors and budgets map to exit codes") {
  CHECK(run({"validate", "--model", "missing.pts"}).code == cli::InputError);
  CHECK(run({"validate", "--model", "fig1a.pts"}).code == cli::Positive);
  CHECK(run({"disclose-pts", "--model", "fig1a.pts", "--phi", "secret_b.dpa", "--observe", "a,z"}).code ==
        cli::InputError);
  CHECK(run({"frobnicate"}).code == cli::InputError);
  CHECK(run({"--budget", "3", "disclose-pts", "--model", "fig1a.pts", "--phi", "secret_b.dpa", "--observe",
             "a,c,d"})
            .code == cli::BudgetExceeded);
  CHECK(run({"disclose-pts", "--model", "fig1a.pts", "--phi", "secret_b.dpa", "--observe", "a,b,c"}).code ==
        cli::InputError);
}

TEST_CASE("the installed binary honours the budget variable") {
  const std::string cmd = std::string("OPACITY_STATE_BUDGET=3 ") + OPACITY_CLI + " disclose-pts --model " +
                          testing::models_dir() + "/fig1a.pts --phi " + testing::models_dir() +
                          "/secret_b.dpa --observe a,c,d > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == cli::BudgetExceeded);
  const std::string ok = std::string(OPACITY_CLI) + " validate --model " + testing::models_dir() +
                         "/fig1a.pts > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(ok.c_str())) == cli::Positive);
}
