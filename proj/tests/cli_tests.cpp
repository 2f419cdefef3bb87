// End-to-end checks of the awmc binary: exit codes, output text, and file
// round trips, driven through popen.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(AWMC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fixture(const char* name) {
  return std::string(AWMC_FIXTURE_DIR) + "/" + name;
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST_CASE("check reports three-valued verdicts through exit codes") {
  auto t = run("check " + fixture("trade.klm.json") + " 'w1@{i,l}' 'K{B}(i & l)'");
  CHECK(t.exit_code == 0);
  CHECK(t.output == "true\n");

  auto f = run("check " + fixture("trade.klm.json") + " 'w2@{i,l}' 'A{B} l'");
  CHECK(f.exit_code == 1);
  CHECK(f.output == "false\n");

  auto u = run("check " + fixture("trade.klm.json") + " 'w2@{i}' l");
  CHECK(u.exit_code == 2);
  CHECK(u.output == "undefined\n");

  auto hms = run("check " + fixture("trade.hms.json") + " '(i,l)' '!K{O} i'");
  CHECK(hms.exit_code == 0);
  CHECK(hms.output == "true\n");
}

TEST_CASE("error exit codes are stable") {
  CHECK(run("parse 'K{B'").exit_code == 3);
  CHECK(run("check " + fixture("trade.klm.json") + " 'w1@{i,l}' '(a & b'").exit_code == 3);
  CHECK(run("check " + fixture("no-such.json") + " 'w1@{}' top").exit_code == 4);
  CHECK(run("check " + fixture("trade.klm.json") + " 'w9@{}' top").exit_code == 5);
  CHECK(run("check " + fixture("trade.hms.json") + " nowhere top").exit_code == 5);
  // Formula atoms outside the model's vocabulary are a validation error.
  CHECK(run("check " + fixture("trade.klm.json") + " 'w1@{i,l}' q").exit_code == 4);
}

TEST_CASE("parse echoes the normalized core form") {
  auto r = run("parse 'A{B} l'");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "!(!K{B}l & !K{B}!K{B}l)\n");
}

TEST_CASE("validate accepts both fixtures") {
  auto klm = run("validate " + fixture("trade.klm.json"));
  CHECK(klm.exit_code == 0);
  CHECK(klm.output.find("3/3") != std::string::npos);

  auto hms = run("validate " + fixture("trade.hms.json"));
  CHECK(hms.exit_code == 0);
  CHECK(hms.output.find("5/5 HMS properties hold") != std::string::npos);
}

TEST_CASE("the atom cap can be lowered through the environment") {
  auto r = run("validate " + fixture("trade.klm.json"), "AWMC_MAX_ATOMS=1");
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("cap") != std::string::npos);
}

TEST_CASE("transforms write validating files plus a correspondence sidecar") {
  std::string out_klm = "/tmp/awmc_cli_out.klm.json";
  std::string out_hms = "/tmp/awmc_cli_out.hms.json";

  auto l = run("transform l " + fixture("trade.hms.json") + " " + shell_quote(out_klm));
  CHECK(l.exit_code == 0);
  CHECK(run("validate " + shell_quote(out_klm)).exit_code == 0);

  std::string sidecar = out_klm + ".corr";
  FILE* side = fopen(sidecar.c_str(), "r");
  REQUIRE(side != nullptr);
  fclose(side);

  auto h = run("transform h " + fixture("trade.klm.json") + " " + shell_quote(out_hms));
  CHECK(h.exit_code == 0);
  CHECK(run("validate " + shell_quote(out_hms)).exit_code == 0);

  // The transformed lattice model satisfies the same story.
  auto probe = run("check " + shell_quote(out_klm) + " '(i,l)@{i,l}' 'K{B}(i & l)'");
  CHECK(probe.exit_code == 0);

  // Direction and input kind must match.
  CHECK(run("transform l " + fixture("trade.klm.json") + " /tmp/x.json").exit_code == 4);
  CHECK(run("transform h " + fixture("trade.hms.json") + " /tmp/x.json").exit_code == 4);
}

TEST_CASE("equiv sweeps both directions") {
  auto hms = run("equiv " + fixture("trade.hms.json") + " --depth 2");
  CHECK(hms.exit_code == 0);
  CHECK(hms.output.find("0 counterexamples / 507 formulas") != std::string::npos);

  auto klm = run("equiv " + fixture("trade.klm.json") + " --depth 1");
  CHECK(klm.exit_code == 0);
  CHECK(klm.output.find("0 counterexamples") != std::string::npos);
}

TEST_CASE("the axiom sweep passes and reports deterministically") {
  std::string args = "axioms --seed 0 --samples 5 --depth 1";
  auto first = run(args);
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("axiom counterexamples: 0") != std::string::npos);
  CHECK(first.output.find("derived-theorem counterexamples: 0") != std::string::npos);
  CHECK(first.output.find("negative-introspection counterexamples:") != std::string::npos);
  CHECK(first.output.find("SCHEMA T INSTANCE") != std::string::npos);

  auto second = run(args);
  CHECK(second.exit_code == 0);
  CHECK(first.output == second.output);
}
