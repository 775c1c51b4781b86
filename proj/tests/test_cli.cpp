#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

std::string cli_path() {
  const char* env = std::getenv("NOTTINGHAM_BIN");
  return env ? env : "./nottingham";
}

struct RunResult {
  int code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 512> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe))
    output.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("cli: value subcommands") {
  auto binom = run("binom 7 2 --p 3");
  CHECK(binom.code == 0);
  CHECK(binom.output.find("\n0\n") != std::string::npos);

  auto compose = run("compose --p 3 --prec 16 \"t + t^4\" \"t + t^4\"");
  CHECK(compose.code == 0);
  CHECK(compose.output.find("t + 2*t^4") != std::string::npos);

  auto invert = run("invert --p 2 --prec 4 \"t + t^2\"");
  CHECK(invert.code == 0);
  CHECK(invert.output.find("t + t^2 + t^4") != std::string::npos);

  auto depth = run("depth --kind T --p 3 --q 3 --prec 16 \"t + t^10\"");
  CHECK(depth.code == 0);
  CHECK(depth.output.find("T\t3") != std::string::npos);

  auto torsion = run("torsion --p 3 --prec 32 \"t + t^4\"");
  CHECK(torsion.code == 0);
  CHECK(torsion.output.find("INFINITE_ORDER_CERTIFIED") != std::string::npos);
}

TEST_CASE("cli: commutator match verdict and fault injection") {
  auto ok = run("commutator --p 3 --prec 24 --method both \"t + t^4\" \"t + t^7\"");
  CHECK(ok.code == 0);
  CHECK(ok.output.find("verdict\tmatch") != std::string::npos);
  CHECK(ok.output.find("t + t^16") != std::string::npos);

  auto bad = run(
      "commutator --p 3 --prec 24 --method both --inject-fault \"t + t^4\" "
      "\"t + t^7\"");
  CHECK(bad.code == 1);
  CHECK(bad.output.find("MISMATCH") != std::string::npos);
}

TEST_CASE("cli: exit-code matrix") {
  // 0: success
  CHECK(run("binom 5 0 --p 3").code == 0);
  // 1: verification failure (criterion fails for the explicit counterexample)
  CHECK(run("lambda check --family explicit --set 1 --p 2").code == 1);
  // 2: parse/argument errors
  CHECK(run("compose --p 3 --prec 8 \"t + + t^4\" \"t\"").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("binom 5 0 --p 6").code == 2);
  CHECK(run("verify --p 3").code == 2);  // neither --lemma nor --all
  CHECK(run("depth --kind T --p 3 --q 4 --prec 8 \"t\"").code == 2);
  CHECK(run("compose --p 3 --q 6 --prec 8 \"t\" \"t\"").code == 2);
  CHECK(run("compose --p 3 --prec 1 \"t\" \"t\"").code == 2);
  CHECK(run("verify --lemma 9.9 --p 3").code == 2);
  // 3: precision/horizon errors
  CHECK(run("compose --p 3 --prec 10 \"t + t^99\" \"t\"").code == 3);
  CHECK(run("lambda check --family B --p 3 --horizon 100 --scan 200").code == 0);
  CHECK(run("lambda member --family B --p 3 --prec 64 --horizon 10 \"t\"").code ==
        3);
  // --truncate downgrades the precision failure
  CHECK(run("compose --p 3 --prec 10 --truncate \"t + t^99\" \"t\"").code == 0);
}

TEST_CASE("cli: lambda reports") {
  auto check = run("lambda check --family B --p 3 --horizon 200");
  CHECK(check.code == 0);
  CHECK(check.output.find("lambda_family\tp\thorizon\tpassed\tn_witnesses") !=
        std::string::npos);
  CHECK(check.output.find("B\t3\t200\ttrue\t0") != std::string::npos);

  auto fail = run("lambda check --family explicit --set 1 --p 2 --scan 10");
  CHECK(fail.code == 1);
  CHECK(fail.output.find("witness\t1\t1\t2") != std::string::npos);

  auto probe = run("lambda probe --family B --p 3 --prec 32 --trials 50 --seed 42");
  CHECK(probe.code == 0);
  CHECK(probe.output.find("\t0\n") != std::string::npos);

  auto member = run("lambda member --family qN --q 9 --p 3 --prec 32 \"t + t^10\"");
  CHECK(member.code == 0);
  CHECK(member.output.find("member") != std::string::npos);
}

TEST_CASE("cli: verify subcommand emits TSV rows and honors exit codes") {
  auto ok = run("verify --lemma 3.4 --p 3 --q 3 --trials 5 --seed 7");
  CHECK(ok.code == 0);
  CHECK(ok.output.find("lemma\tparams\tstatus\twitness") != std::string::npos);
  CHECK(ok.output.find("3.4\t") != std::string::npos);
  CHECK(ok.output.find("\tpass\t") != std::string::npos);
  CHECK(ok.output.find("fail") == std::string::npos);

  auto five = run("verify --lemma 5.2 --p 3 --trials 10 --seed 7");
  CHECK(five.code == 0);

  auto json = run("verify --lemma 2.1 --p 3 --format json");
  CHECK(json.code == 0);
  CHECK(json.output.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("cli: explore reports depth coverage") {
  auto text = run("explore --p 3 --prec 40 --seed 5 --level 1 \"t + t^4\"");
  CHECK(text.code == 0);
  CHECK(text.output.find("tail\t") != std::string::npos);

  auto js = run("explore --p 3 --prec 40 --seed 5 --level 1 --json \"t + t^4\"");
  CHECK(js.code == 0);
  CHECK(js.output.find("\"tail_start\"") != std::string::npos);
}

TEST_CASE("cli: byte-identical reruns at a fixed seed") {
  const std::string cmd =
      "lambda probe --family B --p 3 --prec 32 --trials 25 --seed 42";
  auto first = run(cmd);
  auto second = run(cmd);
  CHECK(first.code == second.code);
  CHECK(first.output == second.output);

  const std::string verify_cmd = "verify --lemma 5.1 --p 3 --trials 8 --seed 9";
  CHECK(run(verify_cmd).output == run(verify_cmd).output);
}
