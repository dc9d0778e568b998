#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

// Runs the CLI and captures stdout (stderr folded in).
RunResult run(const std::string& args) {
  std::string cmd = std::string(IZRO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string data(const std::string& rel) {
  return std::string(IZRO_DATA_DIR) + "/" + rel;
}

}  // namespace

TEST_CASE("cli check distinguishes holds, fails and bad input") {
  RunResult holds = run("check " + data("algebras/2b.json") + " DM");
  CHECK(holds.exit_code == 0);
  CHECK(holds.output.find("holds") != std::string::npos);

  RunResult fails = run("check " + data("algebras/2s.json") + " DM");
  CHECK(fails.exit_code == 1);
  CHECK(fails.output.find("x=0") != std::string::npos);
  CHECK(fails.output.find("y=1") != std::string::npos);

  RunResult literal = run("check " + data("algebras/2s.json") +
                          " \"(x -> y) = (y -> x)\"");
  CHECK(literal.exit_code == 0);

  RunResult bad = run("check no-such-file.json DM");
  CHECK(bad.exit_code == 2);

  RunResult bad_label = run("check " + data("algebras/2b.json") + " DMX");
  CHECK(bad_label.exit_code == 2);
}

TEST_CASE("cli check json output is machine stable") {
  RunResult r = run("--format json check " + data("algebras/2s.json") + " DM");
  CHECK(r.exit_code == 1);
  CHECK(r.output ==
        "{\"algebra\":\"2s\",\"counterexample\":{\"assignment\":{\"x\":0,"
        "\"y\":1},\"lhs\":1,\"rhs\":0},\"holds\":false,\"identity\":\"DM\"}"
        "\n");
}

TEST_CASE("cli enumerate") {
  RunResult r = run("enumerate --n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("3 model(s)") != std::string::npos);
  CHECK(r.output.find("2z") != std::string::npos);
  CHECK(r.output.find("2s") != std::string::npos);
  CHECK(r.output.find("2b") != std::string::npos);

  RunResult json = run("--format json enumerate --n 2");
  CHECK(json.output.find("\"name\":\"2z\"") != std::string::npos);

  RunResult budget = run("enumerate --n 4 --budget 10");
  CHECK(budget.exit_code == 3);
  CHECK(budget.output.find("INCOMPLETE") != std::string::npos);
}

TEST_CASE("cli congruences and simple") {
  RunResult r = run("congruences " + data("algebras/4d.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("2 congruence(s)") != std::string::npos);

  CHECK(run("simple " + data("algebras/3k.json")).exit_code == 0);

  RunResult r2 = run("--format json simple " + data("algebras/2b.json"));
  CHECK(r2.output.find("\"simple\":true") != std::string::npos);
}

TEST_CASE("cli relation") {
  RunResult r = run("relation " + data("algebras/2b.json") + " --kind rp");
  CHECK(r.exit_code == 0);  // R' on 2b is the identity congruence

  RunResult refuse =
      run("relation " + data("algebras/2z.json") + " --kind r1");
  CHECK(refuse.exit_code == 2);
  CHECK(refuse.output.find("x'' = x") != std::string::npos);
}

TEST_CASE("cli free and member") {
  RunResult f = run("free --gen " + data("algebras/2b.json") + " --k 1");
  CHECK(f.exit_code == 0);
  CHECK(f.output.find("4 element(s)") != std::string::npos);

  RunResult exhausted = run("free --gen " + data("algebras/2b.json") +
                            " --gen " + data("algebras/3k.json") +
                            " --k 1 --budget 3");
  CHECK(exhausted.exit_code == 3);

  RunResult m = run("member " + data("algebras/2b.json") + " --in " +
                    data("algebras/3k.json"));
  CHECK(m.exit_code == 0);

  RunResult nm = run("member " + data("algebras/2s.json") + " --in " +
                     data("algebras/4d.json"));
  CHECK(nm.exit_code == 1);
  CHECK(nm.output.find("(x -> y) -> x") != std::string::npos);
}

TEST_CASE("cli lattice dot output matches the golden file") {
  std::string family;
  for (const char* n : {"2z", "2s", "2b", "3k", "4d"})
    family += data("algebras/") + n + ".json ";
  RunResult r = run("--format dot lattice --family " + family);
  CHECK(r.exit_code == 0);

  std::FILE* golden = std::fopen(data("lattice.dot").c_str(), "rb");
  REQUIRE(golden != nullptr);
  std::string expected;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), golden)) > 0)
    expected.append(buf.data(), got);
  std::fclose(golden);
  CHECK(r.output == expected);
}

TEST_CASE("cli replay") {
  RunResult ok = run("replay " + data("proofs/L3.3.20.prf"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("ok") != std::string::npos);

  RunResult missing = run("replay no-such.prf");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("cli suite") {
  RunResult r = run("suite --corpus " + data("algebras") +
                    " --labels I,I0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("10 checks, 0 failures") != std::string::npos);

  RunResult all63 = run("suite --corpus " + data("algebras") +
                        " --labels L3.3.1-63");
  CHECK(all63.exit_code == 0);  // both sides compound: they hold even in 2z

  RunResult fails = run("suite --corpus " + data("algebras") +
                        " --labels I20");
  CHECK(fails.exit_code == 1);  // 2z fails x'' = x
  CHECK(fails.output.find("2z fails I20") != std::string::npos);

  RunResult rng = run("suite --corpus " + data("algebras") +
                      " --labels DM,KL1,BA");
  CHECK(rng.output.find("15 checks") != std::string::npos);
}
