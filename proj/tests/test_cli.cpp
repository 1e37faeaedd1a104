#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef CONIC_CLI_PATH
#define CONIC_CLI_PATH "conic"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CONIC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string temp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

}  // namespace

TEST_CASE("cond on the 3x3 identity and report round-trip through verify") {
  auto mat = temp_path("id3.csv");
  write_file(mat, "1,0,0\n0,1,0\n0,0,1\n");
  auto rep = temp_path("id3_report.json");

  auto r = run_cli("cond --input " + mat + " --output " + rep);
  CHECK(r.exit_code == 0);

  std::ifstream in(rep);
  nlohmann::json j;
  in >> j;
  CHECK(j.at("class") == "StrictlyFeasible");
  CHECK(std::abs(j.at("cond").get<double>() - std::sqrt(3.0)) < 1e-9);
  CHECK(j.at("witness").at("center").size() == 3);
  CHECK_FALSE(j.at("certificate").is_null());
  CHECK(j.at("blocking_set").is_null());

  auto v = run_cli("verify --input " + mat + " --report " + rep);
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("true") != std::string::npos);

  std::remove(mat.c_str());
  std::remove(rep.c_str());
}

TEST_CASE("tails CSV is byte-identical across worker counts and structurally sound") {
  auto args = std::string("tails --m 3 --n 6 --trials 2000 --seed 42 ") +
              "--t-grid 1,2,5,10,20,40";
  auto one = run_cli(args + " --workers 1");
  auto two = run_cli(args + " --workers 2");
  CHECK(one.exit_code == 0);
  CHECK(one.out == two.out);
  // survival column starts at 1 and never increases
  CHECK(one.out.find("t,survival,ci_low,ci_high,upper_envelope,t_times_p") !=
        std::string::npos);
  CHECK(one.out.find("\n1,1,") != std::string::npos);
}

TEST_CASE("bounds eval exit codes") {
  auto ok = run_cli("bounds eval --which smalln --n 10");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("7.75646") != std::string::npos);

  auto divergent = run_cli("bounds eval --which cori --m 3 --n 3 --gamma 1");
  CHECK(divergent.exit_code == 2);

  auto bad = run_cli("bounds eval --which tail --m 2 --n 4 --t 10");
  CHECK(bad.exit_code == 1);

  auto unknown = run_cli("frobnicate");
  CHECK(unknown.exit_code == 1);
}

TEST_CASE("slope with too little tail data exits 3") {
  auto r = run_cli("slope --m 3 --n 6 --trials 200 --t-min 3 --t-max 5");
  CHECK(r.exit_code == 3);
}

TEST_CASE("perceptron subcommand") {
  auto mat = temp_path("two_rows.csv");
  write_file(mat, "1,0\n0,1\n");
  auto r = run_cli("perceptron --input " + mat + " --classify-first");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("terminated") == "Solved");
  CHECK(j.at("iterations") == 2);
  std::remove(mat.c_str());
}

TEST_CASE("lemma-iv and concentration subcommands emit config-stamped CSV") {
  auto r = run_cli("lemma-iv --m 2 --trials 2000 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("m,trials,frequency,ci_low,ci_high,bound") != std::string::npos);
  CHECK(r.out.find("seed=3") != std::string::npos);

  auto c = run_cli("concentration --gamma-list 0.5 --m-list 20,50");
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("gamma,m,ratio") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical output") {
  auto a = run_cli("moments --m 3 --n 6 --trials 500 --seed 8 --gamma-list 1,2");
  auto b = run_cli("moments --m 3 --n 6 --trials 500 --seed 8 --gamma-list 1,2");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}
