#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with the given arguments, capturing stdout (and stderr when
// merge_stderr is set) plus the exit code.
CliResult run_cli(const std::string& args, bool merge_stderr = true) {
  std::string cmd = std::string(EPINT_CLI_PATH) + " " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  const int status = ::pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

fs::path tmp_dir() {
  const fs::path dir = EPINT_TEST_TMPDIR;
  fs::create_directories(dir);
  return dir;
}

constexpr const char* kCsvHeader =
    "t,x1,x2,x3,v1,v2,v3,energy,energy_err,momentum,momentum_err,fp_iters";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("version and help") {
  const CliResult version = run_cli("--version");
  CHECK(version.code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);

  const CliResult help = run_cli("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("integrate") != std::string::npos);
  CHECK(help.out.find("longtime") != std::string::npos);
  CHECK(help.out.find("validate") != std::string::npos);
}

TEST_CASE("usage errors exit with the configuration code") {
  CHECK(run_cli("").code == 2);                                // missing subcommand
  CHECK(run_cli("frobnicate").code == 2);                      // unknown subcommand
  CHECK(run_cli("integrate --no-such-flag").code == 2);        // unknown flag
  CHECK(run_cli("integrate --model nope --t-end 1").code == 2);
  CHECK(run_cli("integrate --method rk4 --t-end 1").code == 2);
  CHECK(run_cli("integrate --h 0 --t-end 1").code == 2);
  CHECK(run_cli("integrate --x0 1,2 --t-end 1").code == 2);    // malformed vector

  const CliResult bad_combo = run_cli("integrate --method ep-exact --t-end 1");
  CHECK(bad_combo.code == 2);
  CHECK(bad_combo.out.find("linear-potential") != std::string::npos);
}

TEST_CASE("integrate emits the trajectory CSV schema") {
  const CliResult r = run_cli(
      "integrate --model paper-sec6 --method ep2 --h 0.015625 --t-end 10 "
      "--x0 0,1,0.1 --v0 0.09,0.05,0.20",
      /*merge_stderr=*/false);
  REQUIRE(r.code == 0);

  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 642);  // header + initial sample + 640 steps
  CHECK(lines[0] == kCsvHeader);

  const auto first = split_fields(lines[1]);
  REQUIRE(first.size() == 12);
  CHECK(first[0] == "0");
  CHECK(first[7] == "0.035300000000000005");
  CHECK(first[8] == "0");
  CHECK(first[9] == "-0.24333333333333332");
  CHECK(first[11] == "0");

  // Energy column stays within solver resolution across the whole run.
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 12);
    const double energy_err = std::strtod(fields[8].c_str(), nullptr);
    CHECK(energy_err <= 1e-12);
    CHECK_FALSE(fields[9].empty());   // momentum recorded for this model
    CHECK_FALSE(fields[10].empty());
  }
}

TEST_CASE("integrate endpoint cases") {
  const CliResult zero_span = run_cli("integrate --t-end 0", false);
  CHECK(zero_span.code == 0);
  CHECK(split_lines(zero_span.out).size() == 2);  // header + initial sample

  // Defaults: ep2, h = 0.05, t_end = 100 -> 2000 steps.
  const CliResult defaults = run_cli("integrate", false);
  CHECK(defaults.code == 0);
  CHECK(split_lines(defaults.out).size() == 2002);

  const CliResult thinned = run_cli("integrate --t-end 10 --h 0.1 --sample-every 10", false);
  CHECK(thinned.code == 0);
  CHECK(split_lines(thinned.out).size() == 12);  // header + 11 samples
}

TEST_CASE("integrate --out writes exactly the stdout bytes") {
  const fs::path out_file = tmp_dir() / "trajectory.csv";
  fs::remove(out_file);

  const std::string flags = "integrate --method ep3 --h 0.125 --t-end 4";
  const CliResult to_stdout = run_cli(flags, false);
  REQUIRE(to_stdout.code == 0);

  const CliResult to_file = run_cli(flags + " --out " + out_file.string(), false);
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.empty());

  std::ifstream in(out_file, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == to_stdout.out);
}

TEST_CASE("a diverging run aborts with the runtime code and context") {
  // A huge stepsize makes the implicit solve blow up on the first step.
  const CliResult r = run_cli("integrate --t-end 100 --h 50");
  CHECK(r.code == 3);
  CHECK(r.out.find("integration aborted at step 0") != std::string::npos);
  CHECK(r.out.find("fixed-point iteration") != std::string::npos);
  // The partial record (just the initial sample) was still emitted.
  CHECK(r.out.find(kCsvHeader) != std::string::npos);
}

TEST_CASE("validate passes for every builtin model") {
  for (const char* model : {"paper-sec6", "constant-B", "free-flight"}) {
    const CliResult r = run_cli(std::string("validate --model ") + model);
    INFO("model ", model);
    CHECK(r.code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(r.out.find("quadrature s=3") != std::string::npos);
  }
  CHECK(run_cli("validate --model nope").code == 2);
}

TEST_CASE("list-models names the builtins and their presets") {
  const CliResult r = run_cli("list-models");
  CHECK(r.code == 0);
  for (const char* name : {"paper-sec6", "constant-B", "free-flight"})
    CHECK(r.out.find(name) != std::string::npos);
  CHECK(r.out.find("preset x0=") != std::string::npos);
}

TEST_CASE("converge subcommand prints a table and succeeds on a small grid") {
  const CliResult r =
      run_cli("converge --methods ep2,boris --stepsizes 0.0625,0.03125 --horizons 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("method") != std::string::npos);
  CHECK(r.out.find("global_error") != std::string::npos);
  CHECK(r.out.find("ep2") != std::string::npos);
  CHECK(r.out.find("boris") != std::string::npos);
  CHECK(r.out.find("ok") != std::string::npos);
}

TEST_CASE("longtime subcommand writes drift files and reports partial failures") {
  const fs::path out_dir = tmp_dir() / "lt";
  fs::remove_all(out_dir);
  const CliResult ok = run_cli("longtime --methods ep2,ep3 --stepsizes 0.1 --horizons 20 "
                               "--out-dir " + out_dir.string());
  CHECK(ok.code == 0);
  CHECK(ok.out.find("max_energy_drift") != std::string::npos);
  CHECK(fs::exists(out_dir / "longtime_ep2_h0.1_T20.csv"));
  CHECK(fs::exists(out_dir / "longtime_ep3_h0.1_T20.csv"));
  CHECK(fs::exists(out_dir / "manifest.txt"));

  std::ifstream in(out_dir / "longtime_ep2_h0.1_T20.csv");
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "t,energy_drift,momentum_drift");

  // A cell whose fixed point blows up is reported, and the exit code flags
  // the partly-failed run.
  const CliResult partial = run_cli("longtime --methods ep2 --stepsizes 50 --horizons 100");
  CHECK(partial.code == 4);
  CHECK(partial.out.find("aborted at t") != std::string::npos);
}

}  // TEST_SUITE
