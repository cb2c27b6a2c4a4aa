// End-to-end checks of the command-line binary. Each case runs the real
// executable (path injected by the build as GAMOW_CLI_PATH) as a subprocess
// and inspects stdout plus the exit code, so this file certifies the
// user-visible contract: subcommand dispatch, config-echo headers, CSV/JSON
// table shapes, error exit codes (2 usage, 1 runtime), and the artifact set
// written by `report`. Numerical depth lives in the unit suites; here the
// values are only sanity-pinned (leading pole, tail slopes, oracle agreement)
// to prove the plumbing feeds the right numbers through.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(GAMOW_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int rc = ::pclose(pipe);
  REQUIRE(WIFEXITED(rc));
  return {WEXITSTATUS(rc), out};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

std::filesystem::path make_temp_dir() {
  std::string templ =
      (std::filesystem::temp_directory_path() / "gamow_cli_XXXXXX").string();
  char* got = ::mkdtemp(templ.data());
  REQUIRE(got != nullptr);
  return std::filesystem::path(templ);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Every table starts with the 18-line config echo; CSV prefixes it with "# ".
constexpr int kEchoLines = 18;

}  // namespace

TEST_CASE("poles: config echo, header, one CSV row per pole") {
  const RunResult r = run_cli("poles");
  REQUIRE(r.status == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == kEchoLines + 1 + 50);
  for (int i = 0; i < kEchoLines; ++i)
    CHECK(lines[i].rfind("# ", 0) == 0);
  CHECK(std::find(lines.begin(), lines.end(), "# model.lambda = 6") !=
        lines.end());
  CHECK(lines[kEchoLines] == "n,re_k,im_k,residual,iterations");

  const auto first = split_csv(lines[kEchoLines + 1]);
  REQUIRE(first.size() == 5);
  CHECK(first[0] == "1");
  // [DERIVED] leading pole of F(k) = 2ik - 6(1 - e^{2ik}); frozen from the
  // Newton solve (also pinned, with provenance, in the pole-solver suite).
  CHECK(std::stod(first[1]) == doctest::Approx(2.7579383212949247)
                                   .epsilon(1e-11));
  CHECK(std::stod(first[2]) == doctest::Approx(-0.14043273246623328)
                                   .epsilon(1e-9).scale(0.0));
  CHECK(std::stod(first[3]) < 1e-9);        // residual |F(k)|
  CHECK(std::stoi(first[4]) <= 10);         // Newton iterations
  const auto last = split_csv(lines.back());
  CHECK(last[0] == "50");
}

TEST_CASE("poles --format json mirrors the CSV numbers") {
  const RunResult r = run_cli("poles --format json");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("_config"));
  REQUIRE(j["_config"].is_array());
  CHECK(j["_config"].size() == kEchoLines);
  for (const auto& item : j["_config"]) CHECK(item.is_string());
  REQUIRE(j.contains("rows"));
  REQUIRE(j["rows"].size() == 50);
  const auto& row = j["rows"][0];
  CHECK(row["n"].get<int>() == 1);
  CHECK(row["re_k"].get<double>() == doctest::Approx(2.7579383212949247)
                                         .epsilon(1e-11));
  CHECK(row["im_k"].get<double>() < 0.0);
  CHECK(j["rows"][49]["n"].get<int>() == 50);
}

TEST_CASE("poles --precision trims the printed digits") {
  const RunResult r = run_cli("poles --precision 5");
  REQUIRE(r.status == 0);
  const auto lines = split_lines(r.out);
  const auto first = split_csv(lines[kEchoLines + 1]);
  CHECK(first[1] == "2.7579");
  CHECK(first[2] == "-0.14043");
}

TEST_CASE("poles --out writes the same table to a file, stdout stays quiet") {
  const auto dir = make_temp_dir();
  const auto path = dir / "poles.csv";
  const RunResult direct = run_cli("poles");
  const RunResult filed = run_cli("poles --out " + path.string());
  REQUIRE(filed.status == 0);
  CHECK(filed.out.empty());
  // The config echo records the output path, so that single line differs;
  // everything else must match byte for byte.
  auto strip_path_line = [](const std::string& text) {
    std::string out;
    for (const auto& line : split_lines(text))
      if (line.rfind("# output.path", 0) != 0) out += line + "\n";
    return out;
  };
  CHECK(strip_path_line(read_file(path)) == strip_path_line(direct.out));
  std::filesystem::remove_all(dir);
}

TEST_CASE("identical invocations produce identical bytes") {
  const RunResult a = run_cli("poles");
  const RunResult b = run_cli("poles");
  CHECK(a.out == b.out);
}

TEST_CASE("usage errors exit 2: no subcommand, unknown flag, bad config") {
  CHECK(run_cli("").status == 2);
  CHECK(run_cli("poles --bogus-flag").status == 2);
  CHECK(run_cli("poles --probe 0.5").status == 2);  // wants "r,rp"

  const auto dir = make_temp_dir();
  const auto bad_syntax = dir / "bad.json";
  std::ofstream(bad_syntax) << "{ this is not json";
  CHECK(run_cli("poles --config " + bad_syntax.string()).status == 2);

  const auto bad_key = dir / "key.json";
  std::ofstream(bad_key) << "{\"lambdaa\": 6.0}";
  CHECK(run_cli("poles --config " + bad_key.string()).status == 2);

  const auto bad_value = dir / "value.json";
  std::ofstream(bad_value) << "{\"model\": {\"lambda\": -1.0}}";
  CHECK(run_cli("poles --config " + bad_value.string()).status == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("--help exits 0 and lists the subcommands") {
  const RunResult r = run_cli("--help");
  CHECK(r.status == 0);
  for (const char* name :
       {"poles", "sumrules", "probabilities", "tailfit", "oracle-compare",
        "report"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("sumrules: one row per diagnostic truncation, decaying columns") {
  const RunResult r = run_cli("sumrules");
  REQUIRE(r.status == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == kEchoLines + 1 + 10);  // N = 5, 10, ..., 50
  CHECK(lines[kEchoLines] == "N,|sum_rule|,f_sup,|delta|,delta_over_mass");
  const auto first = split_csv(lines[kEchoLines + 1]);
  const auto last = split_csv(lines.back());
  CHECK(first[0] == "5");
  CHECK(last[0] == "50");
  // The truncation diagnostics must improve from N=5 to N=50 and end tiny:
  // sup|f_50| ~ 8.8e-4 and |Delta|/mass ~ 5e-8 (frozen in the basis suite).
  CHECK(std::stod(last[2]) < std::stod(first[2]));
  CHECK(std::stod(last[2]) < 1e-3);
  CHECK(std::stod(last[4]) < 1e-6);
}

TEST_CASE("probabilities: full log-grid series with slope columns") {
  const RunResult r = run_cli("probabilities");
  REQUIRE(r.status == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == kEchoLines + 1 + 97);  // 16 pts/decade over 6 decades
  CHECK(lines[kEchoLines] == "t,S,P,remainder,local_slope_S,local_slope_P");
  const auto first = split_csv(lines[kEchoLines + 1]);
  const auto last = split_csv(lines.back());
  REQUIRE(first.size() == 6);
  CHECK(std::stod(first[0]) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(std::stod(last[0]) == doctest::Approx(1e4).epsilon(1e-12));
  // At t = 0.01 essentially nothing has decayed; by t = 1e4 both
  // probabilities sit deep in the power-law tail.
  CHECK(std::stod(first[2]) > 0.9);
  CHECK(std::stod(first[2]) < 1.01);
  CHECK(std::stod(last[2]) < 1e-8);
  // Centered log-log slopes are undefined at the grid ends.
  CHECK(first[4] == "nan");
  CHECK(first[5] == "nan");
  CHECK(last[4] == "nan");
  CHECK(last[5] == "nan");
}

TEST_CASE("tailfit --series nonescape finds the cubic tail") {
  const RunResult r = run_cli("tailfit --series nonescape");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("series"));
  REQUIRE(j["series"].size() == 1);
  const auto& fit = j["series"]["nonescape"];
  CHECK(fit["window"]["t_lo"].get<double>() ==
        doctest::Approx(1e3).epsilon(1e-9));
  CHECK(fit["window"]["t_hi"].get<double>() ==
        doctest::Approx(1e4).epsilon(1e-9));
  CHECK(fit["window"]["samples"].get<int>() == 17);
  const double slope = fit["slope"].get<double>();
  CHECK(slope > -3.05);
  CHECK(slope < -2.95);
  CHECK(fit["stderr"].get<double>() < 1e-3);
}

TEST_CASE("tailfit default covers all three series") {
  const RunResult r = run_cli("tailfit");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["series"].size() == 3);
  const double s_surv = j["series"]["survival"]["slope"].get<double>();
  const double s_non = j["series"]["nonescape"]["slope"].get<double>();
  const double s_rem = j["series"]["remainder"]["slope"].get<double>();
  CHECK(s_surv == doctest::Approx(-3.0).epsilon(0.02));
  CHECK(s_non == doctest::Approx(-3.0).epsilon(0.02));
  CHECK(s_rem == doctest::Approx(-1.5).epsilon(0.02));
}

TEST_CASE("tailfit --series rejects unknown names with exit 2") {
  CHECK(run_cli("tailfit --series sruvival").status == 2);
}

TEST_CASE("tailfit exits 1 when the grid ends before the tail era") {
  // t_max = 50 leaves no admissible decade, a runtime (not usage) failure.
  CHECK(run_cli("tailfit --t-max 50").status == 1);
}

TEST_CASE("oracle-compare: 20 sampled times, expansion tracks the grid") {
  // Coarsened grid (h = 0.01, dt = 0.005) keeps this test quick; the
  // tolerance below is far looser than the pinned criterion tolerance,
  // which the acceptance binary checks on the production grid.
  const RunResult r = run_cli("oracle-compare --oracle-h 0.01 --oracle-dt 0.005");
  REQUIRE(r.status == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == kEchoLines + 1 + 20);
  CHECK(lines[kEchoLines] == "t,P_cn,P_expansion,rel_diff,S_cn,S_expansion");
  const auto first = split_csv(lines[kEchoLines + 1]);
  const auto last = split_csv(lines.back());
  // Samples span (0, 5 tau] with tau = 1/Gamma_1 ~ 0.6455, snapped to dt.
  CHECK(std::stod(first[0]) == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(std::stod(last[0]) == doctest::Approx(3.2).epsilon(1e-12));
  for (size_t i = kEchoLines + 1; i < lines.size(); ++i) {
    const auto row = split_csv(lines[i]);
    REQUIRE(row.size() == 6);
    CHECK(std::stod(row[3]) < 0.02);  // rel_diff, coarse-grid headroom
    CHECK(std::stod(row[1]) > 0.0);
    CHECK(std::stod(row[1]) <= 1.01);
  }
}

TEST_CASE("report writes the artifact set and all criteria pass") {
  const auto dir = make_temp_dir();
  const RunResult r = run_cli("report --outdir " + dir.string() +
                              " --oracle-h 0.01 --oracle-dt 0.005");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("criteria"));
  REQUIRE(j["criteria"].size() == 10);
  for (int i = 0; i < 10; ++i) {
    const auto& c = j["criteria"][i];
    CHECK(c["id"].get<int>() == i + 1);
    CHECK(c["name"].is_string());
    CHECK(c["detail"].is_string());
    CHECK(c["pass"].get<bool>());
  }
  CHECK(j["all_pass"].get<bool>());
  for (const char* name :
       {"poles.csv", "sumrules.csv", "probabilities.csv", "tailfit.json",
        "oracle_compare.csv", "report.json"})
    CHECK(std::filesystem::exists(dir / name));
  // The file copy and the stdout copy are the same bytes.
  CHECK(read_file(dir / "report.json") == r.out);
  std::filesystem::remove_all(dir);
}
