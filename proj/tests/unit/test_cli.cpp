#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qmonogamy/cli.hpp"
#include "test_util.hpp"

using namespace qmono;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) v.push_back(std::stod(f));
  return v;
}

std::vector<double> row_at(const std::string& csv, double lambda) {
  for (const auto& l : lines(csv)) {
    if (l.rfind("lambda", 0) == 0) continue;
    const auto f = fields(l);
    if (std::abs(f[0] - lambda) < 1e-9) return f;
  }
  FAIL("no row for lambda");
  return {};
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("qmonogamy_test_" + name); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("number formatting has 12 significant digits") {
  CHECK(cli::format_number(0.1) == "1.00000000000e-01");
  CHECK(cli::format_number(-1234.5) == "-1.23450000000e+03");
  CHECK(cli::format_number(0.0) == "0.00000000000e+00");
}

TEST_CASE("sweep-qmmi default grid") {
  const auto r = run_cli({"sweep-qmmi"});
  REQUIRE(r.code == cli::kPass);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 102);
  CHECK(ls[0] == "lambda,DP1,DP2,DP3,DP4,M4");
  const auto row = row_at(r.out, 0.10);
  CHECK(row[5] < 0.0);
  for (int i = 1; i <= 4; ++i) CHECK(row[i] >= 0.0);
  CHECK(run_cli({"sweep-qmmi"}).out == r.out);
}

TEST_CASE("sweep-mqmmi") {
  const auto r = run_cli({"sweep-mqmmi"});
  REQUIRE(r.code == cli::kPass);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 102);
  CHECK(ls[0] == "lambda,M4_q1,M4_q2,M4_q3");
  const auto row = row_at(r.out, 0.40);
  CHECK(row[1] >= 0.0);
  CHECK(row[2] < 0.0);
  CHECK(row[3] < 0.0);
}

TEST_CASE("sweep-dpi-extra") {
  const auto r = run_cli({"sweep-dpi-extra"});
  REQUIRE(r.code == cli::kPass);
  const auto ls = lines(r.out);
  CHECK(ls[0] == "lambda,DP5_markov,DP5,DP6,DP7");
  for (std::size_t i = 1; i < ls.size(); ++i)
    for (double v : fields(ls[i])) CHECK(v >= -1e-9);
  CHECK(run_cli({"sweep-dpi-extra"}).out == r.out);
}

TEST_CASE("sweep JSON output and files") {
  const auto path = temp_file("sweep.json"), svg = temp_file("sweep.svg");
  const auto r = run_cli({"sweep-qmmi", "--step", "0.25", "--format", "json", "--output", path.string(), "--svg", svg.string()});
  REQUIRE(r.code == cli::kPass);
  CHECK(r.out.empty());
  std::ifstream f(path);
  const auto doc = nlohmann::json::parse(f);
  CHECK(doc["rows"].size() == 5);
  CHECK(doc["columns"][5] == "M4");
  std::ifstream s(svg);
  std::stringstream ss;
  ss << s.rdbuf();
  CHECK(ss.str().rfind("<svg", 0) == 0);
  CHECK(ss.str().find("polyline") != std::string::npos);
  fs::remove(path);
  fs::remove(svg);
}

TEST_CASE("usage and I/O errors exit with 2") {
  CHECK(run_cli({}).code == cli::kUsageError);
  CHECK(run_cli({"sweep-qmmi", "--step", "0"}).code == cli::kUsageError);
  CHECK(run_cli({"sweep-qmmi", "--lambda-min", "0.8", "--lambda-max", "0.2"}).code == cli::kUsageError);
  CHECK(run_cli({"sweep-qmmi", "--format", "xml"}).code == cli::kUsageError);
  CHECK(run_cli({"sweep-qmmi", "--output", "/nonexistent-dir/x.csv"}).code == cli::kUsageError);
  CHECK(run_cli({"verify", "--steps", "5"}).code == cli::kUsageError);
  CHECK(run_cli({"verify", "--samples", "0"}).code == cli::kUsageError);
  CHECK(run_cli({"--help"}).code == cli::kPass);
}

TEST_CASE("verify steps 4") {
  const auto r = run_cli({"verify", "--steps", "4", "--samples", "40", "--seed", "3"});
  REQUIRE(r.code == cli::kPass);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["passed"] == true);
  CHECK(doc["witness_minima"].contains("M4"));
  CHECK(doc["witness_minima"]["M4"]["value"].get<double>() >= -1e-9);
  CHECK(doc["certificate_max_mismatch"].get<double>() <= 1e-8);
  CHECK(doc["counterexample_seed"].is_null());
  CHECK(run_cli({"verify", "--steps", "4", "--samples", "40", "--seed", "3"}).out == r.out);
}

TEST_CASE("verify steps 8 with default sample count") {
  const auto r = run_cli({"verify", "--steps", "8"});
  REQUIRE(r.code == cli::kPass);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["samples"] == 100);
  CHECK(doc["witness_minima"].size() == 7);
}

TEST_CASE("verify CSV output") {
  const auto r = run_cli({"verify", "--steps", "6", "--samples", "5", "--format", "csv"});
  REQUIRE(r.code == cli::kPass);
  CHECK(lines(r.out)[0] == "check,value");
}

TEST_CASE("verify with a supplied channel") {
  const auto good = temp_file("good.json"), bad = temp_file("bad.json");
  std::ofstream(good) << R"({"kraus": [[[0.8, 0], [0, 0.8]], [[0, 0.6], [0.6, 0]]]})";
  std::ofstream(bad) << R"({"kraus": [[[1, 0], [0, 0.5]]]})";
  const auto ok = run_cli({"verify", "--samples", "3", "--channel", good.string()});
  REQUIRE(ok.code == cli::kPass);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["supplied_channel"]["adjoint_identity_deviation"].get<double>() <= 1e-12);

  const auto broken = run_cli({"verify", "--samples", "3", "--channel", bad.string()});
  CHECK(broken.code == cli::kUsageError);
  CHECK(broken.err.find("trace") != std::string::npos);
  CHECK(run_cli({"verify", "--channel", temp_file("missing.json").string()}).code == cli::kUsageError);
  fs::remove(good);
  fs::remove(bad);
}

TEST_CASE("channel JSON parsing accepts complex entries") {
  const double h = std::sqrt(0.5);
  std::ostringstream s;
  s.precision(17);
  s << R"({"kraus": [[[[)" << h << ", 0], [0, " << h << "]], [[0, " << h << "], [" << h << ", 0]]]]}";
  const auto ch = cli::channel_from_json(s.str());
  CHECK(ch.d_in() == 2);
  CHECK(std::abs(ch.ops()[0](0, 1) - Complex(0, h)) <= 1e-15);
  CHECK_THROWS(cli::channel_from_json("{}"));
  CHECK_THROWS(cli::channel_from_json("not json"));
}

}  // TEST_SUITE
