#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "greeneval/cli.hpp"
#include "greeneval/text.hpp"

using namespace greeneval;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "greeneval");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(GREENEVAL_DATA_DIR) + "/" + name; }

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("greeneval-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& contents) const {
    const auto p = (path / name).string();
    text::write_file(p, contents);
    return p;
  }
};

bool single_error_line(const Run& r, const std::string& code) {
  const std::string prefix = "error: " + code + ": ";
  return r.err.rfind(prefix, 0) == 0 && r.err.find('\n') == r.err.size() - 1;
}

}  // namespace

TEST_CASE("estimate reproduces the training-cost table") {
  const auto r = run({"estimate", data("table1.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(R"("FloWaveNet","1 x V100",300,272,81.6,"worst_case_spec","estimated")") != std::string::npos);
  CHECK(r.out.find(R"("SING","4 x P100",250,52,52.0,)") != std::string::npos);
}

TEST_CASE("estimate compares against a supplied measurement") {
  const auto r = run({"estimate", data("table1.csv"), "--measured", "SING=64.8"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("52.0,64.8,+12.8,+24.62") != std::string::npos);
}

TEST_CASE("estimate leaves measured records untouched") {
  TempDir tmp;
  const auto path = tmp.file("runs.csv",
                             "label,hardware,gpu_count,train_hours,e_train_kwh,e_train_method\n"
                             "M,V100,1,10,2.5,measured_integrated\n"
                             "W,V100,1,10,,\n");
  const auto r = run({"estimate", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(R"("M","1 x V100",300,10,2.5,"measured_integrated","measured")") != std::string::npos);
  CHECK(r.out.find(R"("W","1 x V100",300,10,3.0,"worst_case_spec","estimated")") != std::string::npos);

  const auto direct = cli::cmd_estimate(hardware::builtin_catalog(),
                                        dataset::load_dataset(path, hardware::builtin_catalog()));
  CHECK(direct.dataset.records[0].e_train_kwh == 2.5);
  CHECK(direct.dataset.records[0].e_train_method == EstimateMethod::kMeasuredIntegrated);
  CHECK(direct.rows[0].status == cli::EstimateStatus::kMeasuredKept);
}

TEST_CASE("unknown hardware is reported, not guessed") {
  TempDir tmp;
  const auto path = tmp.file("runs.csv", "label,hardware,train_hours\nA,XYZ,10\n");
  const auto r = run({"estimate", path});
  CHECK(r.code == 1);
  CHECK(single_error_line(r, "E_UNRESOLVED_HARDWARE"));
  CHECK(r.err.find("XYZ") != std::string::npos);
}

TEST_CASE("pareto over the configuration table") {
  const auto train = run({"pareto", data("table2.csv")});
  REQUIRE(train.code == 0);
  CHECK(train.out.find("optimal (4): WaveFlow 1, WaveFlow 2, WaveFlow 4, WaveFlow 5") != std::string::npos);
  CHECK(train.out.find("dominated (1): WaveFlow 3 by [WaveFlow 4]") != std::string::npos);

  const auto gen = run({"--objectives", "quality_loss,e_gen", "pareto", data("table2.csv")});
  REQUIRE(gen.code == 0);
  CHECK(gen.out.find("optimal (5):") != std::string::npos);

  const auto single = run({"--objectives", "e_train", "pareto", data("table2.csv")});
  REQUIRE(single.code == 0);
  CHECK(single.out.find("optimal (1): WaveFlow 1\n") != std::string::npos);
}

TEST_CASE("pareto objective errors") {
  const auto r = run({"--objectives", "quality_loss,latency", "pareto", data("table2.csv")});
  CHECK(r.code == 1);
  CHECK(single_error_line(r, "E_UNKNOWN_OBJECTIVE"));

  const auto incomplete = run({"--objectives", "quality_loss,e_train", "pareto", data("table1.csv")});
  CHECK(incomplete.code == 1);
  CHECK(single_error_line(incomplete, "E_INCOMPLETE"));
}

TEST_CASE("pareto artifacts are written once and reproduced byte for byte") {
  TempDir tmp;
  const auto a = (tmp.path / "a").string();
  const auto b = (tmp.path / "b").string();
  REQUIRE(run({"--out", a, "pareto", data("table2.csv")}).code == 0);
  REQUIRE(run({"--out", b, "pareto", data("table2.csv")}).code == 0);
  for (const char* name : {"report.csv", "front.json", "scatter.svg"}) {
    CAPTURE(name);
    CHECK(text::read_file(a + "/" + name) == text::read_file(b + "/" + name));
  }
  const auto again = run({"--out", a, "pareto", data("table2.csv")});
  CHECK(again.code == 1);
  CHECK(single_error_line(again, "E_EXISTS"));
  CHECK(run({"--out", a, "--force", "pareto", data("table2.csv")}).code == 0);
}

TEST_CASE("kernel choice does not change results") {
  const auto scalar = run({"--kernel-isa", "scalar", "pareto", data("table2.csv")});
  const auto best = run({"--kernel-isa", "auto", "pareto", data("table2.csv")});
  CHECK(scalar.code == 0);
  CHECK(scalar.out == best.out);
}

TEST_CASE("ingest replays a partial training run") {
  const auto r = run({"ingest", data("fixtures/sing_trace.csv"), "--marks", data("fixtures/sing_marks.csv"),
                      "--total-epochs", "10"});
  REQUIRE(r.code == 0);
  const auto key = std::string("extrapolated_kwh: ");
  const auto pos = r.out.find(key);
  REQUIRE(pos != std::string::npos);
  const auto value = std::stod(r.out.substr(pos + key.size()));
  CHECK(std::abs(value - 64.8) <= 1e-6);
  CHECK(r.out.find("extrapolated_method: measured_extrapolated") != std::string::npos);

  const auto constant = run({"ingest", data("fixtures/constant_250w.csv")});
  REQUIRE(constant.code == 0);
  CHECK(constant.out.find("integrated_wh: 500\n") != std::string::npos);
}

TEST_CASE("malformed traces fail with a line number") {
  const auto r = run({"ingest", data("fixtures/malformed_trace.csv")});
  CHECK(r.code == 1);
  CHECK(single_error_line(r, "E_MALFORMED_TRACE"));
  CHECK(r.err.find("line 4") != std::string::npos);
}

TEST_CASE("flops command") {
  const auto r = run({"flops", data("fixtures/mlp.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# total_params: 23\n") != std::string::npos);
  CHECK(r.out.find("# total_fpo: 36\n") != std::string::npos);
  const auto macs = run({"--mac-factor", "1", "flops", data("fixtures/mlp.json")});
  CHECK(macs.out.find("# total_fpo: 18\n") != std::string::npos);

  const auto bad = run({"flops", data("fixtures/unsupported.json")});
  CHECK(bad.code == 1);
  CHECK(single_error_line(bad, "E_UNSUPPORTED_LAYER"));
  CHECK(bad.err.find("attention") != std::string::npos);

  const auto shape = run({"flops", data("fixtures/mlp.json"), "--input-shape", "5"});
  CHECK(shape.code == 1);
  CHECK(single_error_line(shape, "E_SHAPE"));
}

TEST_CASE("report presets") {
  const auto r = run({"report", data("table2.csv"), "--preset", "table2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(R"("WaveFlow 5",86.18,0.114,1011.2,3.871)") != std::string::npos);
}

TEST_CASE("usage errors") {
  const auto none = run({});
  CHECK(none.code == 2);
  CHECK(single_error_line(none, "E_USAGE"));
  const auto missing = run({"estimate", "/nonexistent/records.csv"});
  CHECK(missing.code == 1);
  CHECK(single_error_line(missing, "E_IO"));
  CHECK(run({"--mac-factor", "3", "flops", data("fixtures/mlp.json")}).code == 2);
}

TEST_CASE("commands never modify their inputs and are deterministic") {
  const std::vector<std::string> inputs{data("table1.csv"), data("table2.csv"), data("fixtures/sing_trace.csv"),
                                        data("fixtures/sing_marks.csv"), data("fixtures/mlp.json")};
  std::vector<std::string> before;
  for (const auto& p : inputs) before.push_back(text::read_file(p));
  const std::vector<std::vector<std::string>> commands{
      {"estimate", data("table1.csv"), "--carbon-intensity", "300"},
      {"pareto", data("table2.csv")},
      {"report", data("table2.csv"), "--preset", "full"},
      {"ingest", data("fixtures/sing_trace.csv"), "--marks", data("fixtures/sing_marks.csv"), "--total-epochs", "10"},
      {"flops", data("fixtures/mlp.json")},
  };
  for (const auto& c : commands) {
    const auto first = run(c);
    const auto second = run(c);
    CAPTURE(c[0]);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.err == second.err);
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) CHECK(text::read_file(inputs[i]) == before[i]);
}

TEST_CASE("incomplete records are skipped only on request") {
  TempDir tmp;
  const auto path = tmp.file("runs.csv", "label,hardware,quality_loss,e_train_kwh\nA,V100,0.2,3\nB,V100,,2\nC,V100,0.1,5\n");
  const auto strict = run({"pareto", path});
  CHECK(strict.code == 1);
  CHECK(single_error_line(strict, "E_INCOMPLETE"));
  const auto lenient = run({"--exclude-incomplete", "pareto", path});
  REQUIRE(lenient.code == 0);
  CHECK(lenient.err.find("'B'") != std::string::npos);
  CHECK(lenient.out.find("optimal (2): A, C") != std::string::npos);
}

TEST_CASE("empty layer stack counts nothing") {
  TempDir tmp;
  const auto r = run({"flops", tmp.file("empty.json", R"({"layers": []})")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# total_params: 0\n# total_fpo: 0\n") != std::string::npos);
}
