#include <doctest.h>

#include <string>

#include "greeneval/error.hpp"
#include "greeneval/pareto.hpp"
#include "greeneval/report.hpp"

using namespace greeneval;
using namespace greeneval::report;

namespace {

RunRecord estimated(std::string label, std::string hw, double watts, std::int64_t count, double hours,
                    double kwh) {
  RunRecord r;
  r.label = std::move(label);
  r.hardware_name = std::move(hw);
  r.max_power_watts = watts;
  r.gpu_count = count;
  r.train_hours = hours;
  r.e_train_kwh = kwh;
  r.e_train_method = EstimateMethod::kWorstCaseSpec;
  return r;
}

std::vector<RunRecord> table1() {
  return {estimated("FloWaveNet", "V100", 300, 1, 272, 81.6), estimated("GANSynth", "V100", 300, 1, 108, 32.4),
          estimated("SampleRNN", "TITAN X", 250, 1, 168, 42.0), estimated("SING", "P100", 250, 4, 52, 52.0),
          estimated("WaveGAN", "P100", 250, 1, 96, 24.0)};
}

std::vector<EvalPoint> table2(bool generation) {
  const double loss[] = {0.148, 0.136, 0.132, 0.124, 0.114};
  const double train[] = {407.7, 437.6, 725.4, 644.8, 1011.2};
  const double gen[] = {1.349, 1.382, 2.382, 2.512, 3.871};
  std::vector<EvalPoint> pts;
  for (int i = 0; i < 5; ++i)
    pts.emplace_back("WaveFlow " + std::to_string(i + 1),
                     std::vector<double>{loss[i], generation ? gen[i] : train[i]});
  return pts;
}

ReportSpec two_objectives(const char* second, int decimals) {
  ReportSpec s;
  s.objective_labels = {"1-%MOS", second};
  s.objective_decimals = {3, decimals};
  return s;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (auto nl = s.find('\n'); nl != std::string::npos; nl = s.find('\n', start)) {
    out.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("training-cost table rows") {
  const auto recs = table1();
  const auto out = lines(emit_table(recs, table1_spec()));
  REQUIRE(out.size() == 6);
  CHECK(out[0] == R"x("Model","Hardware","Power (W)","Hours","Energy (kWh)")x");
  const char* ends[] = {",81.6", ",32.4", ",42.0", ",52.0", ",24.0"};
  for (int i = 0; i < 5; ++i) {
    CAPTURE(out[static_cast<std::size_t>(i + 1)]);
    const auto& row = out[static_cast<std::size_t>(i + 1)];
    CHECK(row.substr(row.size() - std::string(ends[i]).size()) == ends[i]);
  }
  CHECK(out[4] == R"("SING","4 x P100",250,52,52.0)");
}

TEST_CASE("empty record set yields the header only") {
  const auto out = lines(emit_table({}, table1_spec()));
  CHECK(out.size() == 1);
}

TEST_CASE("configuration table keeps three decimals for generation energy") {
  std::vector<RunRecord> recs;
  for (const auto& p : table2(true)) {
    RunRecord r;
    r.label = p.label();
    r.hardware_name = "TITAN V";
    r.quality_loss = p[0];
    r.e_gen_wh = p[1];
    recs.push_back(r);
  }
  const auto out = emit_table(recs, table2_spec());
  CHECK(out.find(",1.349\n") != std::string::npos);
  CHECK(out.find(",3.871\n") != std::string::npos);
  CHECK(out.find(",0.148,") != std::string::npos);
}

TEST_CASE("scatter marker counts follow the classification") {
  {
    const auto pts = table2(false);
    const auto front = pareto::pareto_front(pts);
    const auto svg = emit_scatter(front, pts, two_objectives("E_train (kWh)", 1));
    CHECK(count(svg, "<circle class=\"pareto-optimal\"") == 4);
    CHECK(count(svg, "<circle class=\"pareto-dominated\"") == 1);
    CHECK(count(svg, "data-label=\"WaveFlow 3\"") == 1);
  }
  {
    const auto pts = table2(true);
    const auto svg = emit_scatter(pareto::pareto_front(pts), pts, two_objectives("E_gen (Wh)", 3));
    CHECK(count(svg, "<circle class=\"pareto-optimal\"") == 5);
    CHECK(count(svg, "<circle class=\"pareto-dominated\"") == 0);
  }
  {
    const std::vector<EvalPoint> one{EvalPoint("solo", {0.2, 3.0})};
    const auto svg = emit_scatter(pareto::pareto_front(one), one, two_objectives("E", 1));
    CHECK(count(svg, "<circle ") == 1);
    CHECK(svg.find("\"nan") == std::string::npos);
    CHECK(svg.find(">nan") == std::string::npos);
  }
  const std::vector<EvalPoint> three_d{EvalPoint("a", {1.0, 2.0, 3.0})};
  CHECK_THROWS_AS(emit_scatter(pareto::pareto_front(three_d), three_d, two_objectives("E", 1)), Error);
}

TEST_CASE("artifacts are byte-deterministic") {
  const auto pts = table2(false);
  const auto spec = two_objectives("E_train (kWh)", 1);
  const auto f1 = pareto::pareto_front(pts);
  const auto f2 = pareto::pareto_front(pts);
  CHECK(emit_front_table(pts, f1, spec) == emit_front_table(pts, f2, spec));
  CHECK(emit_front_document(pts, f1, spec, "x") == emit_front_document(pts, f2, spec, "x"));
  CHECK(emit_scatter(f1, pts, spec) == emit_scatter(f2, pts, spec));
}

TEST_CASE("classification uses unrounded values") {
  // At three decimals a shows as (0.123, 10.0) and b as (0.124, 10.0), which
  // would make b dominated. Unrounded, the two are incomparable.
  const std::vector<EvalPoint> pts{EvalPoint("a", {0.1234, 10.04}), EvalPoint("b", {0.1236, 10.01})};
  const auto front = pareto::pareto_front(pts);
  CHECK(front.optimal.size() == 2);
  ReportSpec spec = two_objectives("E", 1);
  const auto table = emit_front_table(pts, front, spec);
  CHECK(table.find(R"("a",0.123,10.0,"optimal",)") != std::string::npos);
  CHECK(table.find(R"("b",0.124,10.0,"optimal",)") != std::string::npos);
  // The JSON export carries full precision.
  const auto doc = emit_front_document(pts, front, spec);
  CHECK(doc.find("0.1234") != std::string::npos);
  CHECK(doc.find("10.04") != std::string::npos);
}

TEST_CASE("front table lists dominators") {
  const auto pts = table2(false);
  const auto table = emit_front_table(pts, pareto::pareto_front(pts), two_objectives("E_train (kWh)", 1));
  CHECK(table.find(R"("WaveFlow 3",0.132,725.4,"dominated","WaveFlow 4")") != std::string::npos);
  ReportSpec wrong;
  wrong.objective_labels = {"only one"};
  CHECK_THROWS_AS(emit_front_table(pts, pareto::pareto_front(pts), wrong), Error);
}
