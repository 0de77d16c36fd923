#include <doctest.h>

#include <cstdio>
#include <random>
#include <string>

#include "greeneval/csv.hpp"
#include "greeneval/dataset.hpp"
#include "greeneval/error.hpp"
#include "greeneval/text.hpp"

using namespace greeneval;

namespace {

std::string printf_fixed(double v, int decimals) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

const hardware::Catalog& cat() { return hardware::builtin_catalog(); }

std::string data(const std::string& name) { return text::read_file(std::string(GREENEVAL_DATA_DIR) + "/" + name); }

}  // namespace

TEST_CASE("fixed formatting rounds half to even on the exact value") {
  CHECK(text::format_fixed(0.125, 2) == "0.12");
  CHECK(text::format_fixed(0.375, 2) == "0.38");
  CHECK(text::format_fixed(2.5, 0) == "2");
  CHECK(text::format_fixed(3.5, 0) == "4");
  CHECK(text::format_fixed(52.0, 1) == "52.0");
  CHECK(text::format_fixed(-0.04, 1) == "0.0");
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2000.0, 2000.0);
  for (int i = 0; i < 20000; ++i) {
    const double v = i % 2 ? u(rng) : static_cast<double>(static_cast<int>(u(rng) * 8)) / 8.0;
    const int d = static_cast<int>(rng() % 7);
    REQUIRE(text::format_fixed(v, d) == printf_fixed(v, d));
  }
}

TEST_CASE("shortest formatting round-trips") {
  CHECK(text::format_double(0.148) == "0.148");
  CHECK(text::format_double(407.7) == "407.7");
  CHECK(text::format_double(0.0) == "0");
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double v = u(rng);
    REQUIRE(*text::parse_double(text::format_double(v)) == v);
  }
}

TEST_CASE("numeric parsing is whole-string") {
  CHECK(text::parse_double("1.5") == 1.5);
  CHECK_FALSE(text::parse_double("1.5x"));
  CHECK_FALSE(text::parse_double(""));
  CHECK(text::parse_int("42") == 42);
  CHECK_FALSE(text::parse_int("4.2"));
}

TEST_CASE("csv quoting round-trips awkward text") {
  const std::string awkward = "a \"quoted\", multi\nline value";
  const auto line = csv::format_row({csv::Cell::text(awkward), csv::Cell::number("1.5"), csv::Cell::empty()});
  const auto rows = csv::parse(line);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].fields == std::vector<std::string>{awkward, "1.5", ""});

  try {
    csv::parse("a,b\n\"open,1\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("shipped datasets load and resolve hardware") {
  const auto t1 = dataset::parse_dataset(data("table1.csv"), cat());
  REQUIRE(t1.records.size() == 5);
  CHECK(t1.records[3].label == "SING");
  CHECK(t1.records[3].gpu_count == 4);
  CHECK(t1.records[3].max_power_watts == 250.0);
  CHECK(t1.records[0].max_power_watts == 300.0);

  const auto t2 = dataset::parse_dataset(data("table2.csv"), cat());
  REQUIRE(t2.records.size() == 5);
  CHECK(t2.records[2].quality_loss == 0.132);
  CHECK(t2.records[2].e_train_method == EstimateMethod::kMeasuredExtrapolated);
  CHECK(t2.records[4].param_count == 86180000);
  CHECK(t2.records[4].config_meta.at("r") == "256");
}

TEST_CASE("dataset serialization round-trips") {
  for (const char* name : {"table1.csv", "table2.csv"}) {
    const auto d = dataset::parse_dataset(data(name), cat());
    const auto text1 = dataset::serialize_dataset(d);
    const auto again = dataset::parse_dataset(text1, cat());
    CHECK(dataset::serialize_dataset(again) == text1);
    REQUIRE(again.records.size() == d.records.size());
    for (std::size_t i = 0; i < d.records.size(); ++i) {
      CHECK(again.records[i].label == d.records[i].label);
      CHECK(again.records[i].train_hours == d.records[i].train_hours);
      CHECK(again.records[i].quality_loss == d.records[i].quality_loss);
      CHECK(again.records[i].e_train_kwh == d.records[i].e_train_kwh);
      CHECK(again.records[i].config_meta == d.records[i].config_meta);
    }
  }
}

TEST_CASE("dataset errors") {
  auto code_of = [](const std::string& doc) {
    try {
      dataset::parse_dataset(doc, cat());
    } catch (const Error& e) {
      return std::string(error_code_name(e.code())) + " " + e.what();
    }
    return std::string("ok");
  };
  CHECK(code_of("label,hardware,train_hours\nA,V100,-1\n").find("train_hours must be >= 0") != std::string::npos);
  CHECK(code_of("label,hardware,mos\nA,V100,6\n").find("mos must lie in [1,5]") != std::string::npos);
  CHECK(code_of("label,hardware\nA,V100\nA,P100\n").find("unique") != std::string::npos);
  CHECK(code_of("label,hardware,colour\nA,V100,red\n").rfind("E_PARSE", 0) == 0);
  CHECK(code_of("label,hardware,train_hours\nA,V100,abc\n").find("line 2") != std::string::npos);
  CHECK(code_of("label,hardware\nA,V100\n") == "ok");
}
