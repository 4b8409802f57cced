#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "circleflow/errors.hpp"
#include "circleflow/extremals.hpp"
#include "circleflow/factor_spec.hpp"
#include "circleflow/io.hpp"

using namespace circleflow;

namespace fs = std::filesystem;

namespace {
PeriodicFunction expect(int n, double (*f)(double)) { return PeriodicFunction::sample(n, f); }

fs::path scratch_dir() {
  auto d = fs::temp_directory_path() / "circleflow_test_cli_support";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("factor grammar") {
  CHECK(sup_distance(parse_factor("2", 32), PeriodicFunction::constant(32, 2.0)) == 0.0);
  CHECK(sup_distance(parse_factor("2+cos", 32),
                     expect(32, [](double t) { return 2 + std::cos(t); })) < 1e-15);
  CHECK(sup_distance(parse_factor("1+0.2*cos2 - 0.1 sin3", 64), expect(64, [](double t) {
                       return 1 + 0.2 * std::cos(2 * t) - 0.1 * std::sin(3 * t);
                     })) < 1e-15);
  CHECK(sup_distance(parse_factor("1+0.2cos", 32),
                     expect(32, [](double t) { return 1 + 0.2 * std::cos(t); })) < 1e-15);
  CHECK(sup_distance(parse_factor("coeffs: 1, 0.5, 0.25", 32), expect(32, [](double t) {
                       return 1 + 0.5 * std::cos(t) + 0.25 * std::sin(t);
                     })) < 1e-15);
  CHECK(sup_distance(parse_factor("expcoeffs: 0, 0.3", 32),
                     expect(32, [](double t) { return std::exp(0.3 * std::cos(t)); })) < 1e-15);
  CHECK(sup_distance(parse_factor("QEXT(lambda=2, c=1, alpha=0)", 64),
                     sample(ExtremalParams{1.0, 2.0, 0.0, Family::QEXT}, 64)) < 1e-15);
}

TEST_CASE("factor grammar rejects malformed input") {
  for (const char* s : {"", "1+", "cos*", "2+tan", "coeffs:", "QEXT(lambda=)", "FOO(c=1)",
                        "csv:/nonexistent/file.csv", "1 2"}) {
    CHECK_THROWS_AS(parse_factor(s, 32), InvalidArgument);
  }
}

TEST_CASE("csv factor input") {
  const auto p = scratch_dir() / "factor.csv";
  {
    std::ofstream out(p);
    out << "theta,value\n";
    for (int j = 0; j < 16; ++j) {
      const double t = kTwoPi * j / 16;
      out << format_double(t) << ',' << format_double(2 + std::cos(t)) << '\n';
    }
  }
  CHECK(sup_distance(parse_factor("csv:" + p.string(), 64),
                     expect(64, [](double t) { return 2 + std::cos(t); })) < 1e-13);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(kPi)) == kPi);
}

TEST_CASE("csv and json writers") {
  const auto dir = scratch_dir() / "nested" / "deeper";
  const auto csv = dir / "out.csv";
  write_csv(csv, "kind=test", {"x", "y"}, {{0.0, 0.5}, {1.0, 2.0}});
  CHECK(slurp(csv) == csv_text("kind=test", {"x", "y"}, {{0.0, 0.5}, {1.0, 2.0}}));
  const auto rows = read_two_column_csv(csv);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].first == 0.5);
  CHECK(rows[1].second == 2.0);
  nlohmann::json j;
  j["schema_version"] = 1;
  write_json(dir / "out.json", j);
  CHECK(nlohmann::json::parse(slurp(dir / "out.json"))["schema_version"] == 1);
  CHECK_THROWS_AS(csv_text("", {"x"}, {{1.0}, {2.0}}), InvalidArgument);
  fs::remove_all(scratch_dir());
}
