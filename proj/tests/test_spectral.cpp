#include <doctest.h>

#include <random>

#include "circleflow/errors.hpp"
#include "circleflow/spectral.hpp"
#include "circleflow/verify.hpp"
#include "oracle_values.hpp"
#include "test_helpers.hpp"

using namespace circleflow;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(PeriodicFunction(std::vector<double>(15, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(PeriodicFunction(std::vector<double>(8, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(PeriodicFunction(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13,
                                                       14, 15, NAN}),
                  InvalidArgument);
  CHECK_NOTHROW(PeriodicFunction::constant(16, 1.0));
}

TEST_CASE("differentiate on eigenfunctions") {
  const int n = 64;
  const auto c = PeriodicFunction::sample(n, [](double t) { return std::cos(t); });
  CHECK(sup_distance(differentiate(c, 2), -1.0 * c) < 1e-12);
  CHECK(differentiate(PeriodicFunction::constant(n, 1.0), 1).sup_norm() == 0.0);
  const auto s3 = PeriodicFunction::sample(n, [](double t) { return std::sin(3 * t); });
  CHECK(sup_distance(differentiate(s3, 4), 81.0 * s3) < 1e-10);
  CHECK_THROWS_AS(differentiate(c, 0), InvalidArgument);
  CHECK_THROWS_AS(differentiate(c, 5), InvalidArgument);
}

TEST_CASE("repeated first derivatives match higher orders") {
  std::mt19937_64 rng(11);
  const auto f = random_positive_factor(128, rng);
  auto d = f;
  for (int k = 1; k <= 4; ++k) {
    d = differentiate(d, 1);
    CHECK(sup_distance(d, differentiate(f, k)) < 1e-9 * std::max(1.0, d.sup_norm()));
  }
}

TEST_CASE("integrate") {
  CHECK(integrate(PeriodicFunction::constant(32, 1.0)) == doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(std::abs(integrate(PeriodicFunction::sample(32, [](double t) { return std::cos(t); }))) <
        1e-14);
  CHECK(integrate(PeriodicFunction::sample(32, [](double t) { return std::cos(t) * std::cos(t); })) ==
        doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("round trip and Parseval") {
  std::mt19937_64 rng(3);
  for (int n : {16, 64, 256, 1024}) {
    const auto f = random_positive_factor(n, rng);
    CHECK(sup_distance(from_coeffs(to_coeffs(f)), f) < 1e-12 * f.sup_norm());
    const auto c = to_coeffs(f);
    double energy = 2.0 * c.c0 * c.c0 + 2.0 * c.nyquist * c.nyquist;
    for (int k = 0; k < c.max_mode(); ++k) energy += c.a[k] * c.a[k] + c.b[k] * c.b[k];
    CHECK(testing_support::rel(energy, integrate(f * f) / kPi) < 1e-10);
    CHECK(std::abs(integrate(differentiate(f, 1))) < 1e-12);
  }
}

TEST_CASE("compose") {
  const int n = 64;
  const auto c = PeriodicFunction::sample(n, [](double t) { return std::cos(t); });
  CHECK(sup_distance(compose(c, [](double t) { return t; }), c) < 1e-12);
  const auto shifted = compose(c, [](double t) { return t + kPi / 2; });
  CHECK(sup_distance(shifted, PeriodicFunction::sample(n, [](double t) { return -std::sin(t); })) <
        1e-12);
  CHECK_THROWS_AS(compose(c, [](double t) { return -t; }), InvalidArgument);
  CHECK_THROWS_AS(compose(c, [](double t) { return 2 * t; }), InvalidArgument);
}

TEST_CASE("pow") {
  CHECK(sup_distance(pow(PeriodicFunction::constant(32, 4.0), -0.5),
                     PeriodicFunction::constant(32, 0.5)) < 1e-15);
  CHECK(sup_distance(pow(PeriodicFunction::constant(32, 1.0), -3.0),
                     PeriodicFunction::constant(32, 1.0)) < 1e-15);
  const auto f = testing_support::trig(256, 2.0, 1.0, 1);
  CHECK(integrate(pow(f, -2.0)) == doctest::Approx(oracle::kIntInvSq2PlusCos).epsilon(1e-12));
  CHECK_THROWS_AS(pow(testing_support::trig(32, 0.0, 1.0, 1), -2.0), PositivityViolation);
  CHECK_NOTHROW(pow(testing_support::trig(32, 0.0, 1.0, 1), 2.0));
  std::mt19937_64 rng(5);
  const auto g = random_positive_factor(256, rng);
  for (double p : {-3.0, -5.0 / 3.0, 0.5, 2.0}) {
    CHECK(sup_distance(pow(pow(g, p), 1.0 / p), g) < 1e-10);
  }
}

TEST_CASE("resample and off-grid evaluation") {
  std::mt19937_64 rng(7);
  const auto f = random_trig_polynomial(64, rng);
  const auto up = resample(f, 256);
  CHECK(sup_distance(resample(up, 64), f) < 1e-12);
  const SeriesEvaluator ev(f);
  for (int j = 0; j < up.size(); ++j) CHECK(std::abs(ev(up.theta(j)) - up[j]) < 1e-12);
  const auto d2 = differentiate(f, 2);
  CHECK(std::abs(ev.eval(f.theta(5), 2) - d2[5]) < 1e-10);
  CHECK(std::abs(f(1.234) - ev(1.234)) < 1e-13);
}

TEST_CASE("dealiased products") {
  const auto f = testing_support::trig(32, 1.0, 0.5, 5);
  const auto g = dealiased([](double x, double y) { return x * y * y; }, f, f);
  // cube of a degree-5 polynomial has modes up to 15 = N/2 - 1
  const auto exact = f.map([](double x) { return x * x * x; });
  CHECK(sup_distance(g, exact) < 1e-13);
  CHECK(oversampled_size(256) == 384);
  CHECK(oversampled_size(18) % 2 == 0);
}
