#include <doctest.h>

#include <random>

#include "circleflow/errors.hpp"
#include "circleflow/functionals.hpp"
#include "circleflow/transforms.hpp"
#include "circleflow/verify.hpp"
#include "test_helpers.hpp"

using namespace circleflow;
using testing_support::rel;
using testing_support::trig;

namespace {
const int kN = 256;
double int_pow(const PeriodicFunction& u, double p) { return integrate(pow(u, p)); }
}  // namespace

TEST_CASE("stereographic projection") {
  CHECK(stereographic(0.0) == 0.0);
  CHECK(stereographic(kPi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(stereographic(kPi), InvalidArgument);
  CHECK_THROWS_AS(stereographic(-kPi), InvalidArgument);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-3.1, 3.1);
  for (int i = 0; i < 100; ++i) {
    const double t = d(rng);
    CHECK(std::abs(inverse_stereographic(stereographic(t)) - t) < 1e-14);
  }
}

TEST_CASE("circle maps") {
  const auto s = sigma_map(3.0);
  double prev = s(-0.1);
  for (int j = 0; j <= 400; ++j) {
    const double t = kTwoPi * j / 400;
    CHECK(s(t) > prev);
    prev = s(t);
    // sigma' = psi^-2
    const double h = 1e-6;
    CHECK(std::abs((s(t + h) - s(t - h)) / (2 * h) - s.derivative(t)) < 1e-6);
  }
  CHECK(std::abs(s(kTwoPi) - kTwoPi) < 1e-13);
  const auto w = omega_map(MobiusParams::make(2.0, 1.0));
  CHECK(std::abs(w(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(w(1.0 + kTwoPi) - (1.0 + kTwoPi)) < 1e-12);
  const auto id = omega_map(MobiusParams::make(1.0, 0.7));
  CHECK(std::abs(id(2.5) - 2.5) < 1e-15);
  CHECK_THROWS_AS(MobiusParams::make(-1.0, 0.0), InvalidArgument);
}

TEST_CASE("T_lambda") {
  const auto u = trig(kN, 2.0, 1.0, 1);
  CHECK(sup_distance(T_lambda(u, 1.0), u) < 1e-13);
  const auto one = PeriodicFunction::constant(kN, 1.0);
  CHECK(sup_distance(T_lambda(one, 2.0),
                     PeriodicFunction::sample(kN, [](double t) { return psi_weight(2.0, t); })) <
        1e-14);
  CHECK(rel(int_pow(T_lambda(u, 3.0), -2.0), int_pow(u, -2.0)) < 1e-9);
  CHECK_THROWS_AS(T_lambda(trig(kN, 0.0, 1.0, 1), 2.0), PositivityViolation);
}

TEST_CASE("J is invariant under T_lambda") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 3; ++i) {
    // lambda = 5 compresses features 25-fold; 4096 nodes resolve it
    const auto u = random_positive_factor(4096, rng);
    for (double l : {1.0 / 3.0, 2.0, 5.0}) {
      const auto t = T_lambda(u, l);
      CHECK(rel(evaluate(FunctionalKind::J_BS, t), evaluate(FunctionalKind::J_BS, u)) < 1e-8);
      CHECK(t.min() > 0.0);
    }
  }
}

TEST_CASE("T_lambda scales the first u^-3 moments") {
  // int cos(theta + a) (T u)^-3 = sqrt(l^-2 cos^2 a + l^2 sin^2 a) int cos(theta + a') u^-3
  // for a suitable a'; the norm of the moment vector picks up the factor at most
  // max(l, 1/l). Checked on the sin/cos pair through its Euclidean norm.
  const auto u = trig(1024, 2.0, 0.7, 1) + 0.3 * trig(1024, 0.0, 1.0, 2);
  const auto m = [&](const PeriodicFunction& f) {
    const auto g = pow(f, -3.0);
    return first_moments(g);
  };
  const auto m0 = m(u);
  const double l = 2.0;
  const auto m1 = m(T_lambda(u, l));
  // sigma_lambda maps cos, sin to cos/(l psi), l sin / psi... so the moments
  // transform linearly: (c', s') = (c / l, l s).
  CHECK(std::abs(m1[0] - m0[0] / l) < 1e-8);
  CHECK(std::abs(m1[1] - m0[1] * l) < 1e-8);
}

TEST_CASE("script_T") {
  const auto u = trig(kN, 2.0, 1.0, 1);
  CHECK(sup_distance(script_T(u, MobiusParams::make(1.0, 0.8)), u) < 1e-13);
  const auto p = MobiusParams::make(2.0, 1.0);
  const auto t = script_T(u, p);
  CHECK(rel(int_pow(t, -2.0 / 3.0), int_pow(u, -2.0 / 3.0)) < 1e-9);
  CHECK(rel(quadratic_part(FunctionalKind::F_Q, resample(t, 1024)),
            quadratic_part(FunctionalKind::F_Q, resample(u, 1024))) < 1e-8);
  CHECK(rel(evaluate(FunctionalKind::F_Q, t), evaluate(FunctionalKind::F_Q, u)) < 1e-7);
}

TEST_CASE("bold_T") {
  const auto u = trig(kN, 2.0, 1.0, 1);
  CHECK(sup_distance(bold_T(u, 1.0), u) < 1e-13);
  const auto t = bold_T(u, 2.0);
  CHECK(rel(int_pow(t, -2.0 / 3.0), int_pow(u, -2.0 / 3.0)) < 1e-9);
  CHECK(rel(evaluate(FunctionalKind::F_SYMQ, t), evaluate(FunctionalKind::F_SYMQ, u)) < 1e-7);
  // cubic moment at alpha = 0 scales by lambda^-3
  auto cubic = [](const PeriodicFunction& f) {
    const auto w = PeriodicFunction::sample(f.size(), [](double x) {
      const double c = std::cos(x);
      return c * c * c;
    });
    return integrate(w * pow(f, -5.0 / 3.0));
  };
  const auto v = trig(kN, 2.0, 0.6, 1) + trig(kN, 0.0, 0.2, 3);
  CHECK(std::abs(cubic(bold_T(v, 2.0)) / cubic(v) - 0.125) < 1e-8);
}

TEST_CASE("center") {
  const auto one = PeriodicFunction::constant(kN, 1.0);
  const auto c1 = center(one);
  CHECK(c1.params.lambda == 1.0);
  CHECK(c1.residual < 1e-9);

  const auto u = trig(kN, 1.0, 0.3, 1);
  const auto c = center(u);
  const auto m = first_moments(c.centered);
  CHECK(std::abs(m[0]) / kTwoPi < 1e-9);
  CHECK(std::abs(m[1]) / kTwoPi < 1e-9);
  CHECK(c.params.lambda >= 1.0);
  // even input: the sine moment vanishes for alpha in {0, pi}
  CHECK(std::min(std::abs(std::sin(c.params.alpha)), 1.0) < 1e-6);
  // centering a centered function is the identity
  const auto again = center(c.centered);
  CHECK(std::abs(again.params.lambda - 1.0) < 1e-6);

  std::mt19937_64 rng(17);
  const auto r = random_positive_factor(kN, rng);
  const auto cr = center(r);
  CHECK(cr.residual < 1e-9);
}

TEST_CASE("antipodal level") {
  const auto c = PeriodicFunction::sample(kN, [](double t) { return std::cos(t); });
  const double a = antipodal_level(c);
  CHECK((std::abs(a - kPi / 2) < 1e-10 || std::abs(a - 3 * kPi / 2) < 1e-10));
  CHECK(antipodal_level(PeriodicFunction::constant(kN, 3.0)) == 0.0);
  const auto f = PeriodicFunction::sample(
      kN, [](double t) { return 2 + std::cos(t) + 0.5 * std::sin(2 * t); });
  const double b = antipodal_level(f);
  CHECK(std::abs(f(b) - f(b + kPi)) < 1e-10);
}
