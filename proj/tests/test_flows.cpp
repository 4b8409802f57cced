#include <doctest.h>

#include "circleflow/errors.hpp"
#include "circleflow/extremals.hpp"
#include "circleflow/flows.hpp"
#include "test_helpers.hpp"

using namespace circleflow;
using testing_support::trig;

TEST_CASE("names and conventions") {
  for (auto k : {FlowKind::AFFINE, FlowKind::YAMABE, FlowKind::SYM_Q, FlowKind::Q_FLOW}) {
    CHECK(flow_kind_from_string(to_string(k)) == k);
  }
  CHECK(convention_of(FlowKind::AFFINE) == Convention::Pow4);
  CHECK(convention_of(FlowKind::SYM_Q) == Convention::Pow43);
  CHECK_THROWS_AS(flow_kind_from_string("RICCI"), InvalidArgument);
  CHECK_THROWS_AS(flow_curvature(FlowKind::Q_FLOW, ConformalMetric::round(32, Convention::Pow4)),
                  ConventionMismatch);
}

TEST_CASE("round metric is stationary") {
  for (auto k : {FlowKind::AFFINE, FlowKind::YAMABE, FlowKind::SYM_Q, FlowKind::Q_FLOW}) {
    const auto g = ConformalMetric::round(64, convention_of(k));
    CHECK(factor_velocity(k, g).sup_norm() < 1e-12);
    CHECK(density_velocity(k, g).sup_norm() < 1e-12);
  }
}

TEST_CASE("velocities are consistent") {
  // ds = w^-2 dtheta (Pow4): ds_t = -2 w^-3 w_t
  const auto w = trig(128, 1.0, 0.1, 2);
  const ConformalMetric g(w, Convention::Pow4);
  const auto wt = factor_velocity(FlowKind::AFFINE, g);
  const auto st = density_velocity(FlowKind::AFFINE, g);
  CHECK(sup_distance(st, -2.0 * (pow(w, -3.0) * wt)) < 1e-12);
  // ds = v^-2/3 dtheta (Pow43)
  const ConformalMetric h(trig(128, 1.0, 0.1, 2), Convention::Pow43);
  const auto vt = factor_velocity(FlowKind::SYM_Q, h);
  const auto sv = density_velocity(FlowKind::SYM_Q, h);
  CHECK(sup_distance(sv, (-2.0 / 3.0) * (pow(h.factor(), -5.0 / 3.0) * vt)) <
        1e-10 * sv.sup_norm());
}

TEST_CASE("a single step conserves length") {
  auto s = initial_state(FlowKind::YAMABE, trig(128, 1.0, 0.2, 1));
  const double l0 = s.metric.length();
  for (int i = 0; i < 10; ++i) s = step(FlowKind::YAMABE, s, 1e-2);
  CHECK(std::abs(s.metric.length() - l0) < 1e-12 * l0);
  CHECK(s.t == doctest::Approx(0.1));
  CHECK_THROWS_AS(step(FlowKind::YAMABE, s, 0.0), InvalidArgument);
}

TEST_CASE("affine flow converges to an extremal") {
  const auto s = evolve(FlowKind::AFFINE, trig(128, 1.0, 0.1, 2), 20.0);
  CHECK(s.stationary);
  const auto r = monotonicity_report(FlowKind::AFFINE, s);
  CHECK(r.all_pass());
  const auto f = fit_family(s.metric.factor(), Family::BS);
  CHECK(f.sup_error < 1e-4 * s.metric.factor().sup_norm());
}

TEST_CASE("Yamabe flow converges to the family") {
  const auto s = evolve(FlowKind::YAMABE, trig(128, 1.0, 0.2, 1), 30.0);
  CHECK(s.stationary);
  CHECK(monotonicity_report(FlowKind::YAMABE, s).all_pass());
  CHECK(fit_family(s.metric.factor(), Family::YAM).sup_error < 1e-4);
}

TEST_CASE("symmetric Q flow is monotone") {
  EvolveOptions o;
  o.dt0 = 1e-4;
  const auto s = evolve(FlowKind::SYM_Q, trig(128, 1.0, 0.05, 2), 2.0, o);
  const auto r = monotonicity_report(FlowKind::SYM_Q, s);
  CHECK(r.all_pass());
  CHECK(s.history.size() > 2);
}

TEST_CASE("history and options") {
  EvolveOptions o;
  o.record_every = 5;
  const auto s = evolve(FlowKind::AFFINE, trig(64, 1.0, 0.1, 2), 0.5, o);
  CHECK(s.history.front().t == 0.0);
  CHECK(s.history.back().t == doctest::Approx(s.t));
  CHECK(s.t == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(evolve(FlowKind::AFFINE, trig(64, 1.0, 0.1, 2), -1.0), InvalidArgument);
}
