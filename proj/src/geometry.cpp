#include "circleflow/geometry.hpp"

#include <string>

#include "circleflow/errors.hpp"

namespace circleflow {
namespace {

void require(const ConformalMetric& g, Convention c, const char* what) {
  if (g.convention() != c) {
    throw ConventionMismatch(std::string(what) + " needs a " +
                             std::string(to_string(c)) + " metric, got " +
                             std::string(to_string(g.convention())));
  }
}

// v^(5/3) (c4 v'''' + c2 v'' + c0 v)
PeriodicFunction quartic_curvature(const ConformalMetric& g, double c4,
                                   double c2, double c0) {
  const auto& v = g.factor();
  auto v2 = differentiate(v, 2);
  auto v4 = differentiate(v, 4);
  return dealiased(
      [=](double x, double x2, double x4) {
        return std::pow(x, 5.0 / 3.0) * (c4 * x4 + c2 * x2 + c0 * x);
      },
      v, v2, v4);
}

}  // namespace

std::string_view to_string(Convention c) {
  return c == Convention::Pow4 ? "pow4" : "pow43";
}

ConformalMetric::ConformalMetric(PeriodicFunction factor, Convention convention)
    : factor_(std::move(factor)), convention_(convention) {
  if (factor_.min() <= kPositivityFloor) {
    throw PositivityViolation("conformal factor has minimum " +
                              std::to_string(factor_.min()));
  }
}

ConformalMetric ConformalMetric::round(int n, Convention convention) {
  return ConformalMetric(PeriodicFunction::constant(n, 1.0), convention);
}

PeriodicFunction ConformalMetric::length_element() const {
  return pow(factor_, convention_ == Convention::Pow4 ? -2.0 : -2.0 / 3.0);
}

ConformalMetric ConformalMetric::to_pow4() const {
  if (convention_ == Convention::Pow4) return *this;
  return ConformalMetric(pow(factor_, 1.0 / 3.0), Convention::Pow4);
}

ConformalMetric ConformalMetric::to_pow43() const {
  if (convention_ == Convention::Pow43) return *this;
  return ConformalMetric(pow(factor_, 3.0), Convention::Pow43);
}

ConformalMetric ConformalMetric::conformal_change(const PeriodicFunction& phi) const {
  return ConformalMetric(factor_ * phi, convention_);
}

CurvatureReport make_report(PeriodicFunction field, const ConformalMetric& g) {
  CurvatureReport r{std::move(field)};
  const auto ds = g.length_element();
  r.length = integrate(ds);
  r.total = integrate(r.field * ds);
  r.mean = r.total / r.length;
  return r;
}

PeriodicFunction metric_gradient(const ConformalMetric& g, const PeriodicFunction& f) {
  const double p = g.convention() == Convention::Pow4 ? 2.0 : 2.0 / 3.0;
  return pow(g.factor(), p) * differentiate(f, 1);
}

PeriodicFunction metric_laplacian(const ConformalMetric& g, const PeriodicFunction& f) {
  return metric_gradient(g, metric_gradient(g, f));
}

CurvatureReport alpha_scalar_curvature(const ConformalMetric& g, double alpha) {
  require(g, Convention::Pow4, "alpha_scalar_curvature");
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  const auto& v = g.factor();
  auto field = dealiased(
      [alpha](double x, double x2) { return x * x * x * (alpha * x2 + x); }, v,
      differentiate(v, 2));
  return make_report(std::move(field), g);
}

PeriodicFunction apply_L(const ConformalMetric& g, double alpha,
                         const PeriodicFunction& psi) {
  require(g, Convention::Pow4, "apply_L");
  const auto r = alpha_scalar_curvature(g, alpha);
  return alpha * metric_laplacian(g, psi) + r.field * psi;
}

PeriodicFunction apply_L_pullback(const ConformalMetric& g, double alpha,
                                  const PeriodicFunction& psi) {
  require(g, Convention::Pow4, "apply_L_pullback");
  const auto& v = g.factor();
  const auto pv = psi * v;
  return pow(v, 3.0) * (alpha * differentiate(pv, 2) + pv);
}

CurvatureReport symmetric_Q_curvature(const ConformalMetric& g) {
  require(g, Convention::Pow43, "symmetric_Q_curvature");
  return make_report(quartic_curvature(g, 1.0 / 9.0, 10.0 / 9.0, 1.0), g);
}

CurvatureReport Q_curvature(const ConformalMetric& g) {
  require(g, Convention::Pow43, "Q_curvature");
  return make_report(quartic_curvature(g, 16.0 / 9.0, 40.0 / 9.0, 1.0), g);
}

CurvatureReport general_Q_curvature(const ConformalMetric& g, double alpha) {
  require(g, Convention::Pow43, "general_Q_curvature");
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  return make_report(
      quartic_curvature(g, alpha * alpha / 9.0, 10.0 * alpha / 9.0, 1.0), g);
}

double PVariant::alpha() const {
  switch (kind) {
    case Kind::Symmetric: return 1.0;
    case Kind::Standard: return 4.0;
    case Kind::General: return general_alpha;
  }
  return general_alpha;
}

PeriodicFunction coefficient_curvature(const ConformalMetric& g, double alpha) {
  require(g, Convention::Pow43, "coefficient_curvature");
  return alpha_scalar_curvature(g.to_pow4(), alpha).field;
}

CurvatureReport Q_curvature_for(const ConformalMetric& g, PVariant variant) {
  switch (variant.kind) {
    case PVariant::Kind::Symmetric: return symmetric_Q_curvature(g);
    case PVariant::Kind::Standard: return Q_curvature(g);
    case PVariant::Kind::General: return general_Q_curvature(g, variant.general_alpha);
  }
  return Q_curvature(g);
}

PeriodicFunction apply_P(const ConformalMetric& g, PVariant variant,
                         const PeriodicFunction& f) {
  require(g, Convention::Pow43, "apply_P");
  const double a = variant.alpha();
  const auto curvature = coefficient_curvature(g, a);
  const auto q = Q_curvature_for(g, variant).field;
  const auto lap = metric_laplacian(g, f);
  return (a * a / 9.0) * metric_laplacian(g, lap) +
         (10.0 * a / 9.0) * metric_gradient(g, curvature * metric_gradient(g, f)) +
         q * f;
}

PeriodicFunction apply_P_pullback(const ConformalMetric& g, PVariant variant,
                                  const PeriodicFunction& f) {
  require(g, Convention::Pow43, "apply_P_pullback");
  const double a = variant.alpha();
  const auto fv = f * g.factor();
  return pow(g.factor(), 5.0 / 3.0) *
         ((a * a / 9.0) * differentiate(fv, 4) +
          (10.0 * a / 9.0) * differentiate(fv, 2) + fv);
}

}  // namespace circleflow
