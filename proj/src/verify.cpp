#include "circleflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "circleflow/errors.hpp"

namespace circleflow {
namespace {

PeriodicFunction npow(const PeriodicFunction& f, double p) {
  return f.map([p](double x) { return std::pow(x, p); });
}

double relative_defect(const PeriodicFunction& lhs, const PeriodicFunction& rhs) {
  return sup_distance(lhs, rhs) / std::max(1.0, rhs.sup_norm());
}

bool first_order(CovariantOperator op) { return op == CovariantOperator::L_ALPHA; }

PVariant variant_of(CovariantOperator op, double alpha) {
  switch (op) {
    case CovariantOperator::P_SYM: return PVariant::symmetric();
    case CovariantOperator::P_STD: return PVariant::standard();
    default: return PVariant::general(alpha);
  }
}

PeriodicFunction curvature_of(const ConformalMetric& g, CovariantOperator op, double alpha) {
  if (first_order(op)) return alpha_scalar_curvature(g, alpha).field;
  return Q_curvature_for(g, variant_of(op, alpha)).field;
}

PeriodicFunction operator_of(const ConformalMetric& g, CovariantOperator op, double alpha,
                             const PeriodicFunction& f) {
  if (first_order(op)) return apply_L(g, alpha, f);
  return apply_P(g, variant_of(op, alpha), f);
}

double weight_power(CovariantOperator op) { return first_order(op) ? 3.0 : 5.0 / 3.0; }

void require_convention(const ConformalMetric& g, CovariantOperator op) {
  const auto want = first_order(op) ? Convention::Pow4 : Convention::Pow43;
  if (g.convention() != want) {
    throw ConventionMismatch(std::string(to_string(op)) + " needs a " +
                             std::string(to_string(want)) + " base metric");
  }
}

}  // namespace

PeriodicFunction random_trig_polynomial(int n, std::mt19937_64& rng, int degree,
                                        double amplitude) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  const double c0 = dist(rng);
  std::vector<double> a(static_cast<std::size_t>(degree)), b(a.size());
  for (int k = 0; k < degree; ++k) {
    a[k] = dist(rng);
    b[k] = dist(rng);
  }
  return PeriodicFunction::sample(n, [&](double t) {
    double s = c0;
    for (int k = 0; k < degree; ++k) {
      s += a[k] * std::cos((k + 1) * t) + b[k] * std::sin((k + 1) * t);
    }
    return s;
  });
}

PeriodicFunction random_positive_factor(int n, std::mt19937_64& rng, int degree,
                                        double amplitude) {
  return random_trig_polynomial(n, rng, degree, amplitude)
      .map([](double x) { return std::exp(x); });
}

std::string_view to_string(CovariantOperator op) {
  switch (op) {
    case CovariantOperator::L_ALPHA: return "L_alpha";
    case CovariantOperator::P_SYM: return "P_A";
    case CovariantOperator::P_STD: return "P";
    case CovariantOperator::P_ALPHA: return "P_alpha";
  }
  return "?";
}

CovarianceResidual covariance_residual(const CovarianceCase& c) {
  require_convention(c.base, c.op);
  if (c.phi.min() <= kPositivityFloor) {
    throw PositivityViolation("covariance_residual: phi must be positive");
  }
  const auto g2 = c.base.conformal_change(c.phi);
  const auto weight = npow(c.phi, weight_power(c.op) + c.weight_offset);
  CovarianceResidual r;
  r.curvature = relative_defect(curvature_of(g2, c.op, c.alpha),
                                weight * operator_of(c.base, c.op, c.alpha, c.phi));
  r.op = relative_defect(operator_of(g2, c.op, c.alpha, c.psi),
                         weight * operator_of(c.base, c.op, c.alpha, c.psi * c.phi));
  return r;
}

double cocycle_residual(const ConformalMetric& g1, const PeriodicFunction& phi,
                        const PeriodicFunction& psi, CovariantOperator op, double alpha) {
  require_convention(g1, op);
  const double p = weight_power(op);
  const auto g2 = g1.conformal_change(phi);
  const auto two_step = npow(psi, p) * operator_of(g2, op, alpha, psi);
  const auto prod = phi * psi;
  const auto direct = npow(prod, p) * operator_of(g1, op, alpha, prod);
  return relative_defect(two_step, direct);
}

double shift_linearity_check(const ConformalMetric& g, PVariant variant,
                             const PeriodicFunction& psi, double C) {
  if (!(C + psi.min() > 0.0)) {
    throw InvalidArgument("shift_linearity_check needs C + min(psi) > 0");
  }
  const int n = psi.size();
  const auto shifted = apply_P(g, variant, psi + C);
  const auto one = apply_P(g, variant, PeriodicFunction::constant(n, 1.0));
  const auto plain = apply_P(g, variant, psi);
  return sup_distance(shifted, C * one + plain) / std::max(1.0, plain.sup_norm());
}

double shift_linearity_check(const PeriodicFunction& psi, double C) {
  return shift_linearity_check(ConformalMetric::round(psi.size(), Convention::Pow43),
                               PVariant::standard(), psi, C);
}

TotalQIdentity total_Q_identity(const ConformalMetric& g, double alpha) {
  if (g.convention() != Convention::Pow43) {
    throw ConventionMismatch("total_Q_identity needs a Pow43 metric");
  }
  const auto q = general_Q_curvature(g, alpha).field;
  const auto r = coefficient_curvature(g, alpha);
  const auto lap = metric_laplacian(g, r);
  const auto ds = g.length_element();
  TotalQIdentity out;
  out.lhs = integrate(q * ds);
  out.rhs = integrate(r * r * ds);
  out.pointwise = sup_distance(q, (alpha / 3.0) * lap + r * r) / std::max(1.0, q.sup_norm());
  out.divergence = integrate(lap * ds);
  return out;
}

}  // namespace circleflow
