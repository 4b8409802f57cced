#pragma once

#include <string_view>
#include <vector>

#include "circleflow/functionals.hpp"
#include "circleflow/spectral.hpp"

namespace circleflow {

/// Closed-form extremal families, with h = lambda^2 cos^2 x + lambda^-2 sin^2 x:
///   BS:        c sqrt(h), x = theta - alpha
///   YAM:       c sqrt(h), x = (theta - alpha)/2
///   QEXT:      c h^(3/2), x = (theta - alpha)/2
///   SYMQ_CONJ: c h^(3/2), x = theta - alpha   (conjectured F_SYMQ minimizers)
enum class Family { BS, YAM, QEXT, SYMQ_CONJ };

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

/// The functional each family is extremal (or conjectured extremal) for.
FunctionalKind functional_for(Family f);

/// Period of the family in alpha: pi for the full-angle families, 2pi for
/// the half-angle ones.
double alpha_period(Family f);

struct ExtremalParams {
  double c = 1.0;
  double lambda = 1.0;
  double alpha = 0.0;
  Family family = Family::BS;
};

double family_value(const ExtremalParams& p, double theta);
PeriodicFunction sample(const ExtremalParams& p, int n);

/// Left side of the family's Euler-Lagrange equation
///   BS u'' + u,  YAM u'' + u/4,  QEXT u'''' + 5/2 u'' + 9/16 u,
///   SYMQ_CONJ u'''' + 10 u'' + 9 u
/// and the exponent of its right side tau u^p (-3 or -5/3).
PeriodicFunction el_operator(const PeriodicFunction& u, Family f);
double el_exponent(Family f);

struct ElResidual {
  double tau = 0.0;
  /// sup |Lu - tau u^p| relative to sup |Lu|
  double residual = 0.0;
};

ElResidual el_residual(const PeriodicFunction& u, Family f);

/// Least-squares tau and relative defect for Lu = tau * rhs.
ElResidual fit_multiplier(const PeriodicFunction& lhs, const PeriodicFunction& rhs);

/// Fourier coefficients (1/2pi) int |sin(x/2)|^3 cos(kx) dx, k = 0..kmax,
/// computed once by fine quadrature.
const std::vector<double>& greens_kernel_coefficients();

/// Constant c in u = c int tau u^-5/3(phi) |sin((theta-phi)/2)|^3 dphi, fixed
/// by the k = 0 mode of the fourth-order operator.
double greens_constant();

/// sup |u - c tau K * u^-5/3| / sup |u|
double greens_residual(const PeriodicFunction& u, double tau);

struct FamilyFit {
  ExtremalParams params;
  double sup_error = 0.0;
  int iterations = 0;
};

/// Nonlinear least squares over (c, lambda, alpha); lambda >= 1 and alpha is
/// reduced modulo the family period.
FamilyFit fit_family(const PeriodicFunction& u, Family f);

/// w(theta) = v(theta/2) for a pi-periodic v (odd modes must vanish).
PeriodicFunction half_angle_lift(const PeriodicFunction& v);

struct HalfAngleReport {
  /// w'' + w/4 = tau w^-3
  ElResidual cubic;
  /// w'' + w/4 = tau w^-2
  ElResidual quadratic;
};

/// Residuals of both candidate half-angle equations for the lift of v.
HalfAngleReport half_angle_check(const PeriodicFunction& v);

}  // namespace circleflow
