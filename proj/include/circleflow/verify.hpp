#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "circleflow/geometry.hpp"

namespace circleflow {

/// exp(c0 + sum_{k<=degree} a_k cos k theta + b_k sin k theta) with all
/// coefficients uniform in [-amplitude, amplitude].
PeriodicFunction random_positive_factor(int n, std::mt19937_64& rng, int degree = 6,
                                        double amplitude = 0.3);

/// Same coefficients, not exponentiated.
PeriodicFunction random_trig_polynomial(int n, std::mt19937_64& rng, int degree = 6,
                                        double amplitude = 0.3);

/// L^alpha (Pow4 base) or one of the P operators (Pow43 base).
enum class CovariantOperator { L_ALPHA, P_SYM, P_STD, P_ALPHA };

std::string_view to_string(CovariantOperator op);

struct CovarianceCase {
  ConformalMetric base;
  PeriodicFunction phi;
  PeriodicFunction psi;
  CovariantOperator op = CovariantOperator::P_STD;
  double alpha = 1.0;  // used by L_ALPHA and P_ALPHA
  /// Added to the conformal weight exponent; nonzero only as a negative control.
  double weight_offset = 0.0;
};

struct CovarianceResidual {
  /// curvature of phi^-4 g1 (or phi^-4/3 g1) against phi^3 L phi (phi^5/3 P phi)
  double curvature = 0.0;
  /// the same identity applied to a general psi
  double op = 0.0;
};

/// Both defects in sup norm, relative to max(1, sup of the right side).
/// Throws ConventionMismatch if the base convention does not fit the operator.
CovarianceResidual covariance_residual(const CovarianceCase& c);

/// Two conformal changes g1 -> g2 -> g3 against the single change by
/// phi psi, applied to the Q-curvature (or R^alpha).
double cocycle_residual(const ConformalMetric& g1, const PeriodicFunction& phi,
                        const PeriodicFunction& psi, CovariantOperator op, double alpha);

/// sup |P(C + psi) - C P(1) - P psi| / max(1, sup |P psi|) for the operator of
/// `variant` on g (round Pow43 metric if omitted).
double shift_linearity_check(const ConformalMetric& g, PVariant variant,
                             const PeriodicFunction& psi, double C);
double shift_linearity_check(const PeriodicFunction& psi, double C);

struct TotalQIdentity {
  double lhs = 0.0;  // int Q^alpha dS
  double rhs = 0.0;  // int (R^alpha)^2 dS
  /// sup |Q^alpha - (alpha/3) Delta_g R^alpha - (R^alpha)^2| / sup |Q^alpha|
  double pointwise = 0.0;
  /// int Delta_g R^alpha dS
  double divergence = 0.0;
};

/// Throws ConventionMismatch unless g is Pow43.
TotalQIdentity total_Q_identity(const ConformalMetric& g, double alpha);

}  // namespace circleflow
