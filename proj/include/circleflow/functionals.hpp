#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "circleflow/spectral.hpp"

namespace circleflow {

/// J_BS:     int(u'^2 - u^2) * int u^-2                       (>= -4 pi^2 on H1_s)
/// Y_YAMABE: int(u'^2 - u^2/4) * int u^-2                     (>= -pi^2)
/// F_SYMQ:   int(u''^2 - 10 u'^2 + 9 u^2) * (int u^-2/3)^3    (> 0 on H2_s)
/// F_Q:      int(u''^2 - 5/2 u'^2 + 9/16 u^2) * (int u^-2/3)^3 (>= 9 pi^4)
/// TOTAL_Q:  int Q_g dS_g = (1/9) int(16 u''^2 - 40 u'^2 + 9 u^2)
enum class FunctionalKind { J_BS, Y_YAMABE, F_SYMQ, F_Q, TOTAL_Q };

std::string_view to_string(FunctionalKind k);
FunctionalKind functional_kind_from_string(std::string_view s);

/// int(c2 u''^2 + c1 u'^2 + c0 u^2) * (int u^-q)^power
struct FunctionalShape {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double q = 0.0;
  double power = 0.0;
};

FunctionalShape shape_of(FunctionalKind k);

/// The sharp (or conjectured, for F_SYMQ) value attained on the round metric.
double reference_constant(FunctionalKind k);

struct MomentConstraint {
  std::function<double(double)> weight;
  double exponent = 0.0;  // moment is int weight(theta) u^exponent
};

/// J_BS: {cos, sin} u^-3. F_SYMQ: {cos 3, sin 3, cos, sin} u^-5/3. Others empty.
std::vector<MomentConstraint> constraint_set(FunctionalKind k);

double quadratic_part(FunctionalKind k, const PeriodicFunction& u);

double evaluate(FunctionalKind k, const PeriodicFunction& u);

/// L2 first variation: d/dh E(u + h phi) = int gradient * phi.
PeriodicFunction gradient(FunctionalKind k, const PeriodicFunction& u);

std::vector<double> constraint_residuals(FunctionalKind k, const PeriodicFunction& u);

/// L2 gradients of each constraint moment.
std::vector<PeriodicFunction> constraint_gradients(FunctionalKind k,
                                                   const PeriodicFunction& u);

struct FourierBound {
  double lhs = 0.0;  // quadratic part of F_Q from the coefficients
  double rhs = 0.0;  // (pi/4) sum k^4 (a_k^2 + b_k^2) + (9 pi/8) c0^2
};

/// Requires vanishing first harmonics (|a1|, |b1| < 1e-9).
FourierBound fourier_lower_bound(const PeriodicFunction& u);

}  // namespace circleflow
