#pragma once

#include <array>

#include "circleflow/spectral.hpp"

namespace circleflow {

struct MobiusParams {
  double lambda = 1.0;
  double alpha = 0.0;

  /// Validates lambda > 0 and reduces alpha to [0, 2 pi).
  static MobiusParams make(double lambda, double alpha);
};

/// y = tan(theta / 2) for theta in (-pi, pi).
double stereographic(double theta);
double inverse_stereographic(double y);

/// sqrt(lambda^2 cos^2 theta + lambda^-2 sin^2 theta)
double psi_weight(double lambda, double theta);
/// (lambda^2 cos^2((theta-alpha)/2) + lambda^-2 sin^2((theta-alpha)/2))^(3/2)
double Psi_weight(const MobiusParams& p, double theta);
/// (lambda^2 cos^2 theta + lambda^-2 sin^2 theta)^(3/2)
double Gamma_weight(double lambda, double theta);

/// Circle maps behind the transforms, unwrapped to be continuous and
/// increasing on the whole line:
///   SigmaLambda:      sigma(theta) = int_0^theta psi^-2
///   OmegaLambdaAlpha: omega(theta) = alpha + int_alpha^theta Psi^-2/3
struct CircleMap {
  enum class Kind { SigmaLambda, OmegaLambdaAlpha };
  Kind kind = Kind::SigmaLambda;
  MobiusParams params;

  double operator()(double theta) const;
  double derivative(double theta) const;
};

CircleMap sigma_map(double lambda);
CircleMap omega_map(const MobiusParams& p);

/// (T_lambda u)(theta) = u(sigma_lambda(theta)) psi_lambda(theta)
PeriodicFunction T_lambda(const PeriodicFunction& u, double lambda);
/// (script-T u)(theta) = u(omega(theta)) Psi(theta)
PeriodicFunction script_T(const PeriodicFunction& u, const MobiusParams& p);
/// (bold-T u)(theta) = u(sigma_lambda(theta)) Gamma_lambda(theta)
PeriodicFunction bold_T(const PeriodicFunction& u, double lambda);

/// (int u cos, int u sin)
std::array<double, 2> first_moments(const PeriodicFunction& u);

struct Centering {
  MobiusParams params;
  PeriodicFunction centered;
  /// max |first moment| / 2pi of the centered function
  double residual = 0.0;
  int iterations = 0;
};

/// Finds lambda >= 1 and alpha with both first Fourier moments of
/// script_T(u) below 1e-9 (2pi-normalized). The root need not be unique;
/// the first one reached from the seed grid is returned.
Centering center(const PeriodicFunction& u, double tolerance = 1e-9);

/// An angle a with f(a) = f(a + pi).
double antipodal_level(const PeriodicFunction& f);

}  // namespace circleflow
