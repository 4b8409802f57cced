#pragma once

#include <string_view>
#include <vector>

#include "circleflow/functionals.hpp"
#include "circleflow/spectral.hpp"

namespace circleflow {

// ---- local problem on an interval -----------------------------------------

/// Minimize int_{-r}^{r} w'^2 over w > 0 with w(+-r) = b and int w^-2 = a.
struct LocalProblem {
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;

  /// Throws InvalidArgument unless a, b, r are positive and finite.
  void validate() const;
};

/// TauPos: a > 2r/b^2, TauNeg: a < 2r/b^2, Flat: equality.
enum class LocalCase { TauPos, TauNeg, Flat };

std::string_view to_string(LocalCase c);

struct LocalSolution {
  LocalCase kind = LocalCase::Flat;
  double tau = 0.0;
  double lambda = 0.0;
  /// arctan(r/lambda) (TauPos) or arctanh(r/lambda) (TauNeg); 0 when Flat.
  double beta = 0.0;
  double infimum = 0.0;
  double b = 0.0;

  /// Closed-form minimizer:
  ///   TauPos: w^2 = tau^(1/2) (lambda^2 + y^2) / lambda
  ///   TauNeg: w^2 = |tau|^(1/2) (lambda^2 - y^2) / lambda
  ///   Flat:   w = b
  double minimizer(double y) const;
};

/// Bracketed root find on beta using a b^2 = 4 r beta / sin(2 beta)
/// (sinh for the negative branch).
LocalSolution solve_local(const LocalProblem& p);

/// Discrete minimum of the Dirichlet energy on m interior nodes (finite
/// differences, trapezoid constraint), found by Newton's method on the KKT
/// system. Converges to the closed-form infimum as m grows.
double local_oracle(const LocalProblem& p, int m);

// ---- periodic problems ----------------------------------------------------

/// Symmetric-decreasing rearrangement: the sorted nodal values placed at
/// nodes 0, 1, N-1, 2, N-2, ..., N/2 in decreasing order.
PeriodicFunction rearrange(const PeriodicFunction& u);

struct MinimizeOptions {
  int max_iterations = 100000;
  /// Stop when sup |projected gradient| < gradient_tol * max(1, |value|).
  double gradient_tol = 1e-6;
  /// Also stop after this many consecutive accepted steps whose decrease is
  /// at round-off level (the gradient of fourth-order functionals floors
  /// above gradient_tol on fine grids).
  int stagnation_window = 25;
  /// Target for the moment constraints after every accepted step.
  double constraint_tol = 1e-11;
  /// Multiplicative update u <- u exp(t d / u) instead of u + t d.
  bool log_descent = false;
  /// Keep mean(u) = 1 (exact symmetry of the scale-invariant functionals).
  bool normalize = true;
};

struct MinimizeRecord {
  int iteration = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  std::vector<double> constraints;
};

struct MinimizeResult {
  PeriodicFunction minimizer;
  double value = 0.0;
  std::vector<double> constraint_residuals;
  int iterations = 0;
  bool converged = false;
  /// One record per accepted iterate, starting with the projected start.
  std::vector<MinimizeRecord> history;
  /// Positivity rejections absorbed by step halving.
  int positivity_events = 0;
};

/// Newton correction onto the moment constraints of `kind` along the
/// preconditioned constraint gradients. Identity for unconstrained kinds.
PeriodicFunction project_to_constraints(FunctionalKind kind, const PeriodicFunction& u,
                                        double tol = 1e-12);

/// Preconditioned projected-gradient descent with Armijo backtracking.
/// Throws ConvergenceFailure when the iteration cap is reached.
MinimizeResult minimize(FunctionalKind kind, const PeriodicFunction& u0,
                        const MinimizeOptions& opts = {});

/// Projection of the L2 gradient onto the tangent space of the constraints.
PeriodicFunction projected_gradient(FunctionalKind kind, const PeriodicFunction& u);

struct MultiplierReport {
  /// Least-squares mu in gradient = sum mu_i constraint_gradient_i.
  std::vector<double> multipliers;
  /// mu_i |constraint_gradient_i| / |gradient| (L2 norms).
  std::vector<double> relative;
  /// Determinant of the normalized Gram matrix of the constraint gradients.
  double gram_determinant = 0.0;
};

MultiplierReport multiplier_estimates(FunctionalKind kind, const PeriodicFunction& u);

}  // namespace circleflow
