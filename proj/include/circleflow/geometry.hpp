#pragma once

#include <string_view>

#include "circleflow/spectral.hpp"

namespace circleflow {

/// Pow4: g = w^-4 g_s (first-order curvatures). Pow43: g = v^-4/3 g_s
/// (Q-curvatures). A Pow43 metric with factor v is the Pow4 metric with
/// factor v^(1/3).
enum class Convention { Pow4, Pow43 };

std::string_view to_string(Convention c);

class ConformalMetric {
 public:
  /// Throws PositivityViolation unless min(factor) exceeds the floor.
  ConformalMetric(PeriodicFunction factor, Convention convention);

  static ConformalMetric round(int n, Convention convention);

  const PeriodicFunction& factor() const { return factor_; }
  Convention convention() const { return convention_; }
  int size() const { return factor_.size(); }

  /// dS_g / d theta: w^-2 under Pow4, v^-2/3 under Pow43.
  PeriodicFunction length_element() const;
  double length() const { return integrate(length_element()); }

  ConformalMetric to_pow4() const;
  ConformalMetric to_pow43() const;

  /// The metric phi^-4 g (Pow4) or phi^-4/3 g (Pow43): the factor is
  /// multiplied by phi in either convention.
  ConformalMetric conformal_change(const PeriodicFunction& phi) const;

 private:
  PeriodicFunction factor_;
  Convention convention_;
};

struct CurvatureReport {
  PeriodicFunction field;
  double mean = 0.0;
  double total = 0.0;   // integral of field dS_g
  double length = 0.0;  // integral of dS_g
};

/// Packages a curvature field with its metric average.
CurvatureReport make_report(PeriodicFunction field, const ConformalMetric& g);

/// D_sigma f, the derivative in the arc length of g.
PeriodicFunction metric_gradient(const ConformalMetric& g, const PeriodicFunction& f);
/// D_sigma D_sigma f.
PeriodicFunction metric_laplacian(const ConformalMetric& g, const PeriodicFunction& f);

// ---- first-order theory (Pow4) --------------------------------------------

/// R^alpha = v^3 (alpha v'' + v). alpha = 1 is the affine curvature, alpha = 4
/// the 4-scalar curvature.
CurvatureReport alpha_scalar_curvature(const ConformalMetric& g, double alpha);

/// alpha Delta_g psi + R^alpha_g psi, evaluated intrinsically.
PeriodicFunction apply_L(const ConformalMetric& g, double alpha, const PeriodicFunction& psi);

/// The same operator through the round metric: v^3 L_{g_s}(psi v).
PeriodicFunction apply_L_pullback(const ConformalMetric& g, double alpha,
                                  const PeriodicFunction& psi);

// ---- fourth-order theory (Pow43) ------------------------------------------

/// (1/9) v^(5/3) (v'''' + 10 v'' + 9 v)
CurvatureReport symmetric_Q_curvature(const ConformalMetric& g);
/// (1/9) v^(5/3) (16 v'''' + 40 v'' + 9 v)
CurvatureReport Q_curvature(const ConformalMetric& g);
/// v^(5/3) ((alpha^2/9) v'''' + (10 alpha/9) v'' + v)
CurvatureReport general_Q_curvature(const ConformalMetric& g, double alpha);

struct PVariant {
  enum class Kind { Symmetric, Standard, General };
  Kind kind = Kind::Standard;
  double general_alpha = 4.0;

  static PVariant symmetric() { return {Kind::Symmetric, 1.0}; }
  static PVariant standard() { return {Kind::Standard, 4.0}; }
  static PVariant general(double alpha) { return {Kind::General, alpha}; }

  /// Symmetric is alpha = 1, Standard alpha = 4.
  double alpha() const;
};

/// R^alpha of a Pow43 metric, read through the factor v^(1/3). For alpha = 1
/// this is the 1-curvature kappa_g appearing in P^A.
PeriodicFunction coefficient_curvature(const ConformalMetric& g, double alpha);

/// (alpha^2/9) Delta^2 f + (10 alpha/9) grad(R^alpha grad f) + Q^alpha f,
/// evaluated intrinsically.
PeriodicFunction apply_P(const ConformalMetric& g, PVariant variant, const PeriodicFunction& f);

/// The same operator through the round metric: v^(5/3) P_{g_s}(f v).
PeriodicFunction apply_P_pullback(const ConformalMetric& g, PVariant variant,
                                  const PeriodicFunction& f);

/// Q-curvature field matching a P variant (Q^A, Q or Q^alpha).
CurvatureReport Q_curvature_for(const ConformalMetric& g, PVariant variant);

}  // namespace circleflow
