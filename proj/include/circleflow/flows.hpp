#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "circleflow/geometry.hpp"

namespace circleflow {

/// AFFINE:  d_t g = (mean kappa - kappa) g,  kappa = R^1,  g = w^-4 g_s
/// YAMABE:  d_t g = (mean k - k) g,          k = R^4,      g = w^-4 g_s
/// SYM_Q:   d_t g = (Q^A - mean Q^A) g,                    g = v^-4/3 g_s
/// Q_FLOW:  d_t g = (Q - mean Q) g,                        g = v^-4/3 g_s
enum class FlowKind { AFFINE, YAMABE, SYM_Q, Q_FLOW };

std::string_view to_string(FlowKind k);
FlowKind flow_kind_from_string(std::string_view s);
Convention convention_of(FlowKind k);

/// The curvature field driving the flow, with its metric mean.
CurvatureReport flow_curvature(FlowKind kind, const ConformalMetric& g);

/// d_t of the conformal factor:
///   AFFINE, YAMABE: -(1/4)(mean - curvature) w
///   SYM_Q, Q_FLOW:  -(3/4)(curvature - mean) v
PeriodicFunction factor_velocity(FlowKind kind, const ConformalMetric& g);

/// d_t of the length density s = dS_g/dtheta; d_t g = f g gives d_t s = f s / 2.
PeriodicFunction density_velocity(FlowKind kind, const ConformalMetric& g);

struct FlowSample {
  double t = 0.0;
  double mean = 0.0;        // mean curvature
  double length = 0.0;      // int dS_g
  double functional = 0.0;  // int curvature dS_g
};

struct FlowState {
  double t = 0.0;
  ConformalMetric metric;
  std::vector<FlowSample> history;
  bool stationary = false;
};

FlowState initial_state(FlowKind kind, const PeriodicFunction& factor);

/// One IMEX step on the length density: the leading linear term, with its
/// coefficient frozen at the largest nodal value, is implicit; the rest is
/// explicit. Both parts integrate to zero, so the discrete length is kept.
/// Throws StepRejected on loss of positivity or a relative change above 10%.
FlowState step(FlowKind kind, const FlowState& s, double dt);

struct EvolveOptions {
  double dt0 = 1e-3;
  double dt_max = 5e-2;
  double dt_min = 1e-12;
  double stationarity_tol = 1e-8;
  long max_steps = 2000000;
  /// Record every k-th accepted step (the first and last are always kept).
  int record_every = 1;
};

/// Adaptive integration to t_end or until sup |curvature - mean| < tol.
/// Throws BlowupSuspected when dt falls below dt_min.
FlowState evolve(FlowKind kind, const PeriodicFunction& w0, double t_end,
                 const EvolveOptions& opts = {});

struct MonotonicityVerdict {
  std::string quantity;
  /// +1 non-decreasing, -1 non-increasing, 0 constant
  int expected_direction = 0;
  /// Largest violation rate per unit time (relative drift for direction 0).
  double worst_violation = 0.0;
  bool pass = false;
};

struct MonotonicityReport {
  std::vector<MonotonicityVerdict> verdicts;
  /// max |functional| over the history
  double functional_bound = 0.0;
  bool all_pass() const;
};

/// Checks the stated monotone quantity of the kind (mean curvature for
/// AFFINE and YAMABE non-decreasing, for SYM_Q non-increasing; int Q dS for
/// Q_FLOW non-decreasing) and constancy of length. Tolerance 1e-7 per unit
/// time, 1e-6 relative for length.
MonotonicityReport monotonicity_report(FlowKind kind, const FlowState& s);

}  // namespace circleflow
