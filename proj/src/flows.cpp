#include "circleflow/flows.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circleflow/errors.hpp"

namespace circleflow {
namespace {

bool first_order(FlowKind k) { return k == FlowKind::AFFINE || k == FlowKind::YAMABE; }

// Order-two alpha (AFFINE 1, YAMABE 4) or order-four alpha (SYM_Q 1, Q_FLOW 4).
double flow_alpha(FlowKind k) {
  return (k == FlowKind::AFFINE || k == FlowKind::SYM_Q) ? 1.0 : 4.0;
}

PeriodicFunction density_to_factor(FlowKind kind, const PeriodicFunction& s) {
  // w = s^-1/2 (Pow4), v = s^-3/2 (Pow43)
  const double p = first_order(kind) ? -0.5 : -1.5;
  return s.map([p](double x) { return std::pow(x, p); });
}

PeriodicFunction density_of(const ConformalMetric& g) {
  const double p = g.convention() == Convention::Pow4 ? -2.0 : -2.0 / 3.0;
  return g.factor().map([p](double x) { return std::pow(x, p); });
}

FlowSample sample_of(FlowKind kind, double t, const ConformalMetric& g) {
  const auto rep = flow_curvature(kind, g);
  return {t, rep.mean, rep.length, rep.total};
}

}  // namespace

std::string_view to_string(FlowKind k) {
  switch (k) {
    case FlowKind::AFFINE: return "AFFINE";
    case FlowKind::YAMABE: return "YAMABE";
    case FlowKind::SYM_Q: return "SYM_Q";
    case FlowKind::Q_FLOW: return "Q_FLOW";
  }
  return "?";
}

FlowKind flow_kind_from_string(std::string_view s) {
  for (auto k : {FlowKind::AFFINE, FlowKind::YAMABE, FlowKind::SYM_Q, FlowKind::Q_FLOW}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidArgument("unknown flow kind '" + std::string(s) + "'");
}

Convention convention_of(FlowKind k) {
  return first_order(k) ? Convention::Pow4 : Convention::Pow43;
}

CurvatureReport flow_curvature(FlowKind kind, const ConformalMetric& g) {
  if (g.convention() != convention_of(kind)) {
    throw ConventionMismatch(std::string(to_string(kind)) + " needs a " +
                             std::string(to_string(convention_of(kind))) + " metric");
  }
  switch (kind) {
    case FlowKind::AFFINE: return alpha_scalar_curvature(g, 1.0);
    case FlowKind::YAMABE: return alpha_scalar_curvature(g, 4.0);
    case FlowKind::SYM_Q: return symmetric_Q_curvature(g);
    case FlowKind::Q_FLOW: return Q_curvature(g);
  }
  return alpha_scalar_curvature(g, 1.0);
}

PeriodicFunction factor_velocity(FlowKind kind, const ConformalMetric& g) {
  const auto rep = flow_curvature(kind, g);
  auto diff = rep.field;
  diff += -rep.mean;  // curvature - mean
  // Pow4: -(1/4)(mean - curvature) w; Pow43: -(3/4)(curvature - mean) v
  const double c = first_order(kind) ? 0.25 : -0.75;
  return c * (diff * g.factor());
}

PeriodicFunction density_velocity(FlowKind kind, const ConformalMetric& g) {
  const auto rep = flow_curvature(kind, g);
  auto diff = rep.field;
  diff += -rep.mean;
  const double c = first_order(kind) ? -0.5 : 0.5;
  return c * (diff * density_of(g));
}

FlowState initial_state(FlowKind kind, const PeriodicFunction& factor) {
  FlowState s{0.0, ConformalMetric(factor, convention_of(kind)), {}, false};
  s.history.push_back(sample_of(kind, 0.0, s.metric));
  return s;
}

FlowState step(FlowKind kind, const FlowState& s, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("flow step needs dt > 0");
  const auto density = density_of(s.metric);
  const auto velocity = density_velocity(kind, s.metric);

  // Leading part of d_t s: (alpha/4) s^-2 s'' (first order) or
  // -(alpha^2/12) s^-4 s'''' (fourth order); frozen at the largest coefficient.
  const double alpha = flow_alpha(kind);
  const double smin = density.min();
  const double sigma = first_order(kind) ? 0.25 * alpha / (smin * smin)
                                         : alpha * alpha / 12.0 / std::pow(smin, 4.0);
  const int order = first_order(kind) ? 2 : 4;
  // symbol of the stabilizing operator D: -k^2 or -k^4
  auto symbol = [order](int k) {
    const double k2 = static_cast<double>(k) * k;
    return order == 2 ? -k2 : -k2 * k2;
  };

  // (I - dt sigma D) s1 = s0 + dt (F(s0) - sigma D s0)
  auto rhs = to_coeffs(density + dt * velocity);
  const auto s0 = to_coeffs(density);
  for (int k = 1; k <= rhs.max_mode(); ++k) {
    const double d = sigma * symbol(k);
    const double denom = 1.0 - dt * d;
    rhs.a[k - 1] = (rhs.a[k - 1] - dt * d * s0.a[k - 1]) / denom;
    rhs.b[k - 1] = (rhs.b[k - 1] - dt * d * s0.b[k - 1]) / denom;
  }
  rhs.nyquist = 0.0;
  const auto next = from_coeffs(rhs);

  if (next.min() <= kPositivityFloor) {
    throw StepRejected("flow step lost positivity");
  }
  double change = 0.0;
  for (int j = 0; j < next.size(); ++j) {
    change = std::max(change, std::abs(next[j] - density[j]) / density[j]);
  }
  if (change > 0.1) {
    throw StepRejected("flow step changed the density by " + std::to_string(change));
  }

  FlowState out{s.t + dt,
                ConformalMetric(density_to_factor(kind, next), convention_of(kind)),
                s.history, false};
  out.history.push_back(sample_of(kind, out.t, out.metric));
  return out;
}

FlowState evolve(FlowKind kind, const PeriodicFunction& w0, double t_end,
                 const EvolveOptions& opts) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidArgument("evolve: t_end must be >= 0");
  if (!(opts.dt0 > 0.0) || !(opts.dt_max > 0.0) || !(opts.dt_min > 0.0) || opts.record_every < 1) {
    throw InvalidArgument("evolve: step sizes must be positive and record_every >= 1");
  }
  if (w0.min() <= kPositivityFloor) {
    throw PositivityViolation("evolve: initial factor has minimum " +
                              std::to_string(w0.min()));
  }
  FlowState s = initial_state(kind, w0);
  double dt = std::min(opts.dt0, opts.dt_max);
  long accepted = 0;

  auto stationary = [&](const ConformalMetric& g) {
    const auto rep = flow_curvature(kind, g);
    double dev = 0.0;
    for (int j = 0; j < rep.field.size(); ++j) {
      dev = std::max(dev, std::abs(rep.field[j] - rep.mean));
    }
    return dev < opts.stationarity_tol;
  };

  // Steps run on a history-free state; samples are appended here.
  std::vector<FlowSample> history = std::move(s.history);
  s.history.clear();
  while (s.t < t_end && accepted < opts.max_steps) {
    if (stationary(s.metric)) {
      s.stationary = true;
      break;
    }
    const double h = std::min(dt, t_end - s.t);
    try {
      FlowState next = step(kind, s, h);
      ++accepted;
      if (accepted % std::max(1, opts.record_every) == 0) {
        history.push_back(next.history.back());
      }
      next.history.clear();
      s = std::move(next);
      dt = std::min(opts.dt_max, dt * 1.25);
    } catch (const StepRejected&) {
      dt *= 0.5;
      if (dt < opts.dt_min) {
        throw BlowupSuspected("evolve: dt fell below " + std::to_string(opts.dt_min) +
                              " at t = " + std::to_string(s.t));
      }
    }
  }
  s.history = std::move(history);
  if (s.history.back().t != s.t) s.history.push_back(sample_of(kind, s.t, s.metric));
  if (!s.stationary) s.stationary = stationary(s.metric);
  return s;
}

bool MonotonicityReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const MonotonicityVerdict& v) { return v.pass; });
}

MonotonicityReport monotonicity_report(FlowKind kind, const FlowState& s) {
  if (s.history.empty()) throw InvalidArgument("monotonicity_report: empty history");
  const auto& h = s.history;
  MonotonicityReport rep;

  auto rate_check = [&](std::string name, int dir, auto get) {
    MonotonicityVerdict v{std::move(name), dir, 0.0, true};
    for (std::size_t i = 1; i < h.size(); ++i) {
      const double dt = h[i].t - h[i - 1].t;
      if (dt <= 0.0) continue;
      const double drop = -dir * (get(h[i]) - get(h[i - 1]));
      v.worst_violation = std::max(v.worst_violation, std::max(0.0, drop) / dt);
    }
    v.pass = v.worst_violation < 1e-7;
    rep.verdicts.push_back(v);
  };

  switch (kind) {
    case FlowKind::AFFINE:
    case FlowKind::YAMABE:
      rate_check("mean_curvature", +1, [](const FlowSample& x) { return x.mean; });
      break;
    case FlowKind::SYM_Q:
      rate_check("mean_curvature", -1, [](const FlowSample& x) { return x.mean; });
      break;
    case FlowKind::Q_FLOW:
      rate_check("total_curvature", +1, [](const FlowSample& x) { return x.functional; });
      break;
  }

  MonotonicityVerdict len{"length", 0, 0.0, true};
  const double l0 = h.front().length;
  for (const auto& x : h) {
    len.worst_violation = std::max(len.worst_violation, std::abs(x.length - l0) / l0);
  }
  len.pass = len.worst_violation < 1e-6;
  rep.verdicts.push_back(len);

  for (const auto& x : h) {
    rep.functional_bound = std::max(rep.functional_bound, std::abs(x.functional));
  }
  return rep;
}

}  // namespace circleflow
