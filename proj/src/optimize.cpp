#include "circleflow/optimize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "circleflow/errors.hpp"

namespace circleflow {
namespace {

double inner(const PeriodicFunction& f, const PeriodicFunction& g) {
  return integrate(f * g);
}

double mean(const PeriodicFunction& u) { return integrate(u) / kTwoPi; }

// Sobolev preconditioner: mode k divided by |c2| k^4 + |c1| k^2 + 1.
PeriodicFunction precondition(FunctionalKind kind, const PeriodicFunction& f) {
  const auto sh = shape_of(kind);
  auto c = to_coeffs(f);
  for (int k = 1; k <= c.max_mode(); ++k) {
    const double k2 = static_cast<double>(k) * k;
    const double s = std::abs(sh.c2) * k2 * k2 + std::abs(sh.c1) * k2 + 1.0;
    c.a[k - 1] /= s;
    c.b[k - 1] /= s;
  }
  c.nyquist = 0.0;
  return from_coeffs(c);
}

// Solves the small symmetric system; least squares if it is singular.
Eigen::VectorXd small_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return a.completeOrthogonalDecomposition().solve(b);
}

double constraint_scale(FunctionalKind kind, const PeriodicFunction& u) {
  double s = 0.0;
  for (const auto& c : constraint_set(kind)) {
    s = std::max(s, integrate(u.map([&](double x) { return std::pow(x, c.exponent); })));
  }
  return std::max(s, 1.0);
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

PeriodicFunction rearrange(const PeriodicFunction& u) {
  if (u.min() <= kPositivityFloor) {
    throw PositivityViolation("rearrange: input has minimum " + std::to_string(u.min()));
  }
  const int n = u.size();
  std::vector<double> sorted(u.values().begin(), u.values().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<double> out(static_cast<std::size_t>(n));
  out[0] = sorted[0];
  int next = 1;
  for (int j = 1; j < n / 2; ++j) {
    out[j] = sorted[next++];
    out[n - j] = sorted[next++];
  }
  out[n / 2] = sorted[next];
  return PeriodicFunction(std::move(out));
}

PeriodicFunction project_to_constraints(FunctionalKind kind, const PeriodicFunction& u,
                                        double tol) {
  if (constraint_set(kind).empty()) return u;
  const double scale = constraint_scale(kind, u);
  PeriodicFunction x = u;
  for (int it = 0; it < 50; ++it) {
    const auto c = constraint_residuals(kind, x);
    if (max_abs(c) < tol * scale) return x;
    const auto g = constraint_gradients(kind, x);
    const int m = static_cast<int>(g.size());
    std::vector<PeriodicFunction> dirs;
    for (const auto& gi : g) dirs.push_back(precondition(kind, gi));
    Eigen::MatrixXd a(m, m);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
      rhs[i] = c[i];
      for (int j = 0; j < m; ++j) a(i, j) = inner(g[i], dirs[j]);
    }
    const Eigen::VectorXd beta = small_solve(a, rhs);
    double t = 1.0;
    for (int bt = 0; bt < 30; ++bt, t *= 0.5) {
      PeriodicFunction trial = x;
      for (int j = 0; j < m; ++j) trial -= (t * beta[j]) * dirs[j];
      if (trial.min() > 0.5 * x.min() &&
          max_abs(constraint_residuals(kind, trial)) < max_abs(c)) {
        x = std::move(trial);
        break;
      }
      if (bt == 29) {
        throw ConvergenceFailure("project_to_constraints: no decrease along Newton step");
      }
    }
  }
  if (max_abs(constraint_residuals(kind, x)) < 1e3 * tol * scale) return x;
  throw ConvergenceFailure("project_to_constraints: Newton iteration cap reached");
}

PeriodicFunction projected_gradient(FunctionalKind kind, const PeriodicFunction& u) {
  auto grad = gradient(kind, u);
  const auto g = constraint_gradients(kind, u);
  if (g.empty()) return grad;
  const int m = static_cast<int>(g.size());
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    rhs[i] = inner(g[i], grad);
    for (int j = 0; j < m; ++j) a(i, j) = inner(g[i], g[j]);
  }
  const Eigen::VectorXd mu = small_solve(a, rhs);
  for (int j = 0; j < m; ++j) grad -= mu[j] * g[j];
  return grad;
}

MultiplierReport multiplier_estimates(FunctionalKind kind, const PeriodicFunction& u) {
  MultiplierReport rep;
  const auto grad = gradient(kind, u);
  const auto g = constraint_gradients(kind, u);
  const int m = static_cast<int>(g.size());
  if (m == 0) return rep;

  // Size of the individual terms of the Euler-Lagrange equation, so that a
  // vanishing multiplier is measured against something nonzero.
  const auto sh = shape_of(kind);
  PeriodicFunction da = 2.0 * sh.c0 * u;
  if (sh.c1 != 0.0) da += (-2.0 * sh.c1) * differentiate(u, 2);
  if (sh.c2 != 0.0) da += (2.0 * sh.c2) * differentiate(u, 4);
  const double b = integrate(u.map([&](double x) { return std::pow(x, -sh.q); }));
  const double term_scale = std::pow(b, sh.power) * std::sqrt(inner(da, da));

  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  std::vector<double> norms(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) norms[i] = std::sqrt(inner(g[i], g[i]));
  for (int i = 0; i < m; ++i) {
    rhs[i] = inner(g[i], grad);
    for (int j = 0; j < m; ++j) a(i, j) = inner(g[i], g[j]);
  }
  const Eigen::VectorXd mu = small_solve(a, rhs);
  Eigen::MatrixXd normalized(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) normalized(i, j) = a(i, j) / (norms[i] * norms[j]);
  }
  rep.gram_determinant = normalized.determinant();
  for (int i = 0; i < m; ++i) {
    rep.multipliers.push_back(mu[i]);
    rep.relative.push_back(std::abs(mu[i]) * norms[i] / std::max(term_scale, 1e-300));
  }
  return rep;
}

MinimizeResult minimize(FunctionalKind kind, const PeriodicFunction& u0,
                        const MinimizeOptions& opts) {
  if (u0.min() <= kPositivityFloor) {
    throw PositivityViolation("minimize: start has minimum " + std::to_string(u0.min()));
  }
  const bool scale_free = kind != FunctionalKind::TOTAL_Q && opts.normalize;
  auto normalized = [&](PeriodicFunction u) {
    if (scale_free) u *= 1.0 / mean(u);
    return u;
  };

  MinimizeResult res{normalized(project_to_constraints(kind, normalized(u0),
                                                       opts.constraint_tol)),
                     0.0, {}, 0, false, {}, 0};
  PeriodicFunction& u = res.minimizer;
  res.value = evaluate(kind, u);
  double t = 1.0;
  int stagnant = 0;

  for (int it = 0;; ++it) {
    const auto pg = projected_gradient(kind, u);
    const double gnorm = pg.sup_norm();
    res.iterations = it;
    res.constraint_residuals = constraint_residuals(kind, u);
    res.history.push_back({it, res.value, gnorm, res.constraint_residuals});
    if (gnorm < opts.gradient_tol * std::max(1.0, std::abs(res.value)) ||
        stagnant >= opts.stagnation_window) {
      res.converged = true;
      return res;
    }
    if (it >= opts.max_iterations) {
      throw ConvergenceFailure("minimize: iteration cap " +
                               std::to_string(opts.max_iterations) + " reached");
    }

    // Preconditioned direction tangent to the constraint set.
    const auto grad = gradient(kind, u);
    PeriodicFunction d = -precondition(kind, grad);
    const auto g = constraint_gradients(kind, u);
    if (!g.empty()) {
      const int m = static_cast<int>(g.size());
      std::vector<PeriodicFunction> mg;
      for (const auto& gi : g) mg.push_back(precondition(kind, gi));
      Eigen::MatrixXd a(m, m);
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i) {
        rhs[i] = inner(g[i], d);
        for (int j = 0; j < m; ++j) a(i, j) = inner(g[i], mg[j]);
      }
      const Eigen::VectorXd c = small_solve(a, rhs);
      for (int j = 0; j < m; ++j) d -= c[j] * mg[j];
    }
    const double slope = inner(grad, d);
    if (!(slope < 0.0)) {
      // Round-off level: no descent direction left.
      return res;
    }
    // Step scale: the preconditioner ignores the B^p factor of the functional.
    if (it == 0) t = 1.0 / std::max(d.sup_norm() / u.sup_norm(), 1.0) * 0.1;

    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
      PeriodicFunction trial =
          opts.log_descent ? u * (t * d * u.map([](double x) { return 1.0 / x; }))
                                     .map([](double x) { return std::exp(x); })
                           : u + t * d;
      if (trial.min() <= std::max(kPositivityFloor, 0.05 * u.min())) {
        ++res.positivity_events;
        continue;
      }
      try {
        trial = normalized(project_to_constraints(kind, trial, opts.constraint_tol));
      } catch (const ConvergenceFailure&) {
        continue;
      }
      const double v = evaluate(kind, trial);
      if (v <= res.value + 1e-4 * t * slope) {
        const double eps = std::numeric_limits<double>::epsilon();
        stagnant = res.value - v <= 16.0 * eps * std::abs(res.value) ? stagnant + 1 : 0;
        u = std::move(trial);
        res.value = v;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Armijo cannot resolve a decrease above round-off.
      return res;
    }
    t *= 2.0;
  }
}

}  // namespace circleflow
