#include "circleflow/extremals.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "circleflow/errors.hpp"

namespace circleflow {
namespace {

bool full_angle(Family f) { return f == Family::BS || f == Family::SYMQ_CONJ; }
bool cubic_power(Family f) { return f == Family::QEXT || f == Family::SYMQ_CONJ; }

void require_positive(const PeriodicFunction& u, const char* what) {
  if (u.min() <= kPositivityFloor) {
    throw PositivityViolation(std::string(what) + ": input has minimum " +
                              std::to_string(u.min()));
  }
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::BS: return "BS";
    case Family::YAM: return "YAM";
    case Family::QEXT: return "QEXT";
    case Family::SYMQ_CONJ: return "SYMQ_CONJ";
  }
  return "?";
}

Family family_from_string(std::string_view s) {
  for (auto f : {Family::BS, Family::YAM, Family::QEXT, Family::SYMQ_CONJ}) {
    if (s == to_string(f)) return f;
  }
  if (s == "SYMQ") return Family::SYMQ_CONJ;
  throw InvalidArgument("unknown extremal family '" + std::string(s) + "'");
}

FunctionalKind functional_for(Family f) {
  switch (f) {
    case Family::BS: return FunctionalKind::J_BS;
    case Family::YAM: return FunctionalKind::Y_YAMABE;
    case Family::QEXT: return FunctionalKind::F_Q;
    case Family::SYMQ_CONJ: return FunctionalKind::F_SYMQ;
  }
  return FunctionalKind::J_BS;
}

double alpha_period(Family f) { return full_angle(f) ? kPi : kTwoPi; }

double family_value(const ExtremalParams& p, double theta) {
  const double x = full_angle(p.family) ? theta - p.alpha : 0.5 * (theta - p.alpha);
  const double c = std::cos(x), s = std::sin(x);
  const double l2 = p.lambda * p.lambda;
  const double h = l2 * c * c + s * s / l2;
  return p.c * (cubic_power(p.family) ? h * std::sqrt(h) : std::sqrt(h));
}

PeriodicFunction sample(const ExtremalParams& p, int n) {
  if (!(p.c > 0.0) || !(p.lambda > 0.0)) {
    throw InvalidArgument("extremal parameters c and lambda must be positive");
  }
  return PeriodicFunction::sample(n, [&](double t) { return family_value(p, t); });
}

PeriodicFunction el_operator(const PeriodicFunction& u, Family f) {
  switch (f) {
    case Family::BS: return differentiate(u, 2) + u;
    case Family::YAM: return differentiate(u, 2) + 0.25 * u;
    case Family::QEXT:
      return differentiate(u, 4) + 2.5 * differentiate(u, 2) + (9.0 / 16.0) * u;
    case Family::SYMQ_CONJ:
      return differentiate(u, 4) + 10.0 * differentiate(u, 2) + 9.0 * u;
  }
  return u;
}

double el_exponent(Family f) { return cubic_power(f) ? -5.0 / 3.0 : -3.0; }

ElResidual fit_multiplier(const PeriodicFunction& lhs, const PeriodicFunction& rhs) {
  const double rr = integrate(rhs * rhs);
  ElResidual r;
  r.tau = rr > 0.0 ? integrate(lhs * rhs) / rr : 0.0;
  const double scale = std::max(lhs.sup_norm(), std::numeric_limits<double>::min());
  r.residual = sup_distance(lhs, r.tau * rhs) / scale;
  return r;
}

ElResidual el_residual(const PeriodicFunction& u, Family f) {
  require_positive(u, "el_residual");
  return fit_multiplier(el_operator(u, f), pow(u, el_exponent(f)));
}

const std::vector<double>& greens_kernel_coefficients() {
  static const std::vector<double> coeffs = [] {
    // |sin(x/2)|^3 is C^2 with a |x|^3 cusp, so the trapezoid error is O(h^4).
    constexpr int m = 1 << 16;
    const auto kernel = PeriodicFunction::sample(m, [](double x) {
      const double s = std::abs(std::sin(0.5 * x));
      return s * s * s;
    });
    const auto c = to_coeffs(kernel);
    std::vector<double> out(static_cast<std::size_t>(4096 + 1));
    out[0] = c.c0;
    // a_k = 2 * (1/2pi) int K cos(kx)
    for (std::size_t k = 1; k < out.size(); ++k) out[k] = 0.5 * c.a[k - 1];
    return out;
  }();
  return coeffs;
}

double greens_constant() {
  static const double c = [] {
    // k = 0: (9/16) u0 = tau g0 and u0 = c tau (2 pi K0) g0
    const double k0 = greens_kernel_coefficients()[0];
    return 1.0 / ((9.0 / 16.0) * kTwoPi * k0);
  }();
  return c;
}

double greens_residual(const PeriodicFunction& u, double tau) {
  require_positive(u, "greens_residual");
  const auto& kernel = greens_kernel_coefficients();
  auto g = to_coeffs(pow(u, -5.0 / 3.0));
  const double c = greens_constant() * tau;
  if (g.max_mode() + 1 > static_cast<int>(kernel.size())) {
    throw InvalidArgument("greens_residual: grid larger than the kernel table");
  }
  // (K * g)_k = 2 pi K_k g_k for a convolution over [0, 2pi)
  g.c0 *= c * kTwoPi * kernel[0];
  for (int k = 1; k <= g.max_mode(); ++k) {
    g.a[k - 1] *= c * kTwoPi * kernel[k];
    g.b[k - 1] *= c * kTwoPi * kernel[k];
  }
  g.nyquist = 0.0;
  return sup_distance(u, from_coeffs(g)) / u.sup_norm();
}

namespace {

ExtremalParams canonical(ExtremalParams p) {
  const double period = alpha_period(p.family);
  if (p.lambda < 1.0) {
    p.lambda = 1.0 / p.lambda;
    p.alpha += 0.5 * period;
  }
  p.alpha = std::fmod(p.alpha, period);
  if (p.alpha < 0.0) p.alpha += period;
  return p;
}

Eigen::VectorXd fit_residuals(const PeriodicFunction& u, Family f,
                              const Eigen::Vector3d& x) {
  ExtremalParams p{std::exp(x[0]), std::exp(x[1]), x[2], f};
  Eigen::VectorXd r(u.size());
  for (int j = 0; j < u.size(); ++j) r[j] = family_value(p, u.theta(j)) - u[j];
  return r;
}

}  // namespace

FamilyFit fit_family(const PeriodicFunction& u, Family f) {
  require_positive(u, "fit_family");
  const double period = alpha_period(f);

  // Seed: scan (lambda, alpha); c is linear, so take its least-squares value.
  Eigen::Vector3d best(0.0, 0.0, 0.0);
  double best_cost = std::numeric_limits<double>::infinity();
  for (double lambda : {1.0, 1.25, 1.6, 2.0, 3.0, 5.0, 8.0}) {
    for (int k = 0; k < 16; ++k) {
      const double alpha = period * k / 16.0;
      ExtremalParams p{1.0, lambda, alpha, f};
      double um = 0.0, mm = 0.0;
      for (int j = 0; j < u.size(); ++j) {
        const double m = family_value(p, u.theta(j));
        um += u[j] * m;
        mm += m * m;
      }
      const double c = um / mm;
      if (!(c > 0.0)) continue;
      Eigen::Vector3d x(std::log(c), std::log(lambda), alpha);
      const double cost = fit_residuals(u, f, x).squaredNorm();
      if (cost < best_cost) {
        best_cost = cost;
        best = x;
      }
    }
  }

  // Levenberg-Marquardt with a forward-difference Jacobian.
  Eigen::Vector3d x = best;
  Eigen::VectorXd r = fit_residuals(u, f, x);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  int it = 0;
  for (; it < 200; ++it) {
    Eigen::MatrixXd jac(u.size(), 3);
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector3d xh = x;
      const double h = 1e-7 * std::max(1.0, std::abs(x[i]));
      xh[i] += h;
      jac.col(i) = (fit_residuals(u, f, xh) - r) / h;
    }
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d jtr = jac.transpose() * r;
    if (jtr.lpNorm<Eigen::Infinity>() < 1e-15 * std::max(1.0, cost)) break;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::Matrix3d a = jtj;
      a.diagonal() += mu * jtj.diagonal().cwiseMax(1e-12);
      const Eigen::Vector3d dx = a.ldlt().solve(-jtr);
      if (!dx.allFinite()) break;
      const Eigen::Vector3d xn = x + dx;
      const Eigen::VectorXd rn = fit_residuals(u, f, xn);
      const double cn = rn.squaredNorm();
      if (cn < cost) {
        const double drop = cost - cn;
        x = xn;
        r = rn;
        cost = cn;
        mu = std::max(mu / 3.0, 1e-12);
        improved = drop > 1e-30;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  if (!x.allFinite()) {
    throw ConvergenceFailure("fit_family: least squares diverged");
  }
  FamilyFit out;
  out.params = canonical({std::exp(x[0]), std::exp(x[1]), x[2], f});
  out.sup_error = r.lpNorm<Eigen::Infinity>();
  out.iterations = it;
  return out;
}

PeriodicFunction half_angle_lift(const PeriodicFunction& v) {
  const auto c = to_coeffs(v);
  double odd = 0.0;
  for (int k = 1; k <= c.max_mode(); k += 2) {
    odd = std::max({odd, std::abs(c.a[k - 1]), std::abs(c.b[k - 1])});
  }
  if (odd > 1e-10 * std::max(1.0, v.sup_norm())) {
    throw InvalidArgument("half_angle_lift needs a pi-periodic function");
  }
  FourierCoeffs w;
  w.c0 = c.c0;
  w.a.assign(c.a.size(), 0.0);
  w.b.assign(c.b.size(), 0.0);
  for (int k = 1; 2 * k <= c.max_mode(); ++k) {
    w.a[k - 1] = c.a[2 * k - 1];
    w.b[k - 1] = c.b[2 * k - 1];
  }
  return from_coeffs(w);
}

HalfAngleReport half_angle_check(const PeriodicFunction& v) {
  require_positive(v, "half_angle_check");
  const auto w = half_angle_lift(v);
  const auto lhs = differentiate(w, 2) + 0.25 * w;
  return {fit_multiplier(lhs, pow(w, -3.0)), fit_multiplier(lhs, pow(w, -2.0))};
}

}  // namespace circleflow
