#include "circleflow/transforms.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "circleflow/errors.hpp"

namespace circleflow {
namespace {

// theta plus the signed angle from (cos x, sin x) to (cos x, sin x / lambda^2);
// equals arctan(lambda^-2 tan x) on the principal branch and is continuous.
double unwrapped_arctan(double lambda, double x) {
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double l2 = 1.0 / (lambda * lambda);
  return x + std::atan2(s * c * (l2 - 1.0), c * c + l2 * s * s);
}

void require_positive(const PeriodicFunction& u, const char* what) {
  if (u.min() <= kPositivityFloor) {
    throw PositivityViolation(std::string(what) + ": input has minimum " +
                              std::to_string(u.min()));
  }
}

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

}  // namespace

MobiusParams MobiusParams::make(double lambda, double alpha) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("Mobius dilation lambda must be positive");
  }
  return {lambda, wrap_angle(alpha)};
}

double stereographic(double theta) {
  if (!(std::abs(theta) < kPi)) {
    throw InvalidArgument("stereographic projection is undefined at the pole");
  }
  return std::tan(0.5 * theta);
}

double inverse_stereographic(double y) { return 2.0 * std::atan(y); }

double psi_weight(double lambda, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return std::sqrt(lambda * lambda * c * c + s * s / (lambda * lambda));
}

double Psi_weight(const MobiusParams& p, double theta) {
  const double h = 0.5 * (theta - p.alpha);
  const double c = std::cos(h), s = std::sin(h);
  const double base = p.lambda * p.lambda * c * c + s * s / (p.lambda * p.lambda);
  return base * std::sqrt(base);
}

double Gamma_weight(double lambda, double theta) {
  const double w = psi_weight(lambda, theta);
  return w * w * w;
}

double CircleMap::operator()(double theta) const {
  if (kind == Kind::SigmaLambda) return unwrapped_arctan(params.lambda, theta);
  const double h = 0.5 * (theta - params.alpha);
  return params.alpha + 2.0 * unwrapped_arctan(params.lambda, h);
}

double CircleMap::derivative(double theta) const {
  if (kind == Kind::SigmaLambda) {
    const double w = psi_weight(params.lambda, theta);
    return 1.0 / (w * w);
  }
  return std::pow(Psi_weight(params, theta), -2.0 / 3.0);
}

CircleMap sigma_map(double lambda) {
  return {CircleMap::Kind::SigmaLambda, MobiusParams::make(lambda, 0.0)};
}

CircleMap omega_map(const MobiusParams& p) {
  return {CircleMap::Kind::OmegaLambdaAlpha, MobiusParams::make(p.lambda, p.alpha)};
}

PeriodicFunction T_lambda(const PeriodicFunction& u, double lambda) {
  require_positive(u, "T_lambda");
  const auto map = sigma_map(lambda);
  const int n = u.size();
  return compose(u, map) *
         PeriodicFunction::sample(n, [lambda](double t) { return psi_weight(lambda, t); });
}

PeriodicFunction script_T(const PeriodicFunction& u, const MobiusParams& p) {
  require_positive(u, "script_T");
  const auto map = omega_map(p);
  return compose(u, map) *
         PeriodicFunction::sample(u.size(), [&](double t) { return Psi_weight(map.params, t); });
}

PeriodicFunction bold_T(const PeriodicFunction& u, double lambda) {
  require_positive(u, "bold_T");
  const auto map = sigma_map(lambda);
  return compose(u, map) *
         PeriodicFunction::sample(u.size(), [lambda](double t) { return Gamma_weight(lambda, t); });
}

std::array<double, 2> first_moments(const PeriodicFunction& u) {
  const int n = u.size();
  double c = 0.0, s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = u.theta(j);
    c += u[j] * std::cos(t);
    s += u[j] * std::sin(t);
  }
  return {c * kTwoPi / n, s * kTwoPi / n};
}

namespace {

// Cartesian chart (p, q) = log(lambda) (cos alpha, sin alpha) on the
// transform group; smooth through the identity lambda = 1.
MobiusParams chart_params(double p, double q) {
  const double r = std::hypot(p, q);
  return MobiusParams::make(std::exp(r), r > 0.0 ? std::atan2(q, p) : 0.0);
}

struct MomentEval {
  std::array<double, 2> raw;     // 2pi-normalized moments
  std::array<double, 2> scaled;  // raw / lambda^3, bounded as lambda grows
};

MomentEval centered_moments(const PeriodicFunction& u, double p, double q) {
  const auto params = chart_params(p, q);
  const auto m = first_moments(script_T(u, params));
  const double l3 = std::pow(params.lambda, 3.0);
  MomentEval e;
  e.raw = {m[0] / kTwoPi, m[1] / kTwoPi};
  e.scaled = {e.raw[0] / l3, e.raw[1] / l3};
  return e;
}

double norm_inf(const std::array<double, 2>& v) {
  return std::max(std::abs(v[0]), std::abs(v[1]));
}

}  // namespace

Centering center(const PeriodicFunction& u, double tolerance) {
  require_positive(u, "center");
  const auto at_identity = centered_moments(u, 0.0, 0.0);
  if (norm_inf(at_identity.raw) < tolerance) {
    return {MobiusParams::make(1.0, 0.0), u, norm_inf(at_identity.raw), 0};
  }

  struct Seed {
    double p, q, merit;
  };
  std::vector<Seed> seeds;
  const double log_max = std::log(50.0);
  for (int i = 0; i < 8; ++i) {
    const double r = log_max * i / 7.0;
    for (int k = 0; k < 16; ++k) {
      const double a = kTwoPi * k / 16.0;
      const double p = r * std::cos(a), q = r * std::sin(a);
      seeds.push_back({p, q, norm_inf(centered_moments(u, p, q).scaled)});
      if (i == 0) break;  // r = 0 is a single point
    }
  }
  std::sort(seeds.begin(), seeds.end(),
            [](const Seed& a, const Seed& b) { return a.merit < b.merit; });

  constexpr int kMaxIterations = 200;
  const double kMaxLogLambda = std::log(1e4);
  int total_iterations = 0;
  for (const auto& seed : seeds) {
    double p = seed.p, q = seed.q;
    auto cur = centered_moments(u, p, q);
    for (int it = 0; it < kMaxIterations; ++it) {
      ++total_iterations;
      if (norm_inf(cur.raw) < tolerance) {
        const auto params = chart_params(p, q);
        return {params, script_T(u, params), norm_inf(cur.raw), total_iterations};
      }
      const double h = 1e-6 * std::max(1.0, std::hypot(p, q));
      const auto fp = centered_moments(u, p + h, q).scaled;
      const auto fm = centered_moments(u, p - h, q).scaled;
      const auto gp = centered_moments(u, p, q + h).scaled;
      const auto gm = centered_moments(u, p, q - h).scaled;
      const double j00 = (fp[0] - fm[0]) / (2 * h), j10 = (fp[1] - fm[1]) / (2 * h);
      const double j01 = (gp[0] - gm[0]) / (2 * h), j11 = (gp[1] - gm[1]) / (2 * h);
      const double det = j00 * j11 - j01 * j10;
      if (std::abs(det) < 1e-300) break;
      const double dp = -(j11 * cur.scaled[0] - j01 * cur.scaled[1]) / det;
      const double dq = -(-j10 * cur.scaled[0] + j00 * cur.scaled[1]) / det;
      double step = 1.0;
      bool accepted = false;
      for (int b = 0; b < 40; ++b, step *= 0.5) {
        if (std::hypot(p + step * dp, q + step * dq) > kMaxLogLambda) continue;
        const auto trial = centered_moments(u, p + step * dp, q + step * dq);
        if (norm_inf(trial.scaled) < norm_inf(cur.scaled)) {
          p += step * dp;
          q += step * dq;
          cur = trial;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
  }
  throw ConvergenceFailure("center: no (lambda, alpha) zeroes the first moments after " +
                           std::to_string(total_iterations) + " iterations");
}

double antipodal_level(const PeriodicFunction& f) {
  const int n = f.size();
  const int half = n / 2;
  const double scale = std::max(1.0, f.sup_norm());
  auto g_node = [&](int j) { return f[(j + half) % n] - f[j]; };
  if (std::abs(g_node(0)) < 1e-12 * scale) return 0.0;

  SeriesEvaluator eval(f);
  auto g = [&](double t) { return eval(t + kPi) - eval(t); };
  // g(0) and g(pi) = -g(0) have opposite signs, so a node bracket exists.
  int j = 0;
  while (j < half && g_node(j) * g_node(j + 1) > 0.0) ++j;
  if (std::abs(g_node(j + 1)) < 1e-12 * scale) return f.theta(j + 1);
  double lo = f.theta(j), hi = PeriodicFunction::node(n, j + 1);
  double glo = g(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace circleflow
