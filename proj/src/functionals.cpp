#include "circleflow/functionals.hpp"

#include <cmath>
#include <string>

#include "circleflow/errors.hpp"

namespace circleflow {
namespace {

void require_positive(const PeriodicFunction& u) {
  if (u.min() <= kPositivityFloor) {
    throw PositivityViolation("functional argument has minimum " +
                              std::to_string(u.min()));
  }
}

// Nodal power; integrals below are trapezoid sums of smooth integrands.
PeriodicFunction npow(const PeriodicFunction& u, double p) {
  return u.map([p](double x) { return std::pow(x, p); });
}

}  // namespace

std::string_view to_string(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::J_BS: return "J_BS";
    case FunctionalKind::Y_YAMABE: return "Y_YAMABE";
    case FunctionalKind::F_SYMQ: return "F_SYMQ";
    case FunctionalKind::F_Q: return "F_Q";
    case FunctionalKind::TOTAL_Q: return "TOTAL_Q";
  }
  return "?";
}

FunctionalKind functional_kind_from_string(std::string_view s) {
  for (auto k : {FunctionalKind::J_BS, FunctionalKind::Y_YAMABE,
                 FunctionalKind::F_SYMQ, FunctionalKind::F_Q,
                 FunctionalKind::TOTAL_Q}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidArgument("unknown functional kind '" + std::string(s) + "'");
}

FunctionalShape shape_of(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::J_BS: return {0.0, 1.0, -1.0, 2.0, 1.0};
    case FunctionalKind::Y_YAMABE: return {0.0, 1.0, -0.25, 2.0, 1.0};
    case FunctionalKind::F_SYMQ: return {1.0, -10.0, 9.0, 2.0 / 3.0, 3.0};
    case FunctionalKind::F_Q: return {1.0, -2.5, 9.0 / 16.0, 2.0 / 3.0, 3.0};
    case FunctionalKind::TOTAL_Q: return {16.0 / 9.0, -40.0 / 9.0, 1.0, 0.0, 0.0};
  }
  return {};
}

double reference_constant(FunctionalKind k) {
  const double pi2 = kPi * kPi;
  switch (k) {
    case FunctionalKind::J_BS: return -4.0 * pi2;
    case FunctionalKind::Y_YAMABE: return -pi2;
    case FunctionalKind::F_SYMQ: return 144.0 * pi2 * pi2;
    case FunctionalKind::F_Q: return 9.0 * pi2 * pi2;
    case FunctionalKind::TOTAL_Q: return kTwoPi;
  }
  return 0.0;
}

std::vector<MomentConstraint> constraint_set(FunctionalKind k) {
  auto c = [](int m) { return [m](double t) { return std::cos(m * t); }; };
  auto s = [](int m) { return [m](double t) { return std::sin(m * t); }; };
  switch (k) {
    case FunctionalKind::J_BS:
      return {{c(1), -3.0}, {s(1), -3.0}};
    case FunctionalKind::F_SYMQ:
      return {{c(3), -5.0 / 3.0}, {s(3), -5.0 / 3.0},
              {c(1), -5.0 / 3.0}, {s(1), -5.0 / 3.0}};
    default:
      return {};
  }
}

double quadratic_part(FunctionalKind k, const PeriodicFunction& u) {
  const auto sh = shape_of(k);
  PeriodicFunction integrand = sh.c0 * (u * u);
  if (sh.c1 != 0.0) {
    const auto d1 = differentiate(u, 1);
    integrand += sh.c1 * (d1 * d1);
  }
  if (sh.c2 != 0.0) {
    const auto d2 = differentiate(u, 2);
    integrand += sh.c2 * (d2 * d2);
  }
  return integrate(integrand);
}

double evaluate(FunctionalKind k, const PeriodicFunction& u) {
  require_positive(u);
  const auto sh = shape_of(k);
  const double a = quadratic_part(k, u);
  if (sh.power == 0.0) return a;
  return a * std::pow(integrate(npow(u, -sh.q)), sh.power);
}

PeriodicFunction gradient(FunctionalKind k, const PeriodicFunction& u) {
  require_positive(u);
  const auto sh = shape_of(k);
  // first variation of the quadratic part: 2 (c2 u'''' - c1 u'' + c0 u)
  PeriodicFunction da = 2.0 * sh.c0 * u;
  if (sh.c1 != 0.0) da += (-2.0 * sh.c1) * differentiate(u, 2);
  if (sh.c2 != 0.0) da += (2.0 * sh.c2) * differentiate(u, 4);
  if (sh.power == 0.0) return da;
  const double a = quadratic_part(k, u);
  const double b = integrate(npow(u, -sh.q));
  const auto db = (-sh.q) * npow(u, -sh.q - 1.0);
  return std::pow(b, sh.power) * da +
         (a * sh.power * std::pow(b, sh.power - 1.0)) * db;
}

std::vector<double> constraint_residuals(FunctionalKind k, const PeriodicFunction& u) {
  require_positive(u);
  std::vector<double> out;
  for (const auto& c : constraint_set(k)) {
    const auto w = PeriodicFunction::sample(u.size(), c.weight);
    out.push_back(integrate(w * npow(u, c.exponent)));
  }
  return out;
}

std::vector<PeriodicFunction> constraint_gradients(FunctionalKind k,
                                                   const PeriodicFunction& u) {
  require_positive(u);
  std::vector<PeriodicFunction> out;
  for (const auto& c : constraint_set(k)) {
    const auto w = PeriodicFunction::sample(u.size(), c.weight);
    out.push_back(c.exponent * (w * npow(u, c.exponent - 1.0)));
  }
  return out;
}

FourierBound fourier_lower_bound(const PeriodicFunction& u) {
  const auto c = to_coeffs(u);
  if (std::abs(c.a[0]) >= 1e-9 || std::abs(c.b[0]) >= 1e-9) {
    throw InvalidArgument("fourier_lower_bound needs vanishing first harmonics");
  }
  FourierBound r;
  r.lhs = 9.0 * kPi / 8.0 * c.c0 * c.c0;
  r.rhs = r.lhs;
  for (int k = 2; k <= c.max_mode(); ++k) {
    const double e = c.a[k - 1] * c.a[k - 1] + c.b[k - 1] * c.b[k - 1];
    const double k2 = static_cast<double>(k) * k;
    r.lhs += kPi * (k2 * k2 - 2.5 * k2 + 9.0 / 16.0) * e;
    r.rhs += kPi / 4.0 * k2 * k2 * e;
  }
  return r;
}

}  // namespace circleflow
