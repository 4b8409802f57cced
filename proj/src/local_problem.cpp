#include <Eigen/Sparse>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "circleflow/errors.hpp"
#include "circleflow/optimize.hpp"

namespace circleflow {

void LocalProblem::validate() const {
  for (double x : {a, b, r}) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw InvalidArgument("local problem needs positive finite a, b, r");
    }
  }
}

std::string_view to_string(LocalCase c) {
  switch (c) {
    case LocalCase::TauPos: return "TAU_POS";
    case LocalCase::TauNeg: return "TAU_NEG";
    case LocalCase::Flat: return "FLAT";
  }
  return "?";
}

double LocalSolution::minimizer(double y) const {
  switch (kind) {
    case LocalCase::Flat: return b;
    case LocalCase::TauPos:
      return std::sqrt(std::sqrt(tau) * (lambda * lambda + y * y) / lambda);
    case LocalCase::TauNeg:
      return std::sqrt(std::sqrt(-tau) * (lambda * lambda - y * y) / lambda);
  }
  return b;
}

namespace {

double find_root(const std::function<double(double)>& f, double lo, double hi) {
  std::uintmax_t iters = 300;
  const auto bracket = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  const double beta = 0.5 * (bracket.first + bracket.second);
  if (iters >= 300 || !(bracket.second - bracket.first <= 1e-12 * std::max(1.0, beta))) {
    throw ConvergenceFailure("solve_local: beta bracket did not close");
  }
  return beta;
}

}  // namespace

LocalSolution solve_local(const LocalProblem& p) {
  p.validate();
  const double target = p.a * p.b * p.b;
  const double flat = 2.0 * p.r;
  LocalSolution s;
  s.b = p.b;
  if (std::abs(target - flat) <= 1e-12 * flat) {
    s.kind = LocalCase::Flat;
    return s;
  }
  if (target > flat) {
    s.kind = LocalCase::TauPos;
    auto f = [&](double beta) { return 4.0 * p.r * beta / std::sin(2.0 * beta) - target; };
    const double lo = 1e-12, hi = 0.5 * kPi - 1e-12;
    if (f(lo) * f(hi) > 0.0) throw ConvergenceFailure("solve_local: no root in bracket");
    s.beta = find_root(f, lo, hi);
    s.lambda = p.r / std::tan(s.beta);
    const double sqrt_tau = 2.0 * s.beta / p.a;
    s.tau = sqrt_tau * sqrt_tau;
    s.infimum = 2.0 * sqrt_tau * (p.r / s.lambda - s.beta);
  } else {
    s.kind = LocalCase::TauNeg;
    auto f = [&](double beta) { return 4.0 * p.r * beta / std::sinh(2.0 * beta) - target; };
    const double lo = 1e-12;
    double hi = 1.0;
    while (f(hi) > 0.0 && hi < 350.0) hi *= 2.0;
    if (f(lo) * f(hi) > 0.0) throw ConvergenceFailure("solve_local: no root in bracket");
    s.beta = find_root(f, lo, hi);
    s.lambda = p.r / std::tanh(s.beta);
    const double sqrt_tau = 2.0 * s.beta / p.a;
    s.tau = -sqrt_tau * sqrt_tau;
    s.infimum = 2.0 * sqrt_tau * (s.beta - p.r / s.lambda);
  }
  return s;
}

double local_oracle(const LocalProblem& p, int m) {
  p.validate();
  if (m < 64) throw InvalidArgument("local_oracle needs at least 64 nodes");
  const double h = 2.0 * p.r / (m + 1);
  const double boundary_mass = h / (p.b * p.b);  // two half-weight end nodes
  if (!(p.a > boundary_mass)) {
    throw InvalidArgument("local_oracle: mass a below the boundary contribution");
  }
  auto neighbours = [&](const Eigen::VectorXd& x, int i) {
    const double left = i == 0 ? p.b : x[i - 1];
    const double right = i == m - 1 ? p.b : x[i + 1];
    return std::pair{left, right};
  };
  auto energy = [&](const Eigen::VectorXd& x) {
    double e = 0.0, prev = p.b;
    for (int i = 0; i < m; ++i) {
      e += (x[i] - prev) * (x[i] - prev);
      prev = x[i];
    }
    e += (p.b - prev) * (p.b - prev);
    return e / h;
  };
  auto mass = [&](const Eigen::VectorXd& x) {
    return boundary_mass + h * x.array().pow(-2.0).sum();
  };

  // Newton on the KKT system of E - mu (mass - target); true on convergence.
  auto newton = [&](Eigen::VectorXd& w, double& mu, double target) {
    for (int it = 0; it < 40; ++it) {
      Eigen::VectorXd f(m + 1);
      std::vector<Eigen::Triplet<double>> trips;
      trips.reserve(static_cast<std::size_t>(5 * m));
      for (int i = 0; i < m; ++i) {
        const auto [l, rgt] = neighbours(w, i);
        const double dc = -2.0 * h * std::pow(w[i], -3.0);
        f[i] = (2.0 / h) * (2.0 * w[i] - l - rgt) - mu * dc;
        trips.emplace_back(i, i, 4.0 / h - mu * 6.0 * h * std::pow(w[i], -4.0));
        if (i > 0) trips.emplace_back(i, i - 1, -2.0 / h);
        if (i < m - 1) trips.emplace_back(i, i + 1, -2.0 / h);
        trips.emplace_back(i, m, -dc);
        trips.emplace_back(m, i, dc);
      }
      f[m] = mass(w) - target;
      Eigen::SparseMatrix<double> kkt(m + 1, m + 1);
      kkt.setFromTriplets(trips.begin(), trips.end());
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(kkt);
      if (lu.info() != Eigen::Success) return false;
      const Eigen::VectorXd delta = lu.solve(-f);
      if (!delta.allFinite()) return false;
      const Eigen::VectorXd dw = delta.head(m);
      if ((w + dw).minCoeff() <= 0.5 * w.minCoeff()) return false;
      w += dw;
      mu += delta[m];
      if (dw.lpNorm<Eigen::Infinity>() < 1e-12 * w.maxCoeff()) return true;
    }
    return false;
  };

  // Continuation in the mass from the flat problem, whose discrete solution
  // is w = b with mu = 0.
  const double flat_mass = 2.0 * p.r / (p.b * p.b);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, p.b);
  double mu = 0.0;
  double s = 0.0, ds = 0.125;
  int attempts = 0;
  while (s < 1.0) {
    if (++attempts > 400 || ds < 1e-6) break;
    const double next = std::min(1.0, s + ds);
    Eigen::VectorXd wt = w;
    double mut = mu;
    if (newton(wt, mut, flat_mass + next * (p.a - flat_mass))) {
      w = std::move(wt);
      mu = mut;
      s = next;
      ds *= 1.5;
    } else {
      ds *= 0.5;
    }
  }
  if (s >= 1.0 && std::abs(mass(w) - p.a) < 1e-10 * p.a) return energy(w);
  throw ConvergenceFailure("local_oracle: Newton iteration cap reached");
}

}  // namespace circleflow
