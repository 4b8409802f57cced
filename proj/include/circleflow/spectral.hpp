#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace circleflow {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Nodal minima at or below this value are treated as non-positive before
/// negative or fractional powers are taken.
inline constexpr double kPositivityFloor = 1e-10;

inline constexpr int kDefaultGridSize = 256;

/// Real Fourier series c0 + sum_k (a_k cos k theta + b_k sin k theta) +
/// nyquist * cos(N theta / 2); a[k-1] and b[k-1] hold mode k = 1..N/2-1.
struct FourierCoeffs {
  double c0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  double nyquist = 0.0;

  int grid_size() const { return 2 * (static_cast<int>(a.size()) + 1); }
  int max_mode() const { return static_cast<int>(a.size()); }
};

/// A smooth 2pi-periodic function stored by its values at theta_j = 2 pi j / N.
class PeriodicFunction {
 public:
  explicit PeriodicFunction(std::vector<double> values);

  static PeriodicFunction constant(int n, double value);

  template <class F>
  static PeriodicFunction sample(int n, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) v[j] = f(node(n, j));
    return PeriodicFunction(std::move(v));
  }

  static double node(int n, int j) { return kTwoPi * j / n; }

  int size() const { return static_cast<int>(values_.size()); }
  double theta(int j) const { return node(size(), j); }
  std::span<const double> values() const { return values_; }
  double operator[](int j) const { return values_[j]; }

  double min() const;
  double max() const;
  double sup_norm() const;

  /// Evaluates the trigonometric interpolant at an arbitrary angle.
  double operator()(double theta) const;

  PeriodicFunction& operator+=(const PeriodicFunction& o);
  PeriodicFunction& operator-=(const PeriodicFunction& o);
  PeriodicFunction& operator*=(const PeriodicFunction& o);
  PeriodicFunction& operator+=(double c);
  PeriodicFunction& operator*=(double c);

  template <class F>
  PeriodicFunction map(F&& f) const {
    std::vector<double> v(values_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(values_[j]);
    return PeriodicFunction(std::move(v));
  }

 private:
  std::vector<double> values_;
};

PeriodicFunction operator+(PeriodicFunction a, const PeriodicFunction& b);
PeriodicFunction operator-(PeriodicFunction a, const PeriodicFunction& b);
PeriodicFunction operator*(PeriodicFunction a, const PeriodicFunction& b);
PeriodicFunction operator+(PeriodicFunction a, double c);
PeriodicFunction operator*(PeriodicFunction a, double c);
PeriodicFunction operator*(double c, PeriodicFunction a);
PeriodicFunction operator-(PeriodicFunction a);

/// Throws InvalidArgument unless n is even and at least 16.
void require_grid_size(int n);

FourierCoeffs to_coeffs(const PeriodicFunction& f);
PeriodicFunction from_coeffs(const FourierCoeffs& c);

/// Spectral derivative of order 1..4. The Nyquist mode is dropped for every
/// order so that repeated first derivatives equal the higher-order ones.
PeriodicFunction differentiate(const PeriodicFunction& f, int order);

/// Trapezoid rule (2 pi / N) sum f_j.
double integrate(const PeriodicFunction& f);

/// Zero-padded or truncated spectral resampling onto an m-point grid.
PeriodicFunction resample(const PeriodicFunction& f, int m);

/// Evaluates f at omega(theta_j) for a degree-one, nondecreasing circle map.
PeriodicFunction compose(const PeriodicFunction& f,
                         const std::function<double(double)>& reparam);

/// Pointwise power evaluated on the 3/2-oversampled grid.
PeriodicFunction pow(const PeriodicFunction& f, double p);

/// sup_j |a_j - b_j|
double sup_distance(const PeriodicFunction& a, const PeriodicFunction& b);

/// Off-grid evaluation of a Fourier series by direct summation.
class SeriesEvaluator {
 public:
  explicit SeriesEvaluator(const PeriodicFunction& f);
  explicit SeriesEvaluator(FourierCoeffs coeffs);

  double operator()(double theta) const { return eval(theta, 0); }
  /// Value of the derivative of the given order (0..4) at theta.
  double eval(double theta, int order) const;
  const FourierCoeffs& coeffs() const { return coeffs_; }

 private:
  FourierCoeffs coeffs_;
};

/// Nonlinear pointwise expression of several functions on one grid, evaluated
/// on the 3/2-oversampled grid and truncated back to the input size.
PeriodicFunction dealiased(
    std::span<const PeriodicFunction* const> inputs,
    const std::function<double(std::span<const double>)>& expr);

template <class Fn, class... Rest>
PeriodicFunction dealiased(Fn&& fn, const PeriodicFunction& first,
                           const Rest&... rest) {
  const PeriodicFunction* ptrs[] = {&first, &rest...};
  return dealiased(std::span<const PeriodicFunction* const>(ptrs),
                   [&fn](std::span<const double> x) {
                     return [&]<std::size_t... I>(std::index_sequence<I...>) {
                       return fn(x[I]...);
                     }(std::make_index_sequence<1 + sizeof...(Rest)>{});
                   });
}

/// Even grid size of the dealiasing grid for an n-point function.
int oversampled_size(int n);

}  // namespace circleflow
