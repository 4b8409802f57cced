#include "circleflow/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "circleflow/errors.hpp"

namespace circleflow {
namespace {

using cplx = std::complex<double>;

// FFTW plans are created once per size under a lock; execution through the
// new-array interface is thread safe.
struct Plans {
  fftw_plan forward;
  fftw_plan backward;
};

const Plans& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> real(static_cast<std::size_t>(n));
  std::vector<cplx> spec(static_cast<std::size_t>(n / 2 + 1));
  auto* out = reinterpret_cast<fftw_complex*>(spec.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  Plans p{fftw_plan_dft_r2c_1d(n, real.data(), out, flags),
          fftw_plan_dft_c2r_1d(n, out, real.data(), flags)};
  return cache.emplace(n, p).first->second;
}

// Unnormalized r2c transform: X_k = sum_j f_j exp(-i k theta_j).
std::vector<cplx> forward(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  std::vector<double> in(values.begin(), values.end());
  std::vector<cplx> out(static_cast<std::size_t>(n / 2 + 1));
  fftw_execute_dft_r2c(plans_for(n).forward, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

// Inverse of forward(), including the 1/N normalization.
std::vector<double> backward(std::vector<cplx> spec, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  fftw_execute_dft_c2r(plans_for(n).backward,
                       reinterpret_cast<fftw_complex*>(spec.data()),
                       out.data());
  for (double& x : out) x /= n;
  return out;
}

// Copies the spectrum of an n-point grid onto an m-point grid, keeping the
// represented trigonometric polynomial (modes above the target band dropped).
std::vector<cplx> rescale_spectrum(const std::vector<cplx>& spec, int n,
                                   int m) {
  std::vector<cplx> out(static_cast<std::size_t>(m / 2 + 1), cplx(0.0, 0.0));
  const double scale = static_cast<double>(m) / n;
  const int keep = std::min(n / 2, m / 2);
  for (int k = 0; k < keep; ++k) out[k] = spec[k] * scale;
  if (m > n) {
    // n-grid Nyquist term X cos(n theta/2)/n splits evenly onto +-n/2.
    out[n / 2] = spec[n / 2] * (scale / 2.0);
  }
  return out;
}

}  // namespace

void require_grid_size(int n) {
  if (n < 16 || n % 2 != 0) {
    throw InvalidArgument("grid size must be even and >= 16, got " +
                          std::to_string(n));
  }
}

int oversampled_size(int n) {
  int m = 3 * n / 2;
  return m % 2 == 0 ? m : m + 1;
}

PeriodicFunction::PeriodicFunction(std::vector<double> values)
    : values_(std::move(values)) {
  require_grid_size(size());
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite nodal value");
  }
}

PeriodicFunction PeriodicFunction::constant(int n, double value) {
  return PeriodicFunction(std::vector<double>(static_cast<std::size_t>(n), value));
}

double PeriodicFunction::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double PeriodicFunction::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double PeriodicFunction::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

double PeriodicFunction::operator()(double theta) const {
  return SeriesEvaluator(*this)(theta);
}

namespace {
void require_same_grid(const PeriodicFunction& a, const PeriodicFunction& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("grid size mismatch: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
}
}  // namespace

PeriodicFunction& PeriodicFunction::operator+=(const PeriodicFunction& o) {
  require_same_grid(*this, o);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
  return *this;
}

PeriodicFunction& PeriodicFunction::operator-=(const PeriodicFunction& o) {
  require_same_grid(*this, o);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
  return *this;
}

PeriodicFunction& PeriodicFunction::operator*=(const PeriodicFunction& o) {
  require_same_grid(*this, o);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] *= o.values_[j];
  return *this;
}

PeriodicFunction& PeriodicFunction::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}

PeriodicFunction& PeriodicFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

PeriodicFunction operator+(PeriodicFunction a, const PeriodicFunction& b) { return a += b; }
PeriodicFunction operator-(PeriodicFunction a, const PeriodicFunction& b) { return a -= b; }
PeriodicFunction operator*(PeriodicFunction a, const PeriodicFunction& b) { return a *= b; }
PeriodicFunction operator+(PeriodicFunction a, double c) { return a += c; }
PeriodicFunction operator*(PeriodicFunction a, double c) { return a *= c; }
PeriodicFunction operator*(double c, PeriodicFunction a) { return a *= c; }
PeriodicFunction operator-(PeriodicFunction a) { return a *= -1.0; }

FourierCoeffs to_coeffs(const PeriodicFunction& f) {
  const int n = f.size();
  const auto spec = forward(f.values());
  FourierCoeffs c;
  c.c0 = spec[0].real() / n;
  const int kmax = n / 2 - 1;
  c.a.resize(kmax);
  c.b.resize(kmax);
  for (int k = 1; k <= kmax; ++k) {
    c.a[k - 1] = 2.0 * spec[k].real() / n;
    c.b[k - 1] = -2.0 * spec[k].imag() / n;
  }
  c.nyquist = spec[n / 2].real() / n;
  return c;
}

PeriodicFunction from_coeffs(const FourierCoeffs& c) {
  const int n = c.grid_size();
  require_grid_size(n);
  if (c.b.size() != c.a.size()) {
    throw InvalidArgument("cosine and sine coefficient counts differ");
  }
  std::vector<cplx> spec(static_cast<std::size_t>(n / 2 + 1));
  spec[0] = c.c0 * n;
  for (int k = 1; k < n / 2; ++k) {
    spec[k] = cplx(c.a[k - 1], -c.b[k - 1]) * (n / 2.0);
  }
  spec[n / 2] = c.nyquist * n;
  return PeriodicFunction(backward(std::move(spec), n));
}

PeriodicFunction differentiate(const PeriodicFunction& f, int order) {
  if (order < 1 || order > 4) {
    throw InvalidArgument("derivative order must be in 1..4, got " +
                          std::to_string(order));
  }
  const int n = f.size();
  auto spec = forward(f.values());
  // Coefficients at the transform's round-off floor carry no information;
  // dropping them keeps k^4 amplification of that noise out of the result.
  double peak = 0.0;
  for (const auto& x : spec) peak = std::max(peak, std::abs(x));
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * peak;
  for (int k = 0; k <= n / 2; ++k) {
    if (k == 0 || k == n / 2 || std::abs(spec[k]) <= floor) {
      spec[k] = 0.0;
      continue;
    }
    cplx ik(0.0, static_cast<double>(k));
    cplx factor = ik;
    for (int o = 1; o < order; ++o) factor *= ik;
    spec[k] *= factor;
  }
  return PeriodicFunction(backward(std::move(spec), n));
}

double integrate(const PeriodicFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * kTwoPi / f.size();
}

PeriodicFunction resample(const PeriodicFunction& f, int m) {
  require_grid_size(m);
  const int n = f.size();
  if (m == n) return f;
  return PeriodicFunction(backward(rescale_spectrum(forward(f.values()), n, m), m));
}

PeriodicFunction compose(const PeriodicFunction& f,
                         const std::function<double(double)>& reparam) {
  const int n = f.size();
  std::vector<double> omega(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) omega[j] = reparam(PeriodicFunction::node(n, j));
  for (int j = 0; j < n; ++j) {
    if (omega[j + 1] - omega[j] < -1e-10) {
      throw InvalidArgument("reparametrization is not monotone near theta = " +
                            std::to_string(PeriodicFunction::node(n, j)));
    }
  }
  if (std::abs(omega[n] - omega[0] - kTwoPi) > 1e-8) {
    throw InvalidArgument("reparametrization is not a degree-one circle map");
  }
  SeriesEvaluator eval(f);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[j] = eval(omega[j]);
  return PeriodicFunction(std::move(out));
}

PeriodicFunction pow(const PeriodicFunction& f, double p) {
  const bool needs_positive = p < 0.0 || p != std::floor(p);
  if (needs_positive && f.min() <= kPositivityFloor) {
    throw PositivityViolation("power " + std::to_string(p) +
                              " of a function with minimum " +
                              std::to_string(f.min()));
  }
  const int n = f.size();
  PeriodicFunction fine = resample(f, oversampled_size(n));
  if (needs_positive && fine.min() <= kPositivityFloor) {
    throw PositivityViolation("interpolant dips below the positivity floor");
  }
  return resample(fine.map([p](double x) { return std::pow(x, p); }), n);
}

double sup_distance(const PeriodicFunction& a, const PeriodicFunction& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (int j = 0; j < a.size(); ++j) s = std::max(s, std::abs(a[j] - b[j]));
  return s;
}

SeriesEvaluator::SeriesEvaluator(const PeriodicFunction& f)
    : coeffs_(to_coeffs(f)) {}

SeriesEvaluator::SeriesEvaluator(FourierCoeffs coeffs)
    : coeffs_(std::move(coeffs)) {}

double SeriesEvaluator::eval(double theta, int order) const {
  if (order < 0 || order > 4) {
    throw InvalidArgument("derivative order must be in 0..4");
  }
  const int kmax = coeffs_.max_mode();
  double sum = order == 0 ? coeffs_.c0 : 0.0;
  const cplx step = std::polar(1.0, theta);
  cplx z = step;
  for (int k = 1; k <= kmax; ++k) {
    if (k % 64 == 0) z = std::polar(1.0, k * theta);
    // d^order/dtheta^order of (a cos + b sin) = Re[(a - i b)(ik)^order e^{ik theta}]
    cplx coef(coeffs_.a[k - 1], -coeffs_.b[k - 1]);
    cplx ik(0.0, static_cast<double>(k));
    for (int o = 0; o < order; ++o) coef *= ik;
    sum += (coef * z).real();
    z *= step;
  }
  if (order == 0) {
    sum += coeffs_.nyquist * std::cos(0.5 * coeffs_.grid_size() * theta);
  }
  return sum;
}

PeriodicFunction dealiased(
    std::span<const PeriodicFunction* const> inputs,
    const std::function<double(std::span<const double>)>& expr) {
  if (inputs.empty()) throw InvalidArgument("dealiased: no inputs");
  const int n = inputs[0]->size();
  const int m = oversampled_size(n);
  std::vector<PeriodicFunction> fine;
  fine.reserve(inputs.size());
  for (const auto* f : inputs) {
    if (f->size() != n) throw InvalidArgument("dealiased: grid size mismatch");
    fine.push_back(resample(*f, m));
  }
  std::vector<double> args(inputs.size());
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < fine.size(); ++i) args[i] = fine[i][j];
    out[j] = expr(args);
  }
  return resample(PeriodicFunction(std::move(out)), n);
}

}  // namespace circleflow
