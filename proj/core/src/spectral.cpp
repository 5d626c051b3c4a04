#include "rtmix/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rtmix::spectral {

namespace {

// FFTW plans are shared read-only after creation; only the planner needs a lock.
// Plans are built with FFTW_UNALIGNED so the new-array execute calls accept any
// std::vector storage.
class PlanCache {
 public:
  struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
  };

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  Plans get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<double> real(n);
    std::vector<fftw_complex> cplx(n / 2 + 1);
    Plans p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.forward = fftw_plan_dft_r2c_1d(n, real.data(), cplx.data(), flags);
    p.backward = fftw_plan_dft_c2r_1d(n, cplx.data(), real.data(), flags);
    if (!p.forward || !p.backward) throw std::runtime_error("fftw planning failed");
    plans_.emplace(n, p);
    return p;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<int, Plans> plans_;
};

void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

// Nodes start at -pi, so the FFT phase reference differs from alpha = 0 by (-1)^k.
inline double node_phase(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
  if (n <= 0 || n % 2 != 0)
    throw std::invalid_argument("grid size must be a positive even integer, got " +
                                std::to_string(n));
}

double PeriodicGrid::spacing() const noexcept { return 2.0 * std::numbers::pi / n_; }

double PeriodicGrid::node(int j) const noexcept { return -std::numbers::pi + j * spacing(); }

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> x(n_);
  for (int j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

RealField::RealField(PeriodicGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

RealField::RealField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.size()))
    throw std::invalid_argument("field length " + std::to_string(values_.size()) +
                                " does not match grid size " + std::to_string(grid_.size()));
}

double RealField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double RealField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double RealField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double RealField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool RealField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

RealField& RealField::operator+=(const RealField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

RealField& RealField::operator-=(const RealField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

RealField& RealField::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

SpectralCoeffs::SpectralCoeffs(PeriodicGrid grid)
    : grid_(grid), half_(grid.nyquist() + 1, Complex{0.0, 0.0}) {}

Complex SpectralCoeffs::operator()(int k) const {
  const int kmax = grid_.nyquist();
  if (k > kmax || k <= -kmax) throw std::out_of_range("wavenumber outside (-N/2, N/2]");
  return k >= 0 ? half_[k] : std::conj(half_[-k]);
}

SpectralCoeffs& SpectralCoeffs::operator+=(const SpectralCoeffs& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < half_.size(); ++k) half_[k] += other.half_[k];
  return *this;
}

SpectralCoeffs& SpectralCoeffs::operator-=(const SpectralCoeffs& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < half_.size(); ++k) half_[k] -= other.half_[k];
  return *this;
}

SpectralCoeffs& SpectralCoeffs::operator*=(double scale) {
  for (auto& c : half_) c *= scale;
  return *this;
}

SpectralCoeffs dft(const RealField& f) {
  const auto& grid = f.grid();
  const int n = grid.size();
  const auto plans = PlanCache::instance().get(n);
  SpectralCoeffs out(grid);
  auto h = out.half();
  std::vector<double> in(f.values().begin(), f.values().end());
  fftw_execute_dft_r2c(plans.forward, in.data(), reinterpret_cast<fftw_complex*>(h.data()));
  const double inv_n = 1.0 / n;
  for (int k = 0; k <= grid.nyquist(); ++k) h[k] *= node_phase(k) * inv_n;
  return out;
}

RealField inverse(const SpectralCoeffs& c) {
  const auto& grid = c.grid();
  const int n = grid.size();
  const auto plans = PlanCache::instance().get(n);
  std::vector<Complex> work(c.half().begin(), c.half().end());
  for (int k = 0; k <= grid.nyquist(); ++k) work[k] *= node_phase(k);
  // c2r reads only the real parts of the k = 0 and Nyquist entries.
  std::vector<double> values(n);
  fftw_execute_dft_c2r(plans.backward, reinterpret_cast<fftw_complex*>(work.data()),
                       values.data());
  return RealField(grid, std::move(values));
}

namespace symbol {

double lambda_pow(int k, double s) {
  if (k == 0) return 0.0;
  return std::pow(static_cast<double>(std::abs(k)), s);
}

Complex derivative(int k, int n) {
  // (ik)^n, computed without pow() so integer powers stay exact.
  Complex r{1.0, 0.0};
  const Complex ik{0.0, static_cast<double>(k)};
  for (int i = 0; i < n; ++i) r *= ik;
  return r;
}

}  // namespace symbol

SpectralCoeffs hilbert(const SpectralCoeffs& c) {
  return apply_symbol(c, symbol::hilbert, Nyquist::zero);
}

SpectralCoeffs lambda_pow(const SpectralCoeffs& c, double s) {
  return apply_symbol(
      c, [s](int k) { return Complex{symbol::lambda_pow(k, s), 0.0}; }, Nyquist::zero);
}

SpectralCoeffs derivative(const SpectralCoeffs& c, int n) {
  if (n < 1) throw std::invalid_argument("derivative order must be positive");
  return apply_symbol(c, [n](int k) { return symbol::derivative(k, n); }, Nyquist::zero);
}

SpectralCoeffs project(const SpectralCoeffs& c, int cutoff) {
  if (cutoff < 0 || cutoff > c.grid().nyquist())
    throw std::invalid_argument("projection cutoff must lie in [0, N/2]");
  SpectralCoeffs out = c;
  auto h = out.half();
  for (int k = cutoff + 1; k <= c.grid().nyquist(); ++k) h[k] = 0.0;
  return out;
}

RealField hilbert(const RealField& f) { return inverse(hilbert(dft(f))); }

RealField lambda_pow(const RealField& f, double s) { return inverse(lambda_pow(dft(f), s)); }

RealField derivative(const RealField& f, int n) { return inverse(derivative(dft(f), n)); }

RealField project(const RealField& f, int cutoff) { return inverse(project(dft(f), cutoff)); }

int dealias_cutoff(const PeriodicGrid& grid) { return (grid.size() - 1) / 3; }

RealField pointwise_product(const RealField& f, const RealField& g, Dealias dealias) {
  require_same_grid(f.grid(), g.grid());
  if (dealias == Dealias::off) {
    RealField out = f;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= g[j];
    return out;
  }
  const int cutoff = dealias_cutoff(f.grid());
  RealField a = project(f, cutoff);
  const RealField b = project(g, cutoff);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
  return project(a, cutoff);
}

double integrate(const RealField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().spacing();
}

double l2_norm(const RealField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.grid().spacing());
}

RealField shifted(const RealField& f, int shift) {
  const int n = f.grid().size();
  RealField out(f.grid());
  for (int j = 0; j < n; ++j) out[((j + shift) % n + n) % n] = f[j];
  return out;
}

}  // namespace rtmix::spectral
