#pragma once

// Fourier collocation on the periodic interval [-pi, pi).
//
// Convention: f(alpha) = sum_k fhat(k) exp(i k alpha) with k in (-N/2, N/2].
// The forward transform carries the 1/N factor so multiplier symbols act on
// fhat literally. Only the half spectrum k = 0..N/2 is stored; negative modes
// follow from Hermitian symmetry.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rtmix::spectral {

using Complex = std::complex<double>;

class PeriodicGrid {
 public:
  /// `n` must be a positive even integer.
  explicit PeriodicGrid(int n);

  int size() const noexcept { return n_; }
  int nyquist() const noexcept { return n_ / 2; }
  double spacing() const noexcept;
  double node(int j) const noexcept;
  std::vector<double> nodes() const;

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  int n_;
};

/// Collocation samples of a real periodic function.
class RealField {
 public:
  explicit RealField(PeriodicGrid grid);
  RealField(PeriodicGrid grid, std::vector<double> values);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double mean() const;
  double max() const;
  double min() const;
  double max_abs() const;
  bool all_finite() const;

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(double scale);

  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(RealField a, double s) { return a *= s; }
  friend RealField operator*(double s, RealField a) { return a *= s; }

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

/// Half-spectrum Fourier coefficients of a real field.
class SpectralCoeffs {
 public:
  explicit SpectralCoeffs(PeriodicGrid grid);

  const PeriodicGrid& grid() const noexcept { return grid_; }

  /// Coefficient of exp(i k alpha), any k in (-N/2, N/2].
  Complex operator()(int k) const;

  /// Stored modes k = 0..N/2.
  std::span<const Complex> half() const noexcept { return half_; }
  std::span<Complex> half() noexcept { return half_; }

  SpectralCoeffs& operator+=(const SpectralCoeffs& other);
  SpectralCoeffs& operator-=(const SpectralCoeffs& other);
  SpectralCoeffs& operator*=(double scale);

  friend SpectralCoeffs operator+(SpectralCoeffs a, const SpectralCoeffs& b) { return a += b; }
  friend SpectralCoeffs operator-(SpectralCoeffs a, const SpectralCoeffs& b) { return a -= b; }
  friend SpectralCoeffs operator*(SpectralCoeffs a, double s) { return a *= s; }
  friend SpectralCoeffs operator*(double s, SpectralCoeffs a) { return a *= s; }

 private:
  PeriodicGrid grid_;
  std::vector<Complex> half_;
};

enum class Nyquist { keep, zero };
enum class Dealias { off, on };

/// Multiplies mode k by symbol(k) for k = 0..N/2. The symbol must satisfy
/// symbol(-k) = conj(symbol(k)) so the result stays real.
template <class Symbol>
SpectralCoeffs apply_symbol(SpectralCoeffs c, Symbol&& symbol, Nyquist nyq) {
  auto h = c.half();
  const int kmax = c.grid().nyquist();
  for (int k = 0; k < kmax; ++k) h[k] *= symbol(k);
  if (nyq == Nyquist::zero) {
    h[kmax] = 0.0;
  } else {
    h[kmax] *= symbol(kmax).real();
  }
  return c;
}

SpectralCoeffs dft(const RealField& f);
RealField inverse(const SpectralCoeffs& c);

namespace symbol {
inline Complex hilbert(int k) {
  return k > 0 ? Complex{0.0, -1.0} : (k < 0 ? Complex{0.0, 1.0} : Complex{0.0, 0.0});
}
double lambda_pow(int k, double s);
Complex derivative(int k, int n);
}  // namespace symbol

// Spectral-space forms; every odd or derivative operator drops the Nyquist mode.
SpectralCoeffs hilbert(const SpectralCoeffs& c);
SpectralCoeffs lambda_pow(const SpectralCoeffs& c, double s);
SpectralCoeffs derivative(const SpectralCoeffs& c, int n);
SpectralCoeffs project(const SpectralCoeffs& c, int cutoff);

RealField hilbert(const RealField& f);
RealField lambda_pow(const RealField& f, double s);
RealField derivative(const RealField& f, int n);
RealField project(const RealField& f, int cutoff);

/// Band limit kept by the 2/3 rule: products of fields supported on
/// |k| <= cutoff are alias-free on that band.
int dealias_cutoff(const PeriodicGrid& grid);

RealField pointwise_product(const RealField& f, const RealField& g, Dealias dealias = Dealias::off);

/// Trapezoid-rule integral over one period.
double integrate(const RealField& f);
/// sqrt(sum f_j^2 dx): the discrete L2 norm, equal to the continuum norm
/// for band-limited f by Parseval.
double l2_norm(const RealField& f);

/// Circular shift by `shift` grid nodes (f_j -> f_{j - shift}).
RealField shifted(const RealField& f, int shift);

}  // namespace rtmix::spectral
