#include "rtmix/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rtmix/errors.hpp"

namespace rtmix::models {

using spectral::Complex;
using spectral::SpectralCoeffs;

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

const SpectralCoeffs& checked(const char* term, const SpectralCoeffs& c) {
  for (const auto& z : c.half())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NonFiniteState(term);
  return c;
}

const RealField& checked(const char* term, const RealField& f) {
  if (!f.all_finite()) throw NonFiniteState(term);
  return f;
}

RealField times(const RealField& a, const RealField& b) {
  return spectral::pointwise_product(a, b, spectral::Dealias::off);
}

void require_grid(const RealField& a, const RealField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("state components on different grids");
}

}  // namespace

void PhysParams::validate() const {
  if (!(rho_minus > 0.0)) throw std::invalid_argument("rho_minus must be positive");
  if (!(rho_plus >= 0.0)) throw std::invalid_argument("rho_plus must be non-negative");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be non-negative");
  if (!std::isfinite(g)) throw std::invalid_argument("g must be finite");
}

void ViscosityConfig::validate() const {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (!(order_s >= 0.0)) throw std::invalid_argument("viscosity order must be non-negative");
}

HRates h_rhs(const HState& state, const PhysParams& p, const ViscosityConfig& v,
             const ModelOptions& opts) {
  require_grid(state.h, state.omega);
  const double a = p.atwood();
  const double w0 = state.omega0_integral;

  const SpectralCoeffs h_hat = dft(state.h);
  const SpectralCoeffs w_hat = dft(state.omega);
  const RealField hw = checked("H omega", inverse(spectral::hilbert(w_hat)));

  SpectralCoeffs rate = checked("gravity", spectral::derivative(h_hat, 1) * (2.0 * a * p.g));
  if (p.sigma != 0.0)
    rate += checked("capillarity", spectral::derivative(h_hat, 3) * (2.0 * p.sigma_reduced()));

  if (w0 != 0.0) {
    const RealField h_xx = inverse(spectral::derivative(h_hat, 2));
    rate -= checked("omega0 transport",
                    spectral::derivative(dft(times(state.omega, h_xx)), 1) * (w0 / kFourPi));
    rate += checked("omega0 dispersion",
                    spectral::derivative(spectral::lambda_pow(w_hat, 1.0), 1) * (a * w0 / kFourPi));
  }

  rate -= checked("Lambda(omega H omega)",
                  spectral::lambda_pow(dft(times(state.omega, hw)), 1.0) * (0.5 * a));

  if (opts.include_cubic) {
    const RealField h_x = inverse(spectral::derivative(h_hat, 1));
    const RealField q = times(times(state.omega, h_x), hw);
    rate += checked("cubic", spectral::derivative(dft(q), 1) * 0.5);
  }

  if (v.epsilon != 0.0)
    rate -= checked("viscosity", spectral::lambda_pow(w_hat, v.order_s) * v.epsilon);

  return {hw * 0.5, checked("omega rate", inverse(rate))};
}

RealField h_wave_rhs(const RealField& h, const RealField& ht, const PhysParams& p,
                     const ViscosityConfig& v, double omega0_integral, const ModelOptions& opts) {
  require_grid(h, ht);
  const double a = p.atwood();
  const double w0 = omega0_integral;

  const SpectralCoeffs h_hat = dft(h);
  const SpectralCoeffs ht_hat = dft(ht);
  const RealField h_ht = checked("H h_t", inverse(spectral::hilbert(ht_hat)));

  SpectralCoeffs rate = checked("gravity", spectral::lambda_pow(h_hat, 1.0) * (a * p.g));
  if (p.sigma != 0.0)
    rate -= checked("capillarity", spectral::lambda_pow(h_hat, 3.0) * p.sigma_reduced());

  rate -= checked("d(H h_t h_t)", spectral::derivative(dft(times(h_ht, ht)), 1) * a);

  if (w0 != 0.0) {
    const RealField h_xx = inverse(spectral::derivative(h_hat, 2));
    rate += checked("omega0 transport",
                    spectral::lambda_pow(dft(times(h_ht, h_xx)), 1.0) * (w0 / kFourPi));
    rate += checked("omega0 dispersion",
                    spectral::derivative(spectral::lambda_pow(ht_hat, 1.0), 1) * (a * w0 / kFourPi));
  }

  if (opts.include_cubic) {
    const RealField h_x = inverse(spectral::derivative(h_hat, 1));
    rate -= checked("cubic", spectral::lambda_pow(dft(times(times(h_ht, h_x), ht)), 1.0));
  }

  if (v.epsilon != 0.0)
    rate -= checked("viscosity", spectral::lambda_pow(ht_hat, v.order_s) * v.epsilon);

  return checked("h_tt", inverse(rate));
}

HRates linear_rhs(const HState& state, const PhysParams& p) {
  require_grid(state.h, state.omega);
  const SpectralCoeffs h_hat = dft(state.h);
  SpectralCoeffs rate = spectral::derivative(h_hat, 1) * (2.0 * p.atwood() * p.g);
  if (p.sigma != 0.0) rate += spectral::derivative(h_hat, 3) * (2.0 * p.sigma_reduced());
  return {spectral::hilbert(state.omega) * 0.5, checked("omega rate", inverse(rate))};
}

double min_metric(const ZState& state) {
  const RealField x1 = spectral::derivative(state.dz1, 1);
  const RealField x2 = spectral::derivative(state.z2, 1);
  double m = INFINITY;
  for (std::size_t j = 0; j < x1.size(); ++j) {
    const double a = 1.0 + x1[j];
    m = std::min(m, a * a + x2[j] * x2[j]);
  }
  return m;
}

ZRates z_rhs(const ZState& state, const PhysParams& p, const ViscosityConfig& v) {
  require_grid(state.dz1, state.z2);
  require_grid(state.dz1, state.omega);
  const auto& grid = state.z2.grid();
  const std::size_t n = grid.size();
  const double a = p.atwood();

  const SpectralCoeffs dz1_hat = dft(state.dz1);
  const SpectralCoeffs z2_hat = dft(state.z2);
  const SpectralCoeffs w_hat = dft(state.omega);

  RealField tangent1 = inverse(spectral::derivative(dz1_hat, 1));
  for (std::size_t j = 0; j < n; ++j) tangent1[j] += 1.0;
  const RealField tangent2 = inverse(spectral::derivative(z2_hat, 1));

  RealField metric(grid);
  double min_m = INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    metric[j] = tangent1[j] * tangent1[j] + tangent2[j] * tangent2[j];
    if (!std::isfinite(metric[j])) throw NonFiniteState("|dz|^2");
    min_m = std::min(min_m, metric[j]);
  }
  if (min_m < kMetricFloor) throw DegenerateParameterization(min_m, kMetricFloor);

  const RealField hw = checked("H omega", inverse(spectral::hilbert(w_hat)));

  RealField ddz1(grid), dz2(grid);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = 0.5 * hw[j] / metric[j];
    ddz1[j] = -s * tangent2[j];
    dz2[j] = s * tangent1[j];
  }

  // bracket = A/2 H(w Hw) / |dz|^2 - 2 A g z2, then w_t = -d_alpha(bracket).
  const RealField nonlinear = inverse(spectral::hilbert(dft(times(state.omega, hw))));
  RealField bracket(grid);
  for (std::size_t j = 0; j < n; ++j)
    bracket[j] = 0.5 * a * nonlinear[j] / metric[j] - 2.0 * a * p.g * state.z2[j];
  checked("omega bracket", bracket);
  SpectralCoeffs w_rate = spectral::derivative(dft(bracket), 1) * -1.0;

  if (v.epsilon != 0.0) {
    ddz1 += inverse(spectral::derivative(dz1_hat, 2)) * v.epsilon;
    dz2 += inverse(spectral::derivative(z2_hat, 2)) * v.epsilon;
    w_rate += spectral::derivative(w_hat, 2) * v.epsilon;
  }

  return {checked("dz1 rate", ddz1), checked("z2 rate", dz2), checked("omega rate", inverse(w_rate))};
}

}  // namespace rtmix::models
