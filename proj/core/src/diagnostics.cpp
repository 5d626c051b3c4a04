#include "rtmix/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rtmix::diagnostics {

using spectral::SpectralCoeffs;

namespace {

// Multiplicity of a stored half-spectrum mode in the full (-N/2, N/2] range.
double multiplicity(int k, int nyquist) { return (k == 0 || k == nyquist) ? 1.0 : 2.0; }

}  // namespace

double sobolev_norm(const RealField& f, double s) {
  const SpectralCoeffs c = dft(f);
  const int kmax = f.grid().nyquist();
  double sum = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    if (k == 0 && s != 0.0) continue;
    const double weight = s == 0.0 ? 1.0 : std::pow(static_cast<double>(k), 2.0 * s);
    sum += multiplicity(k, kmax) * weight * std::norm(c.half()[k]);
  }
  return std::sqrt(2.0 * std::numbers::pi * sum);
}

Dissipation dissipations(const RealField& ht, double atwood) {
  const SpectralCoeffs c = dft(ht);
  const RealField lam = inverse(spectral::lambda_pow(c, 1.0));
  const RealField dx = inverse(spectral::derivative(c, 1));
  const RealField hil = inverse(spectral::hilbert(c));

  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (std::size_t j = 0; j < ht.size(); ++j) {
    const double v = ht[j];
    s1 += lam[j] * v * v;
    s2 += v * (lam[j] * lam[j] + dx[j] * dx[j]);
    s3 += v * hil[j] * hil[j];
  }
  const double w = ht.grid().spacing();
  return {atwood * s1 * w, atwood * s2 * w, 2.0 * atwood * s3 * w};
}

EnergyRecord energy_record(const RealField& h, const RealField& ht, const PhysParams& p, double t) {
  const double ag = p.atwood() * p.g;
  const double cap = p.sigma_reduced();
  auto sq = [](double x) { return x * x; };

  EnergyRecord r;
  r.t = t;
  r.e1 = sq(sobolev_norm(ht, 0.0)) + cap * sq(sobolev_norm(h, 1.5)) - ag * sq(sobolev_norm(h, 0.5));
  r.e2 = sq(sobolev_norm(ht, 0.5)) + cap * sq(sobolev_norm(h, 2.0)) - ag * sq(sobolev_norm(h, 1.0));
  // The -1/2 norm only sees k != 0, so subtracting the mean velocity is implicit.
  r.e3 = sq(sobolev_norm(ht, -0.5)) + cap * sq(sobolev_norm(h, 1.0)) - ag * sq(sobolev_norm(h, 0.0));

  const Dissipation d = dissipations(ht, p.atwood());
  r.d1 = d.d1;
  r.d2 = d.d2;
  r.d3 = d.d3;

  const SpectralCoeffs hh = dft(h);
  const SpectralCoeffs hth = dft(ht);
  const int kmax = h.grid().nyquist();
  r.spectrum.resize(kmax + 1);
  for (int k = 0; k <= kmax; ++k)
    r.spectrum[k] = std::norm(hth.half()[k]) - ag * k * std::norm(hh.half()[k]);
  return r;
}

std::vector<double> displacement_spectrum(const RealField& dz1, const RealField& z2) {
  const SpectralCoeffs a = dft(dz1);
  const SpectralCoeffs b = dft(z2);
  std::vector<double> e(a.half().size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::norm(a.half()[k]) + std::norm(b.half()[k]);
  return e;
}

double lambda_min(const RealField& ht, double atwood) {
  double m = INFINITY;
  for (double v : ht.values()) m = std::min(m, atwood * v);
  return m;
}

StabilityReport stability_report(const RealField& h0, const RealField& h1, const PhysParams& p) {
  StabilityReport r;
  r.lambda_min = lambda_min(h1, p.atwood());
  r.is_stable = r.lambda_min > 0.0;

  const RealField h2 = models::h_wave_rhs(h0, h1, p, models::ViscosityConfig{}, 0.0);
  auto sq = [](double x) { return x * x; };
  r.smallness_lhs = sq(sobolev_norm(h2, 0.5)) + sq(sobolev_norm(h1, 1.0)) +
                    p.sigma_reduced() * sq(sobolev_norm(h1, 2.0));
  r.smallness_rhs = sq(-h1.mean() / 5.0);
  r.satisfies_thm2 = r.is_stable && r.smallness_lhs < r.smallness_rhs;
  return r;
}

AmplitudeWidth amplitude_and_width(const RealField& field, const RealField& reference) {
  return {field.max_abs(), field.max() - reference.max()};
}

AsymptoticGap asymptotic_gap(const RealField& h, const RealField& ht, double h0_mean,
                             double h1_mean, double t) {
  const double h_inf = h0_mean + h1_mean * t;
  AsymptoticGap g;
  for (std::size_t j = 0; j < h.size(); ++j) {
    g.gap_h = std::max(g.gap_h, std::abs(h[j] - h_inf));
    g.gap_ht = std::max(g.gap_ht, std::abs(ht[j] - h1_mean));
  }
  return g;
}

CarlsonSides carlson_check(const RealField& w) {
  if (std::abs(w.mean()) > 1e-12 * std::max(1.0, w.max_abs()))
    throw std::invalid_argument("carlson_check requires a zero-mean field");
  const double n0 = sobolev_norm(w, 0.0);
  const double n1 = sobolev_norm(w, 1.0);
  const double linf = w.max_abs();
  return {linf * linf, n0 * n1 - n0 * n0 / std::numbers::pi};
}

GrowthFit growth_deviation(std::span<const double> times, std::span<const double> widths,
                           double atwood, double g, double delta, double t_window) {
  if (times.size() != widths.size()) throw std::invalid_argument("times/widths length mismatch");
  GrowthFit fit;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] > t_window * (1.0 + 1e-12)) continue;
    const double law = atwood * g * times[i] * times[i];
    fit.max_deviation = std::max(fit.max_deviation, std::abs(widths[i] - delta * law));
    num += widths[i] * law;
    den += law * law;
    ++fit.samples;
  }
  fit.delta_least_squares = den > 0.0 ? num / den : 0.0;
  return fit;
}

}  // namespace rtmix::diagnostics
