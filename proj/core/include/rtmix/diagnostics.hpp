#pragma once

#include <span>
#include <vector>

#include "rtmix/models.hpp"
#include "rtmix/spectral.hpp"

namespace rtmix::diagnostics {

using models::PhysParams;
using spectral::RealField;

/// Homogeneous Sobolev norm sqrt(2 pi sum_k |k|^{2s} |fhat(k)|^2). For s = 0 the
/// mean is included (plain L2); for s != 0 only k != 0 contributes, which also
/// makes negative orders well defined on the zero-mean part.
double sobolev_norm(const RealField& f, double s);

struct Dissipation {
  double d1 = 0.0;  // A int Lambda(h_t) h_t^2
  double d2 = 0.0;  // A int h_t ((Lambda h_t)^2 + (h_t')^2)
  double d3 = 0.0;  // 2A int h_t (H h_t)^2
};

Dissipation dissipations(const RealField& ht, double atwood);

struct EnergyRecord {
  double t = 0.0;
  double e1 = 0.0, e2 = 0.0, e3 = 0.0;
  double d1 = 0.0, d2 = 0.0, d3 = 0.0;
  /// E(k) = |hhat_t(k)|^2 - A g |k| |hhat(k)|^2 for k = 0..N/2.
  std::vector<double> spectrum;
};

EnergyRecord energy_record(const RealField& h, const RealField& ht, const PhysParams& p, double t);

/// Per-mode energy of the (dz1, z2) pair, |dz1hat(k)|^2 + |z2hat(k)|^2 for k = 0..N/2.
std::vector<double> displacement_spectrum(const RealField& dz1, const RealField& z2);

struct StabilityReport {
  double lambda_min = 0.0;  // min_alpha A h1(alpha)
  bool is_stable = false;   // lambda_min > 0
  double smallness_lhs = 0.0;
  double smallness_rhs = 0.0;
  bool satisfies_thm2 = false;  // stable and lhs < rhs
};

/// Stability of the data (h0, h1) for the wave form. h2 is the initial
/// acceleration h_tt(0) of the inviscid wave equation; smallness compares
/// ||h2||_{1/2}^2 + ||h1||_1^2 + sigma' ||h1||_2^2 against (-mean(h1)/5)^2.
StabilityReport stability_report(const RealField& h0, const RealField& h1, const PhysParams& p);

/// min_alpha A h_t(alpha).
double lambda_min(const RealField& ht, double atwood);

struct AmplitudeWidth {
  double linf = 0.0;
  double width = 0.0;
};

/// linf = max|field|, width = max(field) - max(reference).
AmplitudeWidth amplitude_and_width(const RealField& field, const RealField& reference);

struct AsymptoticGap {
  double gap_h = 0.0;
  double gap_ht = 0.0;
};

/// Sup-distance of (h, h_t) from the homogeneous solution h0_mean + h1_mean t.
AsymptoticGap asymptotic_gap(const RealField& h, const RealField& ht, double h0_mean,
                             double h1_mean, double t);

struct CarlsonSides {
  double lhs = 0.0;  // ||w||_inf^2
  double rhs = 0.0;  // ||w||_0 ||w||_1 - ||w||_0^2 / pi
};

/// Throws std::invalid_argument unless |mean(w)| is at roundoff level.
CarlsonSides carlson_check(const RealField& w);

struct GrowthFit {
  double max_deviation = 0.0;  // max_t |width(t) - delta A g t^2|
  double delta_least_squares = 0.0;
  std::size_t samples = 0;
};

/// Compares a mixing-width history against delta A g t^2 for t <= t_window.
GrowthFit growth_deviation(std::span<const double> times, std::span<const double> widths,
                           double atwood, double g, double delta, double t_window);

}  // namespace rtmix::diagnostics
