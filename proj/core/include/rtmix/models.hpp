#pragma once

#include "rtmix/spectral.hpp"

namespace rtmix::models {

using spectral::RealField;

struct PhysParams {
  double g = 9.8;  // signed; negative when the acceleration acts upwards
  double sigma = 0.0;
  double rho_plus = 1.0;
  double rho_minus = 1.0;

  double atwood() const { return (rho_plus - rho_minus) / (rho_plus + rho_minus); }
  /// sigma / (rho+ + rho-), the capillary coefficient that enters the equations.
  double sigma_reduced() const { return sigma / (rho_plus + rho_minus); }

  /// Throws std::invalid_argument unless rho+ >= 0, rho- > 0 and sigma >= 0.
  void validate() const;

  friend bool operator==(const PhysParams&, const PhysParams&) = default;
};

struct ViscosityConfig {
  double epsilon = 0.0;  // 0 disables the regularization
  double order_s = 2.0;

  void validate() const;

  friend bool operator==(const ViscosityConfig&, const ViscosityConfig&) = default;
};

struct ModelOptions {
  /// Keep the cubic nonlinearity dropped by the discretized h-model
  /// (d_alpha((w/2) d_alpha h Hw) in the system, -Lambda(H h_t d_alpha h h_t)
  /// in the wave form).
  bool include_cubic = false;

  friend bool operator==(const ModelOptions&, const ModelOptions&) = default;
};

/// (h, w) for the graph model. `omega0_integral` is the space integral of the
/// initial vorticity, the coefficient of the <w0> terms.
struct HState {
  RealField h;
  RealField omega;
  double omega0_integral = 0.0;
};

struct HRates {
  RealField dh;
  RealField domega;
};

/// Interface z(alpha) = (alpha + dz1, z2) with vorticity amplitude omega.
struct ZState {
  RealField dz1;
  RealField z2;
  RealField omega;
};

struct ZRates {
  RealField ddz1;
  RealField dz2;
  RealField domega;
};

/// Floor on |d_alpha z|^2 below which z_rhs rejects the state.
inline constexpr double kMetricFloor = 1e-8;

/// Regularized h-model system:
///   h_t = 1/2 Hw
///   w_t = 2Ag h' + 2 sigma' h''' - <w0>/(4pi) (w h'')' + A<w0>/(4pi) (Lambda w)'
///         - A/2 Lambda(w Hw) - eps Lambda^s w
HRates h_rhs(const HState& state, const PhysParams& p, const ViscosityConfig& v,
             const ModelOptions& opts = {});

/// Second-order form, returns h_tt for the state (h, h_t).
RealField h_wave_rhs(const RealField& h, const RealField& ht, const PhysParams& p,
                     const ViscosityConfig& v, double omega0_integral,
                     const ModelOptions& opts = {});

/// Linearization: h_t = 1/2 Hw, w_t = 2Ag h' + 2 sigma' h'''.
HRates linear_rhs(const HState& state, const PhysParams& p);

/// Regularized z-model with zero pressure jump. Throws
/// DegenerateParameterization when min |d_alpha z|^2 < kMetricFloor.
ZRates z_rhs(const ZState& state, const PhysParams& p, const ViscosityConfig& v);

/// min_j |d_alpha z|^2 over the grid.
double min_metric(const ZState& state);

}  // namespace rtmix::models
