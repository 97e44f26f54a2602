#pragma once

#include "locwave/quadrature.hpp"
#include "locwave/types.hpp"

namespace locwave {

/// Bessel function of the first kind, order zero.
double bessel_j0(double x);

enum class SpectrumKind {
  /// h(kappa) = exp(-kappa * delta / l)
  Exponential,
  /// h(kappa) = kappa * exp(-kappa^2 / 2)
  GaussianOdd,
};

/// Built-in spectral weight h(kappa) over kappa = l k >= 0, optionally multiplied by kappa^kappa_power.
class Spectrum {
 public:
  static Spectrum exponential(double delta, double l = 1.0);
  static Spectrum gaussian_odd(double l = 1.0);

  SpectrumKind kind() const noexcept { return kind_; }
  double delta() const noexcept { return delta_; }
  double l() const noexcept { return l_; }
  int kappa_power() const noexcept { return kappa_power_; }

  /// kappa * h(kappa), the weight whose transform gives the time derivative.
  Spectrum times_kappa() const;

  /// h(kappa) * kappa^kappa_power.
  double operator()(double kappa) const;
  /// kappa beyond which the weight is below exp(-margin) of its scale.
  double kappa_cutoff(double margin) const;

 private:
  Spectrum(SpectrumKind kind, double delta, double l, int kappa_power);

  SpectrumKind kind_;
  double delta_;
  double l_;
  int kappa_power_;
};

/// Bessel-packet integral of the tube pulse, integrated numerically:
/// int_{|k0|}^{k_max} dk J0(k_rho rho) exp(-k delta) exp(-i (k tau - k0 z)), k_rho = sqrt(k^2 - k0^2).
/// Intended as an oracle for eval_cyl on rho <= 50 l.
QuadratureResult quad_cyl(const SpaceTimePoint& p, const CylParams& q, const QuadratureSpec& spec = {});

/// Positive-frequency packet (1/2 pi) int_0^inf dk f(k) exp(i k x), f(k) = h(l k).
QuadratureResult packet_1d(double x, const Spectrum& spectrum, const QuadratureSpec& spec = {});

/// int_0^inf dk h(l k) sin(k r)/r exp(-i k tau); r = 0 uses the limit sin(k r)/r -> k.
QuadratureResult spherical_standing(double r, double tau, const Spectrum& spectrum,
                                    const QuadratureSpec& spec = {});

/// d/dtau of spherical_standing, i.e. -(i/l) times the transform of kappa h(kappa).
QuadratureResult spherical_standing_dtau(double r, double tau, const Spectrum& spectrum,
                                         const QuadratureSpec& spec = {});

}  // namespace locwave
