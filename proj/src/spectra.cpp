#include "locwave/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/bessel.hpp>

namespace locwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kPanelsPerPeriod = 8;

// Widest panel that still puts kPanelsPerPeriod panels on every period of the fastest
// oscillation (angular frequency omega in the integration variable).
double panel_width_for(double omega, double span) {
  if (omega <= 0.0) return span;
  return std::min(span, kTwoPi / omega / kPanelsPerPeriod);
}

}  // namespace

double bessel_j0(double x) {
  // Double-precision evaluation; the default policy promotes to long double at ~3x the cost.
  using Policy = boost::math::policies::policy<boost::math::policies::promote_double<false>>;
  return boost::math::cyl_bessel_j(0, x, Policy());
}

Spectrum::Spectrum(SpectrumKind kind, double delta, double l, int kappa_power)
    : kind_(kind), delta_(delta), l_(l), kappa_power_(kappa_power) {
  if (!(l > 0.0 && std::isfinite(l))) throw Error(ErrorCode::InvalidArgument, "spectrum scale l must be positive");
  if (kind == SpectrumKind::Exponential && !(delta > 0.0 && std::isfinite(delta)))
    throw Error(ErrorCode::InvalidArgument, "exponential spectrum needs delta > 0");
}

Spectrum Spectrum::exponential(double delta, double l) { return {SpectrumKind::Exponential, delta, l, 0}; }

Spectrum Spectrum::gaussian_odd(double l) { return {SpectrumKind::GaussianOdd, 0.0, l, 0}; }

Spectrum Spectrum::times_kappa() const { return {kind_, delta_, l_, kappa_power_ + 1}; }

double Spectrum::operator()(double kappa) const {
  const double base = kind_ == SpectrumKind::Exponential ? std::exp(-kappa * delta_ / l_)
                                                         : kappa * std::exp(-0.5 * kappa * kappa);
  return kappa_power_ == 0 ? base : base * std::pow(kappa, kappa_power_);
}

double Spectrum::kappa_cutoff(double margin) const {
  if (kind_ == SpectrumKind::Exponential) {
    // Polynomial factors kappa^n shift the peak to n l/delta; leave room for them.
    return (margin + 4.0 * kappa_power_) * l_ / delta_;
  }
  return std::sqrt(2.0 * margin) + 2.0 + kappa_power_;
}

QuadratureResult quad_cyl(const SpaceTimePoint& p, const CylParams& q, const QuadratureSpec& spec) {
  spec.validate();
  const double kappa = std::abs(q.k0());
  const double delta = q.delta();
  const double rho = p.rho();
  const double tau = p.tau();
  const Complex axial = std::polar(1.0, q.k0() * p.z());

  // Integrate over k_rho so J0 oscillates with a fixed period 2 pi / rho; dk = (k_rho / k) dk_rho.
  const double k_max = kappa + spec.k_max_margin / delta;
  const double kr_max = std::sqrt((k_max - kappa) * (k_max + kappa));
  const auto integrand = [&](double kr) {
    const double k = std::hypot(kappa, kr);
    return bessel_j0(kr * rho) * (kr / k) * std::exp(Complex(-k * delta, -k * tau));
  };

  const double omega = std::max(rho, std::abs(tau));
  auto res = integrate_adaptive(integrand, 0.0, kr_max, panel_width_for(omega, kr_max), spec);
  res.value *= axial;
  return res;
}

QuadratureResult packet_1d(double x, const Spectrum& spectrum, const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "x must be finite");
  const double l = spectrum.l();
  const double k_max = spectrum.kappa_cutoff(spec.k_max_margin) / l;
  const auto integrand = [&](double k) { return spectrum(l * k) * std::polar(1.0, k * x); };
  auto res = integrate_adaptive(integrand, 0.0, k_max, panel_width_for(std::abs(x), k_max), spec);
  res.value /= kTwoPi;
  res.error_estimate /= kTwoPi;
  return res;
}

QuadratureResult spherical_standing(double r, double tau, const Spectrum& spectrum, const QuadratureSpec& spec) {
  spec.validate();
  if (!(r >= 0.0 && std::isfinite(r) && std::isfinite(tau)))
    throw Error(ErrorCode::InvalidArgument, "r must be finite and non-negative, tau finite");
  const double l = spectrum.l();
  const double k_max = spectrum.kappa_cutoff(spec.k_max_margin) / l;
  const auto integrand = [&](double k) {
    const double radial = r > 0.0 ? std::sin(k * r) / r : k;
    return spectrum(l * k) * radial * std::polar(1.0, -k * tau);
  };
  const double omega = std::max(r, std::abs(tau));
  return integrate_adaptive(integrand, 0.0, k_max, panel_width_for(omega, k_max), spec);
}

QuadratureResult spherical_standing_dtau(double r, double tau, const Spectrum& spectrum,
                                         const QuadratureSpec& spec) {
  auto res = spherical_standing(r, tau, spectrum.times_kappa(), spec);
  res.value *= Complex(0.0, -1.0 / spectrum.l());
  res.error_estimate /= spectrum.l();
  return res;
}

}  // namespace locwave
