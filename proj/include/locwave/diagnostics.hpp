#pragma once

#include <functional>
#include <string>
#include <vector>

#include "locwave/fields.hpp"
#include "locwave/spectra.hpp"
#include "locwave/types.hpp"

namespace locwave {

struct ProfileMeta {
  std::string source;    // family name, "spherical", "packet-1d", "synthetic", ...
  std::string quantity;  // Z | dtauZ | F2 | ...
  double z = 0.0;
  double tau = 0.0;
};

/// |quantity| sampled on a strictly increasing rho grid (at least 16 samples, values >= 0).
class RadialProfile {
 public:
  static constexpr std::size_t kMinSamples = 16;

  RadialProfile(std::vector<double> rho, std::vector<double> value, ProfileMeta meta = {});

  const std::vector<double>& rho() const noexcept { return rho_; }
  const std::vector<double>& value() const noexcept { return value_; }
  const ProfileMeta& meta() const noexcept { return meta_; }
  std::size_t size() const noexcept { return rho_.size(); }

 private:
  std::vector<double> rho_;
  std::vector<double> value_;
  ProfileMeta meta_;
};

/// count equally spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// Samples |Z| (|Z(0,0,0)| = 1), |dZ/dtau| or |F|^2 at fixed (z, tau). dtauZ and F2 are
/// normalized by their own value on the axis at the same (z, tau).
RadialProfile radial_profile(const Family& family, Quantity quantity, double z, double tau,
                             const std::vector<double>& rho_grid);

enum class FalloffModel { Power, Exponential, Gaussian };

const char* to_string(FalloffModel m);

enum class ModelChoice { Auto, Power, Exponential, Gaussian };

struct FalloffFit {
  FalloffModel model = FalloffModel::Power;
  /// Exponent p for Power, 1/length for Exponential, 1/length^2 for Gaussian.
  double rate = 0.0;
  /// q in rho^q * decay; zero for Power.
  double prefactor_power = 0.0;
  /// Natural-log-space constant c.
  double log_coefficient = 0.0;
  double rms_residual = 0.0;
  std::size_t points = 0;
  double rho_min = 0.0;
  double rho_max = 0.0;
};

struct FitWindow {
  double rho_min;
  double rho_max;
};

/// Samples at or below this value, or below kRelativeFloor times the window maximum, are dropped.
inline constexpr double kAbsoluteFloor = 1e-250;
inline constexpr double kRelativeFloor = 1e-15;
inline constexpr std::size_t kMinFitPoints = 8;
/// A faster-decaying model is reported only if its rms residual is this many times smaller.
inline constexpr double kSelectionMargin = 2.0;

/// Least-squares falloff fit in log space. Auto picks the slowest admissible model unless a
/// faster one wins on residual by kSelectionMargin; a faster model is admissible only if its
/// decay term spans at least one e-fold over the window.
FalloffFit fit_falloff(const RadialProfile& profile, FitWindow window, ModelChoice choice = ModelChoice::Auto);

/// Window where the asymptotic falloff laws hold: rho >= max(5 |tau_eff|, 5 delta, 5 l) for the
/// tube families (tau_eff = gamma (tau - beta z) for the FXW), rho >= 5 sqrt(l |a - i(z - tau)|) for
/// the FWM; up to the end of the profile. Throws EmptyWindow when the profile stops short.
FitWindow check_localization_conditions(const RadialProfile& profile, const Family& family);

/// Falloff fit restricted to check_localization_conditions().
FalloffFit fit_in_regime(const RadialProfile& profile, const Family& family,
                         ModelChoice choice = ModelChoice::Auto);

using ScalarField = std::function<Complex(const SpaceTimePoint&)>;

/// |lap Psi - d^2 Psi / dtau^2| by second-order central differences in (rho, z, tau).
double wave_residual(const ScalarField& field, const SpaceTimePoint& p, double h);
double wave_residual(const Family& family, const SpaceTimePoint& p, double h);

/// log2(residual(h) / residual(h / 2)).
double residual_convergence_order(const Family& family, const SpaceTimePoint& p, double h);

struct TradeoffResult {
  RadialProfile z_profile;
  RadialProfile dtau_profile;
  FalloffFit z_fit;
  FalloffFit dtau_fit;
};

/// Fits |Z| and |dZ/dtau| of the spherical standing-wave superposition at tau = 0 over r_grid.
/// Samples the quadrature cannot resolve (value below its error estimate) are recorded as 0.
TradeoffResult pw_tradeoff_demo(const Spectrum& spectrum, const std::vector<double>& r_grid,
                                const QuadratureSpec& spec = {});

}  // namespace locwave
