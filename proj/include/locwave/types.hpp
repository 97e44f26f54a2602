#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace locwave {

using Complex = std::complex<double>;

/// Scalar wave value Psi or Z. Normalization is relative (see superpotential()).
using ComplexAmplitude = Complex;

enum class ErrorCode {
  InvalidArgument,
  NonConvergence,
  StepUnderflow,
  WindowTooNarrow,
  DynamicRangeExceeded,
  EmptyWindow,
  CrossCheckFailed,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Cylindrical spacetime point (rho, z, tau = ct), lengths in the caller's unit.
class SpaceTimePoint {
 public:
  SpaceTimePoint(double rho, double z, double tau);

  double rho() const noexcept { return rho_; }
  double z() const noexcept { return z_; }
  double tau() const noexcept { return tau_; }

  bool operator==(const SpaceTimePoint&) const = default;

 private:
  double rho_;
  double z_;
  double tau_;
};

/// Bessel-packet tube pulse: axial wavenumber k0 (signed, nonzero) and spectral width delta.
class CylParams {
 public:
  CylParams(double k0, double delta);

  double k0() const noexcept { return k0_; }
  double delta() const noexcept { return delta_; }
  /// Characteristic length 1/|k0|.
  double length() const noexcept;

 private:
  double k0_;
  double delta_;
};

/// Focused X wave: the tube pulse seen from a frame moving with relative speed beta.
class FxwParams {
 public:
  FxwParams(double k0, double delta, double beta);

  double k0() const noexcept { return k0_; }
  double delta() const noexcept { return delta_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept;
  double length() const noexcept;
  /// 2*pi/|k0|.
  double wavelength() const noexcept;

  CylParams rest_frame() const { return CylParams(k0_, delta_); }

 private:
  double k0_;
  double delta_;
  double beta_;
};

/// Focus wave mode: characteristic length l and axial localization constant a.
class FwmParams {
 public:
  FwmParams(double l, double a);

  double l() const noexcept { return l_; }
  double a() const noexcept { return a_; }

 private:
  double l_;
  double a_;
};

using Family = std::variant<CylParams, FxwParams, FwmParams>;

const char* family_name(const Family& family);

/// Length unit the family's asymptotic laws are stated in (l = 1/|k0| or the FWM l).
double family_length(const Family& family);

enum class Quantity { Z, DtauZ, F2 };

const char* to_string(Quantity q);

}  // namespace locwave
