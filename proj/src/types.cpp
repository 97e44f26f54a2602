#include "locwave/types.hpp"

#include <cmath>
#include <numbers>

namespace locwave {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::DynamicRangeExceeded: return "DynamicRangeExceeded";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::CrossCheckFailed: return "CrossCheckFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

SpaceTimePoint::SpaceTimePoint(double rho, double z, double tau) : rho_(rho), z_(z), tau_(tau) {
  require(std::isfinite(rho) && std::isfinite(z) && std::isfinite(tau),
          "space-time coordinates must be finite");
  require(rho >= 0.0, "rho must be non-negative");
}

CylParams::CylParams(double k0, double delta) : k0_(k0), delta_(delta) {
  require(std::isfinite(k0) && k0 != 0.0, "k0 must be finite and nonzero");
  require(std::isfinite(delta) && delta > 0.0, "delta must be positive");
}

double CylParams::length() const noexcept { return 1.0 / std::abs(k0_); }

FxwParams::FxwParams(double k0, double delta, double beta) : k0_(k0), delta_(delta), beta_(beta) {
  require(std::isfinite(k0) && k0 != 0.0, "k0 must be finite and nonzero");
  require(std::isfinite(delta) && delta > 0.0, "delta must be positive");
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
}

double FxwParams::gamma() const noexcept { return 1.0 / std::sqrt((1.0 - beta_) * (1.0 + beta_)); }

double FxwParams::length() const noexcept { return 1.0 / std::abs(k0_); }

double FxwParams::wavelength() const noexcept { return 2.0 * std::numbers::pi / std::abs(k0_); }

FwmParams::FwmParams(double l, double a) : l_(l), a_(a) {
  require(std::isfinite(l) && l > 0.0, "l must be positive");
  require(std::isfinite(a) && a > 0.0, "a must be positive");
}

const char* family_name(const Family& family) {
  switch (family.index()) {
    case 0: return "cyl";
    case 1: return "fxw";
    default: return "fwm";
  }
}

double family_length(const Family& family) {
  if (const auto* c = std::get_if<CylParams>(&family)) return c->length();
  if (const auto* x = std::get_if<FxwParams>(&family)) return x->length();
  return std::get<FwmParams>(family).l();
}

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::Z: return "Z";
    case Quantity::DtauZ: return "dtauZ";
    case Quantity::F2: return "F2";
  }
  return "?";
}

}  // namespace locwave
