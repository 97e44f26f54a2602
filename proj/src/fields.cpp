#include "locwave/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace locwave {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kEps = std::numeric_limits<double>::epsilon();

Complex psi(double rho, double z, double tau, const Family& family) {
  return evaluate_jet(SpaceTimePoint(std::abs(rho), z, tau), family, Scaling::Unit).value;
}

void check_step(double h, double coord, const char* axis) {
  if (!(h > 64.0 * kEps * std::max(1.0, std::abs(coord))))
    throw Error(ErrorCode::StepUnderflow,
                std::string("finite-difference step along ") + axis + " is below machine resolution");
}

// One Richardson halving on a second-order difference formula.
template <typename Diff>
Complex richardson(Diff&& diff, double h) {
  return (4.0 * diff(0.5 * h) - diff(h)) / 3.0;
}

Complex fd_dtau(const SpaceTimePoint& p, const Family& family, double h) {
  check_step(0.5 * h, p.tau(), "tau");
  const auto d = [&](double s) {
    return (psi(p.rho(), p.z(), p.tau() + s, family) - psi(p.rho(), p.z(), p.tau() - s, family)) / (2.0 * s);
  };
  return richardson(d, h);
}

// Mixed derivative d^2 Psi / d rho d x, x = z or tau. Psi is even in rho, so stencil
// points that cross the axis are reflected.
Complex fd_rho_mixed(const SpaceTimePoint& p, const Family& family, double h, bool along_tau) {
  check_step(0.5 * h, along_tau ? p.tau() : p.z(), along_tau ? "tau" : "z");
  check_step(0.5 * h, p.rho(), "rho");
  const auto f = [&](double dr, double dx) {
    return along_tau ? psi(p.rho() + dr, p.z(), p.tau() + dx, family)
                     : psi(p.rho() + dr, p.z() + dx, p.tau(), family);
  };
  const auto d = [&](double s) { return (f(s, s) - f(s, -s) - f(-s, s) + f(-s, -s)) / (4.0 * s * s); };
  return richardson(d, h);
}

// Transverse Laplacian as the 5-point Cartesian stencil at (x, y) = (rho, 0); regular on the axis.
Complex fd_lap_perp(const SpaceTimePoint& p, const Family& family, double h) {
  check_step(0.5 * h, p.rho(), "rho");
  const double r = p.rho();
  const auto f = [&](double rr) { return psi(rr, p.z(), p.tau(), family); };
  const Complex centre = f(r);
  const auto d = [&](double s) {
    return (f(r + s) + f(r - s) + 2.0 * f(std::hypot(r, s)) - 4.0 * centre) / (s * s);
  };
  return richardson(d, h);
}

RSVector rs_closed_form(const Jet& j) { return {j.d_rho_z, -I * j.d_rho_tau, -j.lap_perp}; }

RSVector rs_finite_difference(const SpaceTimePoint& p, const Family& family, double h) {
  return {fd_rho_mixed(p, family, h, false), -I * fd_rho_mixed(p, family, h, true), -fd_lap_perp(p, family, h)};
}

}  // namespace

void DerivativeScheme::validate() const {
  if (!(step > 0.0 && std::isfinite(step))) throw Error(ErrorCode::InvalidArgument, "derivative step must be positive");
}

double local_length_scale(const SpaceTimePoint& p, const Family& family) {
  if (const auto* fwm = std::get_if<FwmParams>(&family)) {
    const double l = fwm->l();
    const double qmod = std::hypot(fwm->a(), p.z() - p.tau());
    double scale = std::min({l, fwm->a(), qmod});
    if (p.rho() > 0.0) {
      const double r2 = p.rho() * p.rho();
      scale = std::min({scale, l * qmod / p.rho(), 2.0 * l * qmod * qmod / r2});
    }
    return scale;
  }
  const double l = family_length(family);
  double delta = 0.0;
  double s = p.tau();
  double g = 1.0;
  if (const auto* c = std::get_if<CylParams>(&family)) {
    delta = c->delta();
  } else {
    const auto& x = std::get<FxwParams>(family);
    delta = x.delta();
    g = x.gamma();
    s = g * std::fma(-x.beta(), p.z(), p.tau());
  }
  const Complex S{delta, s};
  const double wmod = std::abs(std::sqrt(p.rho() * p.rho() + S * S));
  return std::min(l, wmod) / g;
}

ComplexAmplitude superpotential(const SpaceTimePoint& p, const Family& family) {
  return evaluate_jet(p, family, Scaling::Unit).value;
}

ComplexAmplitude dtau_superpotential(const SpaceTimePoint& p, const Family& family, const DerivativeScheme& scheme) {
  scheme.validate();
  if (scheme.mode == DerivativeMode::ClosedForm) return evaluate_jet(p, family, Scaling::Unit).d_tau;

  const double h = scheme.step * local_length_scale(p, family);
  const Complex fd = fd_dtau(p, family, h);
  if (scheme.mode == DerivativeMode::FiniteDifference) return fd;

  const Complex cf = evaluate_jet(p, family, Scaling::Unit).d_tau;
  const double diff = std::abs(cf - fd);
  if (diff > kDtauCrossCheckTol * std::abs(cf))
    throw Error(ErrorCode::CrossCheckFailed,
                "closed-form and finite-difference dZ/dtau differ by " + std::to_string(diff / std::abs(cf)));
  return cf;
}

RSVector rs_vector(const SpaceTimePoint& p, const Family& family, const DerivativeScheme& scheme) {
  scheme.validate();
  if (scheme.mode == DerivativeMode::ClosedForm) return rs_closed_form(evaluate_jet(p, family, Scaling::Unit));

  const double h = scheme.step * local_length_scale(p, family);
  const RSVector fd = rs_finite_difference(p, family, h);
  if (scheme.mode == DerivativeMode::FiniteDifference) return fd;

  const RSVector cf = rs_closed_form(evaluate_jet(p, family, Scaling::Unit));
  const double scale = std::sqrt(cf.norm2());
  const double diff = std::max({std::abs(cf.f_rho - fd.f_rho), std::abs(cf.f_phi - fd.f_phi), std::abs(cf.f_z - fd.f_z)});
  if (diff > kFieldCrossCheckTol * scale)
    throw Error(ErrorCode::CrossCheckFailed,
                "closed-form and finite-difference F differ by " + std::to_string(diff / scale) + " relative");
  return cf;
}

double energy_density(const SpaceTimePoint& p, const Family& family, const DerivativeScheme& scheme) {
  return rs_vector(p, family, scheme).norm2();
}

}  // namespace locwave
