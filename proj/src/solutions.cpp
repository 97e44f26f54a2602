#include "locwave/solutions.hpp"

#include <cmath>

namespace locwave {

namespace {

constexpr Complex I{0.0, 1.0};

// Tube-pulse kinematics shared by the cylindrical pulse (beta = 0) and the FXW.
// Psi = H(u) E with u = rho^2 + S^2, S = delta + i s(z, tau), E = exp(i theta(z, tau)),
// s and theta linear in (z, tau).
struct Tube {
  double kappa;
  double delta;
  double s;       // gamma (tau - beta z)
  double theta;   // gamma k0 (z - beta tau)
  double ds_dz;   // -gamma beta
  double ds_dtau; // gamma
  double dth_dz;  // gamma k0
  double dth_dtau;// -gamma beta k0
};

Tube tube_for(const SpaceTimePoint& p, const CylParams& q) {
  return {std::abs(q.k0()), q.delta(), p.tau(), q.k0() * p.z(), 0.0, 1.0, q.k0(), 0.0};
}

Tube tube_for(const SpaceTimePoint& p, const FxwParams& q) {
  const double b = q.beta();
  const double g = q.gamma();
  return {std::abs(q.k0()),
          q.delta(),
          g * std::fma(-b, p.z(), p.tau()),
          q.k0() * (g * std::fma(-b, p.tau(), p.z())),
          -g * b,
          g,
          g * q.k0(),
          -g * b * q.k0()};
}

Complex tube_w(double rho, const Tube& t) {
  const Complex S{t.delta, t.s};
  return std::sqrt(rho * rho + S * S);
}

Complex tube_value(const SpaceTimePoint& p, const Tube& t) {
  const Complex w = tube_w(p.rho(), t);
  return std::exp(-t.kappa * w) / w * std::polar(1.0, t.theta);
}

Jet tube_jet(const SpaceTimePoint& p, const Tube& t, Scaling scaling) {
  const double rho = p.rho();
  const Complex S{t.delta, t.s};
  const Complex w = std::sqrt(rho * rho + S * S);

  // H(u) = exp(-kappa w)/w and its u-derivatives, u = w^2.
  const Complex G = scaling == Scaling::Unit ? t.delta * std::exp(-t.kappa * (w - t.delta)) / w
                                             : std::exp(-t.kappa * w) / w;
  const Complex inv_w = 1.0 / w;
  const Complex k1 = t.kappa + inv_w;
  const Complex H = G;
  const Complex Hu = -G * k1 * inv_w * 0.5;
  const Complex Huu = G * (k1 * k1 + k1 * inv_w + inv_w * inv_w) * inv_w * inv_w * 0.25;

  const Complex uz = 2.0 * S * I * t.ds_dz;
  const Complex ut = 2.0 * S * I * t.ds_dtau;
  const double uzz = -2.0 * t.ds_dz * t.ds_dz;
  const double utt = -2.0 * t.ds_dtau * t.ds_dtau;
  const Complex E = std::polar(1.0, t.theta);
  const double ez = t.dth_dz;
  const double et = t.dth_dtau;

  Jet j;
  j.value = H * E;
  j.d_rho = 2.0 * rho * Hu * E;
  j.d_z = (Hu * uz + I * ez * H) * E;
  j.d_tau = (Hu * ut + I * et * H) * E;
  j.d_rho_rho = (4.0 * rho * rho * Huu + 2.0 * Hu) * E;
  j.d_rho_z = 2.0 * rho * (Huu * uz + I * ez * Hu) * E;
  j.d_rho_tau = 2.0 * rho * (Huu * ut + I * et * Hu) * E;
  j.d_z_z = (Huu * uz * uz + Hu * uzz + 2.0 * I * ez * Hu * uz - ez * ez * H) * E;
  j.d_tau_tau = (Huu * ut * ut + Hu * utt + 2.0 * I * et * Hu * ut - et * et * H) * E;
  j.lap_perp = 4.0 * (rho * rho * Huu + Hu) * E;
  return j;
}

Jet fwm_jet(const SpaceTimePoint& p, const FwmParams& prm, Scaling scaling) {
  const double rho = p.rho();
  const double l = prm.l();
  const Complex q{prm.a(), -(p.z() - p.tau())};
  const Complex inv_q = 1.0 / q;
  const double r2 = rho * rho;

  Complex A = std::exp(-r2 * inv_q / (2.0 * l)) * inv_q;
  if (scaling == Scaling::Unit) A *= prm.a();
  const Complex P = std::polar(1.0, -(p.z() + p.tau()) / (2.0 * l));
  const Complex c = -I / (2.0 * l);

  const Complex phi = r2 * inv_q * inv_q / (2.0 * l) - inv_q;
  const Complex dphi = -r2 * inv_q * inv_q * inv_q / l + inv_q * inv_q;
  const Complex Aq = A * phi;
  const Complex Aqq = A * (phi * phi + dphi);
  const Complex Ar = -rho * inv_q / l * A;
  const Complex Arq = A * rho * inv_q / l * (inv_q - phi);

  Jet j;
  j.value = A * P;
  j.d_rho = Ar * P;
  j.d_z = (-I * Aq + c * A) * P;
  j.d_tau = (I * Aq + c * A) * P;
  j.d_rho_rho = (-inv_q / l + r2 * inv_q * inv_q / (l * l)) * A * P;
  j.d_rho_z = (-I * Arq + c * Ar) * P;
  j.d_rho_tau = (I * Arq + c * Ar) * P;
  j.d_z_z = (-Aqq - 2.0 * I * c * Aq + c * c * A) * P;
  j.d_tau_tau = (-Aqq + 2.0 * I * c * Aq + c * c * A) * P;
  j.lap_perp = (-2.0 * inv_q / l + r2 * inv_q * inv_q / (l * l)) * A * P;
  return j;
}

}  // namespace

ComplexAmplitude eval_cyl(const SpaceTimePoint& p, const CylParams& q) {
  return tube_value(p, tube_for(p, q));
}

ComplexAmplitude eval_fxw(const SpaceTimePoint& p, const FxwParams& q) {
  return tube_value(p, tube_for(p, q));
}

ComplexAmplitude eval_fwm(const SpaceTimePoint& p, const FwmParams& q) {
  const Complex denom{q.a(), -(p.z() - p.tau())};
  const double r2 = p.rho() * p.rho();
  return std::exp(-r2 / (2.0 * q.l() * denom)) / denom *
         std::polar(1.0, -(p.z() + p.tau()) / (2.0 * q.l()));
}

ComplexAmplitude evaluate(const SpaceTimePoint& p, const Family& family) {
  return std::visit(
      [&](const auto& q) -> ComplexAmplitude {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, CylParams>) return eval_cyl(p, q);
        else if constexpr (std::is_same_v<T, FxwParams>) return eval_fxw(p, q);
        else return eval_fwm(p, q);
      },
      family);
}

SpaceTimePoint boost_map(const SpaceTimePoint& p, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw Error(ErrorCode::InvalidArgument, "boost beta must lie in (0, 1)");
  return boost_map_signed(p, beta);
}

SpaceTimePoint boost_map_signed(const SpaceTimePoint& p, double beta) {
  if (!(std::abs(beta) < 1.0)) throw Error(ErrorCode::InvalidArgument, "|beta| must be below 1");
  const double g = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
  return {p.rho(), g * std::fma(-beta, p.tau(), p.z()), g * std::fma(-beta, p.z(), p.tau())};
}

double reference_modulus(const Family& family) {
  if (const auto* c = std::get_if<CylParams>(&family))
    return std::exp(-std::abs(c->k0()) * c->delta()) / c->delta();
  if (const auto* x = std::get_if<FxwParams>(&family))
    return std::exp(-std::abs(x->k0()) * x->delta()) / x->delta();
  return 1.0 / std::get<FwmParams>(family).a();
}

Jet evaluate_jet(const SpaceTimePoint& p, const Family& family, Scaling scaling) {
  if (const auto* c = std::get_if<CylParams>(&family)) return tube_jet(p, tube_for(p, *c), scaling);
  if (const auto* x = std::get_if<FxwParams>(&family)) return tube_jet(p, tube_for(p, *x), scaling);
  return fwm_jet(p, std::get<FwmParams>(family), scaling);
}

}  // namespace locwave
