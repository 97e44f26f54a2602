#pragma once

#include "locwave/types.hpp"

namespace locwave {

/// Tube pulse exp(-|k0| w)/w * exp(i k0 z), w = sqrt(rho^2 + (delta + i tau)^2) on the principal branch.
ComplexAmplitude eval_cyl(const SpaceTimePoint& p, const CylParams& q);

/// Focused X wave; identical to eval_cyl evaluated at boost_map(p, beta).
ComplexAmplitude eval_fxw(const SpaceTimePoint& p, const FxwParams& q);

/// Focus wave mode exp[-rho^2 / (2 l (a - i(z - tau)))] / (a - i(z - tau)) * exp[-i (z + tau) / (2 l)].
ComplexAmplitude eval_fwm(const SpaceTimePoint& p, const FwmParams& q);

ComplexAmplitude evaluate(const SpaceTimePoint& p, const Family& family);

/// Axial boost (rho, gamma (z - beta tau), gamma (tau - beta z)). beta must lie in (0, 1).
SpaceTimePoint boost_map(const SpaceTimePoint& p, double beta);

/// Boost with a signed velocity, |beta| < 1. boost_map_signed(boost_map(p, b), -b) restores p.
SpaceTimePoint boost_map_signed(const SpaceTimePoint& p, double beta);

/// |Psi(0,0,0)| for the family, the reference used to normalize Z.
double reference_modulus(const Family& family);

/// Value and the closed-form derivatives of Psi that the field construction needs.
///
/// lap_perp is (1/rho) d/drho (rho dPsi/drho), evaluated without dividing by rho so it
/// stays regular on the axis.
struct Jet {
  Complex value;
  Complex d_rho;
  Complex d_z;
  Complex d_tau;
  Complex d_rho_rho;
  Complex d_rho_z;
  Complex d_rho_tau;
  Complex d_z_z;
  Complex d_tau_tau;
  Complex lap_perp;
};

enum class Scaling {
  Raw,
  /// Divide by reference_modulus() without forming the (possibly underflowing) raw value.
  Unit,
};

Jet evaluate_jet(const SpaceTimePoint& p, const Family& family, Scaling scaling = Scaling::Raw);

}  // namespace locwave
