#pragma once

#include "locwave/solutions.hpp"
#include "locwave/types.hpp"

namespace locwave {

/// Riemann-Silberstein vector in the cylindrical basis (rho-hat, phi-hat, z-hat).
struct RSVector {
  Complex f_rho;
  Complex f_phi;
  Complex f_z;

  double norm2() const { return std::norm(f_rho) + std::norm(f_phi) + std::norm(f_z); }
};

enum class DerivativeMode {
  ClosedForm,
  FiniteDifference,
  /// Closed form, verified against finite differences; throws CrossCheckFailed on disagreement.
  CrossCheck,
};

struct DerivativeScheme {
  /// Finite-difference step relative to the local length scale of the solution.
  double step = 1e-3;
  DerivativeMode mode = DerivativeMode::ClosedForm;

  void validate() const;
};

/// Relative tolerances enforced by DerivativeMode::CrossCheck.
inline constexpr double kDtauCrossCheckTol = 1e-8;
inline constexpr double kFieldCrossCheckTol = 1e-6;

/// Z = m Psi with m along z-hat, scaled so that |Z(0,0,0)| = 1. Returns the z-hat component.
ComplexAmplitude superpotential(const SpaceTimePoint& p, const Family& family);

ComplexAmplitude dtau_superpotential(const SpaceTimePoint& p, const Family& family,
                                     const DerivativeScheme& scheme = {});

/// F = curl[i dZ/dtau + curl Z]. For axisymmetric Psi this is
/// F = Psi_{rho z} rho-hat - i Psi_{rho tau} phi-hat - (1/rho) d_rho(rho Psi_rho) z-hat.
RSVector rs_vector(const SpaceTimePoint& p, const Family& family, const DerivativeScheme& scheme = {});

/// |F|^2, relative to the |Z(0,0,0)| = 1 normalization.
double energy_density(const SpaceTimePoint& p, const Family& family, const DerivativeScheme& scheme = {});

/// Length over which the family's Psi varies appreciably near p; finite-difference steps scale with it.
double local_length_scale(const SpaceTimePoint& p, const Family& family);

}  // namespace locwave
