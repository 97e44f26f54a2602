#pragma once

#include <cstddef>
#include <functional>

#include "locwave/types.hpp"

namespace locwave {

struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 1e-17;
  /// Bisections allowed on top of the mandatory oscillation partition.
  int max_subdivisions = 50000;
  /// Truncation multiplier: the spectral weight is cut where it has decayed by exp(-k_max_margin).
  double k_max_margin = 45.0;

  void validate() const;
};

struct QuadratureResult {
  Complex value;
  /// Truncation estimate plus a roundoff allowance; an upper bound in practice.
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

using Integrand = std::function<Complex(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
///
/// The interval is first cut into equal panels no wider than max_panel_width, then the
/// panel with the largest error is bisected until the total truncation estimate meets
/// max(abs_tol, rel_tol * |I|). Throws NonConvergence when the bisection budget runs out.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, double max_panel_width,
                                    const QuadratureSpec& spec);

}  // namespace locwave
