#include "locwave/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "locwave/solutions.hpp"

namespace locwave {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Samples {
  std::vector<double> rho;
  std::vector<double> log_value;
};

FalloffFit least_squares(const Samples& s, FalloffModel model) {
  const auto n = static_cast<Eigen::Index>(s.rho.size());
  const int cols = model == FalloffModel::Power ? 2 : 3;
  Eigen::MatrixXd A(n, cols);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = s.rho[static_cast<std::size_t>(i)];
    A(i, 0) = 1.0;
    A(i, 1) = std::log(r);
    if (model == FalloffModel::Exponential) A(i, 2) = -r;
    if (model == FalloffModel::Gaussian) A(i, 2) = -r * r;
    b(i) = s.log_value[static_cast<std::size_t>(i)];
  }
  // Equilibrate columns; rho^2 and 1 can differ by orders of magnitude.
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (int c = 0; c < cols; ++c) A.col(c) /= scale(c);
  Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd resid = A * x - b;
  x = x.cwiseQuotient(scale);

  FalloffFit fit;
  fit.model = model;
  fit.log_coefficient = x(0);
  if (model == FalloffModel::Power) {
    fit.rate = -x(1);
    fit.prefactor_power = 0.0;
  } else {
    fit.prefactor_power = x(1);
    fit.rate = x(2);
  }
  fit.rms_residual = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  fit.points = s.rho.size();
  fit.rho_min = s.rho.front();
  fit.rho_max = s.rho.back();
  return fit;
}

// Decay term must account for at least one e-fold across the window.
bool admissible(const FalloffFit& f) {
  if (f.model == FalloffModel::Power) return true;
  if (!(f.rate > 0.0)) return false;
  const double span = f.model == FalloffModel::Exponential ? f.rho_max - f.rho_min
                                                           : f.rho_max * f.rho_max - f.rho_min * f.rho_min;
  return f.rate * span >= 1.0;
}

Samples window_samples(const RadialProfile& profile, FitWindow window) {
  if (!(window.rho_min <= window.rho_max))
    throw Error(ErrorCode::InvalidArgument, "fit window must satisfy rho_min <= rho_max");
  const double slack = 1e-12 * std::max(1.0, std::abs(window.rho_max));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double r = profile.rho()[i];
    if (r >= window.rho_min - slack && r <= window.rho_max + slack) idx.push_back(i);
  }
  if (idx.size() < kMinFitPoints)
    throw Error(ErrorCode::WindowTooNarrow, "window holds " + std::to_string(idx.size()) + " samples, need " +
                                                std::to_string(kMinFitPoints));

  double vmax = 0.0;
  for (auto i : idx) vmax = std::max(vmax, profile.value()[i]);
  const double floor = std::max(kAbsoluteFloor, kRelativeFloor * vmax);

  Samples s;
  for (auto i : idx) {
    const double r = profile.rho()[i];
    const double v = profile.value()[i];
    if (r > 0.0 && std::isfinite(v) && v > floor) {
      s.rho.push_back(r);
      s.log_value.push_back(std::log(v));
    }
  }
  if (s.rho.size() < kMinFitPoints)
    throw Error(ErrorCode::DynamicRangeExceeded,
                "only " + std::to_string(s.rho.size()) + " samples in the window lie above the noise floor");
  return s;
}

Complex unit_psi(const SpaceTimePoint& p, const Family& family) {
  return evaluate_jet(p, family, Scaling::Unit).value;
}

void check_step(double h, double coord) {
  if (!(h > 64.0 * kEps * std::max(1.0, std::abs(coord))))
    throw Error(ErrorCode::StepUnderflow, "residual step is below machine resolution");
}

}  // namespace

RadialProfile::RadialProfile(std::vector<double> rho, std::vector<double> value, ProfileMeta meta)
    : rho_(std::move(rho)), value_(std::move(value)), meta_(std::move(meta)) {
  if (rho_.size() != value_.size()) throw Error(ErrorCode::InvalidArgument, "rho and value lengths differ");
  if (rho_.size() < kMinSamples)
    throw Error(ErrorCode::InvalidArgument, "a radial profile needs at least 16 samples");
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    if (!(std::isfinite(rho_[i]) && rho_[i] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be finite and >= 0");
    if (i > 0 && !(rho_[i] > rho_[i - 1])) throw Error(ErrorCode::InvalidArgument, "rho must be strictly increasing");
    if (!(value_[i] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "profile values must be >= 0");
  }
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least two points");
  if (!(std::isfinite(lo) && std::isfinite(hi) && hi > lo))
    throw Error(ErrorCode::InvalidArgument, "grid range must be finite with hi > lo");
  std::vector<double> g(count);
  const double n = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + (hi - lo) * (static_cast<double>(i) / n);
  g.back() = hi;
  return g;
}

RadialProfile radial_profile(const Family& family, Quantity quantity, double z, double tau,
                             const std::vector<double>& rho_grid) {
  const auto sample = [&](double rho) -> double {
    const SpaceTimePoint p(rho, z, tau);
    switch (quantity) {
      case Quantity::Z: return std::abs(superpotential(p, family));
      case Quantity::DtauZ: return std::abs(dtau_superpotential(p, family));
      case Quantity::F2: return energy_density(p, family);
    }
    return 0.0;
  };

  double norm = 1.0;
  if (quantity != Quantity::Z) {
    const double axis = sample(0.0);
    if (axis > 0.0 && std::isfinite(axis)) norm = axis;
  }
  std::vector<double> values;
  values.reserve(rho_grid.size());
  for (double rho : rho_grid) values.push_back(sample(rho) / norm);
  return RadialProfile(rho_grid, std::move(values), {family_name(family), to_string(quantity), z, tau});
}

const char* to_string(FalloffModel m) {
  switch (m) {
    case FalloffModel::Power: return "POWER";
    case FalloffModel::Exponential: return "EXPONENTIAL";
    case FalloffModel::Gaussian: return "GAUSSIAN";
  }
  return "?";
}

FalloffFit fit_falloff(const RadialProfile& profile, FitWindow window, ModelChoice choice) {
  const Samples s = window_samples(profile, window);
  switch (choice) {
    case ModelChoice::Power: return least_squares(s, FalloffModel::Power);
    case ModelChoice::Exponential: return least_squares(s, FalloffModel::Exponential);
    case ModelChoice::Gaussian: return least_squares(s, FalloffModel::Gaussian);
    case ModelChoice::Auto: break;
  }

  FalloffFit best = least_squares(s, FalloffModel::Power);
  for (FalloffModel m : {FalloffModel::Exponential, FalloffModel::Gaussian}) {
    const FalloffFit f = least_squares(s, m);
    if (admissible(f) && kSelectionMargin * f.rms_residual < best.rms_residual) best = f;
  }
  return best;
}

FitWindow check_localization_conditions(const RadialProfile& profile, const Family& family) {
  const double z = profile.meta().z;
  const double tau = profile.meta().tau;
  double start = 0.0;
  if (const auto* c = std::get_if<CylParams>(&family)) {
    start = 5.0 * std::max({std::abs(tau), c->delta(), c->length()});
  } else if (const auto* x = std::get_if<FxwParams>(&family)) {
    const double tau_eff = x->gamma() * std::fma(-x->beta(), z, tau);
    start = 5.0 * std::max({std::abs(tau_eff), x->delta(), x->length()});
  } else {
    const auto& f = std::get<FwmParams>(family);
    start = 5.0 * std::sqrt(f.l() * std::hypot(f.a(), z - tau));
  }
  const double end = profile.rho().back();
  if (start > end)
    throw Error(ErrorCode::EmptyWindow, "asymptotic regime starts at rho = " + std::to_string(start) +
                                            " beyond the profile end " + std::to_string(end));
  return {start, end};
}

FalloffFit fit_in_regime(const RadialProfile& profile, const Family& family, ModelChoice choice) {
  return fit_falloff(profile, check_localization_conditions(profile, family), choice);
}

double wave_residual(const ScalarField& field, const SpaceTimePoint& p, double h) {
  if (!(h > 0.0 && std::isfinite(h))) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  check_step(h, p.rho());
  check_step(h, p.z());
  check_step(h, p.tau());
  const double r = p.rho();
  const double z = p.z();
  const double t = p.tau();
  // Axisymmetric fields are even in rho; reflect stencil points that cross the axis.
  const auto f = [&](double rr, double zz, double tt) { return field(SpaceTimePoint(std::abs(rr), zz, tt)); };

  const Complex c = f(r, z, t);
  const double h2 = h * h;
  const Complex d_rr = (f(r + h, z, t) - 2.0 * c + f(r - h, z, t)) / h2;
  const Complex d_zz = (f(r, z + h, t) - 2.0 * c + f(r, z - h, t)) / h2;
  const Complex d_tt = (f(r, z, t + h) - 2.0 * c + f(r, z, t - h)) / h2;
  const Complex lap_perp = r > 0.0 ? d_rr + (f(r + h, z, t) - f(r - h, z, t)) / (2.0 * h * r) : 2.0 * d_rr;
  return std::abs(lap_perp + d_zz - d_tt);
}

double wave_residual(const Family& family, const SpaceTimePoint& p, double h) {
  return wave_residual([&](const SpaceTimePoint& q) { return unit_psi(q, family); }, p, h);
}

double residual_convergence_order(const Family& family, const SpaceTimePoint& p, double h) {
  return std::log2(wave_residual(family, p, h) / wave_residual(family, p, 0.5 * h));
}

TradeoffResult pw_tradeoff_demo(const Spectrum& spectrum, const std::vector<double>& r_grid,
                                const QuadratureSpec& spec) {
  std::vector<double> zv;
  std::vector<double> dv;
  zv.reserve(r_grid.size());
  dv.reserve(r_grid.size());
  const auto resolved = [](const QuadratureResult& q) {
    const double m = std::abs(q.value);
    return m > q.error_estimate ? m : 0.0;
  };
  for (double r : r_grid) {
    zv.push_back(resolved(spherical_standing(r, 0.0, spectrum, spec)));
    dv.push_back(resolved(spherical_standing_dtau(r, 0.0, spectrum, spec)));
  }
  RadialProfile zp(r_grid, std::move(zv), {"spherical", "Z", 0.0, 0.0});
  RadialProfile dp(r_grid, std::move(dv), {"spherical", "dtauZ", 0.0, 0.0});
  const FitWindow w{r_grid.front(), r_grid.back()};
  FalloffFit zf = fit_falloff(zp, w);
  FalloffFit df = fit_falloff(dp, w);
  return {std::move(zp), std::move(dp), zf, df};
}

}  // namespace locwave
