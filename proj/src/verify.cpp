#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "locwave/cli.hpp"
#include "locwave/diagnostics.hpp"
#include "locwave/fields.hpp"
#include "locwave/solutions.hpp"
#include "locwave/spectra.hpp"

namespace locwave::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Platform-independent uniform draws from a fixed-seed engine.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : eng_(seed) {}
  double operator()(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 eng_;
};

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Check at_most(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured, tol, measured <= tol, std::move(detail)};
}

Check at_least(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured, tol, measured >= tol, std::move(detail)};
}

Check relative(std::string name, double measured, double expected, double rel_tol) {
  const double err = std::abs(measured - expected) / std::abs(expected);
  return {std::move(name), measured, rel_tol, err <= rel_tol,
          "expected " + format_number(expected) + ", relative error " + format_number(err)};
}

Check absolute(std::string name, double measured, double expected, double abs_tol) {
  const double err = std::abs(measured - expected);
  return {std::move(name), measured, abs_tol, err <= abs_tol, "expected " + format_number(expected)};
}

Check classified(std::string name, const FalloffFit& fit, FalloffModel expected) {
  const bool ok = fit.model == expected;
  return {std::move(name), ok ? 1.0 : 0.0, 1.0, ok,
          std::string("got ") + to_string(fit.model) + ", expected " + to_string(expected)};
}

VerifyReport quadrature_suite(std::uint64_t seed) {
  VerifyReport r{"quadrature", seed, {}};
  Draw draw(seed);
  double worst = 0.0;
  int honest = 0;
  constexpr int kPoints = 200;
  for (int i = 0; i < kPoints; ++i) {
    const double rho = draw(0.0, 30.0);
    const double z = draw(-10.0, 10.0);
    const double tau = draw(-5.0, 5.0);
    const CylParams q(i % 4 < 2 ? 1.0 : -1.0, i % 2 == 0 ? 0.1 : 1.0);
    const SpaceTimePoint p(rho, z, tau);
    const QuadratureResult num = quad_cyl(p, q);
    const Complex exact = eval_cyl(p, q);
    const double dev = std::abs(num.value - exact);
    worst = std::max(worst, dev / std::max(1e-8 * std::abs(exact), 1e-14));
    if (num.error_estimate >= dev) ++honest;
  }
  r.checks.push_back(at_most("quad_cyl_vs_eval_cyl_deviation_over_allowance", worst, 1.0,
                             "allowance max(1e-8 relative, 1e-14 absolute), 200 points"));
  r.checks.push_back(at_least("error_estimate_covers_deviation_fraction", static_cast<double>(honest) / kPoints, 0.95));

  double pk = 0.0;
  for (double x : {-100.0, -10.0, -1.0, 0.0, 0.5, 3.0, 30.0, 100.0}) {
    const double delta = 1.0;
    const Complex exact = 1.0 / (kTwoPi * Complex(delta, -x));
    pk = std::max(pk, std::abs(packet_1d(x, Spectrum::exponential(delta)).value - exact) / std::abs(exact));
  }
  r.checks.push_back(at_most("packet_1d_exponential_relative_error", pk, 1e-10));

  double sp = 0.0;
  for (double rr : {0.0, 0.5, 1.0, 10.0, 100.0})
    for (double tau : {-10.0, 0.0, 2.0, 10.0}) {
      const Complex s = Complex(1.0, tau);
      const Complex exact = 1.0 / (s * s + rr * rr);
      sp = std::max(sp, std::abs(spherical_standing(rr, tau, Spectrum::exponential(1.0)).value - exact) / std::abs(exact));
    }
  r.checks.push_back(at_most("spherical_standing_exponential_relative_error", sp, 1e-10));
  return r;
}

VerifyReport lorentz_suite(std::uint64_t seed) {
  VerifyReport r{"lorentz", seed, {}};
  Draw draw(seed);
  for (double beta : {0.5, 0.8, 0.995}) {
    double worst = 0.0;
    double roundtrip = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double k0 = (i % 2 == 0 ? 1.0 : -1.0) * draw(0.5, 2.0);
      const double delta = draw(0.05, 2.0);
      const SpaceTimePoint p(draw(0.0, 20.0), draw(-20.0, 20.0), draw(-20.0, 20.0));
      const FxwParams fx(k0, delta, beta);
      worst = std::max(worst, std::abs(eval_fxw(p, fx) - eval_cyl(boost_map(p, beta), fx.rest_frame())));
      const SpaceTimePoint back = boost_map_signed(boost_map(p, beta), -beta);
      roundtrip = std::max({roundtrip, std::abs(back.z() - p.z()), std::abs(back.tau() - p.tau())});
    }
    r.checks.push_back(at_most("fxw_equals_boosted_cyl_beta_" + label(beta), worst, 1e-12, "100 points, max |difference|"));
    r.checks.push_back(at_most("boost_roundtrip_beta_" + label(beta), roundtrip, 1e-9, "100 points, coordinates up to 20"));
  }
  const SpaceTimePoint b = boost_map(SpaceTimePoint(1.0, 1.0, 1.0), 0.8);
  r.checks.push_back(absolute("boost_map_example_z", b.z(), 1.0 / 3.0, 1e-15));
  r.checks.push_back(absolute("boost_map_example_tau", b.tau(), 1.0 / 3.0, 1e-15));
  return r;
}

double waist_rate(const FxwParams& q, double tau) {
  const Family f = q;
  const auto prof = radial_profile(f, Quantity::Z, tau / q.beta(), tau, linear_grid(0.0, 30.0, 601));
  return fit_falloff(prof, {5.0, 25.0}).rate;
}

VerifyReport invariance_suite(std::uint64_t seed) {
  VerifyReport r{"invariance", seed, {}};
  Draw draw(seed);

  // Wide X wave (delta = 30 lambda, gamma = 10); normalized so |Z(0,0,0)| = 1.
  const FxwParams wide(-1.0, 30.0 * kTwoPi, 0.995);
  const double lambda = wide.wavelength();
  double fxw_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SpaceTimePoint p(draw(0.0, 50.0) * lambda, draw(-50.0, 50.0) * lambda, draw(-50.0, 50.0) * lambda);
    const double d = draw(-1e3, 1e3) * lambda;
    const SpaceTimePoint moved(p.rho(), p.z() + d / wide.beta(), p.tau() + d);
    fxw_dev = std::max(fxw_dev, std::abs(std::abs(superpotential(p, wide)) - std::abs(superpotential(moved, wide))));
  }
  r.checks.push_back(at_most("fxw_rigid_motion_modulus", fxw_dev, 1e-12, "delta/beta shift in z, |delta| <= 1e3 lambda"));

  const FwmParams fwm(1.0, 1.0);
  double fwm_dev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SpaceTimePoint p(draw(0.0, 5.0), draw(-5.0, 5.0), draw(-5.0, 5.0));
    const double d = draw(-1e3, 1e3);
    const SpaceTimePoint moved(p.rho(), p.z() + d, p.tau() + d);
    fwm_dev = std::max(fwm_dev, std::abs(std::abs(superpotential(p, fwm)) - std::abs(superpotential(moved, fwm))));
  }
  r.checks.push_back(at_most("fwm_rigid_motion_modulus", fwm_dev, 1e-12, "luminal shift, |delta| <= 1e3 l"));

  const FxwParams narrow(1.0, 0.1, 0.8);
  const double lam = narrow.wavelength();
  const double r0 = waist_rate(narrow, 0.0);
  double spread = 0.0;
  for (double t : {50.0 * lam, 500.0 * lam}) spread = std::max(spread, std::abs(waist_rate(narrow, t) - r0) / r0);
  r.checks.push_back(at_most("fxw_waist_rate_persistence", spread, 0.02, "tau in {0, 50, 500} lambda"));
  return r;
}

VerifyReport residual_suite(std::uint64_t seed) {
  VerifyReport r{"residual", seed, {}};
  Draw draw(seed);
  const std::pair<const char*, Family> families[] = {
      {"cyl", CylParams(1.0, 0.1)}, {"fxw", FxwParams(1.0, 0.1, 0.8)}, {"fwm", FwmParams(1.0, 1.0)}};
  for (const auto& [name, fam] : families) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const SpaceTimePoint p(draw(0.5, 5.0), draw(-2.0, 2.0), draw(-2.0, 2.0));
      const double order = residual_convergence_order(fam, p, 1e-2 * family_length(fam));
      worst = std::max(worst, std::abs(order - 2.0));
    }
    r.checks.push_back(at_most(std::string("residual_order_deviation_") + name, worst, 0.2, "20 points, |order - 2|"));
  }
  const ScalarField plane = [](const SpaceTimePoint& p) { return std::polar(1.0, p.z() - p.tau()); };
  r.checks.push_back(at_most("plane_wave_residual", wave_residual(plane, SpaceTimePoint(1.0, 0.3, 0.2), 1e-3), 1e-8));
  const ScalarField rho2 = [](const SpaceTimePoint& p) { return Complex(p.rho() * p.rho()); };
  r.checks.push_back(absolute("static_rho_squared_residual", wave_residual(rho2, SpaceTimePoint(1.0, 0.3, 0.2), 1e-3), 4.0, 1e-6));
  return r;
}

VerifyReport falloff_suite(std::uint64_t seed) {
  VerifyReport r{"falloff", seed, {}};
  const Family cyl = CylParams(1.0, 0.1);
  const auto g30 = linear_grid(0.0, 30.0, 601);

  const auto a = fit_falloff(radial_profile(cyl, Quantity::Z, 0.0, 0.0, g30), {5.0, 25.0});
  r.checks.push_back(classified("cyl_Z_model", a, FalloffModel::Exponential));
  r.checks.push_back(relative("cyl_Z_rate", a.rate, 1.0, 0.02));
  r.checks.push_back(absolute("cyl_Z_prefactor_power", a.prefactor_power, -1.0, 0.1));

  const auto d = fit_in_regime(radial_profile(cyl, Quantity::DtauZ, 0.0, 0.0, g30), cyl);
  r.checks.push_back(classified("cyl_dtauZ_model", d, FalloffModel::Exponential));
  r.checks.push_back(relative("cyl_dtauZ_rate", d.rate, 1.0, 0.02));

  const auto f2 = fit_falloff(radial_profile(cyl, Quantity::F2, 0.0, 0.0, linear_grid(0.0, 40.0, 801)), {20.0, 40.0});
  r.checks.push_back(classified("cyl_F2_model", f2, FalloffModel::Exponential));
  r.checks.push_back(relative("cyl_F2_rate", f2.rate, 2.0, 0.02));
  r.checks.push_back(absolute("cyl_F2_prefactor_power", f2.prefactor_power, -2.0, 0.3));

  const auto b = fit_in_regime(radial_profile(cyl, Quantity::Z, 0.0, 2.5, g30), cyl);
  r.checks.push_back(classified("cyl_Z_tau_2.5_model", b, FalloffModel::Exponential));

  const Family fxw = FxwParams(1.0, 0.1, 0.8);
  const auto c25 = fit_in_regime(radial_profile(fxw, Quantity::Z, 0.0, 2.5, g30), fxw);
  r.checks.push_back(classified("fxw_Z_tau_2.5_model", c25, FalloffModel::Exponential));

  const auto c = fit_in_regime(radial_profile(fxw, Quantity::Z, 0.0, 0.0, g30), fxw);
  r.checks.push_back(classified("fxw_waist_Z_model", c, FalloffModel::Exponential));
  r.checks.push_back(relative("fxw_waist_Z_rate", c.rate, 1.0, 0.02));

  const FwmParams fw(1.0, 1.0);
  const double s = std::sqrt(fw.l() * fw.a());
  const auto gf = linear_grid(0.0, 15.0 * s, 1501);
  const auto fz = fit_falloff(radial_profile(fw, Quantity::Z, 0.0, 0.0, gf), {5.0 * s, 12.0 * s});
  r.checks.push_back(classified("fwm_Z_model", fz, FalloffModel::Gaussian));
  r.checks.push_back(relative("fwm_Z_rate", fz.rate, 1.0 / (2.0 * fw.l() * fw.a()), 0.02));
  const auto ff = fit_falloff(radial_profile(fw, Quantity::F2, 0.0, 0.0, gf), {10.0 * s, 14.0 * s});
  r.checks.push_back(classified("fwm_F2_model", ff, FalloffModel::Gaussian));
  r.checks.push_back(relative("fwm_F2_rate", ff.rate, 1.0 / (fw.l() * fw.a()), 0.02));
  r.checks.push_back(absolute("fwm_F2_prefactor_power", ff.prefactor_power, 6.0, 0.3));
  return r;
}

VerifyReport tradeoff_suite(std::uint64_t seed) {
  VerifyReport r{"pw-tradeoff", seed, {}};
  const auto grid = linear_grid(2.0, 40.0, 381);
  const auto g = pw_tradeoff_demo(Spectrum::gaussian_odd(), grid);
  r.checks.push_back(classified("gaussian_odd_Z_model", g.z_fit, FalloffModel::Gaussian));
  r.checks.push_back(relative("gaussian_odd_Z_rate", g.z_fit.rate, 0.5, 0.02));
  r.checks.push_back(classified("gaussian_odd_dtauZ_model", g.dtau_fit, FalloffModel::Power));
  const auto e = pw_tradeoff_demo(Spectrum::exponential(1.0), grid);
  r.checks.push_back(classified("exponential_Z_model", e.z_fit, FalloffModel::Power));
  r.checks.push_back(classified("exponential_dtauZ_model", e.dtau_fit, FalloffModel::Power));
  return r;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"quadrature", "lorentz", "invariance", "residual", "falloff", "pw-tradeoff"};
  return names;
}

VerifyReport cmd_verify(const std::string& suite, std::uint64_t seed) {
  if (suite == "quadrature") return quadrature_suite(seed);
  if (suite == "lorentz") return lorentz_suite(seed);
  if (suite == "invariance") return invariance_suite(seed);
  if (suite == "residual") return residual_suite(seed);
  if (suite == "falloff") return falloff_suite(seed);
  if (suite == "pw-tradeoff") return tradeoff_suite(seed);
  throw UsageError("unknown suite '" + suite + "'");
}

}  // namespace locwave::cli
