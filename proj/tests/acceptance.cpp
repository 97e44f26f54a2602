// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "locwave/cli.hpp"
#include "locwave/diagnostics.hpp"
#include "locwave/fields.hpp"
#include "locwave/solutions.hpp"
#include "locwave/spectra.hpp"
#include "oracles.hpp"

using namespace locwave;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

bool within_rel(double v, double expected, double tol) { return std::abs(v - expected) <= tol * std::abs(expected); }

void oracle_equivalence() {
  constexpr double kRel = 1e-8, kAbs = 1e-14, kSeconds = 10.0;
  oracle::Uniform u(kSeed);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const SpaceTimePoint p(u(0.0, 30.0), u(-10.0, 10.0), u(-5.0, 5.0));
    const CylParams q(i % 4 < 2 ? 1.0 : -1.0, i % 2 == 0 ? 0.1 : 1.0);
    const Complex exact = eval_cyl(p, q);
    const double dev = std::abs(quad_cyl(p, q).value - exact);
    worst = std::max(worst, dev / std::max(kRel * std::abs(exact), kAbs));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(1, "oracle equivalence quad_cyl vs eval_cyl", worst <= 1.0 && secs < kSeconds,
         fmt("max deviation/allowance %.3g (<= 1), %.2f s (< %.0f s)", worst, secs, kSeconds));
}

void tube_profiles() {
  constexpr double kRate = 0.02, kPow = 0.1;
  const Family cyl = CylParams(1.0, 0.1);
  const Family fxw = FxwParams(1.0, 0.1, 0.8);
  const auto grid = linear_grid(0.0, 30.0, 601);
  const auto a = fit_falloff(radial_profile(cyl, Quantity::Z, 0.0, 0.0, grid), {5.0, 25.0});
  const auto d = fit_in_regime(radial_profile(cyl, Quantity::DtauZ, 0.0, 0.0, grid), cyl);
  const auto b = fit_in_regime(radial_profile(cyl, Quantity::Z, 0.0, 2.5, grid), cyl);
  const auto c = fit_in_regime(radial_profile(fxw, Quantity::Z, 0.0, 2.5, grid), fxw);
  const bool pass = a.model == FalloffModel::Exponential && within_rel(a.rate, 1.0, kRate) &&
                    std::abs(a.prefactor_power + 1.0) <= kPow && d.model == FalloffModel::Exponential &&
                    within_rel(d.rate, 1.0, kRate) && b.model == FalloffModel::Exponential &&
                    c.model == FalloffModel::Exponential;
  report(2, "tube and X-wave profiles", pass,
         fmt("|Z| rate %.5f q %.4f, |dZ/dtau| rate %.5f", a.rate, a.prefactor_power, d.rate) +
             "; tau = 2.5 l: tube " + to_string(b.model) + ", FXW " + to_string(c.model));
}

void energy_density_cyl() {
  constexpr double kRate = 0.02, kPow = 0.3;
  // Asymptotic window: the O(1/rho) correction biases q on windows starting near 5 l.
  const Family cyl = CylParams(1.0, 0.1);
  const auto f = fit_falloff(radial_profile(cyl, Quantity::F2, 0.0, 0.0, linear_grid(0.0, 40.0, 801)), {20.0, 40.0});
  const bool pass = f.model == FalloffModel::Exponential && within_rel(f.rate, 2.0, kRate) &&
                    std::abs(f.prefactor_power + 2.0) <= kPow;
  report(3, "cylindrical |F|^2 falloff", pass,
         std::string(to_string(f.model)) + fmt(" rate %.5f (2 +/- 2%%), q %.4f (-2 +/- 0.3) on [%.3g, %.3g]", f.rate,
                                               f.prefactor_power, f.rho_min, f.rho_max));
}

void fwm_gaussian() {
  constexpr double kRate = 0.02, kPow = 0.3;
  const FwmParams q(1.0, 1.0);
  const double s = std::sqrt(q.l() * q.a());
  const auto grid = linear_grid(0.0, 15.0 * s, 1501);
  const auto z = fit_falloff(radial_profile(q, Quantity::Z, 0.0, 0.0, grid), {5.0 * s, 12.0 * s});
  const auto f = fit_falloff(radial_profile(q, Quantity::F2, 0.0, 0.0, grid), {10.0 * s, 14.0 * s});
  const bool pass = z.model == FalloffModel::Gaussian && within_rel(z.rate, 0.5 / (q.l() * q.a()), kRate) &&
                    f.model == FalloffModel::Gaussian && within_rel(f.rate, 1.0 / (q.l() * q.a()), kRate) &&
                    std::abs(f.prefactor_power - 6.0) <= kPow;
  report(4, "FWM Gaussian localization", pass,
         fmt("|Z| rate %.5f (0.5), |F|^2 rate %.5f (1), q %.4f (6 +/- 0.3)", z.rate, f.rate, f.prefactor_power));
}

void lorentz_identity() {
  constexpr double kAbs = 1e-12, kMap = 1e-13;
  oracle::Uniform u(kSeed + 5);
  double worst = 0.0, map_dev = 0.0;
  for (double beta : {0.5, 0.8, 0.995}) {
    for (int i = 0; i < 100; ++i) {
      const FxwParams q((i % 2 == 0 ? 1.0 : -1.0) * u(0.5, 2.0), u(0.05, 2.0), beta);
      const SpaceTimePoint p(u(0.0, 20.0), u(-20.0, 20.0), u(-20.0, 20.0));
      const SpaceTimePoint b = boost_map(p, beta);
      const auto [zb, tb] = oracle::boost(p.z(), p.tau(), beta);
      map_dev = std::max({map_dev, std::abs(b.z() - zb) / (1.0 + std::abs(zb)), std::abs(b.tau() - tb) / (1.0 + std::abs(tb))});
      worst = std::max(worst, std::abs(eval_fxw(p, q) - eval_cyl(b, q.rest_frame())));
    }
  }
  report(5, "Lorentz identity", worst <= kAbs && map_dev <= kMap,
         fmt("max |FXW - boosted cyl| %.3g (<= 1e-12), boost map vs oracle %.3g", worst, map_dev));
}

void propagation_invariance() {
  constexpr double kAbs = 1e-12, kRate = 0.02;
  oracle::Uniform u(kSeed + 6);
  // Wide X wave (delta = 30 lambda, gamma = 10), Z normalized to 1 at the origin.
  const FxwParams wide(-1.0, 30.0 * kTwoPi, 0.995);
  const double lam = wide.wavelength();
  const FwmParams fwm(1.0, 1.0);
  double fx = 0.0, fw = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SpaceTimePoint p(u(0.0, 50.0) * lam, u(-50.0, 50.0) * lam, u(-50.0, 50.0) * lam);
    const double d = u(-1e3, 1e3) * lam;
    fx = std::max(fx, std::abs(std::abs(superpotential(p, wide)) -
                               std::abs(superpotential(SpaceTimePoint(p.rho(), p.z() + d / 0.995, p.tau() + d), wide))));
    const SpaceTimePoint r(u(0.0, 5.0), u(-5.0, 5.0), u(-5.0, 5.0));
    const double e = u(-1e3, 1e3);
    fw = std::max(fw, std::abs(std::abs(superpotential(r, fwm)) -
                               std::abs(superpotential(SpaceTimePoint(r.rho(), r.z() + e, r.tau() + e), fwm))));
  }
  const FxwParams narrow(1.0, 0.1, 0.8);
  const double lam1 = narrow.wavelength();
  double rates[3];
  int k = 0;
  for (double tau : {0.0, 50.0 * lam1, 500.0 * lam1})
    rates[k++] = fit_falloff(radial_profile(narrow, Quantity::Z, tau / 0.8, tau, linear_grid(0.0, 30.0, 601)), {5.0, 25.0}).rate;
  const double spread = std::max(std::abs(rates[1] - rates[0]), std::abs(rates[2] - rates[0])) / rates[0];
  report(6, "propagation invariance", fx <= kAbs && fw <= kAbs && spread <= kRate,
         fmt("FXW %.3g, FWM %.3g (<= 1e-12); waist rate spread %.3g (<= 2%%)", fx, fw, spread));
}

void residual_order() {
  constexpr double kTol = 0.2;
  oracle::Uniform u(kSeed + 7);
  const std::pair<const char*, Family> families[] = {
      {"cyl", CylParams(1.0, 0.1)}, {"fxw", FxwParams(1.0, 0.1, 0.8)}, {"fwm", FwmParams(1.0, 1.0)}};
  std::string detail;
  bool pass = true;
  for (const auto& [name, fam] : families) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const SpaceTimePoint p(u(0.5, 5.0), u(-2.0, 2.0), u(-2.0, 2.0));
      const double h = 1e-2 * family_length(fam);
      // Independent Cartesian stencil on the raw solution, then the library's cylindrical one.
      const auto f = [&](double x, double y, double z, double t) { return evaluate(SpaceTimePoint(std::hypot(x, y), z, t), fam); };
      const double ours = std::log2(oracle::cartesian_residual(f, p.rho(), p.z(), p.tau(), h) /
                                    oracle::cartesian_residual(f, p.rho(), p.z(), p.tau(), h / 2));
      const double lib = residual_convergence_order(fam, p, h);
      worst = std::max({worst, std::abs(ours - 2.0), std::abs(lib - 2.0)});
    }
    pass = pass && worst <= kTol;
    detail += name + fmt(" max |order-2| %.3g; ", worst);
  }
  report(7, "wave-equation residual order", pass, detail);
}

void paley_wiener() {
  constexpr double kRate = 0.02;
  const auto grid = linear_grid(2.0, 40.0, 381);
  const auto g = pw_tradeoff_demo(Spectrum::gaussian_odd(), grid);
  const auto e = pw_tradeoff_demo(Spectrum::exponential(1.0), grid);
  // The Z profile of the gaussian-odd spectrum is sqrt(pi/2) exp(-r^2/2) exactly.
  double dev = 0.0;
  for (double r : {2.0, 4.0, 6.0})
    dev = std::max(dev, std::abs(std::abs(spherical_standing(r, 0.0, Spectrum::gaussian_odd()).value) -
                                 oracle::gaussian_odd_sine_transform(r)) /
                            oracle::gaussian_odd_sine_transform(r));
  const bool pass = g.z_fit.model == FalloffModel::Gaussian && within_rel(g.z_fit.rate, 0.5, kRate) &&
                    g.dtau_fit.model == FalloffModel::Power && e.z_fit.model == FalloffModel::Power &&
                    e.dtau_fit.model == FalloffModel::Power && dev <= 1e-8;
  report(8, "Paley-Wiener tradeoff", pass,
         std::string("gaussian-odd ") + to_string(g.z_fit.model) + "/" + to_string(g.dtau_fit.model) + ", exponential " +
             to_string(e.z_fit.model) + "/" + to_string(e.dtau_fit.model) + fmt(", Z rate %.5f, oracle dev %.3g", g.z_fit.rate, dev));
}

void analytic_signal() {
  constexpr double kRel = 1e-10;
  const double delta = 1.0;
  const Spectrum s = Spectrum::exponential(delta);
  double worst = 0.0;
  for (int i = -200; i <= 200; ++i) {
    const double x = 0.5 * i * delta;
    const Complex exact = oracle::exponential_packet(x, delta);
    worst = std::max(worst, std::abs(packet_1d(x, s).value - exact) / std::abs(exact));
  }
  const auto grid = linear_grid(10.0 * delta, 100.0 * delta, 64);
  std::vector<double> mod;
  for (double x : grid) mod.push_back(std::abs(packet_1d(x, s).value));
  const auto fit = fit_falloff(RadialProfile(grid, mod), {grid.front(), grid.back()});
  report(9, "1D analytic signal", worst <= kRel && fit.model == FalloffModel::Power,
         fmt("max relative error %.3g (<= 1e-10), tail ", worst) + to_string(fit.model) + fmt(" exponent %.4f", fit.rate));
}

void determinism() {
  auto scan = [] {
    std::ostringstream o;
    cli::cmd_scan(cli::scan_defaults(), o);
    return o.str();
  };
  auto verify = [] {
    std::ostringstream o;
    cli::write_report_json(cli::cmd_verify("lorentz", 42), o);
    return o.str();
  };
  auto surface = [](unsigned jobs) {
    cli::RunConfig c = cli::surface_defaults();
    c.x = {-10.0, 10.0, 41};
    c.zs = {-10.0, 10.0, 41};
    c.jobs = jobs;
    std::ostringstream o;
    cli::cmd_surface(c, o);
    return o.str();
  };
  const bool pass = scan() == scan() && verify() == verify() && surface(1) == surface(4);
  report(10, "determinism", pass, "scan, verify and surface (1 vs 4 jobs) byte-identical");
}

}  // namespace

int main() {
  oracle_equivalence();
  tube_profiles();
  energy_density_cyl();
  fwm_gaussian();
  lorentz_identity();
  propagation_invariance();
  residual_order();
  paley_wiener();
  analytic_signal();
  determinism();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
