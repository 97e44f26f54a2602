#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "locwave/diagnostics.hpp"
#include "locwave/solutions.hpp"
#include "locwave/spectra.hpp"
#include "oracles.hpp"

using namespace locwave;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("J0 special values and series oracle") {
  CHECK(bessel_j0(0.0) == 1.0);
  // First zero, refined by Newton on the series oracle (J0' = -J1, J1 by its own series).
  double x = 2.4;
  for (int i = 0; i < 8; ++i) {
    long double j1 = 0, term = x / 2.0L;
    for (int k = 0; k < 60; ++k) {
      j1 += term;
      term *= -0.25L * x * x / ((k + 1.0L) * (k + 2.0L));
    }
    x += oracle::j0_series(x) / static_cast<double>(j1);
  }
  CHECK(x == doctest::Approx(2.404825557695773).epsilon(1e-15));
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-12);
  CHECK(std::abs(bessel_j0(10.0) - oracle::j0_series(10.0)) < 1e-12);
  for (double v : {0.3, 1.0, 4.5, 7.25, 11.9}) CHECK(std::abs(bessel_j0(v) - oracle::j0_series(v)) < 1e-14);
  CHECK(bessel_j0(-3.7) == bessel_j0(3.7));
}

TEST_CASE("J0 against GSL up to 1e4") {
  oracle::Uniform u(11);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double v = u(0.0, 1e4);
    worst = std::max(worst, std::abs(bessel_j0(v) - oracle::j0_gsl(v)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("J0 satisfies Bessel's equation") {
  oracle::Uniform u(12);
  const double h = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const double v = u(0.1, 100.0);
    const double jp = bessel_j0(v + h), j = bessel_j0(v), jm = bessel_j0(v - h);
    const double d1 = (jp - jm) / (2 * h);
    const double d2 = (jp - 2 * j + jm) / (h * h);
    // The second difference cannot resolve below ~4 ulp(J0) / h^2, so that floor is added.
    const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(jp), std::abs(j), std::abs(jm)}) / (h * h);
    CHECK(std::abs(d2 + d1 / v + j) <= 1e-8 + roundoff);
  }
}

TEST_CASE("adaptive quadrature engine") {
  const QuadratureSpec spec;
  const auto s = integrate_adaptive([](double t) { return Complex(std::sin(t), std::cos(t)); }, 0.0, kPi, 1.0, spec);
  CHECK(std::abs(s.value - Complex(2.0, 0.0)) < 1e-14);
  CHECK(s.error_estimate < 1e-12);
  CHECK(s.panels >= 4);

  QuadratureSpec tight;
  tight.max_subdivisions = 1;
  try {
    integrate_adaptive([](double t) { return Complex(std::log(t)); }, 0.0, 1.0, 1.0, tight);
    FAIL("expected NonConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvergence);
  }
  QuadratureSpec bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(integrate_adaptive([](double) { return Complex(1.0); }, 1.0, 0.0, 1.0, spec), Error);
}

TEST_CASE("quad_cyl examples") {
  const CylParams q(1.0, 0.1);
  const auto origin = quad_cyl(SpaceTimePoint(0, 0, 0), q);
  CHECK(rel(origin.value, Complex(10.0 * std::exp(-0.1), 0.0)) < 1e-12);
  const SpaceTimePoint p(5, 1, 2);
  CHECK(rel(quad_cyl(p, q).value, oracle::tube(5, 1, 2, 1.0, 0.1)) < 1e-8);
  CHECK_THROWS_AS(quad_cyl(SpaceTimePoint(10, 0, 0), CylParams(0.0, 0.1)), Error);
}

TEST_CASE("quad_cyl reproduces the tube pulse on the oracle domain") {
  oracle::Uniform u(13);
  int honest = 0;
  constexpr int n = 60;
  for (int i = 0; i < n; ++i) {
    const double rho = u(0, 30), z = u(-10, 10), tau = u(-5, 5);
    const double k0 = i % 2 ? -1.0 : 1.0, delta = i % 4 < 2 ? 0.1 : 1.0;
    const auto r = quad_cyl(SpaceTimePoint(rho, z, tau), CylParams(k0, delta));
    const Complex ref = oracle::tube(rho, z, tau, k0, delta);
    const double dev = std::abs(r.value - ref);
    CHECK(dev <= std::max(1e-8 * std::abs(ref), 1e-14));
    if (r.error_estimate >= dev) ++honest;
  }
  CHECK(honest >= 0.95 * n);
}

TEST_CASE("packet_1d") {
  const Spectrum e = Spectrum::exponential(1.0);
  CHECK(rel(packet_1d(0.0, e).value, Complex(1.0 / (2 * kPi), 0.0)) < 1e-12);
  for (double delta : {0.5, 2.0}) {
    const Spectrum s = Spectrum::exponential(delta);
    for (double x = -100 * delta; x <= 100 * delta; x += 7.3 * delta) {
      CHECK(rel(packet_1d(x, s).value, oracle::exponential_packet(x, delta)) < 1e-10);
      CHECK(std::abs(packet_1d(x, s).value) ==
            doctest::Approx(1.0 / (2 * kPi * std::hypot(delta, x))).epsilon(1e-10));
    }
  }
}

TEST_CASE("gaussian-odd analytic signal decays slower than exponentially") {
  const auto grid = linear_grid(10.0, 30.0, 41);
  std::vector<double> mod;
  for (double x : grid) mod.push_back(std::abs(packet_1d(x, Spectrum::gaussian_odd()).value));
  const auto fit = fit_falloff(RadialProfile(grid, mod), {10.0, 30.0});
  CHECK(fit.model == FalloffModel::Power);
  // (1/2pi) int k e^{-k^2/2} e^{ikx} dk ~ -1/(2 pi x^2).
  CHECK(fit.rate == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("spherical standing wave, exponential spectrum") {
  const Spectrum e = Spectrum::exponential(1.0);
  CHECK(rel(spherical_standing(1.0, 0.0, e).value, Complex(0.5, 0.0)) < 1e-12);
  for (double r : {0.0, 0.1, 1.0, 3.0, 20.0, 100.0})
    for (double tau : {-10.0, -1.0, 0.0, 2.5, 10.0}) {
      const Complex s(1.0, tau);
      CHECK(rel(spherical_standing(r, tau, e).value, 1.0 / (s * s + r * r)) < 1e-10);
    }
}

TEST_CASE("spherical standing wave, gaussian-odd spectrum") {
  const Spectrum g = Spectrum::gaussian_odd();
  for (double r : {0.0, 0.5, 2.0, 5.0, 8.0}) {
    const double ref = oracle::gaussian_odd_sine_transform(r);
    // Cancellation in an O(1) integrand leaves ~1e-16 absolute noise on e^{-r^2/2}.
    CHECK(std::abs(spherical_standing(r, 0.0, g).value - ref) < 1e-9 * ref + 1e-15);
  }
  for (double r : {0.5, 2.0, 5.0, 20.0}) {
    const Complex ref(0.0, -oracle::gaussian_even_sine_moment(r) / r);
    CHECK(rel(spherical_standing_dtau(r, 0.0, g).value, ref) < 1e-9);
  }
  // The time derivative is a difference quotient of the wave itself.
  const double h = 1e-4;
  const Complex fd = (spherical_standing(2.0, h, g).value - spherical_standing(2.0, -h, g).value) / (2 * h);
  CHECK(rel(spherical_standing_dtau(2.0, 0.0, g).value, fd) < 1e-6);
}

TEST_CASE("spectrum weights") {
  const Spectrum e = Spectrum::exponential(0.5, 2.0);
  CHECK(e(1.0) == doctest::Approx(std::exp(-0.25)));
  CHECK(e.times_kappa()(3.0) == doctest::Approx(3.0 * std::exp(-0.75)));
  const Spectrum g = Spectrum::gaussian_odd();
  CHECK(g(2.0) == doctest::Approx(2.0 * std::exp(-2.0)));
  CHECK(g(g.kappa_cutoff(45.0)) < std::exp(-45.0));
  CHECK(e(e.kappa_cutoff(45.0)) <= std::exp(-45.0) * e(0.0));
  CHECK_THROWS_AS(Spectrum::exponential(0.0), Error);
}
