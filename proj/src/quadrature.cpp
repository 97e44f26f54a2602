#include "locwave/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace locwave {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  Complex value;
  double error;     // truncation estimate
  double roundoff;  // 50 eps * integral of |f|
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod15(const Integrand& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  std::array<Complex, 15> fv;
  fv[7] = f(centr);
  for (int j = 0; j < 7; ++j) {
    const double dx = hlgth * kXgk[j];
    fv[j] = f(centr - dx);
    fv[14 - j] = f(centr + dx);
  }

  Complex resk = fv[7] * kWgk[7];
  Complex resg = fv[7] * kWg[3];
  double resabs = std::abs(fv[7]) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const Complex pair = fv[j] + fv[14 - j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const Complex mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

  const double ah = std::abs(hlgth);
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg) * hlgth);
  // QUADPACK scaling: the 15-point result is far more accurate than the 7-point difference suggests.
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));

  return {a, b, resk * hlgth, err, 50.0 * kEps * resabs};
}

double bisectable(const Panel& p) { return p.error > p.roundoff ? p.error : 0.0; }

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rel_tol must be positive");
  if (!(abs_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be non-negative");
  if (max_subdivisions < 1) throw Error(ErrorCode::InvalidArgument, "max_subdivisions must be at least 1");
  if (!(k_max_margin > 0.0)) throw Error(ErrorCode::InvalidArgument, "k_max_margin must be positive");
}

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, double max_panel_width,
                                    const QuadratureSpec& spec) {
  spec.validate();
  if (!(std::isfinite(a) && std::isfinite(b) && b > a))
    throw Error(ErrorCode::InvalidArgument, "integration interval must be finite with b > a");
  if (!(max_panel_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "max_panel_width must be positive");

  const double span = b - a;
  const auto n0 = static_cast<std::size_t>(std::max(1.0, std::ceil(span / max_panel_width)));
  std::vector<Panel> initial;
  initial.reserve(n0);
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = a + span * static_cast<double>(i) / static_cast<double>(n0);
    const double hi = i + 1 == n0 ? b : a + span * static_cast<double>(i + 1) / static_cast<double>(n0);
    initial.push_back(gauss_kronrod15(f, lo, hi));
  }

  Complex total;
  double err_total = 0.0;
  for (const auto& p : initial) {
    total += p.value;
    err_total += bisectable(p);
  }
  std::priority_queue<Panel> queue(std::less<Panel>{}, std::move(initial));

  int bisections = 0;
  while (err_total > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (bisections >= spec.max_subdivisions)
      throw Error(ErrorCode::NonConvergence,
                  "subdivision budget of " + std::to_string(spec.max_subdivisions) +
                      " exhausted with error estimate " + std::to_string(err_total));
    Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      throw Error(ErrorCode::NonConvergence, "panel width reached machine resolution");
    queue.pop();
    Panel left = gauss_kronrod15(f, worst.a, mid);
    Panel right = gauss_kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err_total += bisectable(left) + bisectable(right) - bisectable(worst);
    queue.push(left);
    queue.push(right);
    ++bisections;
  }

  // Re-sum from the final partition to shed drift from the running updates.
  QuadratureResult out;
  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double trunc = 0.0;
  double round = 0.0;
  for (const auto& p : panels) {
    out.value += p.value;
    trunc += p.error;
    round += p.roundoff;
  }
  out.error_estimate = trunc + round;
  out.panels = panels.size();
  return out;
}

}  // namespace locwave
