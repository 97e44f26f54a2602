#include "locwave/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "locwave/fields.hpp"
#include "locwave/solutions.hpp"

namespace locwave::cli {

namespace {

void check_range(const Range& r, const char* name) {
  if (r.count < 2) throw UsageError(std::string(name) + " grid needs a count of at least 2");
  if (!(std::isfinite(r.min) && std::isfinite(r.max) && r.max > r.min))
    throw UsageError(std::string(name) + " range must be finite with max > min");
}

std::vector<double> grid_of(const Range& r) { return linear_grid(r.min, r.max, static_cast<std::size_t>(r.count)); }

// Runs f(i) for i in [0, n) on `jobs` threads. Callers write into index-addressed storage,
// so output order does not depend on scheduling.
template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += jobs) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double RunConfig::unit_length() const {
  const double l_int = family == FamilyKind::Fwm ? l : 1.0 / std::abs(k0);
  return unit == LengthUnit::Lambda ? 2.0 * std::numbers::pi * l_int : l_int;
}

Family RunConfig::family_params() const {
  try {
    switch (family) {
      case FamilyKind::Cyl: return CylParams(k0, delta * unit_length());
      case FamilyKind::Fxw: return FxwParams(k0, delta * unit_length(), beta);
      case FamilyKind::Fwm: return FwmParams(l, a * unit_length());
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown family");
}

RunConfig scan_defaults() { return RunConfig{}; }

RunConfig surface_defaults() {
  RunConfig c;
  c.family = FamilyKind::Fxw;
  c.unit = LengthUnit::Lambda;
  c.k0 = -1.0;
  c.delta = 30.0;
  c.beta = 0.995;
  return c;
}

void cmd_scan(const RunConfig& config, std::ostream& out) {
  check_range(config.rho, "rho");
  if (config.rho.count < static_cast<int>(RadialProfile::kMinSamples))
    throw UsageError("rho grid needs a count of at least " + std::to_string(RadialProfile::kMinSamples));
  const Family family = config.family_params();
  const double u = config.unit_length();
  const std::vector<double> user_grid = grid_of(config.rho);
  std::vector<double> grid(user_grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = user_grid[i] * u;

  const RadialProfile profile = radial_profile(family, config.quantity, config.z * u, config.tau * u, grid);

  out << "rho,modulus,log10_modulus,reference\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double m = profile.value()[i];
    double reference = 0.0;
    if (const auto* f = std::get_if<FwmParams>(&family))
      reference = std::exp(-grid[i] * grid[i] / (2.0 * f->l() * f->a()));
    else
      reference = std::exp(-grid[i] / family_length(family));
    out << format_number(user_grid[i]) << ',' << format_number(m) << ',' << format_number(std::log10(m)) << ','
        << format_number(reference) << '\n';
  }
}

void cmd_surface(const RunConfig& config, std::ostream& out) {
  check_range(config.x, "x");
  check_range(config.zs, "z");
  const Family family = config.family_params();
  const double u = config.unit_length();
  const std::vector<double> xs = grid_of(config.x);
  const std::vector<double> zs = grid_of(config.zs);
  const std::size_t n = xs.size() * zs.size();
  const double tau = config.tau * u;

  std::vector<Complex> values(n);
  parallel_for(n, config.jobs, [&](std::size_t k) {
    const double x = xs[k / zs.size()];
    const double z = zs[k % zs.size()];
    values[k] = superpotential(SpaceTimePoint(std::abs(x) * u, z * u, tau), family);
  });

  out << "x,z,modulus,real_part\n";
  for (std::size_t k = 0; k < n; ++k) {
    out << format_number(xs[k / zs.size()]) << ',' << format_number(zs[k % zs.size()]) << ','
        << format_number(std::abs(values[k])) << ',' << format_number(values[k].real()) << '\n';
  }
}

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

void write_report_json(const VerifyReport& report, std::ostream& out) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["pass"] = report.all_pass();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["measured"] = c.measured;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  out << j.dump(2) << '\n';
}

CsvProfile read_profile_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  const auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    return cells;
  };

  if (!std::getline(in, line)) throw UsageError("line 1: missing CSV header");
  ++lineno;
  const auto header = split(line);
  if (header.size() < 2) throw UsageError("line 1: header needs at least two columns");
  std::size_t rho_col = 0;
  std::size_t mod_col = 1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "rho") rho_col = i;
    if (header[i] == "modulus") mod_col = i;
  }
  if (rho_col == mod_col) throw UsageError("line 1: rho and modulus columns coincide");

  CsvProfile data;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (cells.size() != header.size())
      throw UsageError(where + "expected " + std::to_string(header.size()) + " columns, found " +
                       std::to_string(cells.size()));
    double vals[2];
    const std::size_t cols[2] = {rho_col, mod_col};
    for (int k = 0; k < 2; ++k) {
      const std::string& c = cells[cols[k]];
      const auto res = std::from_chars(c.data(), c.data() + c.size(), vals[k]);
      if (res.ec != std::errc() || res.ptr != c.data() + c.size())
        throw UsageError(where + "cannot parse '" + c + "' as a number");
    }
    if (!(vals[0] >= 0.0 && std::isfinite(vals[0]))) throw UsageError(where + "rho must be finite and >= 0");
    if (!data.rho.empty() && !(vals[0] > data.rho.back())) throw UsageError(where + "rho must be strictly increasing");
    if (!(vals[1] >= 0.0)) throw UsageError(where + "modulus must be >= 0");
    data.rho.push_back(vals[0]);
    data.modulus.push_back(vals[1]);
  }
  return data;
}

FalloffFit cmd_fit(const CsvProfile& data, std::optional<FitWindow> window, ModelChoice model) {
  if (data.rho.size() < RadialProfile::kMinSamples)
    throw Error(ErrorCode::WindowTooNarrow,
                "input holds " + std::to_string(data.rho.size()) + " samples, need at least " +
                    std::to_string(RadialProfile::kMinSamples));
  const RadialProfile profile(data.rho, data.modulus, {"csv", "", 0.0, 0.0});
  const FitWindow w = window.value_or(FitWindow{data.rho.front(), data.rho.back()});
  return fit_falloff(profile, w, model);
}

void write_fit_json(const FalloffFit& fit, std::ostream& out) {
  nlohmann::ordered_json j;
  j["model"] = to_string(fit.model);
  j["rate"] = fit.rate;
  j["prefactor_power"] = fit.prefactor_power;
  j["log_coefficient"] = fit.log_coefficient;
  j["rms_residual"] = fit.rms_residual;
  j["points"] = fit.points;
  j["rho_min"] = fit.rho_min;
  j["rho_max"] = fit.rho_max;
  out << j.dump(2) << '\n';
}

namespace {

const std::map<std::string, FamilyKind> kFamilies{{"cyl", FamilyKind::Cyl}, {"fxw", FamilyKind::Fxw}, {"fwm", FamilyKind::Fwm}};
const std::map<std::string, Quantity> kQuantities{{"Z", Quantity::Z}, {"dtauZ", Quantity::DtauZ}, {"F2", Quantity::F2}};
const std::map<std::string, LengthUnit> kUnits{{"l", LengthUnit::L}, {"lambda", LengthUnit::Lambda}};
const std::map<std::string, ModelChoice> kModels{{"auto", ModelChoice::Auto},
                                                 {"power", ModelChoice::Power},
                                                 {"exp", ModelChoice::Exponential},
                                                 {"gauss", ModelChoice::Gaussian}};

void add_family_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--family", c.family, "cyl | fxw | fwm")->transform(CLI::CheckedTransformer(kFamilies));
  sub->add_option("--k0", c.k0, "signed axial wavenumber (cyl, fxw)");
  sub->add_option("--delta", c.delta, "spectral width, in --unit (cyl, fxw)");
  sub->add_option("--beta", c.beta, "relative frame speed in (0, 1) (fxw)");
  sub->add_option("--l", c.l, "FWM characteristic length (fwm)");
  sub->add_option("--a", c.a, "FWM axial localization constant, in --unit (fwm)");
  sub->add_option("--unit", c.unit, "length unit for distances: l | lambda")->transform(CLI::CheckedTransformer(kUnits));
  sub->add_option("--tau", c.tau, "time coordinate tau = ct, in --unit");
  sub->add_option("--jobs", c.jobs, "worker threads");
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& body, std::ostream& out) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  body(f);
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Localized wave fields: evaluation, figure datasets and verification suites", "locwave"};
  app.set_config("--config", "", "key=value config file ([scan], [surface], ... sections)");
  app.require_subcommand(1);

  RunConfig scan = scan_defaults();
  std::string scan_out;
  auto* s = app.add_subcommand("scan", "radial profile CSV at fixed (z, tau)");
  add_family_options(s, scan);
  s->add_option("--quantity", scan.quantity, "Z | dtauZ | F2")->transform(CLI::CheckedTransformer(kQuantities));
  s->add_option("--z", scan.z, "axial coordinate, in --unit");
  s->add_option("--rho-min", scan.rho.min);
  s->add_option("--rho-max", scan.rho.max);
  s->add_option("--count", scan.rho.count, "number of rho samples");
  s->add_option("-o,--output", scan_out, "output path, - for stdout");

  RunConfig surf = surface_defaults();
  std::string surf_out;
  auto* f = app.add_subcommand("surface", "Z over the (x, z) plane at fixed tau");
  add_family_options(f, surf);
  f->add_option("--x-min", surf.x.min);
  f->add_option("--x-max", surf.x.max);
  f->add_option("--x-count", surf.x.count);
  f->add_option("--z-min", surf.zs.min);
  f->add_option("--z-max", surf.zs.max);
  f->add_option("--z-count", surf.zs.count);
  f->add_option("-o,--output", surf_out, "output path, - for stdout");

  std::string suite;
  std::uint64_t seed = 1;
  std::string verify_out;
  auto* v = app.add_subcommand("verify", "run a verification suite; exit 0 iff all checks pass");
  v->add_option("suite", suite, "quadrature | lorentz | invariance | residual | falloff | pw-tradeoff")->required();
  v->add_option("--seed", seed, "seed for randomized suites");
  v->add_option("-o,--output", verify_out, "output path, - for stdout");

  std::string fit_in;
  std::optional<double> fit_min;
  std::optional<double> fit_max;
  ModelChoice model = ModelChoice::Auto;
  auto* fit = app.add_subcommand("fit", "fit a falloff model to a rho,modulus CSV");
  fit->add_option("input", fit_in, "CSV path, - for stdin")->required();
  fit->add_option("--min", fit_min, "window start");
  fit->add_option("--max", fit_max, "window end");
  fit->add_option("--model", model, "auto | power | exp | gauss")->transform(CLI::CheckedTransformer(kModels));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (s->parsed()) {
      emit(scan_out, [&](std::ostream& o) { cmd_scan(scan, o); }, out);
      return 0;
    }
    if (f->parsed()) {
      emit(surf_out, [&](std::ostream& o) { cmd_surface(surf, o); }, out);
      return 0;
    }
    if (v->parsed()) {
      const VerifyReport report = cmd_verify(suite, seed);
      emit(verify_out, [&](std::ostream& o) { write_report_json(report, o); }, out);
      return report.all_pass() ? 0 : 1;
    }
    if (fit->parsed()) {
      CsvProfile data;
      if (fit_in == "-") {
        data = read_profile_csv(std::cin);
      } else {
        std::ifstream in(fit_in);
        if (!in) throw UsageError("cannot open " + fit_in);
        data = read_profile_csv(in);
      }
      std::optional<FitWindow> window;
      if (fit_min || fit_max) {
        if (data.rho.empty()) throw Error(ErrorCode::WindowTooNarrow, "input holds no samples");
        window = FitWindow{fit_min.value_or(data.rho.front()), fit_max.value_or(data.rho.back())};
      }
      write_fit_json(cmd_fit(data, window, model), out);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace locwave::cli
