#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "locwave/diagnostics.hpp"
#include "locwave/types.hpp"

namespace locwave::cli {

/// Bad flags, malformed input files, unknown suites. Maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FamilyKind { Cyl, Fxw, Fwm };
enum class LengthUnit { L, Lambda };

struct Range {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
};

/// Everything a scan or surface run depends on. Distances are in `unit` (l or lambda = 2 pi l).
struct RunConfig {
  FamilyKind family = FamilyKind::Cyl;
  double k0 = 1.0;
  double delta = 0.1;
  double beta = 0.8;
  double l = 1.0;
  double a = 1.0;
  Quantity quantity = Quantity::Z;
  LengthUnit unit = LengthUnit::L;
  double z = 0.0;
  double tau = 0.0;
  Range rho{0.0, 30.0, 601};
  Range x{-44.0, 44.0, 177};
  Range zs{-44.0, 44.0, 177};
  std::uint64_t seed = 1;
  unsigned jobs = 1;

  /// Builds the family with lengths converted from `unit`. Throws UsageError on invalid parameters.
  Family family_params() const;
  /// Length of one `unit` in the family's internal coordinates.
  double unit_length() const;
};

RunConfig scan_defaults();
/// Wide X wave: FXW, lambda units, k0 < 0, delta = 30 lambda, beta = 0.995.
RunConfig surface_defaults();

/// CSV rows rho,modulus,log10_modulus,reference at fixed (z, tau).
void cmd_scan(const RunConfig& config, std::ostream& out);

/// CSV rows x,z,modulus,real_part of the normalized Z over the (x, z) plane, rho = |x|.
void cmd_surface(const RunConfig& config, std::ostream& out);

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool all_pass() const;
};

const std::vector<std::string>& verify_suites();

/// Runs one named suite; throws UsageError for unknown names.
VerifyReport cmd_verify(const std::string& suite, std::uint64_t seed);

void write_report_json(const VerifyReport& report, std::ostream& out);

/// Reads rho,modulus CSV (header required). Malformed rows raise UsageError naming the line.
struct CsvProfile {
  std::vector<double> rho;
  std::vector<double> modulus;
};
CsvProfile read_profile_csv(std::istream& in);

FalloffFit cmd_fit(const CsvProfile& data, std::optional<FitWindow> window, ModelChoice model);

void write_fit_json(const FalloffFit& fit, std::ostream& out);

/// Fixed 17-significant-digit decimal, the CSV number format.
std::string format_number(double v);

/// Entry point shared by the executable and the tests. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace locwave::cli
