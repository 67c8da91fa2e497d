#pragma once

// Command-line front end: compute, scan and validate.
// Exit codes: 0 ok, 1 validation failure, 2 invalid input, 3 tolerance not met.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace casimir::cli {

enum ExitCode : int { kOk = 0, kValidateFailed = 1, kInvalidInput = 2, kToleranceNotMet = 3 };

enum class Format { CSV, JSON };
enum class Units { Natural, SI };

struct RunConfig {
  std::string command;
  std::string bc = "DD";
  double a1 = 1.0;
  std::optional<double> a2;
  std::optional<double> eps;
  double T = 0.0;
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int threads = 0;
  std::string regime = "auto";  ///< auto, zero_t, matsubara, classical, poisson, leading
  Format format = Format::CSV;
  Units units = Units::Natural;
  std::string output;  ///< empty: stdout
};

struct ScanAxis {
  std::string name;  ///< "eps" or "T"
  std::vector<double> grid;
};

/// Throws std::invalid_argument on inconsistent input.
void validate_config(const RunConfig& cfg);

int cmd_compute(const RunConfig& cfg, std::ostream& out);
int cmd_scan(const RunConfig& cfg, const ScanAxis& axis, std::ostream& out);
/// suite: wronskian, debye, identity, mellin, expansion, thermal or all.
int cmd_validate(const std::string& suite, Format format, std::ostream& out);

/// Parses argv and dispatches; diagnostics go to err.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
