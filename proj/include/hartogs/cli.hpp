#pragma once

#include "hartogs/domain.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hartogs::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

enum class ExitCode : int { Ok = 0, Usage = 1, CheckFailed = 2 };

enum class OutputFormat { Json, Csv };

/// Everything a single invocation needs. Unset optionals take the
/// per-command defaults listed in --help.
struct RunConfig {
  std::string command;
  std::string spec = "fat:2";
  int k = 2;
  int k_max = 50;
  std::uint64_t n = 0;  // 0: command default
  std::uint64_t pairs = 0;
  std::uint64_t seed = 7;
  std::optional<double> tol;
  std::optional<Point2C> z;
  std::optional<Point2C> w;
  std::vector<Point2C> points;
  std::string thin_variant = "one-minus-t";
  std::string map = "shear";
  std::string path = "origin";
  std::string measure = "growth";
  std::string function = "one";
  std::string table = "roots";
  int steps = 20;
  int tail = 10;
  double st_bound = 0.4;
  double series_rel_tol = 1e-10;
  double s_min = -1.0;
  double s_max = 1.0;
  int s_steps = 41;
  int t_steps = 101;
  bool thin = false;
  bool check = false;
  bool show_polys = false;
  OutputFormat format = OutputFormat::Json;
  bool format_set = false;
  std::optional<std::string> out_path;
};

/// Parses "re,im" into a complex number.
Complex parse_complex(const std::string& text);

/// Parses argv (without the program name). Throws CLI11 exceptions on usage
/// errors; returns nullopt after printing help.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Dispatches the command and writes its report to `out` (or the out_path).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with usage errors mapped to exit code 1.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hartogs::cli
