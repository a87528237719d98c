#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lpsparse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Name of the environment variable that relocates relative output paths.
inline constexpr const char* kOutDirEnv = "LPSPARSE_OUT_DIR";

struct ReportRecord {
  std::string algorithm;
  std::string kind;
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<double> eps;
  std::uint64_t seed = 0;
  std::string status;
  std::optional<double> objective;
  std::size_t iterations = 0;
  std::size_t max_sublp = 0;
  std::uint64_t row_reads = 0;
  std::uint64_t q_charge = 0;
  double wall_ms = 0.0;
};

std::string csv_header();
std::string to_csv(const ReportRecord& record);

// Least-squares slope of ln y against ln x; nullopt with fewer than two
// distinct x values or a non-positive y.
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y);

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lpsparse::cli
