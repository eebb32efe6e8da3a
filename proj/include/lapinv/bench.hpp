#pragma once

#include "lapinv/models.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lapinv {

enum class BenchMode { ExactPinv, OneEigenpair };
std::string_view to_string(BenchMode mode);
/// Accepts "exact", "exact_pinv", "one_eigenpair" and "eigs". Throws BadParams.
BenchMode parse_bench_mode(std::string_view text);

struct BenchRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  std::string mode;
  double wall_time = 0.0; ///< best of reps, seconds
  std::size_t peak_entries_stored = 0;
  std::size_t iterations = 0; ///< matvecs for the eigensolver, 0 for dense
};

struct MachineInfo {
  std::string system;
  std::string machine;
  std::string compiler;
  unsigned hardware_threads = 0;
};

struct BenchOptions {
  std::vector<std::size_t> sizes;
  BenchMode mode = BenchMode::ExactPinv;
  std::size_t reps = 3;
  std::uint64_t seed = 0;
  /// Model template; its node count is replaced by each size.
  GenSpec model{BaModel{0, 2}, 0};
  double tol = 1e-8;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  double fitted_exponent = 0.0;
  MachineInfo machine;
};

/// Times the chosen operation on one generated graph per size. Graph i is
/// drawn with seed `seed + i`, so identical options time identical graphs.
/// Throws BadParams unless sizes ascend strictly with at least three points.
BenchResult bench_scaling(const BenchOptions &options);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

MachineInfo machine_info();

} // namespace lapinv
