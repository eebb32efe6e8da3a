#include "lapinv/bench.hpp"

#include "lapinv/errors.hpp"
#include "lapinv/spectral.hpp"

#include <sys/utsname.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace lapinv {

std::string_view to_string(BenchMode mode) {
  return mode == BenchMode::ExactPinv ? "exact_pinv" : "one_eigenpair";
}

BenchMode parse_bench_mode(std::string_view text) {
  if (text == "exact" || text == "exact_pinv")
    return BenchMode::ExactPinv;
  if (text == "one_eigenpair" || text == "eigs")
    return BenchMode::OneEigenpair;
  throw Error(ErrorCode::BadParams, "unknown bench mode '" + std::string(text) + "'");
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorCode::LengthMismatch, "slope fit needs two matching series");
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw Error(ErrorCode::BadParams, "log-log fit needs positive values");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (!(sxx > 0.0))
    throw Error(ErrorCode::BadParams, "slope fit needs distinct sizes");
  return sxy / sxx;
}

MachineInfo machine_info() {
  MachineInfo info;
  utsname uts{};
  if (uname(&uts) == 0) {
    info.system = std::string(uts.sysname) + " " + uts.release;
    info.machine = uts.machine;
  }
#if defined(__clang__)
  info.compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  info.compiler = "gcc " __VERSION__;
#else
  info.compiler = "unknown";
#endif
  info.hardware_threads = std::thread::hardware_concurrency();
  return info;
}

namespace {

GenSpec with_size(GenSpec spec, std::size_t n, std::uint64_t seed) {
  std::visit([n](auto &model) { model.n = n; }, spec.model);
  spec.seed = seed;
  return spec;
}

} // namespace

BenchResult bench_scaling(const BenchOptions &options) {
  if (options.sizes.size() < 3)
    throw Error(ErrorCode::BadParams, "bench needs at least three sizes");
  for (std::size_t i = 1; i < options.sizes.size(); ++i)
    if (options.sizes[i] <= options.sizes[i - 1])
      throw Error(ErrorCode::BadParams, "bench sizes must ascend");
  if (options.reps == 0)
    throw Error(ErrorCode::BadParams, "bench needs at least one repetition");

  using Clock = std::chrono::steady_clock;
  BenchResult result;
  result.machine = machine_info();
  std::vector<double> xs, ys;

  for (std::size_t idx = 0; idx < options.sizes.size(); ++idx) {
    const Graph g = generate(with_size(options.model, options.sizes[idx], options.seed + idx));
    BenchRecord rec;
    rec.n = g.num_nodes();
    rec.m = g.num_edges();
    rec.mode = std::string(to_string(options.mode));
    rec.wall_time = std::numeric_limits<double>::infinity();
    for (std::size_t rep = 0; rep < options.reps; ++rep) {
      const auto start = Clock::now();
      if (options.mode == BenchMode::ExactPinv) {
        const DensePinv p = exact_pinv(g, std::numeric_limits<std::size_t>::max());
        rec.peak_entries_stored = static_cast<std::size_t>(p.matrix.size());
      } else {
        EigenSolverOptions eo;
        eo.tol = options.tol;
        eo.seed = options.seed;
        const EigenBasis b = smallest_eigenpairs(g, 2, eo);
        rec.iterations = b.matvecs;
        rec.peak_entries_stored = b.n() + 1;
      }
      const std::chrono::duration<double> elapsed = Clock::now() - start;
      rec.wall_time = std::min(rec.wall_time, elapsed.count());
    }
    rec.wall_time = std::max(rec.wall_time, std::numeric_limits<double>::min());
    xs.push_back(static_cast<double>(rec.n));
    ys.push_back(rec.wall_time);
    result.records.push_back(std::move(rec));
  }
  result.fitted_exponent = fit_loglog_slope(xs, ys);
  return result;
}

} // namespace lapinv
