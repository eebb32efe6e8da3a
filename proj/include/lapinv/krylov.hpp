#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lapinv {

/// y = A x for a symmetric operator A.
using SymmetricOperator =
    std::function<void(std::span<const double> x, std::span<double> y)>;

struct KrylovSchurOptions {
  std::uint64_t seed = 0;
  std::size_t max_matvecs = 0;  ///< 0 means 100 * n
  std::size_t max_subspace = 0; ///< 0 picks max(2 * nev + 20, 40)
  bool deflate_constant = true; ///< work in the complement of e = (1, ..., 1)
  /// Restart from a fresh random vector after convergence to catch eigenvalue
  /// copies a single Krylov sequence cannot see.
  bool check_multiplicity = true;
  double norm_estimate = 1.0; ///< rough ||A||, used for breakdown detection
};

struct KrylovSchurResult {
  std::vector<double> values;               ///< descending
  std::vector<std::vector<double>> vectors; ///< unit norm, mutually orthogonal
  std::size_t matvecs = 0;
  std::size_t restarts = 0;
};

/// Largest `nev` eigenpairs of a symmetric operator by Krylov-Schur (thick
/// restart Lanczos) with full reorthogonalization and locking. A pair is
/// accepted once its explicitly recomputed residual ||A x - theta x|| is at or
/// below `tolerance(theta)`. Throws ConvergenceError past the matvec cap.
KrylovSchurResult
largest_eigenpairs(const SymmetricOperator &op, std::size_t n, std::size_t nev,
                   const std::function<double(double)> &tolerance,
                   const KrylovSchurOptions &options = {});

} // namespace lapinv
