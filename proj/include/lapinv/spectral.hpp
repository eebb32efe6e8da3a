#pragma once

#include "lapinv/graph.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lapinv {

struct EigenPair {
  double value;
  std::vector<double> vector;
};

/// The k-1 smallest nontrivial Laplacian eigenpairs (lambda_2 .. lambda_k).
///
/// The null pair e / sqrt(n) is never stored. `k()` follows the usual
/// truncation index, so a basis with `size()` pairs has `k() == size() + 1`.
/// Optionally carries lambda_{k+1} and lambda_n (values only), which is all
/// the optimal stretch shift needs.
class EigenBasis {
public:
  EigenBasis() = default;
  /// Validates ascending positive values and vector lengths.
  EigenBasis(std::size_t n, std::vector<EigenPair> pairs, double residual_tol);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  std::size_t k() const noexcept { return pairs_.size() + 1; }
  bool empty() const noexcept { return pairs_.empty(); }
  double residual_tol() const noexcept { return residual_tol_; }

  const std::vector<EigenPair> &pairs() const noexcept { return pairs_; }
  const EigenPair &pair(std::size_t idx) const { return pairs_.at(idx); }
  double fiedler_value() const { return pairs_.at(0).value; }
  double last_value() const { return pairs_.at(pairs_.size() - 1).value; }

  std::optional<double> next_eigenvalue;    ///< lambda_{k+1}
  std::optional<double> largest_eigenvalue; ///< lambda_n
  std::size_t matvecs = 0;

  /// The first `pairs` pairs; lambda_{k+1} becomes the first dropped value.
  EigenBasis truncated(std::size_t pairs) const;

private:
  std::size_t n_ = 0;
  std::vector<EigenPair> pairs_;
  double residual_tol_ = 0.0;
};

struct EigenSolverOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t max_matvecs = 0; ///< 0 means 100 * n
  bool check_multiplicity = true;
};

/// lambda_2 .. lambda_k with ||G v - lambda v|| <= tol * max(1, lambda).
/// Throws NotConnected, KTooLarge, BadParams (k < 2) or ConvergenceFailure.
EigenBasis smallest_eigenpairs(const Graph &g, std::size_t k,
                               const EigenSolverOptions &options = {});

/// lambda_n to relative accuracy `options.tol`.
double largest_eigenvalue(const Graph &g, const EigenSolverOptions &options = {});

/// Fills lambda_{k+1} and lambda_n on a basis computed for `g`.
void attach_sigma_eigenvalues(const Graph &g, EigenBasis &basis,
                              const EigenSolverOptions &options = {});

struct DensePinv {
  Eigen::MatrixXd matrix;

  std::size_t n() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
  double entry(std::size_t i, std::size_t j) const { return matrix(i, j); }
};

inline constexpr std::size_t kDefaultDenseCap = 5000;

/// G+ = (G + J/n)^{-1} - J/n via a Cholesky factorization of the shifted
/// Laplacian. Throws NotConnected, SizeCapExceeded, SingularShiftedMatrix.
DensePinv exact_pinv(const Graph &g, std::size_t size_cap = kDefaultDenseCap);

Eigen::MatrixXd dense_laplacian(const Graph &g);

/// All n Laplacian eigenvalues, ascending, from a dense symmetric solver.
Eigen::VectorXd dense_eigenvalues(const Graph &g,
                                  std::size_t size_cap = kDefaultDenseCap);

} // namespace lapinv
