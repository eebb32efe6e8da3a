#pragma once

#include "lapinv/graph.hpp"
#include "lapinv/spectral.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace lapinv {

enum class PinvKind { Exact, Cutoff, Stretch };

std::string_view to_string(PinvKind kind);

/// Uniform access to G+ or one of its low-rank surrogates.
///
/// Cutoff and Stretch keep only the k-1 eigenpairs (O(kn) storage, O(k) per
/// entry) and never form an n x n matrix. Every variant is symmetric entry by
/// entry and annihilates the constant vector.
class PinvOperator {
public:
  static PinvOperator exact(DensePinv pinv);
  /// T(k) = sum_{j=2..k} v_j v_j^T / lambda_j. Throws EmptyBasis.
  static PinvOperator cutoff(const EigenBasis &basis);
  /// S(k) = (I - J/n) / sigma + sum_{j=2..k} (1/lambda_j - 1/sigma) v_j v_j^T.
  /// Throws NonPositiveSigma, EmptyBasis.
  static PinvOperator stretch(const EigenBasis &basis, double sigma);

  PinvKind kind() const noexcept { return kind_; }
  std::size_t n() const noexcept { return n_; }
  /// Truncation index: pairs + 1 for approximations, n for Exact.
  std::size_t k() const noexcept;
  std::size_t pairs() const noexcept { return static_cast<std::size_t>(vectors_.cols()); }
  std::optional<double> sigma() const noexcept { return sigma_; }
  /// Set when sigma < lambda_k, below the range the error bound assumes.
  bool sigma_below_spectrum() const noexcept { return sigma_low_; }

  /// Throws IndexOutOfRange.
  double entry(NodeId i, NodeId j) const;
  /// y = P x in O(kn) (or O(n^2) for Exact). Throws DimensionMismatch.
  std::vector<double> apply(std::span<const double> x) const;
  /// Potentials for a unit current from s to t: column s minus column t.
  void potentials(NodeId s, NodeId t, std::span<double> out) const;

  Eigen::MatrixXd to_dense() const;
  /// Stored reals: n^2 for Exact, n (k-1) + (k-1) otherwise.
  std::size_t stored_entries() const noexcept;

private:
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  PinvKind kind_ = PinvKind::Exact;
  std::size_t n_ = 0;
  std::shared_ptr<const DensePinv> dense_;
  RowMajor vectors_;            // n x (k-1), row i holds node i's coordinates
  std::vector<double> weights_; // 1/lambda_j or 1/lambda_j - 1/sigma
  double diagonal_ = 0.0;       // 1/sigma for Stretch
  std::optional<double> sigma_;
  bool sigma_low_ = false;
};

PinvOperator build_exact(DensePinv pinv);
PinvOperator build_cutoff(const EigenBasis &basis);
PinvOperator build_stretch(const EigenBasis &basis, double sigma);
double entry(const PinvOperator &op, NodeId i, NodeId j);

/// Harmonic mean of lambda_{k+1} and lambda_n. Throws InvalidOrder.
double optimal_sigma(double lambda_next, double lambda_max);
/// The 2 lambda_k shortcut. Throws NonPositiveSigma for lambda_k <= 0.
double approx_sigma(double lambda_k);

struct ErrorBounds {
  double cutoff_rel;        ///< lambda_2 / lambda_{k+1}
  double stretch_rel_bound; ///< lambda_2 max(|1/l_{k+1} - 1/s|, |1/s - 1/l_n|)
  double gamma;             ///< 1/lambda_{k+1} - 1/lambda_n
};

enum class SigmaWindow {
  Strict, ///< require lambda_{k+1} <= sigma <= lambda_n (SigmaOutOfRange)
  Any,    ///< any positive sigma; the max form stays the exact tail error
};

/// Relative 2-norm errors of T(k) and S(k) from four spectral values.
/// Throws InvalidOrder, NonPositiveSigma, SigmaOutOfRange.
ErrorBounds error_bounds(double lambda_2, double lambda_next, double lambda_max,
                         double sigma, SigmaWindow window = SigmaWindow::Strict);

enum class SigmaPolicy { Optimal, TwiceLambdaK, Explicit };

/// Picks sigma for a basis: optimal needs lambda_{k+1} and lambda_n on the
/// basis (falls back to lambda_n when k = n), the shortcut uses 2 lambda_k.
double resolve_sigma(const EigenBasis &basis, SigmaPolicy policy,
                     std::optional<double> explicit_value = std::nullopt);

/// P b for a balanced right-hand side (e^T b = 0 within 1e-9).
/// Throws SupplyNotBalanced, DimensionMismatch.
std::vector<double> solve_min_norm(const Graph &g, std::span<const double> b,
                                   const PinvOperator &pinv);

} // namespace lapinv
