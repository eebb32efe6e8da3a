#pragma once

#include "lapinv/graph.hpp"
#include "lapinv/pinv_operator.hpp"
#include "lapinv/spectral.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lapinv {

/// Scores are log-transformed before correlating when either vector's sample
/// skewness exceeds this.
inline constexpr double kSkewnessThreshold = 1.0;
inline constexpr double kLogEpsilon = 1e-12;

struct RankEntry {
  std::string label;
  std::size_t exact_rank;
  std::size_t approx_rank;
};

struct RankingReport {
  double pearson = 0.0;
  bool transformed = false;
  double spearman = 0.0;
  double mean_rank_change = 0.0;
  std::size_t top_k = 0;
  std::size_t top_k_overlap = 0;
  std::vector<RankEntry> per_node;
};

/// Throws LengthMismatch (or fewer than two values) and ConstantVector.
double pearson(std::span<const double> x, std::span<const double> y);
/// Pearson on average ranks.
double spearman(std::span<const double> x, std::span<const double> y);
double sample_skewness(std::span<const double> x);

/// Label order used for tie-breaks: all-digit labels compare numerically,
/// anything else lexicographically.
bool label_less(const std::string &a, const std::string &b);

/// Rank 1 is the highest score; ties go to the smaller label.
std::vector<std::size_t> dense_ranks(std::span<const double> scores,
                                     std::span<const std::string> labels);

/// Throws LengthMismatch, ConstantVector.
RankingReport compare_rankings(std::span<const double> exact,
                               std::span<const double> approx,
                               std::span<const std::string> labels,
                               std::size_t top_k = 10);

/// ||M||_2 by power iteration on M M^T, stopping when the eigen-residual drops
/// below tol relative to the estimate.
double spectral_norm(const Eigen::MatrixXd &m, double tol = 1e-9,
                     std::size_t max_iterations = 10000, std::uint64_t seed = 0);

/// ||G+ - P||_2 / ||G+||_2 against the dense pseudoinverse. Throws SizeCapExceeded.
double rel_2norm_error(const Graph &g, const PinvOperator &approx,
                       std::size_t size_cap = kDefaultDenseCap);

struct EigenDegreeProfile {
  std::optional<double> pearson; ///< empty when either side is constant
  double rel_distance;
};

/// Compares lambda_2..lambda_n with the n-1 largest degrees, both sorted
/// ascending: Pearson correlation and ||lambda - d|| / ||lambda||.
EigenDegreeProfile eigen_degree_profile(const Graph &g,
                                        std::size_t size_cap = kDefaultDenseCap);

} // namespace lapinv
