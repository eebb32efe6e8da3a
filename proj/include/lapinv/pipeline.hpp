#pragma once

#include "lapinv/current_flow.hpp"
#include "lapinv/pinv_operator.hpp"
#include "lapinv/spectral.hpp"

#include <cstddef>
#include <optional>

namespace lapinv {

struct ScoreRequest {
  ScoreMode mode = ScoreMode::Exact;
  std::size_t k = 2; ///< truncation index, pairs = k - 1
  SigmaPolicy sigma_policy = SigmaPolicy::Optimal;
  std::optional<double> sigma; ///< for SigmaPolicy::Explicit
  std::optional<Sampling> sampling;
  unsigned threads = 1;
  EigenSolverOptions solver;
  std::size_t dense_cap = kDefaultDenseCap;
};

/// Throws BadParams for combinations that cannot work (Fiedler with k != 2,
/// k < 2, explicit sigma without a value, a sigma for a non-stretch method).
void validate(const ScoreRequest &request);

/// The k - 1 pairs a request needs, plus lambda_{k+1} and lambda_n when the
/// optimal shift is asked for. A cached basis is truncated when it is wider
/// than needed; it must match the graph size. Throws KTooLarge,
/// DimensionMismatch.
EigenBasis prepare_basis(const Graph &g, const ScoreRequest &request,
                         const EigenBasis *cached = nullptr);

struct ScoreOutcome {
  BetweennessScores scores;
  bool sigma_below_spectrum = false;
};

/// End-to-end betweenness for one request.
ScoreOutcome compute_scores(const Graph &g, const ScoreRequest &request,
                            const EigenBasis *cached = nullptr);

/// Builds the cutoff or stretch operator a request describes from a prepared
/// basis.
PinvOperator build_operator(const EigenBasis &basis, const ScoreRequest &request);

} // namespace lapinv
