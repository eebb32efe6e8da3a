#pragma once

#include "lapinv/graph.hpp"
#include "lapinv/pinv_operator.hpp"
#include "lapinv/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace lapinv {

/// Throughput credited to the source and the target of a unit current.
#ifdef LAPINV_ENDPOINTS_ZERO
inline constexpr double kEndpointFlow = 0.0;
#else
inline constexpr double kEndpointFlow = 1.0;
#endif

/// A unit current entering at `s` and leaving at `t`.
struct SupplyPair {
  NodeId s;
  NodeId t;
};

struct FlowResult {
  std::vector<double> potentials;
  /// Signed current per edge in `Graph::edges()` order, positive from u to v.
  std::vector<double> edge_currents;
  std::vector<double> node_flow;
};

enum class ScoreMode { Exact, Cutoff, Stretch, Fiedler };

std::string_view to_string(ScoreMode mode);

struct BetweennessScores {
  std::vector<double> values;
  ScoreMode mode = ScoreMode::Exact;
  std::size_t k = 0;
  std::optional<double> sigma;
  double sample_fraction = 1.0; ///< alpha, 1 for all pairs
  std::size_t pairs_evaluated = 0;
};

struct Sampling {
  double alpha;
  std::uint64_t seed;
};

/// Potentials, edge currents and node throughputs for one outlet pair.
/// Throws NotConnected, InvalidPair.
FlowResult solve_flow(const Graph &g, const PinvOperator &pinv, SupplyPair pair);

/// Throughput of node i for one pair straight from pseudoinverse entries,
/// in O(deg(i) k). Throws IndexOutOfRange, InvalidPair.
double flow_through_node(const Graph &g, const PinvOperator &pinv,
                         SupplyPair pair, NodeId i);

/// Current-flow betweenness averaged over all s < t, or over a seeded sample
/// of ceil(alpha n) sources with ceil(alpha n) targets each. Work is split
/// across `threads`; the sample does not depend on the thread count.
/// Throws NotConnected, BadAlpha, BadParams (n < 2).
BetweennessScores betweenness(const Graph &g, const PinvOperator &pinv,
                              std::optional<Sampling> sample = std::nullopt,
                              unsigned threads = 1);

/// The source-target pairs a sampled run visits, in evaluation order.
std::vector<std::pair<NodeId, NodeId>> sample_pairs(std::size_t n, Sampling sample);

/// Local scores sum_j A_ij |v2[i] - v2[j]| from the Fiedler vector alone.
/// Throws WrongBasisSize unless the basis holds one pair.
BetweennessScores betweenness_fiedler(const Graph &g, const EigenBasis &basis);

} // namespace lapinv
