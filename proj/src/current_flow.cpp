#include "lapinv/current_flow.hpp"

#include "lapinv/errors.hpp"
#include "lapinv/random.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace lapinv {

std::string_view to_string(ScoreMode mode) {
  switch (mode) {
  case ScoreMode::Exact: return "exact";
  case ScoreMode::Cutoff: return "cutoff";
  case ScoreMode::Stretch: return "stretch";
  case ScoreMode::Fiedler: return "fiedler";
  }
  return "unknown";
}

namespace {

void check_pair(const Graph &g, SupplyPair pair) {
  const std::size_t n = g.num_nodes();
  if (pair.s >= n || pair.t >= n || pair.s == pair.t)
    throw Error(ErrorCode::InvalidPair, "outlets must be two distinct valid nodes");
}

void check_operator(const Graph &g, const PinvOperator &pinv) {
  if (pinv.n() != g.num_nodes())
    throw Error(ErrorCode::DimensionMismatch,
                "operator dimension does not match the graph");
}

/// Adds half the absolute incident current of every node to `acc`, with the
/// outlets credited kEndpointFlow instead.
void accumulate_throughput(const Graph &g, std::span<const double> v,
                           NodeId s, NodeId t, std::span<double> acc) {
  const std::size_t n = g.num_nodes();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == s || i == t) {
      acc[i] += kEndpointFlow;
      continue;
    }
    double sum = 0.0;
    for (const Neighbor &nb : g.neighbors(static_cast<NodeId>(i)))
      sum += nb.weight * std::abs(v[i] - v[nb.node]);
    acc[i] += 0.5 * sum;
  }
}

ScoreMode mode_of(PinvKind kind) {
  switch (kind) {
  case PinvKind::Exact: return ScoreMode::Exact;
  case PinvKind::Cutoff: return ScoreMode::Cutoff;
  case PinvKind::Stretch: return ScoreMode::Stretch;
  }
  return ScoreMode::Exact;
}

} // namespace

FlowResult solve_flow(const Graph &g, const PinvOperator &pinv, SupplyPair pair) {
  if (!is_connected(g))
    throw Error(ErrorCode::NotConnected, "graph is not connected");
  check_pair(g, pair);
  check_operator(g, pinv);
  const std::size_t n = g.num_nodes();
  FlowResult out;
  out.potentials.resize(n);
  pinv.potentials(pair.s, pair.t, out.potentials);
  out.edge_currents.reserve(g.num_edges());
  for (const Edge &e : g.edges())
    out.edge_currents.push_back(e.weight * (out.potentials[e.u] - out.potentials[e.v]));
  out.node_flow.assign(n, 0.0);
  accumulate_throughput(g, out.potentials, pair.s, pair.t, out.node_flow);
  return out;
}

double flow_through_node(const Graph &g, const PinvOperator &pinv,
                         SupplyPair pair, NodeId i) {
  check_operator(g, pinv);
  if (i >= g.num_nodes())
    throw Error(ErrorCode::IndexOutOfRange, "node id out of range");
  check_pair(g, pair);
  if (i == pair.s || i == pair.t)
    return kEndpointFlow;
  const double is = pinv.entry(i, pair.s);
  const double it = pinv.entry(i, pair.t);
  double sum = 0.0;
  for (const Neighbor &nb : g.neighbors(i))
    sum += nb.weight *
           std::abs(is + pinv.entry(nb.node, pair.t) - it - pinv.entry(nb.node, pair.s));
  return 0.5 * sum;
}

std::vector<std::pair<NodeId, NodeId>> sample_pairs(std::size_t n, Sampling sample) {
  if (!(sample.alpha > 0.0) || !(sample.alpha <= 1.0))
    throw Error(ErrorCode::BadAlpha, "alpha must lie in (0, 1]");
  if (n < 2)
    throw Error(ErrorCode::BadParams, "sampling needs at least two nodes");
  const auto draws = static_cast<std::size_t>(
      std::ceil(sample.alpha * static_cast<double>(n) - 1e-9));
  const std::size_t sources = std::clamp<std::size_t>(draws, 1, n);
  const std::size_t targets = std::clamp<std::size_t>(draws, 1, n - 1);

  Rng rng(sample.seed);
  std::vector<NodeId> all(n);
  for (std::size_t i = 0; i < n; ++i)
    all[i] = static_cast<NodeId>(i);
  std::vector<NodeId> chosen = sample_without_replacement(rng, all, sources);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(sources * targets);
  std::vector<NodeId> others;
  for (NodeId s : chosen) {
    others.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (i != s)
        others.push_back(static_cast<NodeId>(i));
    for (NodeId t : sample_without_replacement(rng, others, targets))
      pairs.emplace_back(s, t);
  }
  return pairs;
}

BetweennessScores betweenness(const Graph &g, const PinvOperator &pinv,
                              std::optional<Sampling> sample, unsigned threads) {
  const std::size_t n = g.num_nodes();
  if (n < 2)
    throw Error(ErrorCode::BadParams, "betweenness needs at least two nodes");
  if (!is_connected(g))
    throw Error(ErrorCode::NotConnected, "graph is not connected");
  check_operator(g, pinv);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  if (sample) {
    pairs = sample_pairs(n, *sample);
  } else {
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t)
        pairs.emplace_back(static_cast<NodeId>(s), static_cast<NodeId>(t));
  }

  // Each worker owns a contiguous slice and its own accumulator; slices are
  // summed in worker order so a given thread count is reproducible.
  const std::size_t workers =
      std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, std::max<std::size_t>(pairs.size(), 1));
  std::vector<std::vector<double>> partial(workers, std::vector<double>(n, 0.0));
  auto run = [&](std::size_t w) {
    const std::size_t begin = pairs.size() * w / workers;
    const std::size_t end = pairs.size() * (w + 1) / workers;
    std::vector<double> v(n);
    for (std::size_t p = begin; p < end; ++p) {
      auto [s, t] = pairs[p];
      pinv.potentials(s, t, v);
      accumulate_throughput(g, v, s, t, partial[w]);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(run, w);
    for (auto &th : pool)
      th.join();
  }

  BetweennessScores out;
  out.values.assign(n, 0.0);
  for (const auto &acc : partial)
    for (std::size_t i = 0; i < n; ++i)
      out.values[i] += acc[i];
  const double count = static_cast<double>(pairs.size());
  for (double &b : out.values)
    b /= count;
  out.mode = mode_of(pinv.kind());
  out.k = pinv.k();
  out.sigma = pinv.sigma();
  out.sample_fraction = sample ? sample->alpha : 1.0;
  out.pairs_evaluated = pairs.size();
  return out;
}

BetweennessScores betweenness_fiedler(const Graph &g, const EigenBasis &basis) {
  if (basis.size() != 1)
    throw Error(ErrorCode::WrongBasisSize,
                "local scores need exactly the Fiedler pair, got " +
                    std::to_string(basis.size()) + " pairs");
  if (basis.n() != g.num_nodes())
    throw Error(ErrorCode::DimensionMismatch, "basis dimension does not match the graph");
  if (!is_connected(g))
    throw Error(ErrorCode::NotConnected, "graph is not connected");
  const std::vector<double> &v = basis.pair(0).vector;
  BetweennessScores out;
  out.values.assign(g.num_nodes(), 0.0);
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    double sum = 0.0;
    for (const Neighbor &nb : g.neighbors(static_cast<NodeId>(i)))
      sum += nb.weight * std::abs(v[i] - v[nb.node]);
    out.values[i] = sum;
  }
  out.mode = ScoreMode::Fiedler;
  out.k = 2;
  return out;
}

} // namespace lapinv
