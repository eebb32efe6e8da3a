#include "lapinv/models.hpp"

#include "lapinv/errors.hpp"
#include "lapinv/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace lapinv {

Graph giant_component(const Graph &g) {
  std::size_t count = 0;
  std::vector<std::size_t> comp = connected_components(g, &count);
  if (count <= 1)
    return g;
  std::vector<std::size_t> sizes(count, 0);
  for (std::size_t c : comp)
    ++sizes[c];
  const std::size_t best = static_cast<std::size_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  constexpr auto unset = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> remap(g.num_nodes(), unset);
  NodeId next = 0;
  for (std::size_t i = 0; i < g.num_nodes(); ++i)
    if (comp[i] == best)
      remap[i] = next++;
  std::vector<Edge> edges;
  for (const Edge &e : g.edges())
    if (remap[e.u] != unset)
      edges.push_back({remap[e.u], remap[e.v], e.weight});
  std::vector<std::string> labels;
  if (g.has_labels())
    for (std::size_t i = 0; i < g.num_nodes(); ++i)
      if (remap[i] != unset)
        labels.push_back(g.labels()[i]);
  return Graph::from_edges(next, std::move(edges), std::move(labels));
}

Graph gen_er(std::size_t n, double q, std::uint64_t seed) {
  if (n < 2 || !(q > 0.0) || !(q < static_cast<double>(n)))
    throw Error(ErrorCode::BadParams, "ER needs n >= 2 and 0 < q < n");
  const double p = q / static_cast<double>(n);
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(q * static_cast<double>(n) / 2.0 * 1.1) + 16);
  // Geometric skipping over the pairs (v, w), w < v, in row order.
  const double log_q = std::log1p(-p);
  long long v = 1;
  long long w = -1;
  const auto nn = static_cast<long long>(n);
  while (v < nn) {
    const double r = 1.0 - rng.uniform(); // (0, 1]
    w += 1 + static_cast<long long>(std::floor(std::log(r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn)
      edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v), 1.0});
  }
  Graph full = Graph::from_edges(n, std::move(edges));
  Graph giant = giant_component(full);
  if (giant.num_nodes() < 2)
    throw Error(ErrorCode::DegenerateComponent,
                "giant component has fewer than two nodes");
  return giant;
}

Graph gen_ba(std::size_t n, std::size_t r, std::uint64_t seed, BaAttachment attachment) {
  if (n < 2 || r < 1)
    throw Error(ErrorCode::BadParams, "BA needs n >= 2 and r >= 1");
  Rng rng(seed);
  // A multiset of nodes where a uniform pick has the attachment probability:
  // every edge endpoint for Degree, every edge target plus one copy of each
  // node for InDegreePlusOne.
  std::vector<NodeId> bag;
  bag.reserve(2 * r * n);
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  auto add = [&](NodeId from, NodeId to) {
    if (attachment == BaAttachment::Degree)
      bag.push_back(from);
    bag.push_back(to);
    const std::uint64_t key = (static_cast<std::uint64_t>(std::min(from, to)) << 32) | std::max(from, to);
    if (seen.insert(key).second)
      edges.push_back({from, to, 1.0});
  };
  std::size_t first = 2;
  if (attachment == BaAttachment::Degree) {
    for (std::size_t i = 0; i < r; ++i)
      add(1, 0);
  } else {
    bag.push_back(0);
    first = 1;
  }
  std::vector<NodeId> targets(r);
  for (std::size_t v = first; v < n; ++v) {
    for (std::size_t i = 0; i < r; ++i)
      targets[i] = bag[rng.below(bag.size())];
    for (NodeId t : targets)
      add(static_cast<NodeId>(v), t);
    if (attachment == BaAttachment::InDegreePlusOne)
      bag.push_back(static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph generate(const GenSpec &spec) {
  if (const auto *er = std::get_if<ErModel>(&spec.model))
    return gen_er(er->n, er->q, spec.seed);
  const auto &ba = std::get<BaModel>(spec.model);
  return gen_ba(ba.n, ba.r, spec.seed, ba.attachment);
}

std::string to_json(const GenSpec &spec) {
  nlohmann::ordered_json j;
  if (const auto *er = std::get_if<ErModel>(&spec.model)) {
    j["model"] = "er";
    j["n"] = er->n;
    j["q"] = er->q;
  } else {
    const auto &ba = std::get<BaModel>(spec.model);
    j["model"] = "ba";
    j["n"] = ba.n;
    j["r"] = ba.r;
    if (ba.attachment == BaAttachment::InDegreePlusOne)
      j["attachment"] = "indegree";
  }
  j["seed"] = spec.seed;
  return j.dump();
}

} // namespace lapinv
