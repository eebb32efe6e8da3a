#include "lapinv/graph.hpp"

#include "lapinv/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lapinv {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  if (a > b)
    std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "label count does not match node count");
  if (n > std::numeric_limits<NodeId>::max())
    throw Error(ErrorCode::BadParams, "too many nodes");

  Graph g;
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  g.degrees_.assign(n, 0.0);
  std::vector<std::size_t> counts(n, 0);
  for (Edge &e : edges) {
    if (e.u >= n || e.v >= n)
      throw Error(ErrorCode::IndexOutOfRange, "edge endpoint out of range");
    if (e.u == e.v)
      throw Error(ErrorCode::SelfLoop,
                  "self-loop on node " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw Error(ErrorCode::NonPositiveWeight,
                  "edge weight must be positive and finite");
    if (!seen.insert(pair_key(e.u, e.v)).second)
      throw Error(ErrorCode::DuplicateEdge,
                  "duplicate edge " + std::to_string(e.u) + "-" +
                      std::to_string(e.v));
    if (e.u > e.v)
      std::swap(e.u, e.v);
    ++counts[e.u];
    ++counts[e.v];
    g.degrees_[e.u] += e.weight;
    g.degrees_[e.v] += e.weight;
  }

  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    g.offsets_[i + 1] = g.offsets_[i] + counts[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge &e : edges) {
    g.adjacency_[fill[e.u]++] = {e.v, e.weight};
    g.adjacency_[fill[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t i = 0; i < n; ++i)
    std::sort(g.adjacency_.begin() + g.offsets_[i],
              g.adjacency_.begin() + g.offsets_[i + 1],
              [](const Neighbor &x, const Neighbor &y) { return x.node < y.node; });

  g.edges_ = std::move(edges);
  g.labels_ = std::move(labels);
  return g;
}

std::span<const Neighbor> Graph::neighbors(NodeId i) const {
  if (i >= num_nodes())
    throw Error(ErrorCode::IndexOutOfRange, "node id out of range");
  return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

double Graph::total_weight() const noexcept {
  double sum = 0.0;
  for (const Edge &e : edges_)
    sum += e.weight;
  return sum;
}

double Graph::max_degree() const noexcept {
  double best = 0.0;
  for (double d : degrees_)
    best = std::max(best, d);
  return best;
}

std::string Graph::label(NodeId i) const {
  if (i >= num_nodes())
    throw Error(ErrorCode::IndexOutOfRange, "node id out of range");
  return labels_.empty() ? std::to_string(i) : labels_[i];
}

Graph from_edge_list(std::span<const EdgeRow> rows) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  edges.reserve(rows.size());
  auto intern = [&](const std::string &token) {
    auto [it, inserted] = ids.try_emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted)
      labels.push_back(token);
    return it->second;
  };
  for (const EdgeRow &row : rows) {
    NodeId a = intern(row.a);
    NodeId b = intern(row.b);
    edges.push_back({a, b, row.weight.value_or(1.0)});
  }
  std::size_t n = labels.size();
  return Graph::from_edges(n, std::move(edges), std::move(labels));
}

void laplacian_apply(const Graph &g, std::span<const double> x,
                     std::span<double> out) {
  const std::size_t n = g.num_nodes();
  if (x.size() != n || out.size() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "vector length does not match node count");
  const DegreeVector &d = g.degrees();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = d[i] * x[i];
    for (const Neighbor &nb : g.neighbors(static_cast<NodeId>(i)))
      acc -= nb.weight * x[nb.node];
    out[i] = acc;
  }
}

std::vector<double> laplacian_apply(const Graph &g, std::span<const double> x) {
  std::vector<double> out(g.num_nodes());
  laplacian_apply(g, x, out);
  return out;
}

std::vector<std::size_t> connected_components(const Graph &g,
                                              std::size_t *count) {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> comp(n, unset);
  std::vector<NodeId> stack;
  std::size_t next = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (comp[root] != unset)
      continue;
    comp[root] = next;
    stack.push_back(static_cast<NodeId>(root));
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (const Neighbor &nb : g.neighbors(u)) {
        if (comp[nb.node] == unset) {
          comp[nb.node] = next;
          stack.push_back(nb.node);
        }
      }
    }
    ++next;
  }
  if (count)
    *count = next;
  return comp;
}

bool is_connected(const Graph &g) {
  if (g.num_nodes() == 0)
    return false;
  std::size_t count = 0;
  connected_components(g, &count);
  return count == 1;
}

DegreeVector degrees(const Graph &g) { return g.degrees(); }

std::vector<EdgeRow> parse_edge_list(std::istream &in) {
  std::vector<EdgeRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;)
      tokens.push_back(std::move(tok));
    if (tokens.empty())
      continue;
    if (tokens.size() != 2 && tokens.size() != 3)
      throw ParseError(lineno, "expected `i j [w]`, got " +
                                   std::to_string(tokens.size()) + " fields");
    EdgeRow row{tokens[0], tokens[1], std::nullopt};
    if (tokens.size() == 3) {
      const std::string &w = tokens[2];
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
      if (ec != std::errc() || ptr != w.data() + w.size())
        throw ParseError(lineno, "invalid weight '" + w + "'");
      row.weight = value;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Graph read_edge_list(std::istream &in) {
  auto rows = parse_edge_list(in);
  return from_edge_list(rows);
}

Graph read_edge_list_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(const Graph &g, std::ostream &out,
                     const std::string &header_comment) {
  if (!header_comment.empty())
    out << "# " << header_comment << '\n';
  auto old = out.precision(17);
  for (const Edge &e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v);
    if (e.weight != 1.0)
      out << ' ' << e.weight;
    out << '\n';
  }
  out.precision(old);
}

} // namespace lapinv
