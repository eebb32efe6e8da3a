#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lapinv {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  double weight;
};

struct Neighbor {
  NodeId node;
  double weight;
};

/// Generalized degrees: d_i is the sum of the weights incident to node i.
using DegreeVector = std::vector<double>;

/// One input row of an edge list: two node tokens and an optional conductance.
struct EdgeRow {
  std::string a;
  std::string b;
  std::optional<double> weight;
};

/// Immutable undirected weighted graph.
///
/// Edges are stored once (u < v) in insertion order, and the adjacency is kept
/// in CSR form with both directions so the Laplacian can be applied in
/// O(n + m). No self-loops, no parallel edges, all weights strictly positive.
class Graph {
public:
  Graph() = default;

  /// Builds a graph on nodes 0..n-1. Throws SelfLoop, DuplicateEdge,
  /// NonPositiveWeight or IndexOutOfRange.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t num_nodes() const noexcept { return degrees_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(NodeId i) const;

  const DegreeVector &degrees() const noexcept { return degrees_; }
  double total_weight() const noexcept;
  double max_degree() const noexcept;

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string> &labels() const noexcept { return labels_; }
  /// The node's label, or its decimal id when the graph is unlabeled.
  std::string label(NodeId i) const;

private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  DegreeVector degrees_;
  std::vector<std::string> labels_;
};

/// Maps label tokens to dense ids by first appearance. Missing weights are 1.
Graph from_edge_list(std::span<const EdgeRow> rows);

/// Returns (D - A) x. Throws DimensionMismatch.
std::vector<double> laplacian_apply(const Graph &g, std::span<const double> x);
void laplacian_apply(const Graph &g, std::span<const double> x,
                     std::span<double> out);

/// One connected component. The empty graph is not connected.
bool is_connected(const Graph &g);

/// Component index per node, components numbered by smallest member.
std::vector<std::size_t> connected_components(const Graph &g,
                                              std::size_t *count = nullptr);

DegreeVector degrees(const Graph &g);

/// Parses the whitespace edge-list format: `i j [w]` per line, `#` comments.
std::vector<EdgeRow> parse_edge_list(std::istream &in);
Graph read_edge_list(std::istream &in);
Graph read_edge_list_file(const std::string &path);

/// Writes one `label label weight` line per edge; unit weights are omitted.
void write_edge_list(const Graph &g, std::ostream &out,
                     const std::string &header_comment = {});

} // namespace lapinv
