#pragma once

#include "lapinv/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

namespace lapinv {

/// Erdos-Renyi draw with edge probability q / n, reduced to its giant component.
struct ErModel {
  std::size_t n;
  double q; ///< mean degree
};

enum class BaAttachment {
  Degree,          ///< probability proportional to the current degree
  InDegreePlusOne, ///< links received plus one, as in igraph's "bag" generator
};

/// Preferential attachment with r draws per new node.
struct BaModel {
  std::size_t n;
  std::size_t r;
  BaAttachment attachment = BaAttachment::Degree;
};

struct GenSpec {
  std::variant<ErModel, BaModel> model;
  std::uint64_t seed = 0;
};

/// Throws BadParams unless 0 < q < n, n >= 2; DegenerateComponent when the
/// giant component has fewer than two nodes.
Graph gen_er(std::size_t n, double q, std::uint64_t seed);

/// Grows from one node; node 1 attaches to node 0, later nodes draw r targets
/// with replacement, and parallel edges are merged. Throws BadParams.
Graph gen_ba(std::size_t n, std::size_t r, std::uint64_t seed,
             BaAttachment attachment = BaAttachment::Degree);

Graph generate(const GenSpec &spec);

/// The spec as a one-line JSON object (used as the edge-list header).
std::string to_json(const GenSpec &spec);

/// Largest connected component, nodes renumbered in increasing id order.
/// Ties between equal-sized components go to the one with the smallest node.
Graph giant_component(const Graph &g);

} // namespace lapinv
