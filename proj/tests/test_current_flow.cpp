#include "lapinv/current_flow.hpp"
#include "lapinv/errors.hpp"
#include "lapinv/models.hpp"
#include "lapinv/pinv_operator.hpp"
#include "lapinv/spectral.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace lapinv;

namespace {

PinvOperator exact_op(const Graph &g) { return build_exact(exact_pinv(g)); }

NodeId id_of(const Graph &g, const std::string &label) {
  for (NodeId i = 0; i < g.num_nodes(); ++i)
    if (g.label(i) == label)
      return i;
  FAIL("no such label " << label);
  return 0;
}

std::vector<std::size_t> argsort_desc(const std::vector<double> &x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] > x[b]; });
  return idx;
}

} // namespace

TEST_SUITE("current_flow") {

TEST_CASE("P3 flows") {
  const Graph g = oracle::path(3);
  const FlowResult r = solve_flow(g, exact_op(g), {0, 2});
  CHECK(r.potentials[0] - r.potentials[2] == doctest::Approx(2.0));
  CHECK(r.potentials[0] == doctest::Approx(1.0));
  CHECK(std::abs(r.potentials[1]) < 1e-12);
  CHECK(r.edge_currents[0] == doctest::Approx(1.0));
  CHECK(r.edge_currents[1] == doctest::Approx(1.0));
  for (double f : r.node_flow)
    CHECK(f == doctest::Approx(1.0));
  CHECK(flow_through_node(g, exact_op(g), {0, 2}, 1) == doctest::Approx(1.0));
}

TEST_CASE("K3 flow splits two to one") {
  const Graph g = oracle::complete(3);
  CHECK(flow_through_node(g, exact_op(g), {0, 1}, 2) == doctest::Approx(1.0 / 3));
  CHECK(solve_flow(g, exact_op(g), {0, 1}).node_flow[2] == doctest::Approx(1.0 / 3));
}

TEST_CASE("eight-node resistor network") {
  const Graph g = oracle::resistor_network();
  const PinvOperator op = exact_op(g);
  const NodeId a = id_of(g, "A"), h = id_of(g, "H");
  const FlowResult r = solve_flow(g, op, {a, h});
  CHECK(r.node_flow[id_of(g, "G")] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.node_flow[id_of(g, "F")] == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(std::round(r.node_flow[id_of(g, "E")] * 100) / 100 == doctest::Approx(0.13));
  CHECK(flow_through_node(g, op, {a, h}, id_of(g, "F")) == doctest::Approx(0.4).epsilon(1e-10));
  // The potential drop from A to H is the effective resistance.
  const double drop = r.potentials[a] - r.potentials[h];
  CHECK(drop == doctest::Approx(op.entry(a, a) + op.entry(h, h) - 2 * op.entry(a, h)));
}

TEST_CASE("full-pair betweenness on small graphs") {
  {
    const Graph g = oracle::path(3);
    const auto b = betweenness(g, exact_op(g)).values;
    CHECK(b[0] == doctest::Approx(2.0 / 3));
    CHECK(b[1] == doctest::Approx(1.0));
    CHECK(b[2] == doctest::Approx(2.0 / 3));
  }
  {
    const Graph g = oracle::complete(3);
    for (double x : betweenness(g, exact_op(g)).values)
      CHECK(x == doctest::Approx(7.0 / 9));
  }
  {
    const Graph g = oracle::path(2);
    const BetweennessScores s = betweenness(g, exact_op(g));
    CHECK(s.values == std::vector<double>{1.0, 1.0});
    CHECK(s.pairs_evaluated == 1);
  }
}

TEST_CASE("betweenness matches the grounded-solve oracle") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = oracle::random_connected(10 + 2 * seed, seed * 3, seed, seed % 2 == 1);
    const auto got = betweenness(g, exact_op(g)).values;
    const auto want = oracle::betweenness(g);
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(std::abs(got[i] - want[i]) < 1e-10);
  }
}

TEST_CASE("Kirchhoff properties") {
  std::mt19937_64 rng(42);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 6 + seed;
    const Graph g = oracle::random_connected(n, seed, seed + 1000, true);
    const PinvOperator op = exact_op(g);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    NodeId s = pick(rng), t = pick(rng);
    while (t == s)
      t = pick(rng);
    const FlowResult r = solve_flow(g, op, {s, t});
    const auto gv = laplacian_apply(g, r.potentials);
    for (NodeId i = 0; i < n; ++i) {
      const double want = i == s ? 1.0 : i == t ? -1.0 : 0.0;
      CHECK(std::abs(gv[i] - want) < 1e-8);
    }
    CHECK(r.node_flow[s] == 1.0);
    CHECK(r.node_flow[t] == 1.0);
    // Shifting the potentials changes no current.
    std::vector<double> shifted = r.potentials;
    for (double &x : shifted)
      x += 17.25;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const Edge &ed = g.edges()[e];
      CHECK(std::abs(ed.weight * (shifted[ed.u] - shifted[ed.v]) - r.edge_currents[e]) < 1e-10);
    }
    for (NodeId i = 0; i < n; ++i)
      CHECK(flow_through_node(g, op, {s, t}, i) == doctest::Approx(r.node_flow[i]).epsilon(1e-10));
    const auto b = betweenness(g, op).values;
    for (double x : b) {
      CHECK(x >= 2.0 / n - 1e-12);
      CHECK(x <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("cutoff at k = n reproduces exact betweenness") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = oracle::random_connected(15 + seed, 10, seed + 5);
    const auto exact = betweenness(g, exact_op(g)).values;
    const auto cut = betweenness(g, build_cutoff(smallest_eigenpairs(g, g.num_nodes()))).values;
    for (std::size_t i = 0; i < exact.size(); ++i)
      CHECK(std::abs(exact[i] - cut[i]) < 1e-8);
  }
}

TEST_CASE("fiedler scores") {
  {
    const Graph g = oracle::path(3);
    const BetweennessScores s = betweenness_fiedler(g, smallest_eigenpairs(g, 2));
    CHECK(s.values[1] == doctest::Approx(2 * s.values[0]));
    CHECK(s.values[0] == doctest::Approx(s.values[2]));
    CHECK(s.values[0] == doctest::Approx(1 / std::sqrt(2.0)));
  }
  {
    const Graph g = oracle::path(2);
    const BetweennessScores s = betweenness_fiedler(g, smallest_eigenpairs(g, 2));
    CHECK(s.values[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(s.values[1] == doctest::Approx(std::sqrt(2.0)));
  }
  {
    // Unequal leaf weights break the symmetry so the Fiedler vector is unique.
    const Graph g = Graph::from_edges(4, {{0, 1, 1.0}, {0, 2, 1.5}, {0, 3, 2.0}});
    const auto v = betweenness_fiedler(g, smallest_eigenpairs(g, 2)).values;
    CHECK(v[0] > v[1]);
    CHECK(v[0] > v[2]);
    CHECK(v[0] > v[3]);
  }
  CHECK_THROWS_AS(betweenness_fiedler(oracle::path(4), smallest_eigenpairs(oracle::path(4), 3)), Error);
}

TEST_CASE("k = 2 cutoff betweenness in terms of the fiedler scores") {
  // Away from the endpoints the k = 2 flow is |v_s - v_t| h_i / (2 lambda_2),
  // so summing over pairs gives h_i (S - sum_t |v_i - v_t|) / (2 lambda_2)
  // plus the endpoint terms. The extra factor keeps the two rankings close
  // but not identical.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = oracle::random_connected(30, 20, seed + 300);
    const std::size_t n = g.num_nodes();
    const EigenBasis b = smallest_eigenpairs(g, 2);
    const auto h = betweenness_fiedler(g, b).values;
    const auto c = betweenness(g, build_cutoff(b)).values;
    const auto &v = b.pair(0).vector;
    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = s + 1; t < n; ++t)
        total += std::abs(v[s] - v[t]);
    const double pairs = 0.5 * static_cast<double>(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
      double own = 0.0;
      for (std::size_t t = 0; t < n; ++t)
        own += std::abs(v[i] - v[t]);
      const double want =
          (h[i] * (total - own) / (2 * b.fiedler_value()) + kEndpointFlow * (n - 1)) / pairs;
      CHECK(c[i] == doctest::Approx(want).epsilon(1e-9));
    }
    CHECK(argsort_desc(h)[0] == argsort_desc(c)[0]);
  }
}

TEST_CASE("sampling") {
  const Graph g = generate({ErModel{100, 4}, 7});
  const PinvOperator op = exact_op(g);
  const std::size_t n = g.num_nodes();

  CHECK_THROWS_AS(sample_pairs(n, {0.0, 1}), Error);
  CHECK_THROWS_AS(sample_pairs(n, {1.5, 1}), Error);

  const auto pairs = sample_pairs(n, {0.1, 3});
  const std::size_t c = static_cast<std::size_t>(std::ceil(0.1 * n));
  std::set<NodeId> sources;
  for (const auto &[s, t] : pairs) {
    CHECK(s != t);
    sources.insert(s);
  }
  CHECK(sources.size() == c);
  CHECK(pairs.size() <= c * c);
  CHECK(pairs == sample_pairs(n, {0.1, 3}));

  const BetweennessScores one = betweenness(g, op, Sampling{0.1, 3}, 1);
  const BetweennessScores four = betweenness(g, op, Sampling{0.1, 3}, 4);
  CHECK(one.pairs_evaluated == pairs.size());
  CHECK(one.sample_fraction == 0.1);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs(one.values[i] - four.values[i]) < 1e-12);

  const auto full = betweenness(g, op).values;
  std::vector<double> mean(n, 0.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = betweenness(g, op, Sampling{1.0, seed}).values;
    for (std::size_t i = 0; i < n; ++i)
      mean[i] += s[i] / 100.0;
  }
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs(mean[i] - full[i]) < 0.05);
}

TEST_CASE("threads do not change full-pair results") {
  const Graph g = oracle::random_connected(40, 30, 77);
  const PinvOperator op = exact_op(g);
  const auto a = betweenness(g, op, std::nullopt, 1).values;
  const auto b = betweenness(g, op, std::nullopt, 3).values;
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(a[i] - b[i]) < 1e-12);
}

TEST_CASE("error cases") {
  const Graph g = oracle::path(3);
  const PinvOperator op = exact_op(g);
  CHECK_THROWS_AS(solve_flow(g, op, {1, 1}), Error);
  CHECK_THROWS_AS(solve_flow(g, op, {0, 5}), Error);
  CHECK_THROWS_AS(flow_through_node(g, op, {0, 2}, 7), Error);
  CHECK(flow_through_node(g, op, {0, 2}, 0) == kEndpointFlow);
  const Graph one = Graph::from_edges(1, {});
  CHECK_THROWS_AS(betweenness(one, op), Error);
}

} // TEST_SUITE
