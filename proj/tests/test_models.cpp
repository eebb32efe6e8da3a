#include "lapinv/errors.hpp"
#include "lapinv/models.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace lapinv;

namespace {

void check_simple(const Graph &g) {
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Edge &e : g.edges()) {
    CHECK(e.u != e.v);
    CHECK(e.weight > 0.0);
    CHECK(seen.insert(std::minmax(e.u, e.v)).second);
  }
}

bool same_edges(const Graph &a, const Graph &b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges())
    return false;
  for (std::size_t i = 0; i < a.num_edges(); ++i)
    if (a.edges()[i].u != b.edges()[i].u || a.edges()[i].v != b.edges()[i].v)
      return false;
  return true;
}

} // namespace

TEST_SUITE("models") {

TEST_CASE("ER giant component is connected and deterministic") {
  const Graph g = gen_er(100, 4, 1);
  CHECK(is_connected(g));
  CHECK(g.num_nodes() <= 100);
  CHECK(g.num_nodes() > 80);
  check_simple(g);
  CHECK(same_edges(g, gen_er(100, 4, 1)));
  CHECK_FALSE(same_edges(g, gen_er(100, 4, 2)));
}

TEST_CASE("ER close to complete") {
  const Graph g = gen_er(10, 9, 3);
  CHECK(g.num_nodes() == 10);
  CHECK(g.num_edges() >= 35);
  CHECK(is_connected(g));
}

TEST_CASE("ER mean edge count before extraction") {
  double total = 0.0;
  const int runs = 1000;
  for (int seed = 0; seed < runs; ++seed) {
    const Graph g = gen_er(100, 4, static_cast<std::uint64_t>(seed));
    total += static_cast<double>(g.num_edges());
  }
  const double mean = total / runs;
  // q(n-1)/2 = 198 before extraction; small components hold few edges.
  CHECK(mean > 198 * 0.95);
  CHECK(mean < 198 * 1.05);
}

TEST_CASE("BA with r = 1 is a tree") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gen_ba(100, 1, seed);
    CHECK(g.num_nodes() == 100);
    CHECK(g.num_edges() == 99);
    CHECK(is_connected(g));
  }
}

TEST_CASE("BA is simple, deterministic and heavy tailed") {
  const Graph g = gen_ba(1000, 5, 11);
  check_simple(g);
  CHECK(is_connected(g));
  CHECK(g.num_edges() <= 5 * 999);
  CHECK(same_edges(g, gen_ba(1000, 5, 11)));
  std::vector<double> d = g.degrees();
  std::sort(d.begin(), d.end());
  CHECK(d.back() > 5 * d[d.size() / 2]);
}

TEST_CASE("in-degree attachment variant") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph tree = gen_ba(200, 1, seed, BaAttachment::InDegreePlusOne);
    CHECK(tree.num_edges() == 199);
    CHECK(is_connected(tree));
  }
  const Graph g = gen_ba(500, 3, 2, BaAttachment::InDegreePlusOne);
  check_simple(g);
  CHECK(is_connected(g));
  CHECK(same_edges(g, gen_ba(500, 3, 2, BaAttachment::InDegreePlusOne)));
  CHECK_FALSE(same_edges(g, gen_ba(500, 3, 2)));
  CHECK(to_json({BaModel{10, 2, BaAttachment::InDegreePlusOne}, 0}) ==
        R"({"model":"ba","n":10,"r":2,"attachment":"indegree","seed":0})");
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(gen_er(1, 0.5, 0), Error);
  CHECK_THROWS_AS(gen_er(10, 0.0, 0), Error);
  CHECK_THROWS_AS(gen_er(10, 10.0, 0), Error);
  CHECK_THROWS_AS(gen_ba(1, 1, 0), Error);
  CHECK_THROWS_AS(gen_ba(10, 0, 0), Error);
}

TEST_CASE("spec JSON and dispatch") {
  const GenSpec spec{BaModel{50, 2}, 9};
  CHECK(to_json(spec) == R"({"model":"ba","n":50,"r":2,"seed":9})");
  CHECK(same_edges(generate(spec), gen_ba(50, 2, 9)));
  CHECK(to_json({ErModel{20, 3.5}, 1}) == R"({"model":"er","n":20,"q":3.5,"seed":1})");
}

TEST_CASE("giant component picks the largest piece") {
  const Graph g = Graph::from_edges(7, {{0, 1, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {5, 6, 1.0}});
  const Graph big = giant_component(g);
  CHECK(big.num_nodes() == 3);
  CHECK(big.num_edges() == 2);
}

} // TEST_SUITE
