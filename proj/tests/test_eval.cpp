#include "lapinv/errors.hpp"
#include "lapinv/eval.hpp"
#include "lapinv/pinv_operator.hpp"
#include "lapinv/spectral.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lapinv;

TEST_SUITE("eval") {

TEST_CASE("pearson basics") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(pearson(x, x) == doctest::Approx(1.0));
  const std::vector<double> r{5, 4, 3, 2, 1};
  CHECK(pearson(x, r) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), Error);
  try {
    pearson(x, std::vector<double>{2, 2, 2, 2, 2});
    FAIL("expected ConstantVector");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ConstantVector);
  }
}

TEST_CASE("pearson against a two-pass reference") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss;
  std::vector<double> x(200), y(200);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = gauss(rng);
    y[i] = 0.3 * x[i] + gauss(rng);
  }
  const Eigen::Map<const Eigen::VectorXd> ex(x.data(), 200), ey(y.data(), 200);
  const Eigen::VectorXd cx = ex.array() - ex.mean(), cy = ey.array() - ey.mean();
  CHECK(pearson(x, y) == doctest::Approx(cx.dot(cy) / (cx.norm() * cy.norm())).epsilon(1e-12));
}

TEST_CASE("spearman handles ties with average ranks") {
  const std::vector<double> x{1, 2, 2, 3};
  const std::vector<double> y{10, 20, 20, 30};
  CHECK(spearman(x, y) == doctest::Approx(1.0));
  CHECK(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{1, 8, 27}) == doctest::Approx(1.0));
}

TEST_CASE("skewness") {
  CHECK(sample_skewness(std::vector<double>{1, 2, 3}) == doctest::Approx(0.0).scale(1.0));
  CHECK(sample_skewness(std::vector<double>{0, 0, 0, 0, 10}) > 1.0);
}

TEST_CASE("dense ranks with label tie-break") {
  const std::vector<double> s{0.5, 0.9, 0.5, 0.1};
  const std::vector<std::string> labels{"c", "a", "b", "d"};
  CHECK(dense_ranks(s, labels) == std::vector<std::size_t>{3, 1, 2, 4});
  const std::vector<std::string> ids{"10", "9", "2", "1"};
  CHECK(dense_ranks(std::vector<double>{1, 1, 1, 1}, ids) == std::vector<std::size_t>{4, 3, 2, 1});
  CHECK(label_less("9", "10"));
  CHECK(label_less("Beak", "Zig"));
}

TEST_CASE("compare_rankings") {
  const std::vector<double> a{0.1, 0.5, 0.3, 0.9};
  const std::vector<std::string> labels{"a", "b", "c", "d"};
  const RankingReport same = compare_rankings(a, a, labels, 2);
  CHECK(same.pearson == doctest::Approx(1.0));
  CHECK(same.mean_rank_change == 0.0);
  CHECK(same.top_k_overlap == 2);

  const std::vector<double> rev{0.9, 0.5, 0.3, 0.1};
  const std::vector<double> lin{1, 2, 3, 4}, rlin{4, 3, 2, 1};
  CHECK(compare_rankings(lin, rlin, labels).pearson == doctest::Approx(-1.0));

  const RankingReport r = compare_rankings(a, rev, labels, 2);
  const RankingReport swapped = compare_rankings(rev, a, labels, 2);
  CHECK(r.pearson == doctest::Approx(swapped.pearson));
  CHECK(r.mean_rank_change == swapped.mean_rank_change);
  CHECK(r.top_k_overlap <= r.top_k);
  // ranks a: d1 b2 c3 a4; rev: a1 b2 c3 d4.
  CHECK(r.mean_rank_change == doctest::Approx(1.5));
  CHECK(r.per_node[0].exact_rank == 4);
  CHECK(r.per_node[0].approx_rank == 1);
}

TEST_CASE("log transform is applied to skewed scores") {
  std::vector<double> exact(50), approx(50);
  for (std::size_t i = 0; i < 50; ++i) {
    exact[i] = std::exp(0.2 * static_cast<double>(i));
    approx[i] = exact[i] * (1.0 + 0.01 * std::sin(static_cast<double>(i)));
  }
  const RankingReport r = compare_rankings(exact, approx, {}, 10);
  CHECK(r.transformed);
  std::vector<double> lx(50), ly(50);
  for (std::size_t i = 0; i < 50; ++i) {
    lx[i] = std::log(exact[i] + kLogEpsilon);
    ly[i] = std::log(approx[i] + kLogEpsilon);
  }
  CHECK(r.pearson == doctest::Approx(pearson(lx, ly)));
  const std::vector<double> flat{1, 2, 3, 4, 5, 6};
  CHECK_FALSE(compare_rankings(flat, flat, {}).transformed);
}

TEST_CASE("spectral norm by power iteration") {
  Eigen::MatrixXd m(2, 2);
  m << 3, 0, 0, -4;
  CHECK(spectral_norm(m) == doctest::Approx(4.0).epsilon(1e-8));
  const Graph g = oracle::random_connected(30, 30, 2);
  const Eigen::MatrixXd p = oracle::spectral_pinv(g);
  CHECK(spectral_norm(p) == doctest::Approx(oracle::two_norm(p)).epsilon(1e-8));
}

TEST_CASE("relative 2-norm errors") {
  const Graph p3 = oracle::path(3);
  const EigenBasis b = smallest_eigenpairs(p3, 3);
  CHECK(rel_2norm_error(p3, build_cutoff(b.truncated(1))) == doctest::Approx(1.0 / 3).epsilon(1e-8));
  CHECK(rel_2norm_error(p3, build_stretch(b.truncated(1), 3.0)) < 1e-8);
  CHECK(rel_2norm_error(p3, build_cutoff(b)) < 1e-8);
  const Graph g = oracle::random_connected(30, 30, 9);
  CHECK(rel_2norm_error(g, build_cutoff(smallest_eigenpairs(g, 30))) < 1e-8);
  CHECK_THROWS_AS(rel_2norm_error(g, build_cutoff(b), 10), Error);
}

TEST_CASE("stretch error never exceeds cutoff error") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = oracle::random_connected(25, 25, seed + 20);
    const EigenBasis full = smallest_eigenpairs(g, 25);
    double last = 2.0;
    for (std::size_t k = 2; k < 25; k += 3) {
      EigenBasis b = full.truncated(k - 1);
      b.largest_eigenvalue = full.last_value();
      const double cut = rel_2norm_error(g, build_cutoff(b));
      const double str = rel_2norm_error(g, build_stretch(b, resolve_sigma(b, SigmaPolicy::Optimal)));
      CHECK(str <= cut + 1e-8);
      CHECK(cut <= last + 1e-8);
      last = cut;
    }
  }
}

TEST_CASE("eigenvalue and degree profile") {
  const EigenDegreeProfile k3 = eigen_degree_profile(oracle::complete(3));
  CHECK_FALSE(k3.pearson.has_value());
  CHECK(k3.rel_distance == doctest::Approx(std::sqrt(2.0) / std::sqrt(18.0)));
  const EigenDegreeProfile s = eigen_degree_profile(oracle::star(5));
  REQUIRE(s.pearson.has_value());
  CHECK(*s.pearson > 0.9);
  CHECK_THROWS_AS(eigen_degree_profile(oracle::path(20), 10), Error);
}

} // TEST_SUITE
