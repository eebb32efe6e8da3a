#include "lapinv/errors.hpp"
#include "lapinv/eval.hpp"
#include "lapinv/pinv_operator.hpp"
#include "lapinv/spectral.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lapinv;

namespace {

double max_diff(const PinvOperator &op, const Eigen::MatrixXd &ref) {
  double worst = 0.0;
  for (NodeId i = 0; i < op.n(); ++i)
    for (NodeId j = 0; j < op.n(); ++j)
      worst = std::max(worst, std::abs(op.entry(i, j) - ref(i, j)));
  return worst;
}

// Stretch operator from the oracle spectrum: keeps pairs 2..k and replaces
// the rest by 1/sigma.
Eigen::MatrixXd oracle_stretch(const Graph &g, std::size_t k, double sigma) {
  const auto s = oracle::spectrum(g);
  const auto n = s.values.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 1; j < n; ++j) {
    const double w = j < static_cast<Eigen::Index>(k) ? 1.0 / s.values(j) : 1.0 / sigma;
    out += w * s.vectors.col(j) * s.vectors.col(j).transpose();
  }
  return out;
}

} // namespace

TEST_SUITE("pinv") {

TEST_CASE("cutoff on P3 and P2") {
  const Graph p3 = oracle::path(3);
  const EigenBasis full = smallest_eigenpairs(p3, 3);
  CHECK(max_diff(build_cutoff(full), exact_pinv(p3).matrix) < 1e-10);
  const PinvOperator t2 = build_cutoff(full.truncated(1));
  CHECK(t2.k() == 2);
  CHECK(t2.entry(1, 1) == doctest::Approx(0.0).scale(1.0));
  CHECK(entry(t2, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  const Graph p2 = oracle::path(2);
  CHECK(max_diff(build_cutoff(smallest_eigenpairs(p2, 2)), exact_pinv(p2).matrix) < 1e-12);
}

TEST_CASE("stretch exactness when the tail is one eigenvalue") {
  const Graph k3 = oracle::complete(3);
  const PinvOperator s = build_stretch(smallest_eigenpairs(k3, 2), 3.0);
  CHECK(max_diff(s, exact_pinv(k3).matrix) < 1e-10);
  CHECK(entry(s, 0, 1) == doctest::Approx(-1.0 / 9).epsilon(1e-10));
  const Graph p3 = oracle::path(3);
  CHECK(max_diff(build_stretch(smallest_eigenpairs(p3, 2), 3.0), exact_pinv(p3).matrix) < 1e-10);
}

TEST_CASE("exact operator entries") {
  const PinvOperator e = build_exact(exact_pinv(oracle::path(3)));
  CHECK(e.kind() == PinvKind::Exact);
  CHECK(entry(e, 0, 2) == doctest::Approx(-4.0 / 9));
  CHECK_THROWS_AS(e.entry(0, 3), Error);
}

TEST_CASE("stretch approaches cutoff as sigma grows") {
  const Graph g = oracle::random_connected(20, 15, 3);
  const EigenBasis b = smallest_eigenpairs(g, 4);
  const PinvOperator t = build_cutoff(b);
  double last = 1e300;
  for (double sigma : {1e2, 1e4, 1e6, 1e8}) {
    const double d = max_diff(build_stretch(b, sigma), t.to_dense());
    CHECK(d < last);
    last = d;
  }
  CHECK(last < 1e-7);
}

TEST_CASE("sigma rules") {
  CHECK(optimal_sigma(3, 3) == 3.0);
  CHECK(optimal_sigma(1, 3) == doctest::Approx(1.5));
  CHECK(optimal_sigma(2, 2) == 2.0);
  CHECK_THROWS_AS(optimal_sigma(3, 1), Error);
  CHECK(approx_sigma(1) == 2.0);
  CHECK(approx_sigma(3) == 6.0);
  CHECK(approx_sigma(0.5) == 1.0);
  CHECK_THROWS_AS(approx_sigma(0.0), Error);
  CHECK_THROWS_AS(build_stretch(smallest_eigenpairs(oracle::path(3), 2), 0.0), Error);
  CHECK_THROWS_AS(build_cutoff(EigenBasis{}), Error);
}

TEST_CASE("sigma below lambda_k is flagged") {
  const EigenBasis b = smallest_eigenpairs(oracle::path(5), 3);
  CHECK(build_stretch(b, 0.5 * b.last_value()).sigma_below_spectrum());
  CHECK_FALSE(build_stretch(b, 2 * b.last_value()).sigma_below_spectrum());
}

TEST_CASE("error bound formulas") {
  const ErrorBounds p3 = error_bounds(1, 3, 3, 3);
  CHECK(p3.cutoff_rel == doctest::Approx(1.0 / 3));
  CHECK(p3.gamma == doctest::Approx(0.0).scale(1.0));
  CHECK(p3.stretch_rel_bound == doctest::Approx(0.0).scale(1.0));
  const ErrorBounds k3 = error_bounds(3, 3, 3, 3);
  CHECK(k3.cutoff_rel == doctest::Approx(1.0));
  CHECK(k3.stretch_rel_bound == doctest::Approx(0.0).scale(1.0));
  const ErrorBounds mid = error_bounds(1, 2, 4, optimal_sigma(2, 4));
  CHECK(mid.cutoff_rel == doctest::Approx(0.5));
  CHECK(mid.gamma == doctest::Approx(0.25));
  CHECK(mid.stretch_rel_bound == doctest::Approx(0.125));
  CHECK_THROWS_AS(error_bounds(1, 2, 4, 10), Error);
  CHECK(error_bounds(1, 2, 4, 10, SigmaWindow::Any).stretch_rel_bound ==
        doctest::Approx(0.5 - 0.1));
  CHECK_THROWS_AS(error_bounds(2, 1, 4, 2), Error);
}

TEST_CASE("operators match oracle constructions on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 12 + seed;
    const Graph g = oracle::random_connected(n, seed + 4, seed, seed % 2 == 0);
    const EigenBasis b = smallest_eigenpairs(g, n);
    for (std::size_t k : {std::size_t{2}, std::size_t{4}, n / 2, n}) {
      const EigenBasis bk = b.truncated(k - 1);
      CHECK(max_diff(build_cutoff(bk), oracle::spectral_pinv(g, k)) < 1e-8);
      const double sigma = 1.7 * bk.last_value();
      CHECK(max_diff(build_stretch(bk, sigma), oracle_stretch(g, k, sigma)) < 1e-8);
    }
  }
}

TEST_CASE("operator invariants") {
  const Graph g = oracle::random_connected(30, 25, 8, true);
  const EigenBasis b = smallest_eigenpairs(g, 5);
  const std::vector<PinvOperator> ops{build_exact(exact_pinv(g)), build_cutoff(b),
                                      build_stretch(b, 3 * b.last_value())};
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  for (const PinvOperator &op : ops) {
    for (NodeId i = 0; i < op.n(); ++i) {
      double row = 0.0;
      for (NodeId j = 0; j < op.n(); ++j) {
        CHECK(op.entry(i, j) == op.entry(j, i));
        row += op.entry(i, j);
      }
      CHECK(std::abs(row) < 1e-8);
    }
    std::vector<double> x(op.n());
    for (double &v : x)
      v = gauss(rng);
    const std::vector<double> y = op.apply(x);
    const Eigen::VectorXd ref =
        op.to_dense() * Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(std::abs(y[i] - ref(static_cast<Eigen::Index>(i))) < 1e-10);
  }
  CHECK(ops[1].stored_entries() == 30 * 4 + 4);
  CHECK(ops[0].stored_entries() == 900);
}

TEST_CASE("minimum-norm solve") {
  const PinvOperator p3 = build_exact(exact_pinv(oracle::path(3)));
  const auto v = solve_min_norm(oracle::path(3), std::vector<double>{1, 0, -1}, p3);
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(std::abs(v[1]) < 1e-12);
  CHECK(v[2] == doctest::Approx(-1.0));
  const auto z = solve_min_norm(oracle::path(3), std::vector<double>{0, 0, 0}, p3);
  CHECK(z == std::vector<double>{0, 0, 0});
  const PinvOperator p2 = build_exact(exact_pinv(oracle::path(2)));
  const auto w = solve_min_norm(oracle::path(2), std::vector<double>{1, -1}, p2);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(-0.5));
  try {
    solve_min_norm(oracle::path(2), std::vector<double>{1, 0}, p2);
    FAIL("expected SupplyNotBalanced");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::SupplyNotBalanced);
  }
}

TEST_CASE("measured errors follow the formulas") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::size_t n = 15 + 3 * seed;
    const Graph g = oracle::random_connected(n, 2 * n, seed + 50);
    const auto ref = oracle::spectrum(g).values;
    const Eigen::MatrixXd exact = oracle::spectral_pinv(g);
    double previous = 2.0;
    for (std::size_t k = 2; k < n; ++k) {
      const Eigen::MatrixXd t = oracle::spectral_pinv(g, k);
      const double measured = oracle::two_norm(exact - t) / oracle::two_norm(exact);
      CHECK(measured == doctest::Approx(ref(1) / ref(static_cast<Eigen::Index>(k))).epsilon(1e-8));
      CHECK(measured <= previous + 1e-12);
      previous = measured;
      const double sigma = optimal_sigma(ref(static_cast<Eigen::Index>(k)), ref(n - 1));
      const double stretch = oracle::two_norm(exact - oracle_stretch(g, k, sigma)) /
                             oracle::two_norm(exact);
      CHECK(stretch <= measured + 1e-12);
      const ErrorBounds eb = error_bounds(ref(1), ref(static_cast<Eigen::Index>(k)), ref(n - 1), sigma);
      CHECK(stretch <= ref(1) * eb.gamma / 2 + 1e-8);
    }
  }
}

TEST_CASE("resolve_sigma policies") {
  const Graph g = oracle::random_connected(20, 20, 6);
  EigenBasis b = smallest_eigenpairs(g, 3);
  CHECK(resolve_sigma(b, SigmaPolicy::TwiceLambdaK) == 2 * b.last_value());
  CHECK(resolve_sigma(b, SigmaPolicy::Explicit, 4.5) == 4.5);
  CHECK_THROWS_AS(resolve_sigma(b, SigmaPolicy::Explicit), Error);
  CHECK_THROWS_AS(resolve_sigma(b, SigmaPolicy::Optimal), Error);
  attach_sigma_eigenvalues(g, b);
  CHECK(resolve_sigma(b, SigmaPolicy::Optimal) ==
        doctest::Approx(optimal_sigma(*b.next_eigenvalue, *b.largest_eigenvalue)));
}

} // TEST_SUITE
