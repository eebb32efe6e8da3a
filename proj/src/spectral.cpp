#include "lapinv/spectral.hpp"

#include "lapinv/errors.hpp"
#include "lapinv/krylov.hpp"

#include <algorithm>
#include <cmath>

namespace lapinv {

namespace {

void require_connected(const Graph &g) {
  if (!is_connected(g))
    throw Error(ErrorCode::NotConnected, "graph is not connected");
}

/// Flips v so its largest-magnitude entry (lowest index on ties) is positive.
void normalize_sign(std::vector<double> &v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12))
      best = i;
  if (!v.empty() && v[best] < 0.0)
    for (double &x : v)
      x = -x;
}

} // namespace

EigenBasis::EigenBasis(std::size_t n, std::vector<EigenPair> pairs,
                       double residual_tol)
    : n_(n), pairs_(std::move(pairs)), residual_tol_(residual_tol) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].vector.size() != n_)
      throw Error(ErrorCode::DimensionMismatch,
                  "eigenvector length does not match n");
    if (!(pairs_[i].value > 0.0))
      throw Error(ErrorCode::BadParams, "basis eigenvalues must be positive");
    if (i > 0 && pairs_[i].value < pairs_[i - 1].value)
      throw Error(ErrorCode::InvalidOrder, "basis eigenvalues must be ascending");
  }
}

EigenBasis EigenBasis::truncated(std::size_t count) const {
  if (count > pairs_.size())
    throw Error(ErrorCode::KTooLarge, "basis holds fewer pairs than requested");
  std::vector<EigenPair> head(pairs_.begin(),
                              pairs_.begin() + static_cast<std::ptrdiff_t>(count));
  EigenBasis out(n_, std::move(head), residual_tol_);
  out.next_eigenvalue =
      count < pairs_.size() ? std::optional<double>(pairs_[count].value) : next_eigenvalue;
  out.largest_eigenvalue = largest_eigenvalue;
  out.matvecs = matvecs;
  return out;
}

EigenBasis smallest_eigenpairs(const Graph &g, std::size_t k,
                               const EigenSolverOptions &options) {
  require_connected(g);
  const std::size_t n = g.num_nodes();
  if (k < 2)
    throw Error(ErrorCode::BadParams, "k must be at least 2 (one eigenpair)");
  if (k > n)
    throw Error(ErrorCode::KTooLarge,
                "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  if (!(options.tol > 0.0))
    throw Error(ErrorCode::BadParams, "tolerance must be positive");

  // Smallest eigenvalues of G are the largest of c I - G, c >= lambda_n.
  const double shift = std::max(2.0 * g.max_degree(), 1.0);
  std::vector<double> buffer(n);
  SymmetricOperator flipped = [&](std::span<const double> x, std::span<double> y) {
    laplacian_apply(g, x, y);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = shift * x[i] - y[i];
  };
  const double tol = options.tol;
  std::function<double(double)> tolerance = [&](double theta) {
    return tol * std::max(1.0, shift - theta);
  };
  KrylovSchurOptions ks;
  ks.seed = options.seed;
  ks.max_matvecs = options.max_matvecs;
  ks.check_multiplicity = options.check_multiplicity;
  ks.norm_estimate = shift;
  KrylovSchurResult found = largest_eigenpairs(flipped, n, k - 1, tolerance, ks);

  std::vector<EigenPair> pairs;
  pairs.reserve(found.values.size());
  for (auto &v : found.vectors) {
    laplacian_apply(g, v, buffer);
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      rq += v[i] * buffer[i];
    normalize_sign(v);
    pairs.push_back({rq, std::move(v)});
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair &a, const EigenPair &b) { return a.value < b.value; });
  EigenBasis basis(n, std::move(pairs), tol);
  basis.matvecs = found.matvecs;
  return basis;
}

double largest_eigenvalue(const Graph &g, const EigenSolverOptions &options) {
  require_connected(g);
  const std::size_t n = g.num_nodes();
  if (n < 2)
    throw Error(ErrorCode::KTooLarge, "a single node has no nontrivial eigenvalue");
  SymmetricOperator laplacian = [&](std::span<const double> x, std::span<double> y) {
    laplacian_apply(g, x, y);
  };
  const double tol = options.tol;
  std::function<double(double)> tolerance = [&](double theta) {
    return tol * std::max(theta, 1e-300);
  };
  KrylovSchurOptions ks;
  ks.seed = options.seed;
  ks.max_matvecs = options.max_matvecs;
  ks.check_multiplicity = false;
  ks.norm_estimate = std::max(2.0 * g.max_degree(), 1.0);
  return largest_eigenpairs(laplacian, n, 1, tolerance, ks).values.front();
}

void attach_sigma_eigenvalues(const Graph &g, EigenBasis &basis,
                              const EigenSolverOptions &options) {
  const std::size_t n = g.num_nodes();
  if (basis.k() < n && !basis.next_eigenvalue) {
    EigenBasis wider = smallest_eigenpairs(g, basis.k() + 1, options);
    basis.next_eigenvalue = wider.last_value();
  }
  if (!basis.largest_eigenvalue)
    basis.largest_eigenvalue = largest_eigenvalue(g, options);
}

Eigen::MatrixXd dense_laplacian(const Graph &g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const Edge &e : g.edges()) {
    L(e.u, e.v) -= e.weight;
    L(e.v, e.u) -= e.weight;
    L(e.u, e.u) += e.weight;
    L(e.v, e.v) += e.weight;
  }
  return L;
}

DensePinv exact_pinv(const Graph &g, std::size_t size_cap) {
  const std::size_t n = g.num_nodes();
  if (n > size_cap)
    throw Error(ErrorCode::SizeCapExceeded,
                "n = " + std::to_string(n) + " exceeds the dense cap of " +
                    std::to_string(size_cap));
  require_connected(g);
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd shifted = dense_laplacian(g);
  shifted.array() += inv_n;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::SingularShiftedMatrix,
                "G + J/n is not positive definite; is the graph connected?");
  Eigen::MatrixXd inverse =
      llt.solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                          static_cast<Eigen::Index>(n)));
  inverse.array() -= inv_n;
  DensePinv out{0.5 * (inverse + inverse.transpose())};
  return out;
}

Eigen::VectorXd dense_eigenvalues(const Graph &g, std::size_t size_cap) {
  if (g.num_nodes() > size_cap)
    throw Error(ErrorCode::SizeCapExceeded,
                "n = " + std::to_string(g.num_nodes()) +
                    " exceeds the dense cap of " + std::to_string(size_cap));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(g),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

} // namespace lapinv
