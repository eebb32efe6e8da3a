#include "lapinv/pinv_operator.hpp"

#include "lapinv/errors.hpp"

#include <algorithm>
#include <cmath>

namespace lapinv {

std::string_view to_string(PinvKind kind) {
  switch (kind) {
  case PinvKind::Exact: return "exact";
  case PinvKind::Cutoff: return "cutoff";
  case PinvKind::Stretch: return "stretch";
  }
  return "unknown";
}

PinvOperator PinvOperator::exact(DensePinv pinv) {
  PinvOperator op;
  op.kind_ = PinvKind::Exact;
  op.n_ = pinv.n();
  op.dense_ = std::make_shared<const DensePinv>(std::move(pinv));
  return op;
}

PinvOperator PinvOperator::cutoff(const EigenBasis &basis) {
  if (basis.empty())
    throw Error(ErrorCode::EmptyBasis, "cutoff needs at least one eigenpair");
  PinvOperator op;
  op.kind_ = PinvKind::Cutoff;
  op.n_ = basis.n();
  op.vectors_.resize(static_cast<Eigen::Index>(op.n_),
                     static_cast<Eigen::Index>(basis.size()));
  for (std::size_t p = 0; p < basis.size(); ++p) {
    const EigenPair &pair = basis.pair(p);
    for (std::size_t i = 0; i < op.n_; ++i)
      op.vectors_(i, p) = pair.vector[i];
    op.weights_.push_back(1.0 / pair.value);
  }
  return op;
}

PinvOperator PinvOperator::stretch(const EigenBasis &basis, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw Error(ErrorCode::NonPositiveSigma, "sigma must be positive");
  PinvOperator op = cutoff(basis);
  op.kind_ = PinvKind::Stretch;
  op.diagonal_ = 1.0 / sigma;
  for (double &w : op.weights_)
    w -= op.diagonal_;
  op.sigma_ = sigma;
  op.sigma_low_ = sigma < basis.last_value();
  return op;
}

std::size_t PinvOperator::k() const noexcept {
  return kind_ == PinvKind::Exact ? n_ : pairs() + 1;
}

double PinvOperator::entry(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_)
    throw Error(ErrorCode::IndexOutOfRange, "pseudoinverse index out of range");
  if (kind_ == PinvKind::Exact)
    return dense_->matrix(i, j);
  double sum = 0.0;
  for (Eigen::Index p = 0; p < vectors_.cols(); ++p)
    sum += weights_[static_cast<std::size_t>(p)] * (vectors_(i, p) * vectors_(j, p));
  if (diagonal_ != 0.0)
    sum += (i == j ? diagonal_ : 0.0) - diagonal_ / static_cast<double>(n_);
  return sum;
}

std::vector<double> PinvOperator::apply(std::span<const double> x) const {
  if (x.size() != n_)
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match n");
  Eigen::Map<const Eigen::VectorXd> in(x.data(), static_cast<Eigen::Index>(n_));
  std::vector<double> out(n_);
  Eigen::Map<Eigen::VectorXd> y(out.data(), static_cast<Eigen::Index>(n_));
  if (kind_ == PinvKind::Exact) {
    y.noalias() = dense_->matrix * in;
    return out;
  }
  Eigen::VectorXd coords = vectors_.transpose() * in;
  for (Eigen::Index p = 0; p < coords.size(); ++p)
    coords(p) *= weights_[static_cast<std::size_t>(p)];
  y.noalias() = vectors_ * coords;
  if (diagonal_ != 0.0)
    y += diagonal_ * (in.array() - in.mean()).matrix();
  return out;
}

void PinvOperator::potentials(NodeId s, NodeId t, std::span<double> out) const {
  if (s >= n_ || t >= n_)
    throw Error(ErrorCode::IndexOutOfRange, "outlet index out of range");
  if (out.size() != n_)
    throw Error(ErrorCode::DimensionMismatch, "output length does not match n");
  Eigen::Map<Eigen::VectorXd> y(out.data(), static_cast<Eigen::Index>(n_));
  if (kind_ == PinvKind::Exact) {
    y = dense_->matrix.col(s) - dense_->matrix.col(t);
    return;
  }
  Eigen::VectorXd coords = (vectors_.row(s) - vectors_.row(t)).transpose();
  for (Eigen::Index p = 0; p < coords.size(); ++p)
    coords(p) *= weights_[static_cast<std::size_t>(p)];
  y.noalias() = vectors_ * coords;
  if (diagonal_ != 0.0 && s != t) {
    y(s) += diagonal_;
    y(t) -= diagonal_;
  }
}

Eigen::MatrixXd PinvOperator::to_dense() const {
  if (kind_ == PinvKind::Exact)
    return dense_->matrix;
  Eigen::MatrixXd scaled = vectors_;
  for (Eigen::Index p = 0; p < scaled.cols(); ++p)
    scaled.col(p) *= weights_[static_cast<std::size_t>(p)];
  Eigen::MatrixXd out = scaled * vectors_.transpose();
  if (diagonal_ != 0.0) {
    out.array() -= diagonal_ / static_cast<double>(n_);
    out.diagonal().array() += diagonal_;
  }
  return 0.5 * (out + out.transpose());
}

std::size_t PinvOperator::stored_entries() const noexcept {
  if (kind_ == PinvKind::Exact)
    return n_ * n_;
  return n_ * pairs() + pairs();
}

PinvOperator build_exact(DensePinv pinv) { return PinvOperator::exact(std::move(pinv)); }
PinvOperator build_cutoff(const EigenBasis &basis) { return PinvOperator::cutoff(basis); }
PinvOperator build_stretch(const EigenBasis &basis, double sigma) {
  return PinvOperator::stretch(basis, sigma);
}
double entry(const PinvOperator &op, NodeId i, NodeId j) { return op.entry(i, j); }

double optimal_sigma(double lambda_next, double lambda_max) {
  if (!(lambda_next > 0.0) || !(lambda_next <= lambda_max))
    throw Error(ErrorCode::InvalidOrder, "need 0 < lambda_{k+1} <= lambda_n");
  return 2.0 / (1.0 / lambda_next + 1.0 / lambda_max);
}

double approx_sigma(double lambda_k) {
  if (!(lambda_k > 0.0))
    throw Error(ErrorCode::NonPositiveSigma, "lambda_k must be positive");
  return 2.0 * lambda_k;
}

ErrorBounds error_bounds(double lambda_2, double lambda_next, double lambda_max,
                         double sigma, SigmaWindow window) {
  if (!(lambda_2 > 0.0) || !(lambda_2 <= lambda_next) || !(lambda_next <= lambda_max))
    throw Error(ErrorCode::InvalidOrder,
                "need 0 < lambda_2 <= lambda_{k+1} <= lambda_n");
  if (!(sigma > 0.0))
    throw Error(ErrorCode::NonPositiveSigma, "sigma must be positive");
  // sigma_opt is a harmonic mean and may land an ulp outside the window.
  const double slack = 1e-12 * lambda_max;
  if (window == SigmaWindow::Strict &&
      (sigma < lambda_next - slack || sigma > lambda_max + slack))
    throw Error(ErrorCode::SigmaOutOfRange,
                "sigma must lie in [lambda_{k+1}, lambda_n]");
  ErrorBounds out;
  out.cutoff_rel = lambda_2 / lambda_next;
  out.gamma = 1.0 / lambda_next - 1.0 / lambda_max;
  out.stretch_rel_bound =
      lambda_2 * std::max(std::abs(1.0 / lambda_next - 1.0 / sigma),
                          std::abs(1.0 / sigma - 1.0 / lambda_max));
  return out;
}

double resolve_sigma(const EigenBasis &basis, SigmaPolicy policy,
                     std::optional<double> explicit_value) {
  switch (policy) {
  case SigmaPolicy::Explicit:
    if (!explicit_value)
      throw Error(ErrorCode::BadParams, "explicit sigma policy needs a value");
    if (!(*explicit_value > 0.0))
      throw Error(ErrorCode::NonPositiveSigma, "sigma must be positive");
    return *explicit_value;
  case SigmaPolicy::TwiceLambdaK:
    if (basis.empty())
      throw Error(ErrorCode::EmptyBasis, "sigma shortcut needs lambda_k");
    return approx_sigma(basis.last_value());
  case SigmaPolicy::Optimal:
    if (!basis.largest_eigenvalue)
      throw Error(ErrorCode::BadParams, "optimal sigma needs lambda_n");
    if (basis.k() >= basis.n())
      return *basis.largest_eigenvalue; // no tail left, any sigma is exact
    if (!basis.next_eigenvalue)
      throw Error(ErrorCode::BadParams, "optimal sigma needs lambda_{k+1}");
    return optimal_sigma(*basis.next_eigenvalue,
                         std::max(*basis.next_eigenvalue, *basis.largest_eigenvalue));
  }
  throw Error(ErrorCode::BadParams, "unknown sigma policy");
}

std::vector<double> solve_min_norm(const Graph &g, std::span<const double> b,
                                   const PinvOperator &pinv) {
  if (b.size() != g.num_nodes() || pinv.n() != g.num_nodes())
    throw Error(ErrorCode::DimensionMismatch, "right-hand side length does not match n");
  double sum = 0.0;
  for (double x : b)
    sum += x;
  if (std::abs(sum) > 1e-9)
    throw Error(ErrorCode::SupplyNotBalanced, "right-hand side must sum to zero");
  return pinv.apply(b);
}

} // namespace lapinv
