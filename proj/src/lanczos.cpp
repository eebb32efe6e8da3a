#include "lapinv/krylov.hpp"

#include "lapinv/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace lapinv {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Orthogonal complement bookkeeping: the constant vector plus locked vectors.
class Deflation {
public:
  Deflation(std::size_t n, bool constant, std::size_t capacity)
      : constant_(constant), locked_(n, capacity) {}

  void project(Eigen::Ref<VectorXd> w) const {
    if (constant_)
      w.array() -= w.mean();
    if (count_ > 0) {
      auto basis = locked_.leftCols(count_);
      w.noalias() -= basis * (basis.transpose() * w);
    }
  }

  void add(const VectorXd &x) {
    if (count_ == static_cast<std::size_t>(locked_.cols()))
      locked_.conservativeResize(Eigen::NoChange, locked_.cols() + 4);
    locked_.col(count_++) = x;
  }

  void remove(std::size_t idx) {
    for (std::size_t c = idx + 1; c < count_; ++c)
      locked_.col(c - 1) = locked_.col(c);
    --count_;
  }

  VectorXd column(std::size_t idx) const { return locked_.col(idx); }
  std::size_t count() const { return count_; }
  std::size_t dimension() const { return count_ + (constant_ ? 1 : 0); }

private:
  bool constant_;
  MatrixXd locked_;
  std::size_t count_ = 0;
};

class KrylovSchur {
public:
  KrylovSchur(const SymmetricOperator &op, std::size_t n,
              const std::function<double(double)> &tolerance,
              const KrylovSchurOptions &options, std::size_t nev)
      : op_(op), n_(n), tolerance_(tolerance), options_(options),
        deflation_(n, options.deflate_constant, nev + 1), rng_(options.seed),
        cap_(options.max_matvecs ? options.max_matvecs : 100 * n),
        scratch_(n) {}

  /// Locks `want` further eigenpairs into the deflation set.
  void lock(std::size_t want) {
    const std::size_t avail = n_ - deflation_.dimension();
    std::size_t mmax = options_.max_subspace ? options_.max_subspace
                                             : std::max<std::size_t>(2 * want + 20, 40);
    mmax = std::max<std::size_t>(std::min(mmax, avail), 1);

    MatrixXd Q(n_, mmax + 1);
    MatrixXd H = MatrixXd::Zero(mmax + 1, mmax + 1);
    if (!random_direction(Q, 0))
      throw Error(ErrorCode::KTooLarge, "no directions left to search");

    std::size_t got = 0;
    std::size_t j = 0; // next column of H to compute; Q holds j + 1 vectors
    while (true) {
      const std::size_t room = n_ - deflation_.dimension();
      const std::size_t target = std::min(mmax, room);
      double beta = 0.0;
      bool exhausted = false;
      for (; j < target; ++j) {
        VectorXd w(n_);
        apply(Q.col(j), w);
        deflation_.project(w);
        auto basis = Q.leftCols(j + 1);
        VectorXd h = basis.transpose() * w;
        w.noalias() -= basis * h;
        deflation_.project(w);
        VectorXd h2 = basis.transpose() * w;
        w.noalias() -= basis * h2;
        h += h2;
        H.block(0, j, j + 1, 1) = h;
        H.block(j, 0, 1, j + 1) = h.transpose();
        beta = w.norm();
        if (j + 1 == room) {
          exhausted = true;
          beta = 0.0;
          ++j;
          break;
        }
        if (beta <= breakdown_threshold()) {
          beta = 0.0;
          if (!random_direction(Q, j + 1)) {
            exhausted = true;
            ++j;
            break;
          }
          H(j + 1, j) = H(j, j + 1) = 0.0;
        } else {
          Q.col(j + 1) = w / beta;
          H(j + 1, j) = H(j, j + 1) = beta;
        }
      }
      const std::size_t m = j;
      if (m < target)
        exhausted = true;

      MatrixXd S = H.topLeftCorner(m, m);
      S = 0.5 * (S + S.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
      const VectorXd &theta = es.eigenvalues();
      const MatrixXd &Y = es.eigenvectors();
      std::vector<std::size_t> order(m);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return theta(a) > theta(b); });

      // Lock the converged prefix of the wanted Ritz pairs.
      std::size_t locked_now = 0;
      worst_ = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m && got < want; ++r) {
        const std::size_t idx = order[r];
        const double estimate = std::abs(beta * Y(m - 1, idx));
        if (estimate > tolerance_(theta(idx))) {
          worst_ = estimate;
          break;
        }
        VectorXd x = Q.leftCols(m) * Y.col(idx);
        deflation_.project(x);
        x.normalize();
        apply(x, scratch_);
        const double rq = x.dot(scratch_);
        const double residual = (scratch_ - rq * x).norm();
        if (residual > tolerance_(rq)) {
          worst_ = residual;
          break;
        }
        deflation_.add(x);
        values_.push_back(rq);
        ++got;
        ++locked_now;
      }
      if (got == want)
        return;
      if (matvecs_ >= cap_)
        throw ConvergenceError(matvecs_, worst_);

      // Thick restart: keep the best unlocked Ritz vectors plus the residual.
      const std::size_t unlocked = m - locked_now;
      const std::size_t remaining = want - got;
      std::size_t keep = std::min(unlocked, remaining + (m > remaining ? (m - remaining) / 2 : 0));
      if (!exhausted && keep >= m)
        keep = m - 1;
      keep = std::min(keep, unlocked);
      ++restarts_;

      MatrixXd Yk(m, keep);
      for (std::size_t c = 0; c < keep; ++c)
        Yk.col(c) = Y.col(order[locked_now + c]);
      MatrixXd kept = Q.leftCols(m) * Yk;
      VectorXd residual_vector;
      if (!exhausted && beta > 0.0)
        residual_vector = Q.col(m);
      H.setZero();
      Q.leftCols(keep) = kept;
      for (std::size_t c = 0; c < keep; ++c)
        H(c, c) = theta(order[locked_now + c]);
      if (residual_vector.size() > 0) {
        Q.col(keep) = residual_vector;
        for (std::size_t c = 0; c < keep; ++c)
          H(keep, c) = H(c, keep) = beta * Yk(m - 1, c);
      } else if (!random_direction(Q, keep)) {
        if (keep == 0)
          throw ConvergenceError(matvecs_, worst_);
        // The kept vectors span everything that is left; settle them directly.
        j = keep;
        settle_exact(Q, keep, want, got);
        if (got == want)
          return;
        throw ConvergenceError(matvecs_, worst_);
      }
      j = keep;
    }
  }

  void verify_multiplicity(std::size_t nev) {
    // A fresh start vector in the complement of the locked pairs either
    // confirms the last locked value or reveals a smaller one (larger theta).
    while (n_ > deflation_.dimension()) {
      rng_.seed(options_.seed ^ (0x9E3779B97F4A7C15ULL + ++verifications_));
      lock(1);
      const double candidate = values_.back();
      std::size_t weakest = 0;
      for (std::size_t i = 1; i < nev; ++i)
        if (values_[i] < values_[weakest])
          weakest = i;
      const double slack = tolerance_(values_[weakest]);
      if (candidate > values_[weakest] + slack) {
        deflation_.remove(weakest);
        values_.erase(values_.begin() + static_cast<std::ptrdiff_t>(weakest));
        continue;
      }
      deflation_.remove(deflation_.count() - 1);
      values_.pop_back();
      return;
    }
  }

  KrylovSchurResult result() const {
    KrylovSchurResult out;
    std::vector<std::size_t> order(values_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return values_[a] > values_[b];
    });
    for (std::size_t idx : order) {
      out.values.push_back(values_[idx]);
      VectorXd v = deflation_.column(idx);
      out.vectors.emplace_back(v.data(), v.data() + v.size());
    }
    out.matvecs = matvecs_;
    out.restarts = restarts_;
    return out;
  }

private:
  void apply(const VectorXd &x, VectorXd &y) {
    op_(std::span<const double>(x.data(), n_), std::span<double>(y.data(), n_));
    ++matvecs_;
  }

  double breakdown_threshold() const {
    return 1e-12 * std::max(options_.norm_estimate, 1e-300);
  }

  /// Writes a random unit vector orthogonal to the deflation set and to
  /// Q.col(0..col-1) into Q.col(col). False when no direction is left.
  bool random_direction(MatrixXd &Q, std::size_t col) {
    VectorXd v(n_);
    for (int attempt = 0; attempt < 3; ++attempt) {
      for (std::size_t i = 0; i < n_; ++i)
        v(i) = 2.0 * (static_cast<double>(rng_() >> 11) * 0x1.0p-53) - 1.0;
      const double initial = v.norm();
      for (int pass = 0; pass < 2; ++pass) {
        deflation_.project(v);
        if (col > 0) {
          auto basis = Q.leftCols(col);
          v.noalias() -= basis * (basis.transpose() * v);
        }
      }
      const double norm = v.norm();
      if (norm > 1e-10 * initial) {
        Q.col(col) = v / norm;
        return true;
      }
    }
    return false;
  }

  void settle_exact(const MatrixXd &Q, std::size_t cols, std::size_t want,
                    std::size_t &got) {
    MatrixXd AQ(n_, cols);
    for (std::size_t c = 0; c < cols; ++c) {
      VectorXd y(n_);
      apply(Q.col(c), y);
      AQ.col(c) = y;
    }
    MatrixXd S = Q.leftCols(cols).transpose() * AQ;
    S = 0.5 * (S + S.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
    for (std::size_t r = cols; r-- > 0 && got < want;) {
      VectorXd x = Q.leftCols(cols) * es.eigenvectors().col(r);
      x.normalize();
      apply(x, scratch_);
      const double rq = x.dot(scratch_);
      const double residual = (scratch_ - rq * x).norm();
      if (residual > tolerance_(rq)) {
        worst_ = residual;
        return;
      }
      deflation_.add(x);
      values_.push_back(rq);
      ++got;
    }
  }

  const SymmetricOperator &op_;
  std::size_t n_;
  const std::function<double(double)> &tolerance_;
  KrylovSchurOptions options_;
  Deflation deflation_;
  std::mt19937_64 rng_;
  std::size_t cap_;
  VectorXd scratch_;
  std::vector<double> values_;
  std::size_t matvecs_ = 0;
  std::size_t restarts_ = 0;
  std::size_t verifications_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
};

} // namespace

KrylovSchurResult
largest_eigenpairs(const SymmetricOperator &op, std::size_t n, std::size_t nev,
                   const std::function<double(double)> &tolerance,
                   const KrylovSchurOptions &options) {
  const std::size_t reserved = options.deflate_constant ? 1 : 0;
  if (nev == 0)
    return {};
  if (n < reserved + nev)
    throw Error(ErrorCode::KTooLarge, "more eigenpairs requested than available");
  KrylovSchur solver(op, n, tolerance, options, nev);
  solver.lock(nev);
  if (options.check_multiplicity)
    solver.verify_multiplicity(nev);
  return solver.result();
}

} // namespace lapinv
