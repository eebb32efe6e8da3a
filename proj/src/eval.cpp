#include "lapinv/eval.hpp"

#include "lapinv/errors.hpp"
#include "lapinv/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace lapinv {

namespace {

void check_lengths(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::LengthMismatch, "score vectors differ in length");
  if (x.size() < 2)
    throw Error(ErrorCode::LengthMismatch, "need at least two values");
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]])
      ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t)
      ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

bool all_digits(const std::string &s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return c >= '0' && c <= '9'; });
}

} // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_lengths(x, y);
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw Error(ErrorCode::ConstantVector, "correlation undefined for a constant vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_lengths(x, y);
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  return pearson(rx, ry);
}

double sample_skewness(std::span<const double> x) {
  if (x.size() < 2)
    return 0.0;
  const auto n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (!(m2 > 0.0))
    return 0.0;
  return m3 / std::pow(m2, 1.5);
}

bool label_less(const std::string &a, const std::string &b) {
  if (all_digits(a) && all_digits(b)) {
    const auto za = a.find_first_not_of('0');
    const auto zb = b.find_first_not_of('0');
    std::string_view ta = za == std::string::npos ? std::string_view("0")
                                                  : std::string_view(a).substr(za);
    std::string_view tb = zb == std::string::npos ? std::string_view("0")
                                                  : std::string_view(b).substr(zb);
    if (ta.size() != tb.size())
      return ta.size() < tb.size();
    if (ta != tb)
      return ta < tb;
  }
  return a < b;
}

std::vector<std::size_t> dense_ranks(std::span<const double> scores,
                                     std::span<const std::string> labels) {
  if (!labels.empty() && labels.size() != scores.size())
    throw Error(ErrorCode::LengthMismatch, "label count does not match scores");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b])
      return scores[a] > scores[b];
    if (!labels.empty() && labels[a] != labels[b])
      return label_less(labels[a], labels[b]);
    return a < b;
  });
  std::vector<std::size_t> ranks(scores.size());
  for (std::size_t r = 0; r < order.size(); ++r)
    ranks[order[r]] = r + 1;
  return ranks;
}

RankingReport compare_rankings(std::span<const double> exact,
                               std::span<const double> approx,
                               std::span<const std::string> labels,
                               std::size_t top_k) {
  check_lengths(exact, approx);
  if (!labels.empty() && labels.size() != exact.size())
    throw Error(ErrorCode::LengthMismatch, "label count does not match scores");
  const std::size_t n = exact.size();

  RankingReport report;
  const bool nonnegative =
      *std::min_element(exact.begin(), exact.end()) > -kLogEpsilon &&
      *std::min_element(approx.begin(), approx.end()) > -kLogEpsilon;
  report.transformed = nonnegative && (sample_skewness(exact) > kSkewnessThreshold ||
                                       sample_skewness(approx) > kSkewnessThreshold);
  if (report.transformed) {
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
      lx[i] = std::log(exact[i] + kLogEpsilon);
      ly[i] = std::log(approx[i] + kLogEpsilon);
    }
    report.pearson = pearson(lx, ly);
  } else {
    report.pearson = pearson(exact, approx);
  }
  report.spearman = spearman(exact, approx);

  const std::vector<std::size_t> re = dense_ranks(exact, labels);
  const std::vector<std::size_t> ra = dense_ranks(approx, labels);
  double moved = 0.0;
  report.top_k = std::min(top_k, n);
  std::unordered_set<std::size_t> top_exact;
  for (std::size_t i = 0; i < n; ++i) {
    moved += std::abs(static_cast<double>(re[i]) - static_cast<double>(ra[i]));
    if (re[i] <= report.top_k)
      top_exact.insert(i);
    report.per_node.push_back(
        {labels.empty() ? std::to_string(i) : labels[i], re[i], ra[i]});
  }
  for (std::size_t i = 0; i < n; ++i)
    if (ra[i] <= report.top_k && top_exact.count(i))
      ++report.top_k_overlap;
  report.mean_rank_change = moved / static_cast<double>(n);
  return report;
}

double spectral_norm(const Eigen::MatrixXd &m, double tol,
                     std::size_t max_iterations, std::uint64_t seed) {
  if (m.size() == 0)
    return 0.0;
  Rng rng(seed);
  Eigen::VectorXd x(m.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x(i) = 2.0 * rng.uniform() - 1.0;
  x.normalize();
  double mu = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd y = m * (m.transpose() * x);
    mu = x.dot(y);
    const double residual = (y - mu * x).norm();
    const double norm = y.norm();
    if (norm == 0.0)
      return 0.0;
    if (residual <= tol * std::abs(mu))
      break;
    x = y / norm;
  }
  return std::sqrt(std::max(mu, 0.0));
}

double rel_2norm_error(const Graph &g, const PinvOperator &approx,
                       std::size_t size_cap) {
  if (g.num_nodes() > size_cap)
    throw Error(ErrorCode::SizeCapExceeded, "graph exceeds the dense cap");
  if (approx.n() != g.num_nodes())
    throw Error(ErrorCode::DimensionMismatch, "operator dimension does not match the graph");
  const DensePinv exact = exact_pinv(g, size_cap);
  const double reference = spectral_norm(exact.matrix);
  const double diff = spectral_norm(exact.matrix - approx.to_dense());
  return diff / reference;
}

EigenDegreeProfile eigen_degree_profile(const Graph &g, std::size_t size_cap) {
  const Eigen::VectorXd all = dense_eigenvalues(g, size_cap);
  const std::size_t n = g.num_nodes();
  if (n < 2)
    throw Error(ErrorCode::BadParams, "profile needs at least two nodes");
  std::vector<double> lambda(all.data() + 1, all.data() + all.size());
  std::vector<double> deg = g.degrees();
  std::sort(lambda.begin(), lambda.end());
  std::sort(deg.begin(), deg.end());
  deg.erase(deg.begin());

  EigenDegreeProfile out;
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    diff += (lambda[i] - deg[i]) * (lambda[i] - deg[i]);
    norm += lambda[i] * lambda[i];
  }
  out.rel_distance = std::sqrt(diff / norm);
  if (lambda.size() >= 2) {
    try {
      out.pearson = pearson(lambda, deg);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::ConstantVector)
        throw;
    }
  }
  return out;
}

} // namespace lapinv
