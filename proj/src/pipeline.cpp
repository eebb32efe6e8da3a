#include "lapinv/pipeline.hpp"

#include "lapinv/errors.hpp"

namespace lapinv {

void validate(const ScoreRequest &request) {
  if (request.mode == ScoreMode::Fiedler && request.k != 2)
    throw Error(ErrorCode::BadParams, "the fiedler method requires k = 2");
  if (request.mode != ScoreMode::Exact && request.k < 2)
    throw Error(ErrorCode::BadParams, "k must be at least 2 (one eigenpair)");
  if (request.sigma_policy == SigmaPolicy::Explicit && !request.sigma)
    throw Error(ErrorCode::BadParams, "explicit sigma policy needs --sigma");
  if (request.sigma && request.sigma_policy != SigmaPolicy::Explicit)
    throw Error(ErrorCode::BadParams, "a sigma value requires the explicit policy");
  if (request.sigma && !(*request.sigma > 0.0))
    throw Error(ErrorCode::NonPositiveSigma, "sigma must be positive");
  if (request.mode == ScoreMode::Fiedler && request.sampling)
    throw Error(ErrorCode::BadParams, "the fiedler method does not sample pairs");
  if (request.sampling &&
      !(request.sampling->alpha > 0.0 && request.sampling->alpha <= 1.0))
    throw Error(ErrorCode::BadAlpha, "alpha must lie in (0, 1]");
}

EigenBasis prepare_basis(const Graph &g, const ScoreRequest &request,
                         const EigenBasis *cached) {
  const std::size_t n = g.num_nodes();
  const std::size_t pairs = request.k - 1;
  const bool want_tail =
      request.mode == ScoreMode::Stretch && request.sigma_policy == SigmaPolicy::Optimal;
  if (request.k > n)
    throw Error(ErrorCode::KTooLarge,
                "k = " + std::to_string(request.k) + " exceeds n = " + std::to_string(n));

  EigenBasis basis;
  if (cached) {
    if (cached->n() != n)
      throw Error(ErrorCode::DimensionMismatch, "cached basis does not match the graph");
    basis = cached->truncated(pairs);
  } else if (want_tail && request.k < n) {
    basis = smallest_eigenpairs(g, request.k + 1, request.solver).truncated(pairs);
  } else {
    basis = smallest_eigenpairs(g, request.k, request.solver);
  }
  if (want_tail)
    attach_sigma_eigenvalues(g, basis, request.solver);
  return basis;
}

PinvOperator build_operator(const EigenBasis &basis, const ScoreRequest &request) {
  switch (request.mode) {
  case ScoreMode::Cutoff:
  case ScoreMode::Fiedler:
    return build_cutoff(basis);
  case ScoreMode::Stretch:
    return build_stretch(basis,
                         resolve_sigma(basis, request.sigma_policy, request.sigma));
  case ScoreMode::Exact:
    break;
  }
  throw Error(ErrorCode::BadParams, "exact mode has no low-rank operator");
}

ScoreOutcome compute_scores(const Graph &g, const ScoreRequest &request,
                            const EigenBasis *cached) {
  validate(request);
  if (!is_connected(g))
    throw Error(ErrorCode::NotConnected, "graph is not connected");
  ScoreOutcome out;
  if (request.mode == ScoreMode::Exact) {
    const PinvOperator op = build_exact(exact_pinv(g, request.dense_cap));
    out.scores = betweenness(g, op, request.sampling, request.threads);
    return out;
  }
  const EigenBasis basis = prepare_basis(g, request, cached);
  if (request.mode == ScoreMode::Fiedler) {
    out.scores = betweenness_fiedler(g, basis);
    return out;
  }
  const PinvOperator op = build_operator(basis, request);
  out.sigma_below_spectrum = op.sigma_below_spectrum();
  out.scores = betweenness(g, op, request.sampling, request.threads);
  return out;
}

} // namespace lapinv
