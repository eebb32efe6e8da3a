// lapinv command-line tool.
//
// Exit codes: 0 ok, 2 usage, 3 data error, 4 numerical failure. Failures
// print one JSON object on stderr.

#include "lapinv/bench.hpp"
#include "lapinv/current_flow.hpp"
#include "lapinv/errors.hpp"
#include "lapinv/eval.hpp"
#include "lapinv/graph.hpp"
#include "lapinv/io.hpp"
#include "lapinv/models.hpp"
#include "lapinv/pinv_operator.hpp"
#include "lapinv/pipeline.hpp"
#include "lapinv/spectral.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

constexpr int kUsageExit = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void report(const std::string &code, const std::string &message, int exit_code) {
  json line{{"error", code}, {"message", message}, {"exit_code", exit_code}};
  std::cerr << line.dump() << '\n';
}

// Writes to `path`, or stdout when it is empty or "-".
template <class Fn> void with_output(const std::string &path, Fn &&fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw lapinv::Error(lapinv::ErrorCode::IoError, "cannot write " + path);
  fn(out);
  if (!out)
    throw lapinv::Error(lapinv::ErrorCode::IoError, "failed writing " + path);
}

lapinv::Graph load_graph(const std::string &path) {
  if (path == "-")
    return lapinv::read_edge_list(std::cin);
  return lapinv::read_edge_list_file(path);
}

std::vector<std::string> node_labels(const lapinv::Graph &g) {
  std::vector<std::string> out(g.num_nodes());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = g.label(static_cast<lapinv::NodeId>(i));
  return out;
}

const std::map<std::string, lapinv::ScoreMode> kMethods{
    {"exact", lapinv::ScoreMode::Exact},
    {"cutoff", lapinv::ScoreMode::Cutoff},
    {"stretch", lapinv::ScoreMode::Stretch},
    {"fiedler", lapinv::ScoreMode::Fiedler}};

const std::map<std::string, lapinv::SigmaPolicy> kSigmaPolicies{
    {"optimal", lapinv::SigmaPolicy::Optimal},
    {"2lambdak", lapinv::SigmaPolicy::TwiceLambdaK},
    {"explicit", lapinv::SigmaPolicy::Explicit}};

// Flags shared by the commands that build an operator.
struct SpectralFlags {
  std::string input;
  std::string method = "stretch";
  std::optional<std::size_t> k;
  std::optional<std::size_t> pairs;
  std::string sigma_policy = "optimal";
  std::optional<double> sigma;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string basis_path;

  void add_input(CLI::App *cmd) {
    cmd->add_option("input", input, "Edge-list file ('-' for stdin)")->required();
  }

  void add_spectral(CLI::App *cmd) {
    auto *ko = cmd->add_option("--k", k, "Truncation index: k-1 eigenpairs (default 2)");
    auto *po = cmd->add_option("--pairs", pairs, "Number of eigenpairs, same as --k pairs+1");
    ko->excludes(po);
    cmd->add_option("--sigma-policy", sigma_policy, "Stretch shift: optimal, 2lambdak or explicit")
        ->check(CLI::IsMember({"optimal", "2lambdak", "explicit"}));
    cmd->add_option("--sigma", sigma, "Shift value for --sigma-policy explicit");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--tol", tol, "Eigenpair residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--basis", basis_path, "Cached basis JSON from 'eigs'");
  }

  std::size_t truncation() const {
    if (pairs) {
      if (*pairs == 0)
        throw UsageError("--pairs must be at least 1");
      return *pairs + 1;
    }
    return k.value_or(2);
  }

  lapinv::ScoreRequest request() const {
    lapinv::ScoreRequest req;
    req.mode = kMethods.at(method);
    req.k = truncation();
    req.sigma_policy = kSigmaPolicies.at(sigma_policy);
    req.sigma = sigma;
    req.solver.tol = tol;
    req.solver.seed = seed;
    return req;
  }

  std::optional<lapinv::StoredBasis> cached_basis(const lapinv::Graph &g) const {
    if (basis_path.empty())
      return std::nullopt;
    lapinv::StoredBasis stored = lapinv::read_basis_file(basis_path);
    if (!stored.labels.empty() && stored.labels != node_labels(g))
      throw lapinv::Error(lapinv::ErrorCode::DimensionMismatch,
                          "basis labels do not match the graph");
    return stored;
  }
};

// Validation happens before any work; failures are usage errors.
void check_request(const lapinv::ScoreRequest &req) {
  try {
    lapinv::validate(req);
  } catch (const lapinv::Error &e) {
    throw UsageError(e.what());
  }
}

void warn_sigma_low(bool low) {
  if (low)
    std::cerr << "warning: sigma is below lambda_k; the stretch error bound does not apply\n";
}

lapinv::BaAttachment attachment_of(const std::string &name) {
  return name == "indegree" ? lapinv::BaAttachment::InDegreePlusOne
                            : lapinv::BaAttachment::Degree;
}

int run_gen(const std::string &model, std::size_t n, std::optional<double> q,
            std::optional<std::size_t> r, const std::string &attachment, std::uint64_t seed,
            const std::string &out) {
  lapinv::GenSpec spec;
  spec.seed = seed;
  if (model == "er") {
    if (!q || r)
      throw UsageError("--model er takes --q and not --r");
    spec.model = lapinv::ErModel{n, *q};
  } else {
    if (!r || q)
      throw UsageError("--model ba takes --r and not --q");
    spec.model = lapinv::BaModel{n, *r, attachment_of(attachment)};
  }
  const lapinv::Graph g = lapinv::generate(spec);
  with_output(out, [&](std::ostream &os) { lapinv::write_edge_list(g, os, lapinv::to_json(spec)); });
  return 0;
}

int run_eigs(const SpectralFlags &f, bool tail, const std::string &out) {
  const std::size_t k = f.truncation();
  if (k < 2)
    throw UsageError("k must be at least 2");
  const lapinv::Graph g = load_graph(f.input);
  lapinv::EigenSolverOptions opts;
  opts.tol = f.tol;
  opts.seed = f.seed;
  lapinv::EigenBasis basis;
  if (tail && k < g.num_nodes()) {
    basis = lapinv::smallest_eigenpairs(g, k + 1, opts).truncated(k - 1);
  } else {
    basis = lapinv::smallest_eigenpairs(g, k, opts);
  }
  if (tail)
    lapinv::attach_sigma_eigenvalues(g, basis, opts);
  const std::vector<std::string> labels = node_labels(g);
  with_output(out, [&](std::ostream &os) { lapinv::write_basis(os, basis, labels); });
  return 0;
}

int run_pinv_error(const SpectralFlags &f, const std::string &out) {
  lapinv::ScoreRequest req = f.request();
  if (req.mode == lapinv::ScoreMode::Fiedler)
    req.mode = lapinv::ScoreMode::Cutoff;
  check_request(req);
  const lapinv::Graph g = load_graph(f.input);

  json doc{{"method", f.method}, {"n", g.num_nodes()}};
  if (req.mode == lapinv::ScoreMode::Exact) {
    doc["measured"] = 0.0;
    with_output(out, [&](std::ostream &os) { os << doc.dump() << '\n'; });
    return 0;
  }
  const auto stored = f.cached_basis(g);
  lapinv::EigenBasis basis = lapinv::prepare_basis(g, req, stored ? &stored->basis : nullptr);
  lapinv::attach_sigma_eigenvalues(g, basis, req.solver);
  const lapinv::PinvOperator op = lapinv::build_operator(basis, req);
  warn_sigma_low(op.sigma_below_spectrum());
  const double measured = lapinv::rel_2norm_error(g, op);

  const double l2 = basis.fiedler_value();
  const double ln = *basis.largest_eigenvalue;
  doc["k"] = op.k();
  doc["lambda_2"] = l2;
  doc["lambda_max"] = ln;
  doc["measured"] = measured;
  if (basis.k() < g.num_nodes()) {
    const double lk1 = *basis.next_eigenvalue;
    doc["lambda_next"] = lk1;
    if (req.mode == lapinv::ScoreMode::Cutoff) {
      doc["predicted"] = l2 / lk1;
    } else {
      doc["sigma"] = *op.sigma();
      doc["bound"] = lapinv::error_bounds(l2, lk1, ln, *op.sigma(), lapinv::SigmaWindow::Any)
                         .stretch_rel_bound;
    }
  } else {
    doc["predicted"] = 0.0;
  }
  with_output(out, [&](std::ostream &os) { os << doc.dump() << '\n'; });
  return 0;
}

int run_cfb(const SpectralFlags &f, std::optional<double> alpha, unsigned threads,
            const std::string &out) {
  lapinv::ScoreRequest req = f.request();
  if (alpha)
    req.sampling = lapinv::Sampling{*alpha, f.seed};
  req.threads = threads;
  if (req.mode == lapinv::ScoreMode::Exact && !f.basis_path.empty())
    throw UsageError("--basis does not apply to the exact method");
  check_request(req);
  const lapinv::Graph g = load_graph(f.input);
  const auto stored = f.cached_basis(g);
  const lapinv::ScoreOutcome result =
      lapinv::compute_scores(g, req, stored ? &stored->basis : nullptr);
  warn_sigma_low(result.sigma_below_spectrum);
  const std::vector<std::string> labels = node_labels(g);
  with_output(out, [&](std::ostream &os) {
    lapinv::write_scores(os, labels, result.scores.values);
  });
  return 0;
}

int run_compare(const std::string &exact_path, const std::string &approx_path,
                std::size_t top_k, bool per_node, const std::string &out) {
  const lapinv::ScoreTable exact = lapinv::read_scores_file(exact_path);
  const lapinv::ScoreTable approx = lapinv::read_scores_file(approx_path);
  if (exact.labels.size() != approx.labels.size())
    throw lapinv::Error(lapinv::ErrorCode::LengthMismatch, "score files differ in length");
  std::map<std::string, double> by_label;
  for (std::size_t i = 0; i < approx.labels.size(); ++i)
    by_label[approx.labels[i]] = approx.scores[i];
  std::vector<double> aligned;
  for (const std::string &label : exact.labels) {
    const auto it = by_label.find(label);
    if (it == by_label.end())
      throw lapinv::Error(lapinv::ErrorCode::LengthMismatch,
                          "label '" + label + "' missing from " + approx_path);
    aligned.push_back(it->second);
  }
  const lapinv::RankingReport r =
      lapinv::compare_rankings(exact.scores, aligned, exact.labels, top_k);
  json doc{{"pearson", r.pearson},
           {"transformed", r.transformed},
           {"spearman", r.spearman},
           {"mean_rank_change", r.mean_rank_change},
           {"top_k", r.top_k},
           {"top_k_overlap", r.top_k_overlap}};
  if (per_node) {
    json rows = json::array();
    for (const auto &e : r.per_node)
      rows.push_back({{"label", e.label}, {"exact_rank", e.exact_rank}, {"approx_rank", e.approx_rank}});
    doc["per_node"] = std::move(rows);
  }
  with_output(out, [&](std::ostream &os) { os << doc.dump(2) << '\n'; });
  return 0;
}

int run_bench(const std::string &mode, const std::vector<std::size_t> &sizes,
              std::size_t reps, std::uint64_t seed, const std::string &model,
              std::optional<double> q, std::optional<std::size_t> r,
              const std::string &attachment, double tol,
              const std::string &csv_path, const std::string &json_path) {
  lapinv::BenchOptions opts;
  opts.mode = lapinv::parse_bench_mode(mode);
  opts.sizes = sizes;
  opts.reps = reps;
  opts.seed = seed;
  opts.tol = tol;
  if (model == "er") {
    if (r)
      throw UsageError("--model er takes --q and not --r");
    opts.model.model = lapinv::ErModel{0, q.value_or(4.0)};
  } else {
    if (q)
      throw UsageError("--model ba takes --r and not --q");
    opts.model.model = lapinv::BaModel{0, r.value_or(2), attachment_of(attachment)};
  }
  if (sizes.size() < 3)
    throw UsageError("--sizes needs at least three values");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw UsageError("--sizes must ascend strictly");
  const lapinv::BenchResult result = lapinv::bench_scaling(opts);
  if (!csv_path.empty())
    with_output(csv_path, [&](std::ostream &os) { lapinv::write_bench_csv(os, result); });
  with_output(json_path, [&](std::ostream &os) { lapinv::write_bench_json(os, result); });
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Laplacian pseudoinverse approximation and current-flow betweenness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lapinv 0.1.0");

  std::string out;

  // gen
  auto *gen = app.add_subcommand("gen", "Generate an ER or BA graph as an edge list");
  std::string model;
  std::size_t gen_n = 0;
  std::optional<double> gen_q;
  std::optional<std::size_t> gen_r;
  std::uint64_t gen_seed = 0;
  gen->add_option("--model", model, "er or ba")->required()->check(CLI::IsMember({"er", "ba"}));
  gen->add_option("--n", gen_n, "Number of nodes")->required();
  gen->add_option("--q", gen_q, "ER mean degree (edge probability q/n)");
  gen->add_option("--r", gen_r, "BA draws per new node");
  std::string attachment = "degree";
  gen->add_option("--attachment", attachment, "BA attachment rule: degree or indegree (links received + 1)")
      ->check(CLI::IsMember({"degree", "indegree"}));
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("-o,--output", out, "Output file (default stdout)");

  // eigs
  auto *eigs = app.add_subcommand("eigs", "Compute the smallest nontrivial eigenpairs");
  SpectralFlags eig_flags;
  bool no_tail = false;
  eig_flags.add_input(eigs);
  {
    auto *ko = eigs->add_option("--k", eig_flags.k, "Truncation index: k-1 eigenpairs (default 2)");
    auto *po = eigs->add_option("--pairs", eig_flags.pairs, "Number of eigenpairs");
    ko->excludes(po);
  }
  eigs->add_option("--seed", eig_flags.seed, "Random seed");
  eigs->add_option("--tol", eig_flags.tol, "Eigenpair residual tolerance")->check(CLI::PositiveNumber);
  eigs->add_flag("--no-tail", no_tail, "Skip lambda_{k+1} and lambda_n");
  eigs->add_option("-o,--output", out, "Basis JSON file (default stdout)");

  // pinv-error
  auto *perr = app.add_subcommand("pinv-error", "Relative 2-norm error of an approximation");
  SpectralFlags err_flags;
  err_flags.add_input(perr);
  perr->add_option("--method", err_flags.method, "exact, cutoff, stretch or fiedler")
      ->check(CLI::IsMember({"exact", "cutoff", "stretch", "fiedler"}));
  err_flags.add_spectral(perr);
  perr->add_option("-o,--output", out, "Output JSON file (default stdout)");

  // cfb
  auto *cfb = app.add_subcommand("cfb", "Current-flow betweenness scores as CSV");
  SpectralFlags cfb_flags;
  std::optional<double> alpha;
  unsigned threads = 1;
  cfb_flags.method = "exact";
  cfb_flags.add_input(cfb);
  cfb->add_option("--method", cfb_flags.method, "exact, cutoff, stretch or fiedler")
      ->check(CLI::IsMember({"exact", "cutoff", "stretch", "fiedler"}));
  cfb_flags.add_spectral(cfb);
  cfb->add_option("--alpha", alpha, "Sample ceil(alpha n) sources and targets");
  cfb->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  cfb->add_option("-o,--output", out, "Scores CSV (default stdout)");

  // compare
  auto *cmp = app.add_subcommand("compare", "Compare two score files");
  std::string exact_path, approx_path;
  std::size_t top_k = 10;
  bool per_node = false;
  cmp->add_option("exact", exact_path, "Reference scores CSV")->required();
  cmp->add_option("approx", approx_path, "Approximate scores CSV")->required();
  cmp->add_option("--top-k", top_k, "Size of the top set for the overlap count");
  cmp->add_flag("--per-node", per_node, "Include per-node ranks");
  cmp->add_option("-o,--output", out, "Report JSON (default stdout)");

  // bench
  auto *bench = app.add_subcommand("bench", "Time exact inversion or one eigenpair across sizes");
  std::string bench_mode = "exact";
  std::vector<std::size_t> sizes;
  std::size_t reps = 3;
  std::uint64_t bench_seed = 0;
  std::string bench_model = "ba";
  std::optional<double> bench_q;
  std::optional<std::size_t> bench_r;
  double bench_tol = 1e-8;
  std::string csv_path;
  bench->add_option("--mode", bench_mode, "exact or one_eigenpair")
      ->check(CLI::IsMember({"exact", "exact_pinv", "one_eigenpair", "eigs"}));
  bench->add_option("--sizes", sizes, "Ascending node counts")->required()->delimiter(',');
  bench->add_option("--reps", reps, "Repetitions per size (best is kept)")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "Random seed");
  bench->add_option("--model", bench_model, "er or ba")->check(CLI::IsMember({"er", "ba"}));
  bench->add_option("--q", bench_q, "ER mean degree (default 4)");
  bench->add_option("--r", bench_r, "BA draws per node (default 2)");
  bench->add_option("--attachment", attachment, "BA attachment rule: degree or indegree")
      ->check(CLI::IsMember({"degree", "indegree"}));
  bench->add_option("--tol", bench_tol, "Eigenpair residual tolerance")->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv_path, "Also write n,m,mode,seconds,iterations here");
  bench->add_option("-o,--output", out, "Summary JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    report("UsageError", e.what(), kUsageExit);
    return kUsageExit;
  }

  try {
    if (*gen)
      return run_gen(model, gen_n, gen_q, gen_r, attachment, gen_seed, out);
    if (*eigs)
      return run_eigs(eig_flags, !no_tail, out);
    if (*perr)
      return run_pinv_error(err_flags, out);
    if (*cfb)
      return run_cfb(cfb_flags, alpha, threads, out);
    if (*cmp)
      return run_compare(exact_path, approx_path, top_k, per_node, out);
    if (*bench)
      return run_bench(bench_mode, sizes, reps, bench_seed, bench_model, bench_q, bench_r,
                       attachment, bench_tol, csv_path, out);
  } catch (const UsageError &e) {
    report("UsageError", e.what(), kUsageExit);
    return kUsageExit;
  } catch (const lapinv::Error &e) {
    const int code = lapinv::exit_code_for(e.code());
    report(std::string(lapinv::to_string(e.code())), e.what(), code);
    return code;
  } catch (const std::exception &e) {
    report("InternalError", e.what(), 4);
    return 4;
  }
  return 0;
}
