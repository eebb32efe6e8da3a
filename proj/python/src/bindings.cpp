#include "lapinv/current_flow.hpp"
#include "lapinv/errors.hpp"
#include "lapinv/eval.hpp"
#include "lapinv/graph.hpp"
#include "lapinv/io.hpp"
#include "lapinv/models.hpp"
#include "lapinv/pinv_operator.hpp"
#include "lapinv/pipeline.hpp"
#include "lapinv/spectral.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lapinv;

namespace {

ScoreMode parse_method(const std::string &m) {
  if (m == "exact")
    return ScoreMode::Exact;
  if (m == "cutoff")
    return ScoreMode::Cutoff;
  if (m == "stretch")
    return ScoreMode::Stretch;
  if (m == "fiedler")
    return ScoreMode::Fiedler;
  throw py::value_error("method must be exact, cutoff, stretch or fiedler");
}

SigmaPolicy parse_policy(const std::string &p) {
  if (p == "optimal")
    return SigmaPolicy::Optimal;
  if (p == "2lambdak")
    return SigmaPolicy::TwiceLambdaK;
  if (p == "explicit")
    return SigmaPolicy::Explicit;
  throw py::value_error("sigma_policy must be optimal, 2lambdak or explicit");
}

std::vector<Edge> to_edges(const std::vector<std::tuple<NodeId, NodeId, double>> &rows) {
  std::vector<Edge> out;
  out.reserve(rows.size());
  for (const auto &[u, v, w] : rows)
    out.push_back({u, v, w});
  return out;
}

} // namespace

PYBIND11_MODULE(_lapinv, m) {
  m.doc() = "Laplacian pseudoinverse approximations and current-flow betweenness";

  // Messages carry the stable code as a prefix: "NotConnected: ...".
  static py::handle error = py::exception<Error>(m, "LapinvError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const Error &e) {
      const std::string msg = std::string(to_string(e.code())) + ": " + e.what();
      PyErr_SetString(error.ptr(), msg.c_str());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::tuple<NodeId, NodeId, double>> &edges,
             std::vector<std::string> labels) {
            return Graph::from_edges(n, to_edges(edges), std::move(labels));
          },
          py::arg("n"), py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
      .def_static(
          "from_pairs",
          [](const std::vector<std::pair<std::string, std::string>> &pairs) {
            std::vector<EdgeRow> rows;
            for (const auto &[a, b] : pairs)
              rows.push_back({a, b, std::nullopt});
            return from_edge_list(rows);
          },
          py::arg("pairs"), "Build from (label, label) pairs with unit weights.")
      .def_static("read", &read_edge_list_file, py::arg("path"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("degrees", [](const Graph &g) { return g.degrees(); })
      .def_property_readonly("labels",
                             [](const Graph &g) {
                               std::vector<std::string> out;
                               for (NodeId i = 0; i < g.num_nodes(); ++i)
                                 out.push_back(g.label(i));
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const Graph &g) {
                               std::vector<std::tuple<NodeId, NodeId, double>> out;
                               for (const Edge &e : g.edges())
                                 out.emplace_back(e.u, e.v, e.weight);
                               return out;
                             })
      .def("is_connected", [](const Graph &g) { return is_connected(g); })
      .def("laplacian_apply", [](const Graph &g, const std::vector<double> &x) {
        return laplacian_apply(g, std::span<const double>(x));
      });

  py::class_<EigenBasis>(m, "EigenBasis")
      .def_property_readonly("n", &EigenBasis::n)
      .def_property_readonly("k", &EigenBasis::k)
      .def_property_readonly("values",
                             [](const EigenBasis &b) {
                               std::vector<double> out;
                               for (const auto &p : b.pairs())
                                 out.push_back(p.value);
                               return out;
                             })
      .def_property_readonly("vectors",
                             [](const EigenBasis &b) {
                               Eigen::MatrixXd out(b.n(), b.size());
                               for (std::size_t j = 0; j < b.size(); ++j)
                                 for (std::size_t i = 0; i < b.n(); ++i)
                                   out(i, j) = b.pair(j).vector[i];
                               return out;
                             })
      .def_readwrite("next_eigenvalue", &EigenBasis::next_eigenvalue)
      .def_readwrite("largest_eigenvalue", &EigenBasis::largest_eigenvalue)
      .def_readonly("matvecs", &EigenBasis::matvecs)
      .def("truncated", &EigenBasis::truncated, py::arg("pairs"));

  m.def(
      "smallest_eigenpairs",
      [](const Graph &g, std::size_t k, double tol, std::uint64_t seed, bool with_tail) {
        EigenSolverOptions o;
        o.tol = tol;
        o.seed = seed;
        EigenBasis b = smallest_eigenpairs(g, k, o);
        if (with_tail)
          attach_sigma_eigenvalues(g, b, o);
        return b;
      },
      py::arg("g"), py::arg("k"), py::arg("tol") = 1e-8, py::arg("seed") = 0,
      py::arg("with_tail") = true,
      "Eigenpairs 2..k; with_tail also records lambda_{k+1} and lambda_n.");
  m.def(
      "largest_eigenvalue",
      [](const Graph &g, double tol, std::uint64_t seed) {
        EigenSolverOptions o;
        o.tol = tol;
        o.seed = seed;
        return largest_eigenvalue(g, o);
      },
      py::arg("g"), py::arg("tol") = 1e-8, py::arg("seed") = 0);
  m.def(
      "exact_pinv", [](const Graph &g, std::size_t cap) { return exact_pinv(g, cap).matrix; },
      py::arg("g"), py::arg("size_cap") = kDefaultDenseCap);

  py::class_<PinvOperator>(m, "PinvOperator")
      .def_static(
          "exact", [](const Graph &g) { return build_exact(exact_pinv(g)); }, py::arg("g"))
      .def_static("cutoff", &build_cutoff, py::arg("basis"))
      .def_static("stretch", &build_stretch, py::arg("basis"), py::arg("sigma"))
      .def_property_readonly("n", &PinvOperator::n)
      .def_property_readonly("k", &PinvOperator::k)
      .def_property_readonly("sigma", &PinvOperator::sigma)
      .def_property_readonly("kind", [](const PinvOperator &op) { return std::string(to_string(op.kind())); })
      .def_property_readonly("sigma_below_spectrum", &PinvOperator::sigma_below_spectrum)
      .def("entry", &PinvOperator::entry, py::arg("i"), py::arg("j"))
      .def(
          "apply",
          [](const PinvOperator &op, const std::vector<double> &x) {
            return op.apply(std::span<const double>(x));
          },
          py::arg("x"))
      .def("to_dense", &PinvOperator::to_dense);

  m.def("optimal_sigma", &optimal_sigma, py::arg("lambda_next"), py::arg("lambda_max"));
  m.def("approx_sigma", &approx_sigma, py::arg("lambda_k"));
  m.def(
      "error_bounds",
      [](double l2, double lk1, double ln, double sigma, bool strict) {
        const ErrorBounds b = error_bounds(l2, lk1, ln, sigma,
                                           strict ? SigmaWindow::Strict : SigmaWindow::Any);
        py::dict d;
        d["cutoff_rel"] = b.cutoff_rel;
        d["stretch_rel_bound"] = b.stretch_rel_bound;
        d["gamma"] = b.gamma;
        return d;
      },
      py::arg("lambda_2"), py::arg("lambda_next"), py::arg("lambda_max"), py::arg("sigma"),
      py::arg("strict") = true);

  m.def(
      "betweenness",
      [](const Graph &g, const PinvOperator &op, std::optional<double> alpha, std::uint64_t seed,
         unsigned threads) {
        std::optional<Sampling> s;
        if (alpha)
          s = Sampling{*alpha, seed};
        return betweenness(g, op, s, threads).values;
      },
      py::arg("g"), py::arg("op"), py::arg("alpha") = std::nullopt, py::arg("seed") = 0,
      py::arg("threads") = 1);
  m.def(
      "betweenness_fiedler",
      [](const Graph &g, const EigenBasis &b) { return betweenness_fiedler(g, b).values; },
      py::arg("g"), py::arg("basis"));
  m.def(
      "current_flow_scores",
      [](const Graph &g, const std::string &method, std::size_t k, const std::string &policy,
         std::optional<double> sigma, std::optional<double> alpha, std::uint64_t seed, double tol,
         unsigned threads) {
        ScoreRequest r;
        r.mode = parse_method(method);
        r.k = k;
        r.sigma_policy = parse_policy(policy);
        r.sigma = sigma;
        if (alpha)
          r.sampling = Sampling{*alpha, seed};
        r.solver.tol = tol;
        r.solver.seed = seed;
        r.threads = threads;
        return compute_scores(g, r).scores.values;
      },
      py::arg("g"), py::arg("method") = "exact", py::arg("k") = 2,
      py::arg("sigma_policy") = "optimal", py::arg("sigma") = std::nullopt,
      py::arg("alpha") = std::nullopt, py::arg("seed") = 0, py::arg("tol") = 1e-8,
      py::arg("threads") = 1,
      "Betweenness for one method; k is the truncation index (k - 1 eigenpairs).");

  m.def(
      "gen_er", [](std::size_t n, double q, std::uint64_t seed) { return gen_er(n, q, seed); },
      py::arg("n"), py::arg("q"), py::arg("seed") = 0);
  m.def(
      "gen_ba",
      [](std::size_t n, std::size_t r, std::uint64_t seed, const std::string &attachment) {
        if (attachment != "degree" && attachment != "indegree")
          throw py::value_error("attachment must be degree or indegree");
        return gen_ba(n, r, seed,
                      attachment == "degree" ? BaAttachment::Degree : BaAttachment::InDegreePlusOne);
      },
      py::arg("n"), py::arg("r"), py::arg("seed") = 0, py::arg("attachment") = "degree");

  m.def(
      "compare_rankings",
      [](const std::vector<double> &exact, const std::vector<double> &approx,
         const std::vector<std::string> &labels, std::size_t top_k) {
        std::vector<std::string> names = labels;
        if (names.empty())
          for (std::size_t i = 0; i < exact.size(); ++i)
            names.push_back(std::to_string(i));
        const RankingReport r = compare_rankings(exact, approx, names, top_k);
        py::dict d;
        d["pearson"] = r.pearson;
        d["transformed"] = r.transformed;
        d["spearman"] = r.spearman;
        d["mean_rank_change"] = r.mean_rank_change;
        d["top_k"] = r.top_k;
        d["top_k_overlap"] = r.top_k_overlap;
        return d;
      },
      py::arg("exact"), py::arg("approx"), py::arg("labels") = std::vector<std::string>{},
      py::arg("top_k") = 10);
  m.def("pearson", [](const std::vector<double> &x, const std::vector<double> &y) {
    return pearson(std::span<const double>(x), std::span<const double>(y));
  });
  m.def(
      "rel_2norm_error",
      [](const Graph &g, const PinvOperator &op) { return rel_2norm_error(g, op); }, py::arg("g"),
      py::arg("op"));
  m.def(
      "eigen_degree_profile",
      [](const Graph &g) {
        const EigenDegreeProfile p = eigen_degree_profile(g);
        return py::make_tuple(p.pearson, p.rel_distance);
      },
      py::arg("g"), "(pearson or None, relative distance)");
}
