#pragma once

#include "lapinv/bench.hpp"
#include "lapinv/spectral.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lapinv {

struct ScoreTable {
  std::vector<std::string> labels;
  std::vector<double> scores;
  std::vector<std::size_t> ranks;
};

/// Writes `node_label,score,rank` rows in node order, scores at 17 significant
/// digits. Ranks come from `dense_ranks`. Labels holding commas or quotes are
/// quoted.
void write_scores(std::ostream &out, std::span<const std::string> labels,
                  std::span<const double> scores);
void write_scores_file(const std::filesystem::path &path,
                       std::span<const std::string> labels,
                       std::span<const double> scores);

/// Throws ParseError (with the line number) or EmptyInput.
ScoreTable read_scores(std::istream &in);
ScoreTable read_scores_file(const std::filesystem::path &path);

/// Basis JSON: format, version, n, k, tol, labels, next_eigenvalue,
/// largest_eigenvalue and the (lambda, vector) pairs, doubles round-tripping
/// exactly.
void write_basis(std::ostream &out, const EigenBasis &basis,
                 std::span<const std::string> labels = {});
void write_basis_file(const std::filesystem::path &path, const EigenBasis &basis,
                      std::span<const std::string> labels = {});

struct StoredBasis {
  EigenBasis basis;
  std::vector<std::string> labels;
};

/// Throws ParseError for malformed documents.
StoredBasis read_basis(std::istream &in);
StoredBasis read_basis_file(const std::filesystem::path &path);

/// `n,m,mode,seconds,iterations`.
void write_bench_csv(std::ostream &out, const BenchResult &result);
/// Records, fitted exponent and machine metadata as one JSON document.
void write_bench_json(std::ostream &out, const BenchResult &result);

} // namespace lapinv
