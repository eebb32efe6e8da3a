#include "lapinv/io.hpp"

#include "lapinv/errors.hpp"
#include "lapinv/eval.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace lapinv {

namespace {

using json = nlohmann::ordered_json;

constexpr const char *kScoresHeader = "node_label,score,rank";
constexpr const char *kBasisFormat = "lapinv-basis";
constexpr int kBasisVersion = 1;

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv(const std::string &line, std::size_t lineno) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"' && fields.back().empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted)
    throw ParseError(lineno, "unterminated quote");
  return fields;
}

template <class T> T parse_number(const std::string &text, std::size_t lineno,
                                  const char *what) {
  T value{};
  const char *first = text.data();
  const char *last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(lineno, std::string("bad ") + what + " '" + text + "'");
  return value;
}

std::ofstream open_out(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return in;
}

} // namespace

void write_scores(std::ostream &out, std::span<const std::string> labels,
                  std::span<const double> scores) {
  if (labels.size() != scores.size())
    throw Error(ErrorCode::LengthMismatch, "label count does not match scores");
  const std::vector<std::size_t> ranks = dense_ranks(scores, labels);
  out << kScoresHeader << '\n';
  for (std::size_t i = 0; i < scores.size(); ++i)
    out << csv_field(labels[i]) << ',' << format_double(scores[i]) << ',' << ranks[i]
        << '\n';
  if (!out)
    throw Error(ErrorCode::IoError, "failed writing scores");
}

void write_scores_file(const std::filesystem::path &path,
                       std::span<const std::string> labels,
                       std::span<const double> scores) {
  std::ofstream out = open_out(path);
  write_scores(out, labels, scores);
}

ScoreTable read_scores(std::istream &in) {
  ScoreTable table;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    if (!header) {
      if (line != kScoresHeader)
        throw ParseError(lineno, "expected header '" + std::string(kScoresHeader) + "'");
      header = true;
      continue;
    }
    const std::vector<std::string> fields = split_csv(line, lineno);
    if (fields.size() != 3)
      throw ParseError(lineno, "expected 3 fields, got " + std::to_string(fields.size()));
    if (fields[0].empty())
      throw ParseError(lineno, "empty node label");
    table.labels.push_back(fields[0]);
    table.scores.push_back(parse_number<double>(fields[1], lineno, "score"));
    table.ranks.push_back(parse_number<std::size_t>(fields[2], lineno, "rank"));
  }
  if (table.labels.empty())
    throw Error(ErrorCode::EmptyInput, "no scores in input");
  return table;
}

ScoreTable read_scores_file(const std::filesystem::path &path) {
  std::ifstream in = open_in(path);
  return read_scores(in);
}

void write_basis(std::ostream &out, const EigenBasis &basis,
                 std::span<const std::string> labels) {
  json doc;
  doc["format"] = kBasisFormat;
  doc["version"] = kBasisVersion;
  doc["n"] = basis.n();
  doc["k"] = basis.k();
  doc["tol"] = basis.residual_tol();
  doc["labels"] = std::vector<std::string>(labels.begin(), labels.end());
  doc["next_eigenvalue"] =
      basis.next_eigenvalue ? json(*basis.next_eigenvalue) : json(nullptr);
  doc["largest_eigenvalue"] =
      basis.largest_eigenvalue ? json(*basis.largest_eigenvalue) : json(nullptr);
  json pairs = json::array();
  for (const EigenPair &p : basis.pairs())
    pairs.push_back({{"lambda", p.value}, {"vector", p.vector}});
  doc["pairs"] = std::move(pairs);
  // nlohmann prints doubles with round-trip precision.
  out << doc.dump() << '\n';
  if (!out)
    throw Error(ErrorCode::IoError, "failed writing basis");
}

void write_basis_file(const std::filesystem::path &path, const EigenBasis &basis,
                      std::span<const std::string> labels) {
  std::ofstream out = open_out(path);
  write_basis(out, basis, labels);
}

StoredBasis read_basis(std::istream &in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ParseError(0, std::string("basis JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kBasisFormat)
      throw ParseError(0, "not a basis file");
    if (doc.at("version").get<int>() != kBasisVersion)
      throw ParseError(0, "unsupported basis version");
    const auto n = doc.at("n").get<std::size_t>();
    const auto k = doc.at("k").get<std::size_t>();
    const double tol = doc.at("tol").get<double>();
    std::vector<EigenPair> pairs;
    for (const auto &p : doc.at("pairs"))
      pairs.push_back({p.at("lambda").get<double>(), p.at("vector").get<std::vector<double>>()});
    if (pairs.size() + 1 != k)
      throw ParseError(0, "basis k does not match the stored pairs");
    StoredBasis stored{EigenBasis(n, std::move(pairs), tol),
                       doc.at("labels").get<std::vector<std::string>>()};
    if (!stored.labels.empty() && stored.labels.size() != n)
      throw ParseError(0, "basis label count does not match n");
    if (const auto &v = doc.at("next_eigenvalue"); !v.is_null())
      stored.basis.next_eigenvalue = v.get<double>();
    if (const auto &v = doc.at("largest_eigenvalue"); !v.is_null())
      stored.basis.largest_eigenvalue = v.get<double>();
    return stored;
  } catch (const json::exception &e) {
    throw ParseError(0, std::string("basis JSON: ") + e.what());
  }
}

StoredBasis read_basis_file(const std::filesystem::path &path) {
  std::ifstream in = open_in(path);
  return read_basis(in);
}

void write_bench_csv(std::ostream &out, const BenchResult &result) {
  out << "n,m,mode,seconds,iterations\n";
  for (const BenchRecord &r : result.records)
    out << r.n << ',' << r.m << ',' << r.mode << ',' << format_double(r.wall_time) << ','
        << r.iterations << '\n';
}

void write_bench_json(std::ostream &out, const BenchResult &result) {
  json doc;
  doc["fitted_exponent"] = result.fitted_exponent;
  json records = json::array();
  for (const BenchRecord &r : result.records)
    records.push_back({{"n", r.n},
                       {"m", r.m},
                       {"mode", r.mode},
                       {"seconds", r.wall_time},
                       {"peak_entries_stored", r.peak_entries_stored},
                       {"iterations", r.iterations}});
  doc["records"] = std::move(records);
  doc["machine"] = {{"system", result.machine.system},
                    {"machine", result.machine.machine},
                    {"compiler", result.machine.compiler},
                    {"hardware_threads", result.machine.hardware_threads}};
  out << doc.dump(2) << '\n';
}

} // namespace lapinv
