#include "mtdist/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mtdist {

namespace {

constexpr std::uint64_t kMaxNodeId = std::uint64_t{1} << 26;

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> splitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  if (sep == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) out.push_back(line.substr(i, j - i));
      i = j;
    }
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    auto k = line.find(sep, start);
    out.push_back(trim(line.substr(start, k == std::string_view::npos ? k : k - start)));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return out;
}

double parseReal(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, "not a number: '" + std::string(s) + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, "non-finite value '" + std::string(s) + "'");
  return v;
}

std::uint64_t parseCount(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, "not a nonnegative integer: '" + std::string(s) + "'");
  }
  return v;
}

void expectHeader(const std::vector<std::string_view>& lines, std::string_view header) {
  if (lines.empty() || trim(lines.front()) != header) {
    throw ParseError(1, "expected header '" + std::string(header) + "'");
  }
}

std::string joinIds(const MonotonePath& p) {
  std::string s;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.vertices[i]);
  }
  return s;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::string readText(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void writeText(const std::filesystem::path& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("cannot write " + path.string());
}

MergeTree parseTree(std::string_view text) {
  auto lines = splitLines(text);
  expectHeader(lines, "# mtree v1");
  std::vector<Edge> edges;
  std::vector<std::size_t> lineOf;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    auto f = fields(line, ' ');
    if (f.size() != 4 || f[0] != "e") throw ParseError(i + 1, "expected 'e <child> <parent> <label>'");
    auto c = parseCount(f[1], i + 1), p = parseCount(f[2], i + 1);
    if (c >= kMaxNodeId || p >= kMaxNodeId) throw ParseError(i + 1, "node id too large");
    double label = parseReal(f[3], i + 1);
    if (!(label > 0.0)) throw ParseError(i + 1, "label must be positive");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (edges[k].child == c) {
        throw ParseError(i + 1, "node " + std::to_string(c) + " already has a parent (line " +
                                    std::to_string(lineOf[k]) + ")");
      }
    }
    edges.push_back({static_cast<NodeId>(c), static_cast<NodeId>(p), label});
    lineOf.push_back(i + 1);
  }
  MergeTree tree;
  try {
    tree = MergeTree::fromEdges(edges);
  } catch (const TreeError& e) {
    throw ParseError(0, e.what());
  }
  auto issues = validate(tree);
  if (!issues.empty()) throw ParseError(0, issues.front());
  return tree;
}

std::string formatTree(const MergeTree& tree) {
  std::string out = "# mtree v1\n";
  for (const auto& e : tree.edges()) {
    out += "e " + std::to_string(e.child) + " " + std::to_string(e.parent) + " " +
           formatReal(e.label) + "\n";
  }
  return out;
}

MergeTree readTree(const std::filesystem::path& path) { return parseTree(readText(path)); }

ScalarGrid parseGrid(std::string_view text) {
  auto lines = splitLines(text);
  expectHeader(lines, "# grid v1");
  std::size_t i = 1;
  auto nextLine = [&]() -> std::string_view {
    while (i < lines.size()) {
      auto line = trim(lines[i++]);
      if (!line.empty() && line.front() != '#') return line;
    }
    return {};
  };
  auto dims = fields(nextLine(), ' ');
  if (dims.size() != 3 || dims[0] != "dims") throw ParseError(i, "expected 'dims <rows> <cols>'");
  auto rows = parseCount(dims[1], i), cols = parseCount(dims[2], i);
  if (rows == 0 || cols == 0) throw ParseError(i, "grid dimensions must be positive");
  if (rows * cols > (std::uint64_t{1} << 28)) throw ParseError(i, "grid too large");

  std::vector<double> values;
  values.reserve(rows * cols);
  for (std::uint64_t r = 0; r < rows; ++r) {
    auto line = nextLine();
    if (line.empty()) {
      throw ParseError(0, "expected " + std::to_string(rows) + " rows, found " + std::to_string(r));
    }
    auto f = fields(line, ' ');
    if (f.size() != cols) {
      throw ParseError(i, "expected " + std::to_string(cols) + " values, found " +
                              std::to_string(f.size()));
    }
    for (auto v : f) values.push_back(parseReal(v, i));
  }
  if (!nextLine().empty()) throw ParseError(i, "more rows than declared");
  return ScalarGrid::make(rows, cols, std::move(values));
}

std::string formatGrid(const ScalarGrid& grid) {
  std::string out = "# grid v1\ndims " + std::to_string(grid.rows) + " " + std::to_string(grid.cols) + "\n";
  for (std::size_t r = 0; r < grid.rows; ++r) {
    for (std::size_t c = 0; c < grid.cols; ++c) {
      if (c) out += ' ';
      out += formatReal(grid.at(r, c));
    }
    out += '\n';
  }
  return out;
}

ScalarGrid readGrid(const std::filesystem::path& path) { return parseGrid(readText(path)); }

std::string formatMapping(const MergeTree& t1, const MergeTree& t2, const PathMapping& mapping,
                          double distance) {
  std::string out;
  for (const auto& [p, q] : mapping.pairs) {
    out += "map " + joinIds(p) + " " + joinIds(q) + " " +
           formatReal(opCost(pathLabel(t1, p), pathLabel(t2, q))) + "\n";
  }
  for (const auto& e : unmappedEdges(t1, mapping, true)) {
    out += "del " + std::to_string(e.child) + " " + std::to_string(e.parent) + "\n";
  }
  for (const auto& e : unmappedEdges(t2, mapping, false)) {
    out += "ins " + std::to_string(e.child) + " " + std::to_string(e.parent) + "\n";
  }
  out += "total " + formatReal(distance) + "\n";
  return out;
}

DistanceMatrix parseMatrixCsv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  auto lines = splitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty()) continue;
    std::vector<double> row;
    for (auto f : fields(line, ',')) row.push_back(parseReal(f, i + 1));
    rows.push_back(std::move(row));
  }
  DistanceMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw ParseError(0, "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                              " entries, expected " + std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
  }
  auto issues = validateMatrix(m);
  if (!issues.empty()) throw ParseError(0, issues.front());
  return m;
}

DistanceMatrix readMatrix(const std::filesystem::path& path) {
  return parseMatrixCsv(readText(path));
}

std::string formatDendrogram(const Dendrogram& d) {
  std::string out;
  for (const auto& m : d.merges) {
    out += "merge " + std::to_string(m.a) + " " + std::to_string(m.b) + " " + formatReal(m.height) +
           " -> " + std::to_string(m.id) + "\n";
  }
  return out;
}

std::string formatLagProfile(const std::vector<LagMean>& profile) {
  std::string out = "lag,mean\n";
  for (const auto& l : profile) out += std::to_string(l.lag) + "," + formatReal(l.mean) + "\n";
  return out;
}

}  // namespace mtdist
