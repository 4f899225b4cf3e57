#include "mtdist/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <random>

#include "mtdist/analysis.hpp"
#include "mtdist/distance.hpp"
#include "mtdist/io.hpp"
#include "mtdist/oracle.hpp"
#include "mtdist/scalar_field.hpp"

namespace mtdist::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string first, second, mappingOut;
  std::string input, output, svgOut;
  std::size_t workers = 1;
  std::string kind;
  int conn = 4;
  double epsilon = 0.0;
  bool relative = false;
  std::size_t pairs = 50;
  std::size_t maxEdges = 6;
  std::uint64_t seed = 1;
};

int cmdDist(const Options& o, std::ostream& out) {
  MergeTree a = readTree(o.first);
  MergeTree b = readTree(o.second);
  if (o.mappingOut.empty()) {
    out << formatReal(distance(a, b)) << "\n";
    return kExitOk;
  }
  auto r = distanceWithMapping(a, b);
  writeText(o.mappingOut, formatMapping(a, b, r.mapping, r.distance));
  out << formatReal(r.distance) << "\n";
  return kExitOk;
}

std::vector<fs::path> matrixInputs(const fs::path& input) {
  std::vector<fs::path> files;
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".mt") files.push_back(entry.path());
    }
    std::ranges::sort(files, [](const fs::path& x, const fs::path& y) {
      return x.filename().string() < y.filename().string();
    });
    return files;
  }
  std::string text = readText(input);
  fs::path base = input.parent_path();
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    std::string line = text.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
    start = nl == std::string::npos ? text.size() : nl + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    fs::path p = line.substr(first);
    files.push_back(p.is_absolute() ? p : base / p);
  }
  return files;
}

int cmdMatrix(const Options& o, std::ostream& out) {
  auto files = matrixInputs(o.input);
  if (files.empty()) throw IoError("no .mt inputs found in " + o.input);
  std::vector<MergeTree> trees;
  for (const auto& f : files) {
    try {
      trees.push_back(readTree(f));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), f.string() + ": " + e.what());
    }
  }
  DistanceMatrix m = distanceMatrix(trees, o.workers);
  writeText(o.output, matrixToCsv(m));
  if (!o.svgOut.empty()) writeText(o.svgOut, matrixToSvg(m));
  out << "wrote " << m.n << "x" << m.n << " matrix to " << o.output << "\n";
  return kExitOk;
}

int cmdCluster(const Options& o, std::ostream& out) {
  DistanceMatrix m = readMatrix(o.input);
  if (m.n == 0) throw ParseError(0, "empty matrix");
  writeText(o.output, formatDendrogram(averageLinkage(m)));
  auto scores = outlierScores(m);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out << "score " << i << " " << formatReal(scores[i]) << "\n";
  }
  return kExitOk;
}

int cmdTree(const Options& o, std::ostream& out, std::ostream& err) {
  ScalarGrid grid = readGrid(o.input);
  Connectivity conn = o.conn == 8 ? Connectivity::Eight : Connectivity::Four;
  std::vector<std::string> warnings;
  MergeTree t = o.kind == "split" ? computeSplitTree(grid, conn, &warnings)
                                  : computeJoinTree(grid, conn, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  if (o.epsilon > 0.0) {
    t = simplify(t, SimplificationThreshold{o.epsilon, o.relative}.resolve(grid));
  }
  writeText(o.output, formatTree(t));
  out << "wrote " << o.kind << " tree with " << t.edgeCount() << " edges to " << o.output << "\n";
  return kExitOk;
}

int cmdLags(const Options& o, std::ostream& out) {
  DistanceMatrix m = readMatrix(o.input);
  if (m.n < 2) throw ParseError(0, "lag profile needs at least two items");
  auto profile = lagProfile(m);
  writeText(o.output, formatLagProfile(profile));
  out << "wrote " << profile.size() << " lags to " << o.output << "\n";
  return kExitOk;
}

int cmdOracle(const Options& o, std::ostream& out) {
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> edges(1, o.maxEdges);
  for (std::size_t k = 0; k < o.pairs; ++k) {
    TreeGenConfig c1{rng(), edges(rng), 1.0, 10.0, rng() % 2 ? 3u : 2u};
    TreeGenConfig c2{rng(), edges(rng), 1.0, 10.0, rng() % 2 ? 3u : 2u};
    MergeTree a = randomTree(c1), b = randomTree(c2);
    double dp = distance(a, b);
    double brute = bruteForceDistance(a, b);
    if (!(std::abs(dp - brute) <= 1e-9)) {
      out << "mismatch at pair " << k << ": dynamic program " << formatReal(dp)
          << ", exhaustive " << formatReal(brute) << "\n";
      out << "first tree:\n" << formatTree(a) << "second tree:\n" << formatTree(b);
      return kExitMismatch;
    }
  }
  out << "all " << o.pairs << " pairs agree\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Path mapping distance between merge trees", "mtdist"};
  app.require_subcommand(1);
  Options o;

  auto* dist = app.add_subcommand("dist", "distance between two .mt trees");
  dist->add_option("first", o.first, "first tree")->required();
  dist->add_option("second", o.second, "second tree")->required();
  dist->add_option("--mapping", o.mappingOut, "write an optimal mapping (.pmap)");

  auto* matrix = app.add_subcommand("matrix", "pairwise distance matrix");
  matrix->add_option("input", o.input, "list file or directory of .mt files")->required();
  matrix->add_option("-o,--output", o.output, "CSV output")->required();
  matrix->add_option("--svg", o.svgOut, "SVG heatmap output");
  matrix->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);

  auto* cluster = app.add_subcommand("cluster", "average-linkage dendrogram and outlier scores");
  cluster->add_option("matrix", o.input, "distance matrix CSV")->required();
  cluster->add_option("-o,--output", o.output, "dendrogram output")->required();

  auto* tree = app.add_subcommand("tree", "merge tree of a scalar grid");
  tree->add_option("grid", o.input, "grid file")->required();
  tree->add_option("--kind", o.kind, "join or split")
      ->required()
      ->check(CLI::IsMember({"join", "split"}));
  tree->add_option("--conn", o.conn, "neighborhood, 4 or 8")->check(CLI::IsMember({4, 8}));
  auto* eps = tree->add_option("--simplify", o.epsilon, "drop leaf edges below this persistence")
                  ->check(CLI::NonNegativeNumber);
  tree->add_flag("--relative", o.relative, "threshold is a fraction of the value range")->needs(eps);
  tree->add_option("-o,--output", o.output, "tree output")->required();

  auto* lags = app.add_subcommand("lags", "mean distance per time lag");
  lags->add_option("matrix", o.input, "distance matrix CSV")->required();
  lags->add_option("-o,--output", o.output, "CSV output")->required();

  auto* oracle = app.add_subcommand("oracle-check", "compare the dynamic program to exhaustive search");
  oracle->add_option("--pairs", o.pairs, "number of random pairs");
  oracle->add_option("--max-edges", o.maxEdges, "edges per tree")
      ->check(CLI::Range(std::size_t{1}, kOracleMaxEdges));
  oracle->add_option("--seed", o.seed, "random seed");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (dist->parsed()) return cmdDist(o, out);
    if (matrix->parsed()) return cmdMatrix(o, out);
    if (cluster->parsed()) return cmdCluster(o, out);
    if (tree->parsed()) return cmdTree(o, out, err);
    if (lags->parsed()) return cmdLags(o, out);
    if (oracle->parsed()) return cmdOracle(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const GridError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const TreeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace mtdist::cli
