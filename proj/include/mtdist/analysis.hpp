#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "mtdist/merge_tree.hpp"

namespace mtdist {

/// Symmetric n x n matrix, row-major.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> entries;

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size) : n(size), entries(size * size, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  double maxEntry() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;
};

/// Problems with symmetry, diagonal or finiteness; empty means valid.
std::vector<std::string> validateMatrix(const DistanceMatrix& m);

/// Pairwise distances, each unordered pair computed once. The result does not
/// depend on `workers`. Throws TreeError naming the first invalid tree.
DistanceMatrix distanceMatrix(const std::vector<MergeTree>& trees, std::size_t workers = 1);

struct Merge {
  std::size_t a = 0;  // smaller cluster id
  std::size_t b = 0;
  double height = 0.0;
  std::size_t id = 0;  // new cluster, numbered from n upward

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

/// Agglomerative clustering with unweighted average linkage. The closest
/// pair is merged first; ties go to the smaller (a, b) id pair.
Dendrogram averageLinkage(const DistanceMatrix& m);

/// Item that joins the hierarchy latest. If that merge pairs two singletons,
/// the larger id.
std::size_t lastSingleton(const Dendrogram& d);

/// Row means without the diagonal.
std::vector<double> outlierScores(const DistanceMatrix& m);

struct LagMean {
  std::size_t lag = 0;
  double mean = 0.0;
};

/// Mean of entries (i, i + lag) for every lag in 1..n-1.
std::vector<LagMean> lagProfile(const DistanceMatrix& m);

enum class MatrixFormat { Csv, Svg };

/// One line per row, shortest round-trip decimals separated by commas.
std::string matrixToCsv(const DistanceMatrix& m);
/// Grayscale heatmap, white at 0 and black at the largest entry.
std::string matrixToSvg(const DistanceMatrix& m);
/// Throws std::runtime_error if the file cannot be written.
void exportMatrix(const DistanceMatrix& m, MatrixFormat format, const std::filesystem::path& path);

}  // namespace mtdist
