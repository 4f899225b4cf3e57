#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtdist/analysis.hpp"
#include "mtdist/merge_tree.hpp"
#include "mtdist/path_mapping.hpp"
#include "mtdist/scalar_field.hpp"

namespace mtdist {

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed content. `line()` is 1-based, 0 when no single line is to blame.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

std::string readText(const std::filesystem::path& path);
void writeText(const std::filesystem::path& path, std::string_view text);

/// `# mtree v1` followed by `e <child> <parent> <label>` lines. Rejects
/// duplicate children, several roots, cycles, nonpositive labels and trees
/// that break the degree rules.
MergeTree parseTree(std::string_view text);
std::string formatTree(const MergeTree& tree);
MergeTree readTree(const std::filesystem::path& path);

/// `# grid v1`, `dims <rows> <cols>`, then one line of values per row.
ScalarGrid parseGrid(std::string_view text);
std::string formatGrid(const ScalarGrid& grid);
ScalarGrid readGrid(const std::filesystem::path& path);

/// `map`, `del` and `ins` lines followed by `total <distance>`.
std::string formatMapping(const MergeTree& t1, const MergeTree& t2, const PathMapping& mapping,
                          double distance);

/// Square CSV of a valid distance matrix.
DistanceMatrix parseMatrixCsv(std::string_view text);
DistanceMatrix readMatrix(const std::filesystem::path& path);

/// One `merge <a> <b> <height> -> <id>` line per merge.
std::string formatDendrogram(const Dendrogram& d);

/// `lag,mean` header, then one line per lag.
std::string formatLagProfile(const std::vector<LagMean>& profile);

}  // namespace mtdist
