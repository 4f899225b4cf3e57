#include "mtdist/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mtdist/distance.hpp"

namespace mtdist {

double DistanceMatrix::maxEntry() const {
  double m = 0.0;
  for (double v : entries) m = std::max(m, v);
  return m;
}

std::vector<std::string> validateMatrix(const DistanceMatrix& m) {
  std::vector<std::string> issues;
  if (m.entries.size() != m.n * m.n) {
    issues.push_back("matrix holds " + std::to_string(m.entries.size()) + " entries, expected " +
                     std::to_string(m.n * m.n));
    return issues;
  }
  for (std::size_t i = 0; i < m.n; ++i) {
    if (m.at(i, i) != 0.0) issues.push_back("nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = 0; j < m.n; ++j) {
      double v = m.at(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        issues.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not a finite nonnegative number");
      } else if (j > i && v != m.at(j, i)) {
        issues.push_back("entries (" + std::to_string(i) + "," + std::to_string(j) +
                         ") and its mirror differ");
      }
    }
  }
  return issues;
}

DistanceMatrix distanceMatrix(const std::vector<MergeTree>& trees, std::size_t workers) {
  for (std::size_t i = 0; i < trees.size(); ++i) {
    auto issues = validate(trees[i]);
    if (!issues.empty()) throw TreeError("tree " + std::to_string(i) + ": " + issues.front());
  }
  const std::size_t n = trees.size();
  DistanceMatrix m(n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  std::atomic<std::size_t> next{0};
  std::mutex failLock;
  std::exception_ptr failure;
  auto work = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= pairs.size()) return;
      auto [i, j] = pairs[k];
      try {
        double d = distance(trees[i], trees[j]);
        m.at(i, j) = d;
        m.at(j, i) = d;
      } catch (...) {
        std::lock_guard lock(failLock);
        if (!failure) failure = std::current_exception();
        next.store(pairs.size());
      }
    }
  };

  std::size_t count = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(pairs.size(), 1));
  if (count == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return m;
}

Dendrogram averageLinkage(const DistanceMatrix& m) {
  if (m.n == 0) throw std::invalid_argument("average linkage needs at least one item");
  const std::size_t n = m.n;
  const std::size_t total = 2 * n - 1;
  std::vector<double> d(total * total, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * total + j] = m.at(i, j);
  }
  std::vector<std::size_t> size(total, 1);
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  Dendrogram out{n, {}};
  for (std::size_t id = n; id < total; ++id) {
    std::size_t ba = 0, bb = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        double v = d[active[x] * total + active[y]];
        if (v < best) {
          best = v;
          ba = active[x];
          bb = active[y];
        }
      }
    }
    out.merges.push_back({ba, bb, best, id});
    std::erase(active, ba);
    std::erase(active, bb);
    size[id] = size[ba] + size[bb];
    for (std::size_t k : active) {
      double da = d[k * total + ba], db = d[k * total + bb];
      double v = (static_cast<double>(size[ba]) * da + static_cast<double>(size[bb]) * db) /
                 static_cast<double>(size[id]);
      v = std::max(v, std::min(da, db));  // rounding must not undercut a merge height
      d[k * total + id] = d[id * total + k] = v;
    }
    active.push_back(id);  // ids grow, so `active` stays sorted
  }
  return out;
}

std::size_t lastSingleton(const Dendrogram& d) {
  if (d.leaves == 1) return 0;
  for (auto it = d.merges.rbegin(); it != d.merges.rend(); ++it) {
    if (it->b < d.leaves) return it->b;
    if (it->a < d.leaves) return it->a;
  }
  throw std::logic_error("dendrogram without singleton merges");
}

std::vector<double> outlierScores(const DistanceMatrix& m) {
  std::vector<double> out(m.n, 0.0);
  if (m.n < 2) return out;
  for (std::size_t i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) {
      if (j != i) s += m.at(i, j);
    }
    out[i] = s / static_cast<double>(m.n - 1);
  }
  return out;
}

std::vector<LagMean> lagProfile(const DistanceMatrix& m) {
  std::vector<LagMean> out;
  for (std::size_t lag = 1; lag < m.n; ++lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < m.n; ++i) s += m.at(i, i + lag);
    out.push_back({lag, s / static_cast<double>(m.n - lag)});
  }
  return out;
}

std::string matrixToCsv(const DistanceMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      if (j) out += ',';
      out += formatReal(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string matrixToSvg(const DistanceMatrix& m) {
  constexpr int cell = 8;
  const auto side = std::to_string(static_cast<int>(m.n) * cell);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + side + "\" height=\"" +
                    side + "\" viewBox=\"0 0 " + side + " " + side + "\">\n";
  double top = m.maxEntry();
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) {
      double t = top > 0.0 ? m.at(i, j) / top : 0.0;
      auto g = std::to_string(static_cast<int>(std::lround(255.0 * (1.0 - t))));
      out += "<rect x=\"" + std::to_string(j * cell) + "\" y=\"" + std::to_string(i * cell) +
             "\" width=\"" + std::to_string(cell) + "\" height=\"" + std::to_string(cell) +
             "\" fill=\"rgb(" + g + "," + g + "," + g + ")\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

void exportMatrix(const DistanceMatrix& m, MatrixFormat format, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << (format == MatrixFormat::Csv ? matrixToCsv(m) : matrixToSvg(m));
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace mtdist
