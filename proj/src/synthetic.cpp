#include "mtdist/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mtdist {

namespace {

struct Well {
  double x, y;   // center in unit coordinates
  double depth;
  double width;
};

ScalarGrid render(const std::vector<Well>& wells, std::size_t rows, std::size_t cols) {
  std::vector<double> values(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double y = rows > 1 ? static_cast<double>(r) / static_cast<double>(rows - 1) : 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      double x = cols > 1 ? static_cast<double>(c) / static_cast<double>(cols - 1) : 0.0;
      // Gentle ramp so the maximum sits in a corner, away from the wells.
      double v = 0.05 * (x + y);
      for (const auto& w : wells) {
        double dx = x - w.x, dy = y - w.y;
        v -= w.depth * std::exp(-(dx * dx + dy * dy) / (2.0 * w.width * w.width));
      }
      values[r * cols + c] = v;
    }
  }
  return ScalarGrid::make(rows, cols, std::move(values));
}

const std::vector<Well> kSiblingLayout{
    {0.25, 0.30, 1.00, 0.10},
    {0.70, 0.25, 0.80, 0.09},
    {0.50, 0.72, 0.90, 0.11},
    {0.82, 0.78, 0.60, 0.08},
};

const std::vector<Well> kOutlierLayout{
    {0.20, 0.75, 0.55, 0.07}, {0.45, 0.20, 1.10, 0.12}, {0.78, 0.50, 0.70, 0.08},
    {0.30, 0.45, 0.45, 0.06}, {0.62, 0.82, 0.85, 0.09}, {0.88, 0.15, 0.40, 0.06},
};

}  // namespace

Ensemble outlierEnsemble(std::uint64_t seed, std::size_t members, std::size_t rows,
                         std::size_t cols) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter(0.0, 0.05);
  Ensemble out;
  out.outlierIndex = std::uniform_int_distribution<std::size_t>(0, members - 1)(rng);
  for (std::size_t k = 0; k < members; ++k) {
    auto wells = k == out.outlierIndex ? kOutlierLayout : kSiblingLayout;
    for (auto& w : wells) w.depth *= 1.0 + jitter(rng);
    out.fields.push_back(render(wells, rows, cols));
  }
  return out;
}

std::vector<ScalarGrid> periodicSeries(std::uint64_t seed, std::size_t steps, std::size_t period,
                                       std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.005);
  std::vector<ScalarGrid> out;
  for (std::size_t t = 0; t < steps; ++t) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(t % period) / static_cast<double>(period);
    std::vector<Well> wells{
        {0.20, 0.22, 1.00 + 0.003 * static_cast<double>(t), 0.09},
        {0.80, 0.30, 0.75, 0.08},
        {0.32, 0.82, 0.85, 0.10},
        {0.5 + 0.26 * std::cos(angle), 0.5 + 0.26 * std::sin(angle), 0.90, 0.08},
    };
    for (auto& w : wells) w.depth += noise(rng);
    out.push_back(render(wells, rows, cols));
  }
  return out;
}

std::vector<MergeTree> joinTrees(const std::vector<ScalarGrid>& fields, double relativeEpsilon) {
  std::vector<MergeTree> out;
  out.reserve(fields.size());
  for (const auto& f : fields) {
    double eps = SimplificationThreshold{relativeEpsilon, true}.resolve(f);
    out.push_back(simplify(computeJoinTree(f), eps));
  }
  return out;
}

}  // namespace mtdist
