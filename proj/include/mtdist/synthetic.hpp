#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mtdist/merge_tree.hpp"
#include "mtdist/scalar_field.hpp"

namespace mtdist {

struct Ensemble {
  std::vector<ScalarGrid> fields;
  std::size_t outlierIndex = 0;
};

/// Fields built from negative Gaussian wells. All members share one well
/// layout with jittered depths, except one member at a seeded position whose
/// layout differs.
Ensemble outlierEnsemble(std::uint64_t seed, std::size_t members = 20, std::size_t rows = 64,
                         std::size_t cols = 64);

/// Time series of fields: fixed wells plus one well circling the grid center
/// once every `period` steps. One fixed well deepens slowly over time, and
/// small depth noise is added per step.
std::vector<ScalarGrid> periodicSeries(std::uint64_t seed, std::size_t steps = 60,
                                       std::size_t period = 12, std::size_t rows = 64,
                                       std::size_t cols = 64);

/// Join trees simplified below `relativeEpsilon` times each field's range.
std::vector<MergeTree> joinTrees(const std::vector<ScalarGrid>& fields, double relativeEpsilon);

}  // namespace mtdist
