#pragma once

#include <cstdint>
#include <vector>

#include "fasp/ast.hpp"
#include "fasp/interpretation.hpp"

namespace fasp {

struct GridOptions {
  /// Search nodes (outer and minimality searches together) before giving up.
  std::uint64_t max_nodes = 200'000'000;
  /// OpenMP threads; 0 keeps the runtime default.
  int threads = 0;
};

/// Stable models of p whose values all lie in {0, 1/k, ..., 1}, where
/// minimality is only checked against interpretations on the same grid.
/// Sorted. Throws OracleBudgetError when the search exceeds max_nodes.
std::vector<Interpretation> grid_stable_models(const Program& p, long k, const GridOptions& opts = {});

/// Same set by exhaustive enumeration with exact rational evaluation.
/// Throws OracleBudgetError when (k+1)^|At| exceeds max_assignments.
std::vector<Interpretation> grid_stable_models_reference(const Program& p, long k,
                                                         std::uint64_t max_assignments = 2'000'000);

/// log10 of the number of grid interpretations over At(p).
double grid_size_log10(const Program& p, long k);

}  // namespace fasp
