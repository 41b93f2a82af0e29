#pragma once

// Regenerates the published metric tables and the mapping-parameter sweeps,
// diffing each cell against embedded reference values.

#include <string>
#include <vector>

#include "grasscode/designer.hpp"

namespace grasscode {

inline constexpr double kTableTolerance = 1e-3;

struct TableCell {
  std::string row;     // e.g. "L=16" or "(4,2)"
  std::string metric;  // "d_g", "d_c" or "DP"
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = kTableTolerance;

  bool pass() const;
};

struct TableReport {
  std::string title;
  std::vector<TableCell> cells;
  double seconds = 0.0;

  bool pass() const;
};

/// M = 2, L ∈ {2, 4, 8, 16}: d_g, d_c and DP of the designed constellation.
TableReport reproduce_table3();

/// (T, M) ∈ {(2,1), (4,2), (8,4)} at the largest L: DP and d_c.
TableReport reproduce_table4();

std::string format_table_report(const TableReport& r);

struct FigureSweeps {
  MappingSweep l4;
  MappingSweep l16;
};

/// x sweeps behind the M = 2 mapping-parameter plots (L = 4 and L = 16).
FigureSweeps reproduce_figure2(int grid_size = 5000);

}  // namespace grasscode
