#pragma once

#include <span>
#include <utility>
#include <vector>

#include "xbarchan/params.hpp"

namespace xbar {

/// Cell hosting bit j (1-based) of codeword d (0-based) when codewords
/// follow the circularly shifted main diagonal: row = ((j-1+d) mod m)+1,
/// column = j. Throws std::out_of_range for invalid indices.
CellLocation diagonal_place(int d, int j, const ArrayGeometry& geom);

/// Baseline placement: codeword d occupies wordline d+1.
CellLocation wordline_place(int d, int j, const ArrayGeometry& geom);

enum class PlacementKind { wordline, diagonal };

/// Bijective map between (codeword, bit) pairs and array cells. One
/// codeword per wordline's worth of cells, one bit per bitline.
struct Placement {
  PlacementKind kind = PlacementKind::wordline;
  ArrayGeometry geom;

  CellLocation locate(int d, int j) const;
  /// Inverse map: (codeword index, bit index).
  std::pair<int, int> codeword_of(const CellLocation& loc) const;
  int codewords() const { return geom.rows; }
  int bits_per_codeword() const { return geom.cols; }
};

/// Mean cell probability over each codeword's cells; probs is a
/// row-major per-cell map (size rows*cols). Returns one mean per
/// codeword index.
std::vector<double> placement_stats(const Placement& placement,
                                    std::span<const double> probs);

}  // namespace xbar
