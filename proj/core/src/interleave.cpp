#include "xbarchan/interleave.hpp"

#include <stdexcept>

namespace xbar {

namespace {

void check_indices(int d, int j, const ArrayGeometry& geom) {
  if (d < 0 || d >= geom.rows || j < 1 || j > geom.cols) {
    throw std::out_of_range("placement index (d=" + std::to_string(d) +
                            ", j=" + std::to_string(j) + ") out of range");
  }
}

}  // namespace

CellLocation diagonal_place(int d, int j, const ArrayGeometry& geom) {
  check_indices(d, j, geom);
  return CellLocation{(j - 1 + d) % geom.rows + 1, j};
}

CellLocation wordline_place(int d, int j, const ArrayGeometry& geom) {
  check_indices(d, j, geom);
  return CellLocation{d + 1, j};
}

CellLocation Placement::locate(int d, int j) const {
  return kind == PlacementKind::diagonal ? diagonal_place(d, j, geom)
                                         : wordline_place(d, j, geom);
}

std::pair<int, int> Placement::codeword_of(const CellLocation& loc) const {
  require_inside(geom, loc);
  if (kind == PlacementKind::wordline) {
    return {loc.row - 1, loc.col};
  }
  const int m = geom.rows;
  const int d = ((loc.row - 1) - (loc.col - 1) % m + m) % m;
  return {d, loc.col};
}

std::vector<double> placement_stats(const Placement& placement,
                                    std::span<const double> probs) {
  const auto& g = placement.geom;
  if (probs.size() != static_cast<size_t>(g.cell_count())) {
    throw std::invalid_argument("placement_stats: map size mismatch");
  }
  std::vector<double> means(placement.codewords(), 0.0);
  for (int d = 0; d < placement.codewords(); ++d) {
    double sum = 0.0;
    for (int j = 1; j <= g.cols; ++j) {
      const CellLocation loc = placement.locate(d, j);
      sum += probs[static_cast<size_t>(loc.row - 1) * g.cols + (loc.col - 1)];
    }
    means[d] = sum / g.cols;
  }
  return means;
}

}  // namespace xbar
