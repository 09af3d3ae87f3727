#pragma once

#include <vector>

#include "xbarchan/params.hpp"

namespace xbar {

/// Line resistance accumulated between cell (i,j) and the array edge
/// carrying the drivers/sense amplifiers: i*r_b + j*r_w.
double accumulated_line_resistance(const CellLocation& loc,
                                   const DeviceParams& p);

/// Voltage actually delivered across the selected cell under ideal
/// selectors (open disengaged branches, zero series selector): the
/// two-resistor divider v_w * r_prev / (r_prev + i*r_b + j*r_w).
double effective_write_voltage_ideal(const CellLocation& loc, double r_prev,
                                     double v_w, const DeviceParams& p);

/// Current sensed at the bitline end for a selected cell of resistance
/// r_cell under ideal selectors: v_r / (i*r_b + j*r_w + r_cell).
double sensed_read_current_ideal(const CellLocation& loc, double r_cell,
                                 const DeviceParams& p);

/// One resistance value per crosspoint. Entries must be positive and
/// finite.
struct ResistanceGrid {
  ArrayGeometry geom;
  std::vector<double> r;  // row-major, r[(i-1)*cols + (j-1)]

  double at(const CellLocation& loc) const {
    return r[static_cast<size_t>(loc.row - 1) * geom.cols + (loc.col - 1)];
  }
  /// Uniform grid.
  static ResistanceGrid uniform(const ArrayGeometry& g, double value);
};

void validate(const ResistanceGrid& grid);

enum class BiasKind {
  write_half_select,  // selected lines at v/0, the rest at v/2
  read,               // selected wordline at v_r, every other line grounded
};

struct BiasScheme {
  BiasKind kind = BiasKind::read;
  CellLocation selected;
  double applied_volts = 0.0;
};

/// Selection class of a selector under a bias scheme.
enum class SelectorClass { fully, half, unselected };

SelectorClass classify_selector(const BiasScheme& bias,
                                const CellLocation& loc);

/// Node voltages solved from the Kirchhoff current-law system. Each
/// crosspoint carries a wordline-side and a bitline-side node joined by
/// the selector+cell branch; consecutive nodes on a line are joined by
/// the per-junction line conductance and the first node ties to the
/// driven line terminal.
struct KclSolution {
  ArrayGeometry geom;
  BiasScheme bias;
  std::vector<double> wordline_v;    // row-major
  std::vector<double> bitline_v;     // row-major
  std::vector<double> branch_r;      // selector + cell series resistance;
                                     // infinity for open branches
  std::vector<double> cell_r;        // cell part of the branch
  double residual_inf_norm = 0.0;    // relative to injected current scale

  double wordline_at(const CellLocation& loc) const;
  double bitline_at(const CellLocation& loc) const;
  /// Current through the cell branch, wordline node -> bitline node.
  double branch_current(const CellLocation& loc) const;
  /// Voltage across the cell alone (series selector drop excluded).
  double cell_voltage(const CellLocation& loc) const;
  /// Current flowing out of bitline `col` into its line terminal.
  double bitline_terminal_current(int col, const DeviceParams& p) const;
};

/// Solves the nodal system for the given grid and bias. Requires
/// r_w > 0 and r_b > 0 (zero line resistance is covered exactly by the
/// ideal closed forms). Throws std::runtime_error when the factorization
/// fails or the iterative solve does not reach a relative residual
/// infinity-norm of 1e-9.
KclSolution solve_kcl(const ResistanceGrid& grid, const BiasScheme& bias,
                      const DeviceParams& p);

/// Effective voltage across cell `loc` when writing v_w with the V/2
/// scheme, from a full nodal solve over `grid`.
double effective_write_voltage_kcl(const ResistanceGrid& grid,
                                   const CellLocation& loc, double v_w,
                                   const DeviceParams& p);

/// Sensed current at the selected bitline terminal during a read,
/// from a full nodal solve over `grid`.
double sensed_read_current_kcl(const ResistanceGrid& grid,
                               const CellLocation& loc,
                               const DeviceParams& p);

}  // namespace xbar
