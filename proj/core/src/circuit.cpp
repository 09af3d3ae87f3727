#include "xbarchan/circuit.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/IterativeLinearSolvers>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xbar {

double accumulated_line_resistance(const CellLocation& loc,
                                   const DeviceParams& p) {
  return loc.row * p.r_b + loc.col * p.r_w;
}

double effective_write_voltage_ideal(const CellLocation& loc, double r_prev,
                                     double v_w, const DeviceParams& p) {
  if (!(r_prev > 0.0)) {
    throw std::invalid_argument("effective_write_voltage_ideal: r_prev <= 0");
  }
  return v_w * r_prev / (r_prev + accumulated_line_resistance(loc, p));
}

double sensed_read_current_ideal(const CellLocation& loc, double r_cell,
                                 const DeviceParams& p) {
  if (!(r_cell > 0.0)) {
    throw std::invalid_argument("sensed_read_current_ideal: r_cell <= 0");
  }
  return p.v_r / (accumulated_line_resistance(loc, p) + r_cell);
}

ResistanceGrid ResistanceGrid::uniform(const ArrayGeometry& g, double value) {
  validate(g);
  return ResistanceGrid{g, std::vector<double>(g.cell_count(), value)};
}

void validate(const ResistanceGrid& grid) {
  validate(grid.geom);
  if (static_cast<long long>(grid.r.size()) != grid.geom.cell_count()) {
    throw std::invalid_argument("ResistanceGrid: size mismatch");
  }
  for (double v : grid.r) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(
          "ResistanceGrid: entries must be positive and finite");
    }
  }
}

SelectorClass classify_selector(const BiasScheme& bias,
                                const CellLocation& loc) {
  const bool same_row = loc.row == bias.selected.row;
  const bool same_col = loc.col == bias.selected.col;
  if (same_row && same_col) return SelectorClass::fully;
  switch (bias.kind) {
    case BiasKind::write_half_select:
      // cells sharing the selected wordline or bitline sit at ~v/2
      return (same_row || same_col) ? SelectorClass::half
                                    : SelectorClass::unselected;
    case BiasKind::read:
      // only the selected cell's selector engages; the rest of the
      // array is treated as disengaged during a read
      return SelectorClass::unselected;
  }
  return SelectorClass::unselected;
}

namespace {

double selector_resistance(const DeviceParams& p, SelectorClass cls,
                           bool* open) {
  const SelectorR* s = nullptr;
  switch (cls) {
    case SelectorClass::fully: s = &p.r_sf; break;
    case SelectorClass::half: s = &p.r_sh; break;
    case SelectorClass::unselected: s = &p.r_su; break;
  }
  *open = s->open();
  return s->open() ? 0.0 : *s->ohms;
}

// Line terminal voltages for the given bias.
double wordline_terminal(const BiasScheme& bias, int row) {
  switch (bias.kind) {
    case BiasKind::write_half_select:
      return row == bias.selected.row ? bias.applied_volts
                                      : 0.5 * bias.applied_volts;
    case BiasKind::read:
      return row == bias.selected.row ? bias.applied_volts : 0.0;
  }
  return 0.0;
}

double bitline_terminal(const BiasScheme& bias, int col) {
  switch (bias.kind) {
    case BiasKind::write_half_select:
      return col == bias.selected.col ? 0.0 : 0.5 * bias.applied_volts;
    case BiasKind::read:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

double KclSolution::wordline_at(const CellLocation& loc) const {
  require_inside(geom, loc);
  return wordline_v[static_cast<size_t>(loc.row - 1) * geom.cols +
                    (loc.col - 1)];
}

double KclSolution::bitline_at(const CellLocation& loc) const {
  require_inside(geom, loc);
  return bitline_v[static_cast<size_t>(loc.row - 1) * geom.cols +
                   (loc.col - 1)];
}

double KclSolution::branch_current(const CellLocation& loc) const {
  require_inside(geom, loc);
  const size_t idx =
      static_cast<size_t>(loc.row - 1) * geom.cols + (loc.col - 1);
  if (!std::isfinite(branch_r[idx])) return 0.0;
  return (wordline_v[idx] - bitline_v[idx]) / branch_r[idx];
}

double KclSolution::cell_voltage(const CellLocation& loc) const {
  const size_t idx =
      static_cast<size_t>(loc.row - 1) * geom.cols + (loc.col - 1);
  return branch_current(loc) * cell_r[idx];
}

double KclSolution::bitline_terminal_current(int col,
                                             const DeviceParams& p) const {
  require_inside(geom, {1, col});
  const size_t idx = static_cast<size_t>(col - 1);
  return (bitline_v[idx] - bitline_terminal(bias, col)) / p.r_b;
}

KclSolution solve_kcl(const ResistanceGrid& grid, const BiasScheme& bias,
                      const DeviceParams& p) {
  validate(grid);
  require_inside(grid.geom, bias.selected);
  if (!(p.r_w > 0.0 && p.r_b > 0.0)) {
    throw std::invalid_argument(
        "solve_kcl: requires positive line resistances (the zero-resistance "
        "case is covered by the ideal closed forms)");
  }
  const int m = grid.geom.rows;
  const int n = grid.geom.cols;
  const long long mn = grid.geom.cell_count();
  const long long dim = 2 * mn;
  const double g_w = 1.0 / p.r_w;
  const double g_b = 1.0 / p.r_b;
  auto widx = [n](int i, int j) {
    return static_cast<long long>(i - 1) * n + (j - 1);
  };
  auto bidx = [n, mn](int i, int j) {
    return mn + static_cast<long long>(i - 1) * n + (j - 1);
  };

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(8 * mn));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  std::vector<double> branch_r(mn, std::numeric_limits<double>::infinity());
  std::vector<double> cell_r(mn, 0.0);

  auto add_edge = [&](long long a, long long b, double g) {
    trips.emplace_back(a, a, g);
    trips.emplace_back(b, b, g);
    trips.emplace_back(a, b, -g);
    trips.emplace_back(b, a, -g);
  };
  auto add_terminal = [&](long long a, double g, double volts) {
    trips.emplace_back(a, a, g);
    rhs[a] += g * volts;
  };

  for (int i = 1; i <= m; ++i) {
    add_terminal(widx(i, 1), g_w, wordline_terminal(bias, i));
    for (int j = 1; j < n; ++j) add_edge(widx(i, j), widx(i, j + 1), g_w);
  }
  for (int j = 1; j <= n; ++j) {
    add_terminal(bidx(1, j), g_b, bitline_terminal(bias, j));
    for (int i = 1; i < m; ++i) add_edge(bidx(i, j), bidx(i + 1, j), g_b);
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      const CellLocation loc{i, j};
      bool open = false;
      const double r_sel =
          selector_resistance(p, classify_selector(bias, loc), &open);
      const long long cell = widx(i, j);
      cell_r[cell] = grid.at(loc);
      if (open) continue;
      const double r_branch = r_sel + grid.at(loc);
      branch_r[cell] = r_branch;
      add_edge(widx(i, j), bidx(i, j), 1.0 / r_branch);
    }
  }

  Eigen::SparseMatrix<double> A(dim, dim);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();

  // the conductance matrix of a reciprocal network must be symmetric
  {
    Eigen::SparseMatrix<double> At = A.transpose();
    const double asym = (A - At).squaredNorm();
    if (asym > 1e-24 * A.squaredNorm()) {
      throw std::runtime_error("solve_kcl: assembled matrix not symmetric");
    }
  }

  Eigen::VectorXd x;
  if (std::max(m, n) <= 256) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    solver.compute(A);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("solve_kcl: factorization failed (singular network)");
    }
    x = solver.solve(rhs);
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                             Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>> solver;
    solver.setTolerance(1e-12);
    solver.setMaxIterations(50000);
    solver.compute(A);
    x = solver.solve(rhs);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("solve_kcl: conjugate gradient did not converge");
    }
  }

  const double rhs_scale = rhs.cwiseAbs().maxCoeff();
  const double resid = (A * x - rhs).cwiseAbs().maxCoeff();
  const double rel_resid = rhs_scale > 0.0 ? resid / rhs_scale : resid;
  if (rel_resid > 1e-9) {
    throw std::runtime_error("solve_kcl: residual above tolerance");
  }

  KclSolution sol;
  sol.geom = grid.geom;
  sol.bias = bias;
  sol.wordline_v.assign(x.data(), x.data() + mn);
  sol.bitline_v.assign(x.data() + mn, x.data() + dim);
  sol.branch_r = std::move(branch_r);
  sol.cell_r = std::move(cell_r);
  sol.residual_inf_norm = rel_resid;
  return sol;
}

double effective_write_voltage_kcl(const ResistanceGrid& grid,
                                   const CellLocation& loc, double v_w,
                                   const DeviceParams& p) {
  const BiasScheme bias{BiasKind::write_half_select, loc, v_w};
  return solve_kcl(grid, bias, p).cell_voltage(loc);
}

double sensed_read_current_kcl(const ResistanceGrid& grid,
                               const CellLocation& loc,
                               const DeviceParams& p) {
  const BiasScheme bias{BiasKind::read, loc, p.v_r};
  return solve_kcl(grid, bias, p).bitline_terminal_current(loc.col, p);
}

}  // namespace xbar
