#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "xbarchan/params.hpp"
#include "xbarchan/threshold.hpp"

namespace xbar {

struct SimConfig {
  ArrayGeometry geom;
  DeviceParams params;
  ThresholdPlan plan;
  long long trials = 1;     // per cell, sampled mode
  uint64_t seed = 0;
  bool analytic = true;     // closed-form channel values instead of sampling
};

void validate(const SimConfig& cfg);

/// Tallies from one cell's simulated write/read trials, including the
/// conditional counts needed to estimate each crossover probability.
struct CellCounts {
  long long trials = 0;
  long long write_errors = 0;     // X != Y
  long long read_errors = 0;      // Y != Z
  long long cascaded_errors = 0;  // X != Z
  long long n_x0 = 0, n_x1 = 0;
  long long n_y0 = 0, n_y1 = 0;
  long long x0_to_y1 = 0;  // write 0 landed as 1   (p1 events)
  long long x1_to_y0 = 0;  // write 1 landed as 0   (p2 events)
  long long y0_to_z1 = 0;  // stored 0 read as 1    (p3 events)
  long long y1_to_z0 = 0;  // stored 1 read as 0    (p4 events)
  long long x0_to_z1 = 0;  // intended 0 read as 1  (p5 events)
  long long x1_to_z0 = 0;  // intended 1 read as 0  (p6 events)
};

/// Per-trial pipeline: draw previous state and its resistance, draw the
/// target symbol, apply the switching law to get the stored state, draw
/// a fresh stored resistance, sense and threshold-detect. Deterministic
/// given (seed, row, col).
CellCounts simulate_cell_trials(const CellLocation& loc,
                                const DeviceParams& p,
                                const ThresholdPlan& plan, long long trials,
                                uint64_t seed);

enum class MapQuantity { write_ber, read_ber, cascaded_ber };

/// Per-cell error probabilities with standard errors (zero in analytic
/// mode).
struct ErrorMap {
  ArrayGeometry geom;
  std::vector<double> write_ber, read_ber, cascaded_ber;  // row-major
  std::vector<double> write_se, read_se, cascaded_se;
  long long trials = 0;
  uint64_t seed = 0;
  bool analytic = true;

  double value_at(MapQuantity q, const CellLocation& loc) const;
  const std::vector<double>& values(MapQuantity q) const;
};

/// Full-array map. Analytic mode evaluates the closed-form channels
/// (cells sharing an accumulated resistance and effective threshold
/// share one evaluation); sampled mode runs simulate_cell_trials per
/// cell across hardware threads with per-cell substreams.
ErrorMap build_error_map(const SimConfig& cfg);

/// CSV matrix, first line "#rows,cols,quantity,seed", then one line per
/// wordline. Extra header lines (each starting with '#') are written
/// after the first line.
void export_heatmap_csv(const ErrorMap& map, MapQuantity q,
                        const std::filesystem::path& path,
                        const std::vector<std::string>& extra_header = {});

/// 8-bit binary PGM. Gray level 0..255 maps log10(p) linearly between
/// the smallest and largest positive entries; zero/degenerate maps are
/// uniform mid-gray.
void export_heatmap_pgm(const ErrorMap& map, MapQuantity q,
                        const std::filesystem::path& path);

const char* to_string(MapQuantity q);

}  // namespace xbar
