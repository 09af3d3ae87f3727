#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace xbar {

/// Selector branch resistance. A disengaged selector is modeled as an
/// open circuit (no conduction) rather than a huge finite resistance,
/// so the nodal solver can prune the branch symbolically.
struct SelectorR {
  std::optional<double> ohms;  // nullopt = open

  bool open() const noexcept { return !ohms.has_value(); }
  double value_or_inf() const noexcept;

  static SelectorR open_circuit() noexcept { return {std::nullopt}; }
  static SelectorR finite(double r) noexcept { return {r}; }

  bool operator==(const SelectorR&) const = default;
};

/// Device, bias and variability parameters for a 1S1R crossbar array.
/// Voltages in volts, resistances in ohms, times in microseconds,
/// currents in amperes; mu/sigma fields are in natural-log ohms
/// (resistance states) or natural-log microseconds (switching times).
struct DeviceParams {
  double v_w_set;    // set pulse amplitude, negative
  double v_w_reset;  // reset pulse amplitude, positive
  double v_r;        // read voltage
  double q_prior;    // prior probability of symbol 0 (HRS)
  double r_w;        // wordline interconnect resistance per junction
  double r_b;        // bitline interconnect resistance per junction
  SelectorR r_sf;    // fully selected selector
  SelectorR r_sh;    // half selected selector
  SelectorR r_su;    // unselected selector
  double mu_l, mu_h;        // log-location of LRS / HRS resistance
  double sigma_l, sigma_h;  // log-scale of LRS / HRS resistance
  double alpha_set, beta_set;      // ln(tau_set) = alpha*V + beta
  double alpha_reset, beta_reset;  // ln(tau_reset) = alpha*V + beta
  double sigma_set, sigma_reset;   // log-scale of switching times
  double t_set, t_reset;           // applied pulse widths
  double i_th;                     // read decision threshold current

  /// Raw resistance-domain read threshold v_r / i_th.
  double raw_resistance_threshold() const { return v_r / i_th; }

  /// True when the selector stack carries no series resistance and all
  /// disengaged branches are open, so single-branch closed forms are
  /// exact.
  bool ideal_selectors() const;

  bool operator==(const DeviceParams&) const = default;
};

/// Throws std::invalid_argument with a description if any invariant is
/// violated (probabilities, positivity, mu_l < mu_h, selector ordering).
void validate(const DeviceParams& p);

/// Bundled reference parameter set (moderate-reliability device,
/// r_w = r_b = 10 ohm, ideal selectors).
DeviceParams reference_params();

/// Parse a parameter document. Every key must be present; selector
/// resistances accept the reserved token "open" (or "inf") for an open
/// branch. Validates before returning.
DeviceParams load_params(const nlohmann::json& doc);
DeviceParams load_params_file(const std::filesystem::path& path);

/// Serialize to the same document schema accepted by load_params.
nlohmann::json to_json(const DeviceParams& p);

/// Crossbar array dimensions: m wordlines (rows) by n bitlines
/// (columns). Cells are addressed 1-based; cell (1,1) sits nearest the
/// line drivers and sense amplifiers, cell (m,n) farthest.
struct ArrayGeometry {
  int rows = 0;  // m, wordlines
  int cols = 0;  // n, bitlines

  long long cell_count() const { return 1LL * rows * cols; }
  bool operator==(const ArrayGeometry&) const = default;
};

void validate(const ArrayGeometry& g);

/// 1-based cell address within an ArrayGeometry.
struct CellLocation {
  int row = 0;  // i
  int col = 0;  // j
  bool operator==(const CellLocation&) const = default;
};

bool contains(const ArrayGeometry& g, const CellLocation& loc);

/// Throws std::out_of_range if loc is outside g.
void require_inside(const ArrayGeometry& g, const CellLocation& loc);

/// Binary asymmetric channel: p01 = P(out=1 | in=0), p10 = P(out=0 | in=1).
struct BacParams {
  double p01 = 0.0;
  double p10 = 0.0;
  bool operator==(const BacParams&) const = default;
};

}  // namespace xbar
