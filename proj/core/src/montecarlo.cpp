#include "xbarchan/montecarlo.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "xbarchan/capacity.hpp"
#include "xbarchan/circuit.hpp"
#include "xbarchan/read_channel.hpp"
#include "xbarchan/rng.hpp"
#include "xbarchan/write_channel.hpp"

namespace xbar {

void validate(const SimConfig& cfg) {
  validate(cfg.geom);
  validate(cfg.params);
  if (cfg.trials < 1) {
    throw std::invalid_argument("SimConfig: trials must be >= 1");
  }
}

CellCounts simulate_cell_trials(const CellLocation& loc,
                                const DeviceParams& p,
                                const ThresholdPlan& plan, long long trials,
                                uint64_t seed) {
  const double q = p.q_prior;
  const SwitchingModel set_model = SwitchingModel::for_set(p);
  const SwitchingModel reset_model = SwitchingModel::for_reset(p);
  const double i_th_cell = p.v_r / plan.threshold_at(loc, p);
  CellRng rng(seed, loc.row, loc.col);
  CellCounts c;
  c.trials = trials;
  for (long long t = 0; t < trials; ++t) {
    const int s_prev = rng.uniform() < q ? 0 : 1;
    const double mu_prev = s_prev == 0 ? p.mu_h : p.mu_l;
    const double sg_prev = s_prev == 0 ? p.sigma_h : p.sigma_l;
    const double r_prev = std::exp(mu_prev + sg_prev * rng.normal());
    const int x = rng.uniform() < q ? 0 : 1;
    int y = x;
    if (x != s_prev) {
      const SwitchOp op = x == 1 ? SwitchOp::set : SwitchOp::reset;
      const SwitchingModel& model = x == 1 ? set_model : reset_model;
      const double success = switch_success_given_r(r_prev, loc, model, op, p);
      y = rng.uniform() < success ? x : s_prev;
    }
    // cycle-to-cycle variability: the stored resistance is a fresh draw
    // conditioned on the stored state
    const double mu_st = y == 0 ? p.mu_h : p.mu_l;
    const double sg_st = y == 0 ? p.sigma_h : p.sigma_l;
    const double r_stored = std::exp(mu_st + sg_st * rng.normal());
    const double current = sensed_read_current_ideal(loc, r_stored, p);
    const int z = threshold_detect(current, i_th_cell);

    if (x == 0) {
      ++c.n_x0;
      if (y == 1) ++c.x0_to_y1;
      if (z == 1) ++c.x0_to_z1;
    } else {
      ++c.n_x1;
      if (y == 0) ++c.x1_to_y0;
      if (z == 0) ++c.x1_to_z0;
    }
    if (y == 0) {
      ++c.n_y0;
      if (z == 1) ++c.y0_to_z1;
    } else {
      ++c.n_y1;
      if (z == 0) ++c.y1_to_z0;
    }
    if (x != y) ++c.write_errors;
    if (y != z) ++c.read_errors;
    if (x != z) ++c.cascaded_errors;
  }
  return c;
}

double ErrorMap::value_at(MapQuantity q, const CellLocation& loc) const {
  require_inside(geom, loc);
  return values(q)[static_cast<size_t>(loc.row - 1) * geom.cols +
                   (loc.col - 1)];
}

const std::vector<double>& ErrorMap::values(MapQuantity q) const {
  switch (q) {
    case MapQuantity::write_ber: return write_ber;
    case MapQuantity::read_ber: return read_ber;
    case MapQuantity::cascaded_ber: return cascaded_ber;
  }
  return cascaded_ber;
}

namespace {

void parallel_rows(int rows, const std::function<void(int)>& body) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(rows));
  if (workers <= 1) {
    for (int i = 0; i < rows; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = static_cast<int>(w); i < rows;
           i += static_cast<int>(workers)) {
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

ErrorMap build_error_map(const SimConfig& cfg) {
  validate(cfg);
  const int m = cfg.geom.rows;
  const int n = cfg.geom.cols;
  const size_t cells = static_cast<size_t>(cfg.geom.cell_count());
  ErrorMap map;
  map.geom = cfg.geom;
  map.seed = cfg.seed;
  map.analytic = cfg.analytic;
  map.trials = cfg.analytic ? 0 : cfg.trials;
  map.write_ber.resize(cells);
  map.read_ber.resize(cells);
  map.cascaded_ber.resize(cells);
  map.write_se.assign(cells, 0.0);
  map.read_se.assign(cells, 0.0);
  map.cascaded_se.assign(cells, 0.0);

  const DeviceParams& p = cfg.params;
  const double q = p.q_prior;
  if (cfg.analytic) {
    std::unordered_map<double, WriteChannelResult> write_by_acc;
    std::unordered_map<double, BacParams> read_by_eff;
    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j <= n; ++j) {
        const CellLocation loc{i, j};
        const size_t idx = static_cast<size_t>(i - 1) * n + (j - 1);
        const double acc = accumulated_line_resistance(loc, p);
        auto wit = write_by_acc.find(acc);
        if (wit == write_by_acc.end()) {
          wit = write_by_acc.emplace(acc, write_channel(loc, p)).first;
        }
        const double r_eff = cfg.plan.threshold_at(loc, p) - acc;
        auto rit = read_by_eff.find(r_eff);
        if (rit == read_by_eff.end()) {
          rit = read_by_eff
                    .emplace(r_eff,
                             read_crossovers_at_effective_threshold(r_eff, p))
                    .first;
        }
        const BacParams casc = cascade(wit->second.bac, rit->second);
        map.write_ber[idx] =
            q * wit->second.bac.p01 + (1.0 - q) * wit->second.bac.p10;
        map.read_ber[idx] = q * rit->second.p01 + (1.0 - q) * rit->second.p10;
        map.cascaded_ber[idx] = q * casc.p01 + (1.0 - q) * casc.p10;
      }
    }
    return map;
  }

  const double inv_trials = 1.0 / static_cast<double>(cfg.trials);
  auto se = [&](double phat) {
    return std::sqrt(phat * (1.0 - phat) * inv_trials);
  };
  parallel_rows(m, [&](int i0) {
    for (int j = 1; j <= n; ++j) {
      const CellLocation loc{i0 + 1, j};
      const size_t idx = static_cast<size_t>(i0) * n + (j - 1);
      const CellCounts c =
          simulate_cell_trials(loc, p, cfg.plan, cfg.trials, cfg.seed);
      map.write_ber[idx] = c.write_errors * inv_trials;
      map.read_ber[idx] = c.read_errors * inv_trials;
      map.cascaded_ber[idx] = c.cascaded_errors * inv_trials;
      map.write_se[idx] = se(map.write_ber[idx]);
      map.read_se[idx] = se(map.read_ber[idx]);
      map.cascaded_se[idx] = se(map.cascaded_ber[idx]);
    }
  });
  return map;
}

const char* to_string(MapQuantity q) {
  switch (q) {
    case MapQuantity::write_ber: return "write_ber";
    case MapQuantity::read_ber: return "read_ber";
    case MapQuantity::cascaded_ber: return "cascaded_ber";
  }
  return "?";
}

void export_heatmap_csv(const ErrorMap& map, MapQuantity q,
                        const std::filesystem::path& path,
                        const std::vector<std::string>& extra_header) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << '#' << map.geom.rows << ',' << map.geom.cols << ',' << to_string(q)
      << ',' << map.seed << '\n';
  for (const auto& line : extra_header) out << line << '\n';
  const auto& vals = map.values(q);
  char buf[32];
  for (int i = 0; i < map.geom.rows; ++i) {
    for (int j = 0; j < map.geom.cols; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g",
                    vals[static_cast<size_t>(i) * map.geom.cols + j]);
      out << buf << (j + 1 < map.geom.cols ? "," : "");
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

void export_heatmap_pgm(const ErrorMap& map, MapQuantity q,
                        const std::filesystem::path& path) {
  const auto& vals = map.values(q);
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (double v : vals) {
    if (v > 0.0) {
      if (!any || v < lo) lo = any ? std::min(lo, v) : v;
      if (!any || v > hi) hi = std::max(hi, v);
      any = true;
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << "P5\n" << map.geom.cols << ' ' << map.geom.rows << "\n255\n";
  const bool flat = !any || hi <= lo;
  const double log_lo = any ? std::log10(lo) : 0.0;
  const double log_hi = any ? std::log10(hi) : 0.0;
  std::vector<unsigned char> row(map.geom.cols);
  for (int i = 0; i < map.geom.rows; ++i) {
    for (int j = 0; j < map.geom.cols; ++j) {
      const double v = vals[static_cast<size_t>(i) * map.geom.cols + j];
      if (flat) {
        row[j] = 128;
      } else if (v <= 0.0) {
        row[j] = 0;
      } else {
        const double t = (std::log10(v) - log_lo) / (log_hi - log_lo);
        row[j] = static_cast<unsigned char>(std::lround(255.0 * t));
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()), row.size());
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace xbar
