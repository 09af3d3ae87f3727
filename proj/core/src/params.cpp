#include "xbarchan/params.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace xbar {

double SelectorR::value_or_inf() const noexcept {
  return ohms ? *ohms : std::numeric_limits<double>::infinity();
}

bool DeviceParams::ideal_selectors() const {
  return r_sh.open() && r_su.open() && !r_sf.open() && *r_sf.ohms == 0.0;
}

void validate(const DeviceParams& p) {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("DeviceParams: " + msg);
  };
  auto finite = [&](double v, const char* name) {
    if (!std::isfinite(v)) fail(std::string(name) + " must be finite");
  };
  finite(p.v_w_set, "v_w_set");
  finite(p.v_w_reset, "v_w_reset");
  finite(p.v_r, "v_r");
  if (!(p.q_prior > 0.0 && p.q_prior < 1.0)) fail("q_prior must be in (0,1)");
  if (!(p.r_w >= 0.0) || !std::isfinite(p.r_w)) fail("r_w must be >= 0");
  if (!(p.r_b >= 0.0) || !std::isfinite(p.r_b)) fail("r_b must be >= 0");
  for (const auto* s : {&p.r_sf, &p.r_sh, &p.r_su}) {
    if (!s->open() && !(*s->ohms >= 0.0 && std::isfinite(*s->ohms))) {
      fail("selector resistances must be >= 0 or open");
    }
  }
  if (!(p.r_sf.value_or_inf() <= p.r_sh.value_or_inf() &&
        p.r_sh.value_or_inf() <= p.r_su.value_or_inf())) {
    fail("selector ordering r_sf <= r_sh <= r_su violated");
  }
  if (!(p.sigma_l > 0.0)) fail("sigma_l must be > 0");
  if (!(p.sigma_h > 0.0)) fail("sigma_h must be > 0");
  if (!(p.mu_l < p.mu_h)) fail("mu_l must be < mu_h");
  if (!(p.sigma_set > 0.0)) fail("sigma_set must be > 0");
  if (!(p.sigma_reset > 0.0)) fail("sigma_reset must be > 0");
  if (!(p.t_set > 0.0)) fail("t_set must be > 0");
  if (!(p.t_reset > 0.0)) fail("t_reset must be > 0");
  if (!(p.i_th > 0.0)) fail("i_th must be > 0");
}

DeviceParams reference_params() {
  const double ln10 = std::log(10.0);
  DeviceParams p{};
  p.v_w_set = -5.0;
  p.v_w_reset = 5.0;
  p.v_r = 3.0;
  p.q_prior = 0.5;
  p.r_w = 10.0;
  p.r_b = 10.0;
  p.r_sf = SelectorR::finite(0.0);
  p.r_sh = SelectorR::open_circuit();
  p.r_su = SelectorR::open_circuit();
  p.mu_l = 4.0 * ln10;
  p.mu_h = 6.0 * ln10;
  p.sigma_l = 0.3 * ln10;
  p.sigma_h = 0.3 * ln10;
  p.alpha_set = 0.25;
  p.beta_set = 4.25;
  p.alpha_reset = -0.25;
  p.beta_reset = 4.25;
  p.sigma_set = 0.5;
  p.sigma_reset = 0.5;
  p.t_set = 100.0;
  p.t_reset = 100.0;
  p.i_th = 30e-6;
  return p;
}

namespace {

double get_number(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw std::invalid_argument(std::string("missing parameter key: ") + key);
  }
  const auto& v = doc.at(key);
  if (!v.is_number()) {
    throw std::invalid_argument(std::string("parameter ") + key +
                                " must be a number");
  }
  return v.get<double>();
}

SelectorR get_selector(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw std::invalid_argument(std::string("missing parameter key: ") + key);
  }
  const auto& v = doc.at(key);
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "open" || s == "inf") return SelectorR::open_circuit();
    throw std::invalid_argument(std::string("parameter ") + key +
                                ": unknown token '" + s + "'");
  }
  if (!v.is_number()) {
    throw std::invalid_argument(std::string("parameter ") + key +
                                " must be a number or \"open\"");
  }
  return SelectorR::finite(v.get<double>());
}

}  // namespace

DeviceParams load_params(const nlohmann::json& doc) {
  DeviceParams p{};
  p.v_w_set = get_number(doc, "v_w_set");
  p.v_w_reset = get_number(doc, "v_w_reset");
  p.v_r = get_number(doc, "v_r");
  p.q_prior = get_number(doc, "q");
  p.r_w = get_number(doc, "r_w");
  p.r_b = get_number(doc, "r_b");
  p.r_sf = get_selector(doc, "r_sf");
  p.r_sh = get_selector(doc, "r_sh");
  p.r_su = get_selector(doc, "r_su");
  p.mu_l = get_number(doc, "mu_l");
  p.mu_h = get_number(doc, "mu_h");
  p.sigma_l = get_number(doc, "sigma_l");
  p.sigma_h = get_number(doc, "sigma_h");
  p.alpha_set = get_number(doc, "alpha_set");
  p.beta_set = get_number(doc, "beta_set");
  p.alpha_reset = get_number(doc, "alpha_reset");
  p.beta_reset = get_number(doc, "beta_reset");
  p.sigma_set = get_number(doc, "sigma_set");
  p.sigma_reset = get_number(doc, "sigma_reset");
  p.t_set = get_number(doc, "t_set");
  p.t_reset = get_number(doc, "t_reset");
  p.i_th = get_number(doc, "i_th");
  validate(p);
  return p;
}

DeviceParams load_params_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open parameter file: " + path.string());
  }
  nlohmann::json doc;
  in >> doc;
  return load_params(doc);
}

nlohmann::json to_json(const DeviceParams& p) {
  nlohmann::json doc;
  doc["v_w_set"] = p.v_w_set;
  doc["v_w_reset"] = p.v_w_reset;
  doc["v_r"] = p.v_r;
  doc["q"] = p.q_prior;
  doc["r_w"] = p.r_w;
  doc["r_b"] = p.r_b;
  auto sel = [](const SelectorR& s) -> nlohmann::json {
    if (s.open()) return "open";
    return *s.ohms;
  };
  doc["r_sf"] = sel(p.r_sf);
  doc["r_sh"] = sel(p.r_sh);
  doc["r_su"] = sel(p.r_su);
  doc["mu_l"] = p.mu_l;
  doc["mu_h"] = p.mu_h;
  doc["sigma_l"] = p.sigma_l;
  doc["sigma_h"] = p.sigma_h;
  doc["alpha_set"] = p.alpha_set;
  doc["beta_set"] = p.beta_set;
  doc["alpha_reset"] = p.alpha_reset;
  doc["beta_reset"] = p.beta_reset;
  doc["sigma_set"] = p.sigma_set;
  doc["sigma_reset"] = p.sigma_reset;
  doc["t_set"] = p.t_set;
  doc["t_reset"] = p.t_reset;
  doc["i_th"] = p.i_th;
  return doc;
}

void validate(const ArrayGeometry& g) {
  if (g.rows < 1 || g.cols < 1) {
    throw std::invalid_argument("ArrayGeometry: rows and cols must be >= 1");
  }
}

bool contains(const ArrayGeometry& g, const CellLocation& loc) {
  return loc.row >= 1 && loc.row <= g.rows && loc.col >= 1 && loc.col <= g.cols;
}

void require_inside(const ArrayGeometry& g, const CellLocation& loc) {
  if (!contains(g, loc)) {
    throw std::out_of_range("cell (" + std::to_string(loc.row) + "," +
                            std::to_string(loc.col) + ") outside " +
                            std::to_string(g.rows) + "x" +
                            std::to_string(g.cols) + " array");
  }
}

}  // namespace xbar
