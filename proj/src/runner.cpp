#include "lorentzqrf/runner.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "lorentzqrf/errors.hpp"
#include "lorentzqrf/phenomena.hpp"
#include "lorentzqrf/scenarios.hpp"
#include "lorentzqrf/svg.hpp"

namespace lqrf::runner {

namespace {

using io::Json;
namespace fs = std::filesystem;

struct Param {
  std::string key;
  Json def;  // null marks an optional parameter
};

const std::vector<Param>& common_params() {
  static const std::vector<Param> p{{"grid_half_width", 10.0}, {"grid_n", 4096},   {"plot_nt", 0},
                                    {"plot_nx", 0},            {"plot_quantity", "abs2"}};
  return p;
}

const std::map<std::string, std::vector<Param>>& scenario_params() {
  const double ln2 = std::numbers::ln2;
  static const std::map<std::string, std::vector<Param>> p{
      {"time-dilation",
       {{"t1", 0.0}, {"dt", 1.0}, {"x0", 0.0}, {"w1", 0.0}, {"w2", ln2}, {"mode", "exact"}, {"sigma", 0.02}, {"m", 1.0}}},
      {"length-contraction",
       {{"x1", 0.0}, {"dx", 1.0}, {"vb", 0.6}, {"vd", 0.8}, {"tb1", 0.0}, {"td1", 0.0}, {"tb2", nullptr}, {"td2", nullptr}}},
      {"width-contraction", {{"sigma", 1.0}, {"w1", 0.0}, {"w2", ln2}, {"w3", nullptr}, {"m", 1.0}}},
      {"superposed-slice",
       {{"tb", 0.5}, {"ta", 0.0}, {"w1", 0.0}, {"w2", ln2}, {"mA", 1.0}, {"mB", 1.0}, {"mC", 1.0},
        {"tooth", 0.05}, {"teeth", 5}, {"spacing", 1.0}}},
      {"superposition-of-boosts",
       {{"w1", 0.0}, {"w2", ln2}, {"c1", 1.0}, {"c2", 1.0}, {"t0", 1.0}, {"x0", 0.5}, {"sigma", 0.1}, {"m", 1.0}}},
      {"nonrel-interference",
       {{"x0", 0.0}, {"t0", 0.0}, {"sigma_x", 1.0}, {"sigma_t", 1.0}, {"m", 1.0}, {"w1", 0.02}, {"w2", -0.02},
        {"tp", 5.0}, {"xp", 1.0}, {"sign", 1}, {"frame_width", 0.0}}},
      {"coordinate-transform",
       {{"v1", 0.6}, {"v2", 0.8}, {"v3", nullptr}, {"v4", nullptr}, {"e1t", 1.0}, {"e1x", 0.0}, {"e2t", 0.0}, {"e2x", 1.0}}},
      {"propagator-table", {{"m", 1.0}}},
  };
  return p;
}

class Params {
 public:
  Params(const std::string& scenario, const Json& given) {
    const auto it = scenario_params().find(scenario);
    if (it == scenario_params().end()) throw ConfigError("unknown scenario '" + scenario + "'");
    for (const auto& p : common_params()) values_[p.key] = p.def;
    for (const auto& p : it->second) values_[p.key] = p.def;
    if (!given.is_object()) throw ConfigError("parameters must be a flat JSON object");
    for (auto g = given.begin(); g != given.end(); ++g) {
      auto v = values_.find(g.key());
      if (v == values_.end()) throw ConfigError("unknown parameter '" + g.key() + "' for scenario " + scenario);
      if (!g.value().is_primitive()) throw ConfigError("parameter '" + g.key() + "' must be a scalar");
      v->second = g.value();
    }
  }

  double num(const std::string& k) const {
    const Json& v = values_.at(k);
    if (!v.is_number()) throw ConfigError("parameter '" + k + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("parameter '" + k + "' must be finite");
    return d;
  }
  bool has(const std::string& k) const { return !values_.at(k).is_null(); }
  std::size_t count(const std::string& k) const {
    const double d = num(k);
    if (d < 0.0 || d != std::floor(d)) throw ConfigError("parameter '" + k + "' must be a non-negative integer");
    return static_cast<std::size_t>(d);
  }
  std::string str(const std::string& k) const {
    const Json& v = values_.at(k);
    if (!v.is_string()) throw ConfigError("parameter '" + k + "' must be a string");
    return v.get<std::string>();
  }
  phenomena::GridParams grid() const { return {num("grid_half_width"), count("grid_n")}; }

 private:
  std::map<std::string, Json> values_;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + p.string());
  f << text;
  if (!f) throw ConfigError("failed writing " + p.string());
}

ScenarioReport wrap_probability(const measure::ProbabilityReport& p, int sign) {
  ScenarioReport r;
  r.scenario = "nonrel-interference";
  const double total = p.component("total");
  r.branches.push_back(make_check("postselection", 0.0, "p_plus + p_minus", total,
                                  p.component("p_plus") + p.component("p_minus"), 1e-10, true, "quadrature"));
  r.branches.push_back(make_check(sign > 0 ? "+" : "-", 0.0, "probability bound", 0.0, std::max(0.0, p.value - 1.0),
                                  1e-10, false, "quadrature"));
  for (const auto& [k, v] : p.components) r.metrics.emplace_back(k, v);
  r.warnings = p.warnings;
  return r;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : scenario_params()) n.push_back(k);
    return n;
  }();
  return names;
}

Json load_config_file(const std::string& path, std::string* scenario) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a flat JSON object");
  if (j.contains("scenario")) {
    if (!j["scenario"].is_string()) throw ConfigError("'scenario' must be a string");
    if (scenario) *scenario = j["scenario"].get<std::string>();
    j.erase("scenario");
  }
  return j;
}

void apply_override(Json& params, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string val = assignment.substr(eq + 1);
  if (val == "true" || val == "false") {
    params[key] = val == "true";
    return;
  }
  if (val == "null") {
    params[key] = nullptr;
    return;
  }
  try {
    std::size_t pos = 0;
    const double d = std::stod(val, &pos);
    if (pos == val.size()) {
      params[key] = d;
      return;
    }
  } catch (const std::exception&) {
  }
  params[key] = val;
}

ScenarioReport run_scenario(const RunConfig& cfg, Json* extra) {
  const Params p(cfg.scenario, cfg.params);
  phenomena::PlotSpec plot{p.count("plot_nt"), p.count("plot_nx"), p.str("plot_quantity")};
  if (cfg.plot_svg && plot.nt == 0 && plot.nx == 0) plot.nt = plot.nx = 160;
  if (!cfg.plot_svg) plot.nt = plot.nx = 0;
  plot.validate();
  const auto& s = cfg.scenario;

  try {
    if (s == "time-dilation") {
      phenomena::DilationScenario d;
      d.t1 = p.num("t1");
      d.t2 = d.t1 + p.num("dt");
      d.x0 = p.num("x0");
      d.omega1 = p.num("w1");
      d.omega2 = p.num("w2");
      const auto mode = p.str("mode");
      if (mode != "exact" && mode != "gaussian") throw ConfigError("mode must be 'exact' or 'gaussian'");
      d.mode = mode == "exact" ? phenomena::DilationScenario::Mode::exact_event
                               : phenomena::DilationScenario::Mode::narrow_gaussian;
      d.sigma = p.num("sigma");
      d.mass = p.num("m");
      d.grid = p.grid();
      return phenomena::run_time_dilation(d, plot);
    }
    if (s == "length-contraction") {
      phenomena::ContractionScenario c;
      c.x1 = p.num("x1");
      c.x2 = c.x1 + p.num("dx");
      c.v_b = p.num("vb");
      c.v_d = p.num("vd");
      c.t_b1 = p.num("tb1");
      c.t_d1 = p.num("td1");
      c.t_b2 = p.has("tb2") ? p.num("tb2") : c.t_b1 + c.v_b * (c.x2 - c.x1);
      c.t_d2 = p.has("td2") ? p.num("td2") : c.t_d1 + c.v_d * (c.x2 - c.x1);
      return phenomena::run_length_contraction(c);
    }
    if (s == "width-contraction") {
      phenomena::WidthScenario w;
      w.sigma = p.num("sigma");
      w.omegas = {p.num("w1"), p.num("w2")};
      if (p.has("w3")) w.omegas.push_back(p.num("w3"));
      w.mass = p.num("m");
      w.grid = p.grid();
      return phenomena::run_width_contraction(w, plot);
    }
    if (s == "superposed-slice") {
      scenarios::SuperposedSlice c;
      c.t_b = p.num("tb");
      c.t_a = p.num("ta");
      c.omega1 = p.num("w1");
      c.omega2 = p.num("w2");
      c.m_a = p.num("mA");
      c.m_b = p.num("mB");
      c.m_c = p.num("mC");
      c.tooth = p.num("tooth");
      c.teeth = p.count("teeth");
      c.spacing = p.num("spacing");
      c.grid = p.grid();
      return scenarios::run_superposed_slice(c, plot);
    }
    if (s == "superposition-of-boosts") {
      scenarios::BoostSuperposition b;
      b.omega1 = p.num("w1");
      b.omega2 = p.num("w2");
      b.c1 = p.num("c1");
      b.c2 = p.num("c2");
      b.t0 = p.num("t0");
      b.x0 = p.num("x0");
      b.sigma = p.num("sigma");
      b.mass = p.num("m");
      b.grid = p.grid();
      return scenarios::run_superposition_of_boosts(b, plot);
    }
    if (s == "nonrel-interference") {
      phenomena::InterferenceScenario n;
      n.x0 = p.num("x0");
      n.t0 = p.num("t0");
      n.sigma_x = p.num("sigma_x");
      n.sigma_t = p.num("sigma_t");
      n.mass = p.num("m");
      n.omega1 = p.num("w1");
      n.omega2 = p.num("w2");
      n.t_probe = p.num("tp");
      n.x_probe = p.num("xp");
      const double sign = p.num("sign");
      if (sign != 1.0 && sign != -1.0) throw ConfigError("sign must be 1 or -1");
      n.sign = static_cast<int>(sign);
      n.frame_width = p.num("frame_width");
      const auto prob = phenomena::run_nonrel_interference(n);
      if (extra) (*extra)["probability"] = io::to_json(prob);
      return wrap_probability(prob, n.sign);
    }
    if (s == "coordinate-transform") {
      scenarios::CoordinateTransform c;
      c.velocities = {p.num("v1"), p.num("v2")};
      if (p.has("v3")) c.velocities.push_back(p.num("v3"));
      if (p.has("v4")) c.velocities.push_back(p.num("v4"));
      c.event_t = {p.num("e1t"), p.num("e2t")};
      c.event_x = {p.num("e1x"), p.num("e2x")};
      return scenarios::run_coordinate_transform(c);
    }
    scenarios::PropagatorTable t;
    t.mass = p.num("m");
    t.grid = p.grid();
    return scenarios::run_propagator_table(t);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

std::string csv(const Table& t) {
  std::string s;
  for (std::size_t k = 0; k < t.header.size(); ++k) s += (k ? "," : "") + t.header[k];
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      char buf[40];
      if (std::isfinite(row[k]))
        std::snprintf(buf, sizeof buf, "%.17g", row[k]);
      else
        std::snprintf(buf, sizeof buf, "nan");
      s += (k ? "," : "") + std::string(buf);
    }
    s += "\n";
  }
  return s;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw ConfigError("output directory " + dir.string() + " cannot be created");

    Json extra = Json::object();
    const ScenarioReport rep = run_scenario(cfg, &extra);
    Json j = io::to_json(rep);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    j["timestamp"] = utc_timestamp();
    write_file(dir / "report.json", io::emit(j));
    if (cfg.csv)
      for (const auto& t : rep.tables) write_file(dir / (t.name + ".csv"), csv(t));
    if (cfg.plot_svg)
      for (const auto& g : rep.grids) write_file(dir / (g.name + ".svg"), svg::render(g));

    for (const auto& b : rep.branches) {
      char line[256];
      std::snprintf(line, sizeof line, "%-4s %-28s %-22s %-12s predicted %.12g measured %.12g\n",
                    b.pass ? "PASS" : "FAIL", b.label.c_str(), b.quantity.c_str(), b.path.c_str(), b.predicted,
                    b.measured);
      out << line;
    }
    for (const auto& w : rep.warnings) err << "warning: " << w << "\n";
    return rep.passed() ? kPass : kToleranceFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const FitError& e) {
    err << "fit failure: " << e.what() << "\n";
    return kToleranceFailure;
  }
}

}  // namespace lqrf::runner
