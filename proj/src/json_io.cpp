#include "lorentzqrf/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lqrf::io {

namespace {

void emit_string(std::string& out, const std::string& s) {
  out += Json(s).dump();
}

void emit_value(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        emit_string(out, it.key());
        out += indent > 0 ? ": " : ":";
        emit_value(out, it.value(), indent, depth + 1);
      }
      out += nl;
      out += close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) {
          out += nl;
          out += pad;
        }
        first = false;
        emit_value(out, e, indent, depth + 1);
      }
      if (!flat) {
        out += nl;
        out += close_pad;
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

Json complex_list(std::span<const Complex> v) {
  Json a = Json::array();
  for (const auto& z : v) {
    a.push_back(z.real());
    a.push_back(z.imag());
  }
  return a;
}

}  // namespace

std::string emit(const Json& j, int indent) {
  std::string out;
  emit_value(out, j, std::max(indent, 0), 0);
  out += "\n";
  return out;
}

Json to_json(const ScenarioReport& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["passed"] = r.passed();
  Json branches = Json::array();
  for (const auto& b : r.branches) {
    Json e;
    e["label"] = b.label;
    e["rapidity"] = b.rapidity;
    e["quantity"] = b.quantity;
    e["predicted"] = b.predicted;
    e["measured"] = b.measured;
    e["tolerance"] = b.tolerance;
    e["tolerance_kind"] = b.relative ? "relative" : "absolute";
    e["pass"] = b.pass;
    e["path"] = b.path;
    branches.push_back(std::move(e));
  }
  j["branches"] = std::move(branches);
  j["warnings"] = r.warnings;
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  j["metrics"] = std::move(metrics);
  Json grids = Json::array();
  for (const auto& g : r.grids) {
    Json e;
    e["name"] = g.name;
    e["quantity"] = g.quantity;
    e["window"] = {g.t_min, g.t_max, g.x_min, g.x_max};
    e["nt"] = g.nt;
    e["nx"] = g.nx;
    Json layers = Json::array();
    for (const auto& l : g.layers) layers.push_back(Json{{"label", l.label}, {"values", l.values}});
    e["layers"] = std::move(layers);
    Json lines = Json::array();
    for (const auto& l : g.overlays) lines.push_back(Json{{"label", l.label}, {"x0", l.x0}, {"t0", l.t0}, {"x1", l.x1}, {"t1", l.t1}});
    e["overlays"] = std::move(lines);
    grids.push_back(std::move(e));
  }
  j["grids"] = std::move(grids);
  Json tables = Json::array();
  for (const auto& t : r.tables) tables.push_back(Json{{"name", t.name}, {"header", t.header}, {"rows", t.rows}});
  j["tables"] = std::move(tables);
  return j;
}

Json to_json(const measure::ProbabilityReport& r) {
  Json j;
  j["value"] = r.value;
  Json c = Json::object();
  for (const auto& [k, v] : r.components) c[k] = v;
  j["components"] = std::move(c);
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const rqstate::RapidityState& s) {
  Json j;
  j["grid"] = {{"theta_min", s.grid().theta_min()}, {"step", s.grid().step()}, {"count", s.grid().size()}};
  j["mass"] = s.mass().value();
  j["improper"] = s.improper();
  j["amplitudes"] = complex_list(s.amplitudes());
  j["warnings"] = s.warnings();
  return j;
}

Json to_json(const qrf::BranchedFrameState& s) {
  Json j;
  j["perspective"] = s.perspective;
  j["perspective_mass"] = s.perspective_mass.value();
  j["frame_label"] = s.frame_label;
  static const char* kinds[] = {"none", "sharp", "gaussian"};
  j["frame_profile"] = {{"kind", kinds[static_cast<int>(s.frame_profile.kind)]},
                        {"t0", s.frame_profile.t0},
                        {"sigma", s.frame_profile.sigma},
                        {"weight", s.frame_profile.weight}};
  j["system_labels"] = s.system_labels;
  Json branches = Json::array();
  Json states = Json::array();
  for (std::size_t i = 0; i < s.branches.size(); ++i) {
    const auto& b = s.branches[i];
    const Complex eff = s.effective_amplitude(i);
    Json refs = Json::array();
    for (const auto& p : s.payloads[i]) {
      refs.push_back(states.size());
      states.push_back(to_json(p));
    }
    branches.push_back(Json{{"rapidity", b.rapidity.value()},
                            {"amplitude", {b.amplitude.real(), b.amplitude.imag()}},
                            {"effective_amplitude", {eff.real(), eff.imag()}},
                            {"frame_mass", b.frame_mass.value()},
                            {"payloads", std::move(refs)}});
  }
  j["branches"] = std::move(branches);
  j["states"] = std::move(states);
  return j;
}

Json to_json(const coordqrf::JointCoordinateState& s) {
  Json j;
  j["lab_owner"] = s.lab_owner;
  j["observer"] = s.observer;
  Json lab = Json::array();
  for (std::size_t i = 0; i < s.lab.size(); ++i) {
    Json ev = Json::array();
    for (const auto& e : s.events[i]) ev.push_back({e.t, e.x});
    lab.push_back(Json{{"v", s.lab[i].v()},
                       {"amplitude", {s.lab[i].amplitude().real(), s.lab[i].amplitude().imag()}},
                       {"events", std::move(ev)}});
  }
  j["lab"] = std::move(lab);
  return j;
}

rqstate::RapidityState state_from_json(const Json& j) {
  const auto& g = j.at("grid");
  rqstate::RapidityGrid grid(g.at("theta_min").get<double>(), g.at("step").get<double>(),
                             g.at("count").get<std::size_t>());
  const auto& a = j.at("amplitudes");
  if (a.size() != 2 * grid.size()) throw std::invalid_argument("amplitude list must hold 2N reals");
  std::vector<Complex> amp(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) amp[k] = {a[2 * k].get<double>(), a[2 * k + 1].get<double>()};
  rqstate::RapidityState s(grid, relkin::Mass(j.at("mass").get<double>()), std::move(amp),
                           j.value("improper", false));
  for (const auto& w : j.value("warnings", Json::array())) s.add_warning(w.get<std::string>());
  return s;
}

coordqrf::JointCoordinateState coordinate_state_from_json(const Json& j) {
  coordqrf::JointCoordinateState s;
  s.lab_owner = j.at("lab_owner").get<std::string>();
  s.observer = j.at("observer").get<std::string>();
  for (const auto& b : j.at("lab")) {
    const auto& amp = b.at("amplitude");
    s.lab.emplace_back(b.at("v").get<double>(), Complex(amp[0].get<double>(), amp[1].get<double>()));
    std::vector<coordqrf::EventCoordinate> ev;
    for (const auto& e : b.at("events")) ev.push_back({e[0].get<double>(), e[1].get<double>()});
    s.events.push_back(std::move(ev));
  }
  s.validate();
  return s;
}

}  // namespace lqrf::io
