#include "trisw/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "trisw/errors.hpp"

namespace trisw {
namespace {

using nlohmann::json;

// Reads keys out of one JSON object and rejects anything it was not asked for.
class Section {
 public:
  Section(const json& doc, std::string name) : name_(std::move(name)) {
    if (doc.is_null()) {
      obj_ = json::object();
    } else if (!doc.is_object()) {
      throw ConfigError("config: section '" + name_ + "' must be an object");
    } else {
      obj_ = doc;
    }
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError("config: key '" + path(key) + "' has the wrong type");
    }
  }

  // A scalar applies to every inductor; an array gives {x, 1, 2}.
  void get_triple(const char* key, std::array<double, 3>& out) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    if (it->is_number()) {
      out.fill(it->get<double>());
    } else if (it->is_array() && it->size() == 3 &&
               std::all_of(it->begin(), it->end(), [](const json& v) { return v.is_number(); })) {
      for (std::size_t i = 0; i < 3; ++i) out[i] = (*it)[i].get<double>();
    } else {
      throw ConfigError("config: key '" + path(key) +
                        "' must be a number or an array of 3 numbers");
    }
  }

  void allow(const char* key) { seen_.insert(key); }

  bool has(const char* key) const { return obj_.contains(key); }
  const json& raw(const char* key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) throw ConfigError("config: unknown key '" + path(key) + "'");
    }
  }

  std::string path(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

 private:
  json obj_;
  std::string name_;
  std::set<std::string> seen_;
};

json section_or_null(const json& doc, const char* name) {
  const auto it = doc.find(name);
  return it == doc.end() ? json() : *it;
}

void parse_circuit(const json& doc, CircuitParams& c) {
  Section s(doc, "circuit");
  s.get("l_x", c.l_x);
  s.get("l_1", c.l_1);
  s.get("l_2", c.l_2);
  s.get("c_1", c.c_1);
  s.get("c_2", c.c_2);
  s.get("c_3", c.c_3);
  s.get("c_4", c.c_4);
  s.get("r_lx", c.r_lx);
  s.get("r_l1", c.r_l1);
  s.get("r_l2", c.r_l2);
  s.get("r_c3", c.r_c3);
  s.get("r_c4", c.r_c4);
  s.get("r_load", c.r_load);
  s.get("v_dc", c.v_dc);
  s.finish();
}

void parse_reference(const json& doc, const CircuitParams& circuit, ReferenceConfig& r) {
  Section s(doc, "reference");
  r.v_dc = circuit.v_dc;
  if (s.has("v_dc")) {
    double v = 0.0;
    s.get("v_dc", v);
    if (v != circuit.v_dc) {
      throw ConfigError("config: reference.v_dc must equal circuit.v_dc");
    }
  }
  s.get("v_m", r.v_m);
  s.get("freq", r.freq);
  s.get("phi_load", r.phi_load);
  r.i_m = r.v_m / circuit.r_load;
  s.get("i_m", r.i_m);
  s.finish();
}

void parse_mpc(const json& doc, MpcConfig& m) {
  Section s(doc, "mpc");
  s.get("n_p", m.n_p);
  s.get_triple("lambda", m.lambda);
  s.get_triple("beta", m.beta);
  s.get_triple("i_sat", m.i_sat);
  s.get("t_s", m.t_s);
  if (s.has("prediction_scheme")) {
    std::string v;
    s.get("prediction_scheme", v);
    m.scheme = parse_prediction_scheme(v);
  }
  if (s.has("tie_break")) {
    std::string v;
    s.get("tie_break", v);
    m.tie_break = parse_tie_break(v);
  }
  s.get("saturation_on_predicted", m.saturation_on_predicted);
  s.finish();
}

void parse_sim(const json& doc, SimConfig& sim) {
  Section s(doc, "sim");
  s.get("duration", sim.duration);
  s.get("warmup_cycles", sim.warmup_cycles);
  s.get("plant_substeps", sim.plant_substeps);
  if (s.has("initial_state")) {
    std::vector<double> v;
    s.get("initial_state", v);
    if (v.size() != static_cast<std::size_t>(kNumStates)) {
      throw ConfigError(
          "config: key 'sim.initial_state' must hold 5 numbers [v_bn, v_cn, i_lx, i_l1, i_l2]");
    }
    for (int i = 0; i < kNumStates; ++i) sim.initial_state(i) = v[static_cast<std::size_t>(i)];
  }
  if (s.has("events")) {
    const json& events = s.raw("events");
    if (!events.is_array()) throw ConfigError("config: key 'sim.events' must be an array");
    sim.events.clear();
    for (std::size_t i = 0; i < events.size(); ++i) {
      Section e(events[i], "sim.events[" + std::to_string(i) + "]");
      ReferenceEvent ev;
      e.get("time", ev.time);
      e.get("v_m", ev.v_m);
      e.get("freq", ev.freq);
      e.finish();
      sim.events.push_back(ev);
    }
  }
  if (s.has("ripple")) {
    Section r(s.raw("ripple"), "sim.ripple");
    r.get("amplitude", sim.ripple.amplitude);
    r.get("freq", sim.ripple.freq);
    r.finish();
  }
  s.finish();
}

void parse_design(const json& doc, double i_m, DesignSection& d) {
  Section s(doc, "design");
  d.i_in_max = 2.0 * i_m;
  s.get("i_in_max", d.i_in_max);
  if (s.has("ripple")) {
    Section r(s.raw("ripple"), "design.ripple");
    r.get("coupling_cap_voltage", d.ripple.coupling_cap_voltage);
    r.get("output_inductor_current", d.ripple.output_inductor_current);
    r.get("output_cap_voltage", d.ripple.output_cap_voltage);
    r.get("input_inductor_current", d.ripple.input_inductor_current);
    r.finish();
  }
  s.finish();
}

void check_amplitude(double v_m, double v_dc, const std::string& where) {
  ReferenceConfig probe;
  probe.v_m = v_m;
  probe.v_dc = v_dc;
  if (const auto check = validate_amplitude(probe); !check.ok()) {
    throw ConstraintError(where + ": " + check.message);
  }
}

json triple(const std::array<double, 3>& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

void validate(const RunConfig& cfg) {
  cfg.circuit.validate();
  cfg.reference.validate();
  cfg.mpc.validate();
  cfg.sim.validate();
  cfg.design.ripple.validate();
  if (!(cfg.design.i_in_max > 0.0)) throw ConfigError("config: design.i_in_max must be > 0");
  if (cfg.reference.v_dc != cfg.circuit.v_dc) {
    throw ConfigError("config: reference.v_dc must equal circuit.v_dc");
  }
  check_amplitude(cfg.reference.v_m, cfg.circuit.v_dc, "reference.v_m");
  for (const auto& e : cfg.sim.events) check_amplitude(e.v_m, cfg.circuit.v_dc, "sim.events.v_m");
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_null() && !doc.is_object()) throw ConfigError("config: top level must be an object");
  const json root = doc.is_null() ? json::object() : doc;

  RunConfig cfg;
  Section top(root, "");
  if (top.has("model_variant")) {
    std::string v;
    top.get("model_variant", v);
    cfg.model_variant = parse_model_variant(v);
  }
  for (const char* name : {"circuit", "reference", "mpc", "sim", "design", "output"}) top.allow(name);
  top.finish();

  parse_circuit(section_or_null(root, "circuit"), cfg.circuit);
  parse_reference(section_or_null(root, "reference"), cfg.circuit, cfg.reference);
  parse_mpc(section_or_null(root, "mpc"), cfg.mpc);
  parse_sim(section_or_null(root, "sim"), cfg.sim);
  parse_design(section_or_null(root, "design"), cfg.reference.i_m, cfg.design);
  {
    Section out(section_or_null(root, "output"), "output");
    out.get("dir", cfg.output_dir);
    out.finish();
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json serialize_config(const RunConfig& cfg) {
  const auto& c = cfg.circuit;
  const auto& r = cfg.reference;
  const auto& m = cfg.mpc;
  const auto& s = cfg.sim;
  json events = json::array();
  for (const auto& e : s.events) {
    events.push_back({{"time", e.time}, {"v_m", e.v_m}, {"freq", e.freq}});
  }
  json initial = json::array();
  for (int i = 0; i < kNumStates; ++i) initial.push_back(s.initial_state(i));

  return {
      {"model_variant", std::string(to_string(cfg.model_variant))},
      {"circuit",
       {{"l_x", c.l_x}, {"l_1", c.l_1}, {"l_2", c.l_2}, {"c_1", c.c_1}, {"c_2", c.c_2},
        {"c_3", c.c_3}, {"c_4", c.c_4}, {"r_lx", c.r_lx}, {"r_l1", c.r_l1}, {"r_l2", c.r_l2},
        {"r_c3", c.r_c3}, {"r_c4", c.r_c4}, {"r_load", c.r_load}, {"v_dc", c.v_dc}}},
      {"reference",
       {{"v_m", r.v_m}, {"freq", r.freq}, {"phi_load", r.phi_load}, {"i_m", r.i_m}}},
      {"mpc",
       {{"n_p", m.n_p},
        {"lambda", triple(m.lambda)},
        {"beta", triple(m.beta)},
        {"i_sat", triple(m.i_sat)},
        {"t_s", m.t_s},
        {"prediction_scheme", std::string(to_string(m.scheme))},
        {"tie_break", std::string(to_string(m.tie_break))},
        {"saturation_on_predicted", m.saturation_on_predicted}}},
      {"sim",
       {{"duration", s.duration},
        {"warmup_cycles", s.warmup_cycles},
        {"plant_substeps", s.plant_substeps},
        {"initial_state", initial},
        {"events", events},
        {"ripple", {{"amplitude", s.ripple.amplitude}, {"freq", s.ripple.freq}}}}},
      {"design",
       {{"i_in_max", cfg.design.i_in_max},
        {"ripple",
         {{"coupling_cap_voltage", cfg.design.ripple.coupling_cap_voltage},
          {"output_inductor_current", cfg.design.ripple.output_inductor_current},
          {"output_cap_voltage", cfg.design.ripple.output_cap_voltage},
          {"input_inductor_current", cfg.design.ripple.input_inductor_current}}}}},
      {"output", {{"dir", cfg.output_dir}}},
  };
}

DesignInputs design_inputs(const RunConfig& cfg) {
  DesignInputs in;
  in.v_dc = cfg.circuit.v_dc;
  in.v_m = cfg.reference.v_m;
  in.i_m = cfg.reference.i_m;
  in.i_in_max = cfg.design.i_in_max;
  in.t_s = cfg.mpc.t_s;
  in.phi_load = cfg.reference.phi_load;
  return in;
}

}  // namespace trisw
