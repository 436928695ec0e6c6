#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trisw/config.hpp"
#include "trisw/design.hpp"
#include "trisw/errors.hpp"
#include "trisw/harmonics.hpp"
#include "trisw/mpc.hpp"
#include "trisw/reports.hpp"
#include "trisw/simulation.hpp"

namespace py = pybind11;
using namespace trisw;

namespace {

py::dict trace_columns(const Trace& trace) {
  const auto n = static_cast<Eigen::Index>(trace.records.size());
  Eigen::VectorXd t(n), v_bn_ref(n), v_cn_ref(n), v_ab(n), v_bc(n), v_ca(n), cost(n);
  Eigen::MatrixXd x(n, kNumStates);
  Eigen::VectorXi state(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& r = trace.records[static_cast<std::size_t>(k)];
    t(k) = r.t;
    state(k) = r.state.index();
    x.row(k) = r.x.transpose();
    v_bn_ref(k) = r.v_bn_ref;
    v_cn_ref(k) = r.v_cn_ref;
    v_ab(k) = r.v_ab;
    v_bc(k) = r.v_bc;
    v_ca(k) = r.v_ca;
    cost(k) = r.cost;
  }
  py::dict d;
  d["t"] = t;
  d["state"] = state;
  d["x"] = x;
  d["v_bn_ref"] = v_bn_ref;
  d["v_cn_ref"] = v_cn_ref;
  d["v_ab"] = v_ab;
  d["v_bc"] = v_bc;
  d["v_ca"] = v_ca;
  d["cost"] = cost;
  return d;
}

py::object from_json(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json to_json(const py::object& obj) {
  if (obj.is_none()) return nlohmann::json::object();
  const std::string s = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return nlohmann::json::parse(s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Three-switch inverter plant, FCS-MPC and design formulas";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ConstraintError>(m, "ConstraintError", config_error);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<SwitchState>(m, "SwitchState")
      .def(py::init([](bool qx, bool q1, bool q2) { return SwitchState{qx, q1, q2}; }),
           py::arg("q_x") = false, py::arg("q_1") = false, py::arg("q_2") = false)
      .def_readwrite("q_x", &SwitchState::q_x)
      .def_readwrite("q_1", &SwitchState::q_1)
      .def_readwrite("q_2", &SwitchState::q_2)
      .def("index", &SwitchState::index)
      .def_static("from_index", &SwitchState::from_index)
      .def("__eq__", &SwitchState::operator==)
      .def("__repr__", [](const SwitchState& s) { return "SwitchState" + to_string(s); });

  m.def(
      "load_config",
      [](const py::object& doc) { return from_json(serialize_config(parse_config(to_json(doc)))); },
      py::arg("doc") = py::none(),
      "Validate a config mapping and return it with every default filled in.");

  m.def(
      "model_bank",
      [](const py::object& doc) {
        const RunConfig cfg = parse_config(to_json(doc));
        const ModelBank bank = build_model_bank(cfg.circuit, cfg.mpc.t_s, cfg.model_variant);
        py::list out;
        for (int i = 0; i < kNumSwitchStates; ++i) {
          out.append(py::make_tuple(Eigen::MatrixXd(bank[i].phi), Eigen::MatrixXd(bank[i].gamma)));
        }
        return out;
      },
      py::arg("config") = py::none(), "(phi, gamma) for switch-state indices 0..7.");

  m.def(
      "continuous_model",
      [](int index, const py::object& doc) {
        const RunConfig cfg = parse_config(to_json(doc));
        const auto cm = assemble_continuous(cfg.circuit, SwitchState::from_index(index), cfg.model_variant);
        return py::make_tuple(Eigen::MatrixXd(cm.g), Eigen::MatrixXd(cm.h));
      },
      py::arg("index"), py::arg("config") = py::none());

  m.def(
      "select_switch_state",
      [](const StateVector& x, const InputVector& u, const std::vector<std::pair<double, double>>& refs,
         const py::object& doc, int prev) {
        const RunConfig cfg = parse_config(to_json(doc));
        MpcConfig mpc = cfg.mpc;
        mpc.n_p = static_cast<int>(refs.size());
        mpc.validate();
        std::vector<VoltageRef> r;
        for (const auto& [b, c] : refs) r.push_back({b, c});
        const ModelBank bank = build_model_bank(cfg.circuit, mpc.t_s, cfg.model_variant);
        const auto d = select_switch_state(x, u, r, bank, mpc, SwitchState::from_index(prev));
        return py::make_tuple(d.chosen.index(), d.candidate_costs);
      },
      py::arg("x"), py::arg("u"), py::arg("refs"), py::arg("config") = py::none(), py::arg("prev") = 0,
      "Chosen switch-state index and the eight candidate costs; n_p = len(refs).");

  m.def(
      "simulate",
      [](const py::object& doc) {
        const RunConfig cfg = parse_config(to_json(doc));
        Trace trace;
        {
          py::gil_scoped_release release;
          trace = run_closed_loop(cfg.circuit, cfg.mpc, cfg.reference, cfg.sim, cfg.model_variant);
        }
        py::dict out = trace_columns(trace);
        out["metrics"] = from_json(metrics_json(compute_metrics(trace, cfg.sim)));
        return out;
      },
      py::arg("config") = py::none(), "Closed-loop run; trace columns plus a metrics mapping.");

  m.def(
      "sweep",
      [](const std::vector<int>& horizons, const std::vector<double>& lambdas, const py::object& doc) {
        const RunConfig cfg = parse_config(to_json(doc));
        std::vector<SweepCell> cells;
        {
          py::gil_scoped_release release;
          cells = sweep(horizons, lambdas, cfg.circuit, cfg.mpc, cfg.reference, cfg.sim, cfg.model_variant);
        }
        py::list out;
        for (const auto& c : cells) {
          py::dict row;
          row["n_p"] = c.n_p;
          row["lambda"] = c.lambda;
          row["ok"] = c.ok;
          row["error"] = c.error;
          row["metrics"] = c.ok ? from_json(metrics_json(c.metrics)) : py::none();
          out.append(row);
        }
        return out;
      },
      py::arg("horizons"), py::arg("lambdas"), py::arg("config") = py::none());

  m.def(
      "design",
      [](const py::object& doc) {
        const RunConfig cfg = parse_config(to_json(doc));
        return from_json(design_json(size_components(design_inputs(cfg), cfg.design.ripple)));
      },
      py::arg("config") = py::none());

  m.def(
      "compare",
      [](double v_m) {
        py::list out;
        for (const auto& r : comparison_report(v_m)) {
          out.append(py::make_tuple(r.name, r.switches, r.tvrs, r.utilization_gain));
        }
        return out;
      },
      py::arg("v_m"), "(name, switches, tvrs, utilization_gain) per topology.");

  m.def(
      "thd",
      [](const std::vector<double>& samples, double f0, double fs, int max_harmonic) {
        return thd(samples, f0, fs, max_harmonic);
      },
      py::arg("samples"), py::arg("f0"), py::arg("fs"), py::arg("max_harmonic") = kDefaultMaxHarmonic);
}
