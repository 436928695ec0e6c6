#include "trisw/reports.hpp"

#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>

namespace trisw {
namespace {

using nlohmann::json;

class CsvRow {
 public:
  explicit CsvRow(std::ostream& os) : os_(os) {}

  CsvRow& operator<<(double v) {
    sep();
    if (std::isnan(v)) {
      os_ << "nan";
    } else {
      os_ << v;
    }
    return *this;
  }
  CsvRow& operator<<(int v) {
    sep();
    os_ << v;
    return *this;
  }
  CsvRow& operator<<(const std::string& v) {
    sep();
    os_ << v;
    return *this;
  }
  void end() { os_ << '\n'; }

 private:
  void sep() {
    if (!first_) os_ << ',';
    first_ = false;
  }
  std::ostream& os_;
  bool first_ = true;
};

// Formats into a classic-locale buffer so the caller's stream locale never leaks in.
template <typename F>
void write_classic(std::ostream& os, F&& body) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf << std::setprecision(9);
  body(buf);
  os << buf.str();
}

}  // namespace

void write_trace_csv(std::ostream& os, const Trace& trace) {
  write_classic(os, [&](std::ostream& out) {
    out << kTraceCsvHeader << '\n';
    for (const auto& r : trace.records) {
      CsvRow row(out);
      row << r.t << int(r.state.q_x) << int(r.state.q_1) << int(r.state.q_2);
      for (int i = 0; i < kNumStates; ++i) row << r.x(i);
      row << r.v_bn_ref << r.v_cn_ref << r.v_ab << r.v_bc << r.v_ca << r.cost;
      row.end();
    }
  });
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  write_classic(os, [&](std::ostream& out) {
    out << kSweepCsvHeader << '\n';
    const double nan = std::nan("");
    for (const auto& c : cells) {
      CsvRow row(out);
      row << c.n_p << c.lambda;
      const auto& m = c.metrics;
      if (c.ok) {
        row << m.thd_v_ab << m.thd_v_bc << m.thd_v_ca << m.rms_error_v_bn << m.rms_error_v_cn
            << m.fsw_per_switch[0] << m.fsw_per_switch[1] << m.fsw_per_switch[2];
      } else {
        for (int i = 0; i < 8; ++i) row << nan;
      }
      row.end();
    }
  });
}

void write_compare_csv(std::ostream& os, const std::vector<TopologyRow>& rows) {
  write_classic(os, [&](std::ostream& out) {
    out << kCompareCsvHeader << '\n';
    for (const auto& r : rows) {
      CsvRow row(out);
      row << r.name << r.switches << r.tvrs << r.utilization_gain;
      row.end();
    }
  });
}

json metrics_json(const MetricsReport& m) {
  json j = {
      {"thd_v_ab", m.thd_v_ab},
      {"thd_v_bc", m.thd_v_bc},
      {"thd_v_ca", m.thd_v_ca},
      {"rms_error_v_bn", m.rms_error_v_bn},
      {"rms_error_v_cn", m.rms_error_v_cn},
      {"peak_ripple", m.peak_ripple},
      {"fsw_per_switch", {m.fsw_per_switch[0], m.fsw_per_switch[1], m.fsw_per_switch[2]}},
  };
  j["settle_time"] = m.settle_time ? json(*m.settle_time) : json(nullptr);
  return j;
}

json model_bank_json(const ModelBank& bank) {
  json out = json::array();
  for (int i = 0; i < kNumSwitchStates; ++i) {
    const auto& m = bank[i];
    json phi = json::array();
    json gamma = json::array();
    for (int r = 0; r < kNumStates; ++r) {
      for (int c = 0; c < kNumStates; ++c) phi.push_back(m.phi(r, c));
      for (int c = 0; c < kNumInputs; ++c) gamma.push_back(m.gamma(r, c));
    }
    const auto s = m.switch_state;
    out.push_back({{"index", i},
                   {"state", {int(s.q_x), int(s.q_1), int(s.q_2)}},
                   {"t_s", m.t_s},
                   {"phi", phi},
                   {"gamma", gamma}});
  }
  return out;
}

json design_json(const DesignReport& r) {
  return {
      {"d_max_b", r.d_max_b},
      {"d_max_c", r.d_max_c},
      {"f_sw_max", r.f_sw_max},
      {"f_sw_min", r.f_sw_min},
      {"c_coup_1", r.c_coup_1},
      {"c_coup_2", r.c_coup_2},
      {"c_out_3", r.c_out_3},
      {"c_out_4", r.c_out_4},
      {"l_1", r.l_1},
      {"l_2", r.l_2},
      {"l_x", r.l_x},
      {"ripple",
       {{"coupling_cap_voltage", r.ripple.coupling_cap_voltage},
        {"output_inductor_current", r.ripple.output_inductor_current},
        {"output_cap_voltage", r.ripple.output_cap_voltage},
        {"input_inductor_current", r.ripple.input_inductor_current}}},
  };
}

void write_design_table(std::ostream& os, const DesignReport& r) {
  write_classic(os, [&](std::ostream& out) {
    out << std::setprecision(6);
    const auto line = [&](const char* name, double v, const char* unit) {
      out << std::left << std::setw(12) << name << std::right << std::setw(12) << v << ' ' << unit
          << '\n';
    };
    line("d_max_b", r.d_max_b, "");
    line("d_max_c", r.d_max_c, "");
    line("f_sw_max", r.f_sw_max, "Hz");
    line("f_sw_min", r.f_sw_min, "Hz");
    line("c_coup_1", r.c_coup_1 * 1e6, "uF");
    line("c_coup_2", r.c_coup_2 * 1e6, "uF");
    line("c_out_3", r.c_out_3 * 1e6, "uF");
    line("c_out_4", r.c_out_4 * 1e6, "uF");
    line("l_1", r.l_1 * 1e3, "mH");
    line("l_2", r.l_2 * 1e3, "mH");
    line("l_x", r.l_x * 1e3, "mH");
  });
}

}  // namespace trisw
