#pragma once

#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "trisw/design.hpp"
#include "trisw/plant_model.hpp"
#include "trisw/simulation.hpp"

namespace trisw {

// CSV output is locale independent: '.' decimal separator, '\n' line ends,
// 9 significant digits.
inline constexpr const char* kTraceCsvHeader =
    "t,qx,q1,q2,v_bn,v_cn,i_lx,i_l1,i_l2,v_bn_ref,v_cn_ref,v_ab,v_bc,v_ca,cost";
inline constexpr const char* kSweepCsvHeader =
    "np,lambda,thd_ab,thd_bc,thd_ca,rms_err_bn,rms_err_cn,fsw_x,fsw_1,fsw_2";
inline constexpr const char* kCompareCsvHeader = "topology,switches,tvrs,utilization_gain";

void write_trace_csv(std::ostream& os, const Trace& trace);
/// Failed cells are written with nan metrics.
void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);
void write_compare_csv(std::ostream& os, const std::vector<TopologyRow>& rows);

nlohmann::json metrics_json(const MetricsReport& m);
/// Eight objects {index, state, phi (25, row-major), gamma (15, row-major)}.
nlohmann::json model_bank_json(const ModelBank& bank);
nlohmann::json design_json(const DesignReport& r);

/// Human-readable component table.
void write_design_table(std::ostream& os, const DesignReport& r);

}  // namespace trisw
