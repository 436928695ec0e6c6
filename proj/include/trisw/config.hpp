#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "trisw/design.hpp"
#include "trisw/mpc.hpp"
#include "trisw/plant_model.hpp"
#include "trisw/simulation.hpp"
#include "trisw/waveforms.hpp"

namespace trisw {

struct DesignSection {
  double i_in_max = 4.0;
  RippleTargets ripple;

  bool operator==(const DesignSection& o) const {
    return i_in_max == o.i_in_max &&
           ripple.coupling_cap_voltage == o.ripple.coupling_cap_voltage &&
           ripple.output_inductor_current == o.ripple.output_inductor_current &&
           ripple.output_cap_voltage == o.ripple.output_cap_voltage &&
           ripple.input_inductor_current == o.ripple.input_inductor_current;
  }
};

/// Everything one CLI invocation needs. Defaults reproduce the reference
/// prototype: 100 V / 50 Hz output, 25 us sampling, n_p = 2, lambda = 0.10,
/// beta = 0.5, ten fundamental cycles.
struct RunConfig {
  CircuitParams circuit;
  ReferenceConfig reference;
  MpcConfig mpc;
  SimConfig sim;
  DesignSection design;
  ModelVariant model_variant = ModelVariant::kModeConsistent;
  std::string output_dir = ".";

  bool operator==(const RunConfig&) const = default;
};

/**
 * Builds a validated RunConfig from a JSON document with optional sections
 * `circuit`, `reference`, `mpc`, `sim`, `design`, `output` and the top-level
 * key `model_variant`. Omitted keys take their defaults; `reference.i_m`
 * defaults to v_m / r_load and `design.i_in_max` to 2 * i_m.
 *
 * Throws ConfigError on unknown keys, wrong types or violated invariants
 * (the message names the key or rule) and ConstraintError when an output
 * amplitude exceeds v_dc.
 */
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Fully resolved document; parse_config(serialize_config(c)) == c.
nlohmann::json serialize_config(const RunConfig& cfg);

/// Cross-field checks shared by parsing and programmatic construction.
void validate(const RunConfig& cfg);

DesignInputs design_inputs(const RunConfig& cfg);

}  // namespace trisw
