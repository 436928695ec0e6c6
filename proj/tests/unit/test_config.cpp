#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "trisw/config.hpp"
#include "trisw/errors.hpp"

using namespace trisw;
using nlohmann::json;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("empty config gives the default set") {
  const RunConfig c = parse_config(json::object());
  CHECK(c.circuit.l_x == 3.6e-3);
  CHECK(c.circuit.l_1 == 1.2e-3);
  CHECK(c.circuit.c_1 == 30e-6);
  CHECK(c.circuit.c_3 == 1e-6);
  CHECK(c.circuit.r_load == 50.0);
  CHECK(c.reference.v_m == 100.0);
  CHECK(c.reference.freq == 50.0);
  CHECK(c.mpc.t_s == 25e-6);
  CHECK(c.mpc.n_p == 2);
  CHECK(c.mpc.lambda == std::array<double, 3>{0.1, 0.1, 0.1});
  CHECK(c.mpc.beta[2] == 0.5);
  CHECK(c.mpc.i_sat == std::array<double, 3>{17.7, 14.7, 14.7});
  CHECK(c.reference.i_m == 2.0);
  CHECK(c.design.i_in_max == 4.0);
  CHECK(c.model_variant == ModelVariant::kModeConsistent);
  CHECK(parse_config(json()) == c);
}

TEST_CASE("unknown keys are named") {
  CHECK_THROWS_WITH(parse_config(json{{"circuit", {{"l_3", 1}}}}), ContainsSubstring("circuit.l_3"));
  CHECK_THROWS_WITH(parse_config(json{{"extra", 1}}), ContainsSubstring("'extra'"));
  CHECK_THROWS_WITH(parse_config(json{{"sim", {{"events", {{{"time", 0.01}, {"vm", 1}}}}}}}),
                    ContainsSubstring("sim.events[0].vm"));
}

TEST_CASE("type and rule violations") {
  CHECK_THROWS_AS(parse_config(json{{"mpc", {{"n_p", "two"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"mpc", {{"lambda", {1, 2}}}}}), ConfigError);
  CHECK_THROWS_WITH(parse_config(json{{"reference", {{"v_dc", 50}}}}),
                    ContainsSubstring("reference.v_dc"));
  CHECK_THROWS_AS(parse_config(json{{"circuit", {{"c_4", -1}}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"model_variant", "exotic"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
}

TEST_CASE("amplitude above v_dc is a constraint error") {
  CHECK_THROWS_AS(parse_config(json{{"reference", {{"v_m", 150}}}}), ConstraintError);
  CHECK_THROWS_AS(
      parse_config(json{{"sim", {{"events", {{{"time", 0.01}, {"v_m", 101}, {"freq", 50}}}}}}}),
      ConstraintError);
}

TEST_CASE("scalar or triple weights") {
  const auto a = parse_config(json{{"mpc", {{"lambda", 0.5}}}});
  CHECK(a.mpc.lambda == std::array<double, 3>{0.5, 0.5, 0.5});
  const auto b = parse_config(json{{"mpc", {{"i_sat", {1, 2, 3}}}}});
  CHECK(b.mpc.i_sat == std::array<double, 3>{1, 2, 3});
}

TEST_CASE("derived defaults follow the overrides") {
  const auto c = parse_config(json{{"reference", {{"v_m", 50}}}, {"circuit", {{"r_load", 25}}}});
  CHECK(c.reference.i_m == 2.0);
  CHECK(c.design.i_in_max == 4.0);
  const auto d = parse_config(json{{"reference", {{"i_m", 3}}}});
  CHECK(d.design.i_in_max == 6.0);
}

TEST_CASE("serialize then parse is idempotent", "[property]") {
  const json doc = {
      {"model_variant", "as-printed"},
      {"circuit", {{"l_x", 2e-3}, {"v_dc", 120}}},
      {"reference", {{"v_m", 80}, {"freq", 60}, {"phi_load", 0.3}}},
      {"mpc",
       {{"n_p", 3}, {"lambda", {0.1, 0.2, 0.3}}, {"prediction_scheme", "full-enumeration"},
        {"tie_break", "lowest-index"}, {"saturation_on_predicted", true}}},
      {"sim",
       {{"duration", 0.1},
        {"initial_state", {1, 2, 3, 4, 5}},
        {"events", {{{"time", 0.03}, {"v_m", 40}, {"freq", 100}}}},
        {"ripple", {{"amplitude", 1.5}, {"freq", 300}}}}},
      {"design", {{"i_in_max", 7}, {"ripple", {{"output_cap_voltage", 0.2}}}}},
      {"output", {{"dir", "runs/a"}}},
  };
  const RunConfig a = parse_config(doc);
  const json s1 = serialize_config(a);
  const RunConfig b = parse_config(s1);
  CHECK(a == b);
  CHECK(serialize_config(b) == s1);
  CHECK(b.mpc.scheme == PredictionScheme::kFullEnumeration);
  CHECK(b.sim.events.size() == 1);
  CHECK(b.output_dir == "runs/a");
}

TEST_CASE("config file loading") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "trisw_cfg_good.json";
  std::ofstream(good) << R"({"reference": {"v_m": 60}})";
  CHECK(parse_config_file(good).reference.v_m == 60.0);
  const auto bad = dir / "trisw_cfg_bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(parse_config_file(bad), ConfigError);
  CHECK_THROWS_AS(parse_config_file(dir / "trisw_missing.json"), ConfigError);
}

TEST_CASE("design inputs come from the resolved config") {
  const auto c = parse_config(json{{"mpc", {{"t_s", 50e-6}}}});
  const auto in = design_inputs(c);
  CHECK(in.t_s == 50e-6);
  CHECK(in.i_in_max == 4.0);
}
