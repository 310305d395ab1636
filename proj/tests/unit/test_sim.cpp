#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fmutest/error.hpp"
#include "fmutest/model/fmu_archive.hpp"
#include "fmutest/model/model_description.hpp"
#include "fmutest/sim/backend.hpp"
#include "fmutest/sim/fmi_adapter.hpp"
#include "fmutest/sim/runner.hpp"
#include "fmutest/sim/surrogate.hpp"
#include "loc_fixtures.hpp"
#include "test_support.hpp"

using namespace fmutest;
using namespace fmutest::sim;
using scenario::ParamValue;

namespace {

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::IoError;
}

signal::Scenario constant_scenario(double t_in, double flow, double t_set, double load) {
  auto s = fmutest_test::load_step_scenario();
  const auto cfg = fmutest_test::loc_sim_config();
  s.test_id = "X001-P001-T001";
  s.inputs["temperature_cooling_liquid_in"] =
      signal::synthesize("temperature_cooling_liquid_in", scenario::ConstantSignal{ParamValue::scalar(t_in)}, cfg);
  s.inputs["mass_flow_cooling_liquid_in"] =
      signal::synthesize("mass_flow_cooling_liquid_in", scenario::ConstantSignal{ParamValue::scalar(flow)}, cfg);
  s.inputs["setpoint_temperature_oil"] =
      signal::synthesize("setpoint_temperature_oil", scenario::ConstantSignal{ParamValue::scalar(t_set)}, cfg);
  s.inputs["engine_load"] =
      signal::synthesize("engine_load", scenario::ConstantSignal{ParamValue::scalar(load)}, cfg);
  return s;
}

/// Surrogate that faults when asked to step away from t = fault_at.
class FaultingBackend final : public SimulatorBackend {
 public:
  explicit FaultingBackend(double fault_at) : fault_at_(fault_at) {}
  std::string id() const override { return "faulting"; }
  Capabilities capabilities() const override { return inner_.capabilities(); }
  void reset(const ValueMap& in) override { inner_.reset(in); }
  void set_inputs(const ValueMap& in) override { inner_.set_inputs(in); }
  void do_step(double t, double h) override {
    if (t >= fault_at_) throw Error(Errc::SimError, "solver diverged");
    inner_.do_step(t, h);
  }
  ValueMap outputs() const override { return inner_.outputs(); }

 private:
  double fault_at_;
  SurrogateBackend inner_;
};

}  // namespace

TEST(Surrogate, EquilibriumIsAFixedPoint) {
  const SurrogateParams p;
  const SurrogateState s{70.0, 0.0};
  const SurrogateInputs in{50.0, 25.0, 70.0, 0.0};
  const auto step = surrogate_step(s, in, p, 1.0);
  EXPECT_EQ(step.next.T_oil, 70.0);
  EXPECT_EQ(step.next.z, 0.0);
}

TEST(Surrogate, EquilibriumHoldsOverTheWholeRun) {
  SurrogateBackend backend;
  const auto r = run_scenario(constant_scenario(50, 25, 70, 0), backend, fmutest_test::loc_sim_config());
  ASSERT_EQ(r.status, RunStatus::Completed);
  for (double v : r.outputs.at("temperature_oil").values) EXPECT_LE(std::fabs(v - 70.0), 1e-9);
}

TEST(Surrogate, LoadStepScenarioRecordsFourFullSeries) {
  SurrogateBackend backend;
  const auto r = run_scenario(fmutest_test::load_step_scenario(), backend, fmutest_test::loc_sim_config());
  EXPECT_EQ(r.status, RunStatus::Completed);
  EXPECT_EQ(r.test_id, "G001-P001-T001");
  ASSERT_EQ(r.outputs.size(), 4u);
  for (const auto& [name, ts] : r.outputs) {
    EXPECT_EQ(ts.size(), 1001u) << name;
    EXPECT_EQ(ts.times.back(), 1000.0);
  }
  EXPECT_EQ(r.settings_log.backend_id, "surrogate");
  EXPECT_EQ(r.settings_log.step_size, 1.0);
  EXPECT_FALSE(r.settings_log.solver_note.empty());
}

TEST(Surrogate, LoadStepSettlesAndRespondsMonotonically) {
  SurrogateBackend backend;
  const auto r = run_scenario(fmutest_test::load_step_scenario(), backend, fmutest_test::loc_sim_config());
  const auto& oil = r.outputs.at("temperature_oil").values;
  std::size_t last_out = 0;
  for (std::size_t k = 0; k < oil.size(); ++k) {
    if (std::fabs(oil[k] - 70.0) > 1.0) last_out = k;
  }
  EXPECT_LT(last_out + 1, 700u);
  const auto& t_out = r.outputs.at("temperature_cooling_liquid_out").values;
  const auto& valve = r.outputs.at("position_valve").values;
  for (std::size_t k = 150; k < 999; ++k) {
    EXPECT_GE(t_out[k + 1], t_out[k] - 0.05) << k;
    EXPECT_LE(valve[k + 1], valve[k] + 0.01) << k;
  }
}

TEST(Surrogate, BitIdenticalAcrossRuns) {
  SurrogateBackend a, b;
  const auto cfg = fmutest_test::loc_sim_config();
  EXPECT_EQ(run_scenario(fmutest_test::load_step_scenario(), a, cfg),
            run_scenario(fmutest_test::load_step_scenario(), b, cfg));
}

TEST(Surrogate, OutputsBoundedAndCoolantNeverCoolsForRandomInputs) {
  const auto cs = fmutest_test::expected_loc_constraints();
  const auto cfg = fmutest_test::loc_sim_config();
  std::mt19937_64 rng(5);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  for (int trial = 0; trial < 40; ++trial) {
    auto scn = constant_scenario(0, 0, 70, 0);
    for (auto& [name, ts] : scn.inputs) {
      const auto* c = cs.find_input(name);
      double v = uni(*c->min, *c->max);
      for (std::size_t k = 0; k < ts.size(); ++k) {
        if (name != "setpoint_temperature_oil" && k % 97 == 0) v = uni(*c->min, *c->max);
        ts.values[k] = v;
      }
    }
    SurrogateBackend backend;
    const auto r = run_scenario(scn, backend, cfg);
    ASSERT_EQ(r.status, RunStatus::Completed);
    for (const auto& [name, ts] : r.outputs) {
      const auto* c = cs.find_output(name);
      ASSERT_NE(c, nullptr);
      for (double v : ts.values) {
        EXPECT_GE(v, *c->min) << name;
        EXPECT_LE(v, *c->max) << name;
      }
    }
    const auto& t_in = scn.inputs.at("temperature_cooling_liquid_in").values;
    const auto& t_out = r.outputs.at("temperature_cooling_liquid_out").values;
    for (std::size_t k = 0; k < t_out.size(); ++k) EXPECT_GE(t_out[k], t_in[k]) << k;
  }
}

TEST(Surrogate, InvalidParams) {
  SurrogateParams p;
  p.C_oil = 0;
  EXPECT_EQ(error_of([&] { p.validate(); }), Errc::InvalidConfig);
  SurrogateParams q;
  EXPECT_EQ(surrogate_params_from_json(to_json(q)), q);
}

TEST(Runner, UnknownOutputIsCapabilityMismatch) {
  auto scn = fmutest_test::load_step_scenario();
  scenario::BoundedAssertion a;
  a.var = "wheel_speed";
  a.low = 0;
  a.high = 1;
  scn.assertions.push_back(a);
  SurrogateBackend backend;
  EXPECT_EQ(error_of([&] { (void)run_scenario(scn, backend, fmutest_test::loc_sim_config()); }),
            Errc::CapabilityMismatch);
}

TEST(Runner, MissingInputIsCapabilityMismatch) {
  auto scn = fmutest_test::load_step_scenario();
  scn.inputs.erase("engine_load");
  SurrogateBackend backend;
  EXPECT_EQ(error_of([&] { (void)run_scenario(scn, backend, fmutest_test::loc_sim_config()); }),
            Errc::CapabilityMismatch);
}

TEST(Runner, MidRunFaultTruncatesOutputs) {
  FaultingBackend backend(500.0);
  const auto r = run_scenario(fmutest_test::load_step_scenario(), backend, fmutest_test::loc_sim_config());
  EXPECT_EQ(r.status, RunStatus::SimError);
  EXPECT_NE(r.error.find("solver diverged"), std::string::npos);
  for (const auto& [name, ts] : r.outputs) {
    ASSERT_FALSE(ts.times.empty());
    EXPECT_EQ(ts.times.back(), 500.0) << name;
  }
  EXPECT_EQ(simulation_result_from_json(to_json(r)), r);
}

TEST(Backends, ResolveSpecs) {
  EXPECT_EQ(resolve_backend("surrogate")()->id(), "surrogate");
  clear_fmi_adapter();
  try {
    (void)resolve_backend("fmi:/models/loc.fmu");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AdapterNotBundled);
    EXPECT_NE(std::string(e.what()).find("adapter not bundled"), std::string::npos);
  }
  EXPECT_EQ(error_of([] { (void)resolve_backend("matlab"); }), Errc::ConfigError);

  std::string seen;
  register_fmi_adapter([&](std::string path) -> std::unique_ptr<SimulatorBackend> {
    seen = path;
    return std::make_unique<SurrogateBackend>();
  });
  EXPECT_NE(resolve_backend("fmi:/models/loc.fmu")(), nullptr);
  EXPECT_EQ(seen, "/models/loc.fmu");
  clear_fmi_adapter();
}

TEST(AdapterContract, BindsModelInputsAndOutputs) {
  const auto md = model::parse_model_description(
      model::load_model_description_bytes(fmutest_test::loc_dir() / "loc.fmu"));
  const auto c = describe_fmi_adapter(&md);
  EXPECT_TRUE(c.requires_deterministic);
  EXPECT_TRUE(c.set_inputs_before_step);
  EXPECT_FALSE(c.call_sequence.empty());
  ASSERT_EQ(c.bindings.size(), 8u);
  EXPECT_EQ(c.bindings[4].name, "temperature_cooling_liquid_out");
  EXPECT_EQ(c.bindings[4].value_reference, 4u);
  const auto text = render_contract(c);
  EXPECT_NE(text.find("temperature_cooling_liquid_out"), std::string::npos);
  EXPECT_EQ(to_json(c).at("bindings").size(), 8u);
}
