#pragma once

#include <string>

#include <json.hpp>

#include "fmutest/sim/backend.hpp"

namespace fmutest::sim {

/// Tuned so the bundled load-step plan settles at t=265 with peak 71.74 degC.
struct SurrogateParams {
  double C_oil = 5.0e5;   // J/K
  double Q_max = 1.0e5;   // W
  double U = 1.0e4;       // W/K
  double c_p = 4186.0;    // J/(kg K)
  double Kp = 0.1;        // 1/K
  double Ki = 1.0e-3;     // 1/(K s)
  double v_min = 0.0;

  /// Throws Error{InvalidConfig}.
  void validate() const;

  friend bool operator==(const SurrogateParams&, const SurrogateParams&) = default;
};

nlohmann::json to_json(const SurrogateParams& p);
SurrogateParams surrogate_params_from_json(const nlohmann::json& j);

struct SurrogateState {
  double T_oil = 0.0;
  double z = 0.0;
};

struct SurrogateInputs {
  double T_cw_in = 0.0;
  double m_cw = 0.0;
  double T_set = 0.0;
  double load = 0.0;
};

struct SurrogateOutputs {
  double temperature_oil = 0.0;
  double position_valve = 0.0;
  double temperature_cooling_liquid_out = 0.0;
  double mass_flow_cooling_liquid_out = 0.0;
};

/// Outputs observed at (state, inputs).
SurrogateOutputs surrogate_outputs(const SurrogateState& s, const SurrogateInputs& in,
                                   const SurrogateParams& p) noexcept;

struct SurrogateStep {
  SurrogateState next;
  SurrogateOutputs outputs;  // at the state before the step
};

/// One explicit-Euler step of the PI-controlled oil cooler, h > 0.
SurrogateStep surrogate_step(const SurrogateState& s, const SurrogateInputs& in,
                             const SurrogateParams& p, double h) noexcept;

class SurrogateBackend final : public SimulatorBackend {
 public:
  explicit SurrogateBackend(SurrogateParams params = {});

  [[nodiscard]] std::string id() const override { return "surrogate"; }
  [[nodiscard]] Capabilities capabilities() const override;
  [[nodiscard]] std::string solver_note() const override;

  void reset(const ValueMap& initial_inputs) override;
  void set_inputs(const ValueMap& inputs) override;
  void do_step(double t, double h) override;
  [[nodiscard]] ValueMap outputs() const override;

  [[nodiscard]] const SurrogateState& state() const noexcept { return state_; }

 private:
  SurrogateParams params_;
  SurrogateState state_;
  SurrogateInputs inputs_;
};

}  // namespace fmutest::sim
