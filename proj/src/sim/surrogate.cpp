#include "fmutest/sim/surrogate.hpp"

#include <algorithm>
#include <cmath>

#include "fmutest/error.hpp"
#include "fmutest/format.hpp"

namespace fmutest::sim {

namespace {

constexpr double kTempLo = 0.0;
constexpr double kTempHi = 100.0;
constexpr double kMinFlow = 1e-6;

double value_or_throw(const ValueMap& m, const char* name) {
  auto it = m.find(name);
  if (it == m.end()) throw Error(Errc::CapabilityMismatch, std::string("missing input ") + name);
  return it->second;
}

SurrogateInputs decode(const ValueMap& m) {
  return {value_or_throw(m, "temperature_cooling_liquid_in"),
          value_or_throw(m, "mass_flow_cooling_liquid_in"),
          value_or_throw(m, "setpoint_temperature_oil"), value_or_throw(m, "engine_load")};
}

struct Control {
  double e;
  double u_raw;
  double u;
};

Control control(const SurrogateState& s, const SurrogateInputs& in, const SurrogateParams& p) {
  const double e = s.T_oil - in.T_set;
  const double u_raw = p.Kp * e + p.Ki * s.z;
  return {e, u_raw, std::clamp(u_raw, 0.0, 1.0)};
}

double cooling_power(const SurrogateState& s, const SurrogateInputs& in, const SurrogateParams& p,
                     double u) {
  return p.U * u * std::max(s.T_oil - in.T_cw_in, 0.0);
}

}  // namespace

void SurrogateParams::validate() const {
  for (double v : {C_oil, Q_max, U, c_p, Kp, Ki}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(Errc::InvalidConfig, "surrogate parameters must be positive and finite");
    }
  }
  if (!(v_min >= 0.0 && v_min < 1.0)) throw Error(Errc::InvalidConfig, "v_min must be in [0, 1)");
}

nlohmann::json to_json(const SurrogateParams& p) {
  return {{"C_oil", p.C_oil}, {"Q_max", p.Q_max}, {"U", p.U},      {"c_p", p.c_p},
          {"Kp", p.Kp},       {"Ki", p.Ki},       {"v_min", p.v_min}};
}

SurrogateParams surrogate_params_from_json(const nlohmann::json& j) {
  SurrogateParams p;
  p.C_oil = j.value("C_oil", p.C_oil);
  p.Q_max = j.value("Q_max", p.Q_max);
  p.U = j.value("U", p.U);
  p.c_p = j.value("c_p", p.c_p);
  p.Kp = j.value("Kp", p.Kp);
  p.Ki = j.value("Ki", p.Ki);
  p.v_min = j.value("v_min", p.v_min);
  return p;
}

SurrogateOutputs surrogate_outputs(const SurrogateState& s, const SurrogateInputs& in,
                                   const SurrogateParams& p) noexcept {
  const Control c = control(s, in, p);
  const double q_cool = cooling_power(s, in, p, c.u);
  SurrogateOutputs out;
  out.temperature_oil = std::clamp(s.T_oil, kTempLo, kTempHi);
  out.position_valve = std::clamp(1.0 - c.u, p.v_min, 1.0);
  out.temperature_cooling_liquid_out =
      std::clamp(in.T_cw_in + q_cool / (p.c_p * std::max(in.m_cw, kMinFlow)), kTempLo, kTempHi);
  out.mass_flow_cooling_liquid_out = in.m_cw;
  return out;
}

SurrogateStep surrogate_step(const SurrogateState& s, const SurrogateInputs& in,
                             const SurrogateParams& p, double h) noexcept {
  const Control c = control(s, in, p);
  const double q_cool = cooling_power(s, in, p, c.u);
  const double q_load = p.Q_max * in.load;

  SurrogateStep step;
  step.outputs = surrogate_outputs(s, in, p);
  // Anti-windup: hold the integrator while pushing further into saturation.
  const bool saturated = (c.u_raw >= 1.0 && c.e > 0.0) || (c.u_raw <= 0.0 && c.e < 0.0);
  step.next.z = saturated ? s.z : s.z + h * c.e;
  step.next.T_oil = std::clamp(s.T_oil + h * (q_load - q_cool) / p.C_oil, kTempLo, kTempHi);
  return step;
}

SurrogateBackend::SurrogateBackend(SurrogateParams params) : params_(params) {
  params_.validate();
}

Capabilities SurrogateBackend::capabilities() const {
  return {{"engine_load", "mass_flow_cooling_liquid_in", "setpoint_temperature_oil",
           "temperature_cooling_liquid_in"},
          {"mass_flow_cooling_liquid_out", "position_valve", "temperature_cooling_liquid_out",
           "temperature_oil"},
          true,
          true};
}

std::string SurrogateBackend::solver_note() const {
  return "explicit Euler, fixed step; C_oil=" + format_real(params_.C_oil) +
         " Q_max=" + format_real(params_.Q_max) + " U=" + format_real(params_.U) +
         " c_p=" + format_real(params_.c_p) + " Kp=" + format_real(params_.Kp) +
         " Ki=" + format_real(params_.Ki) + " v_min=" + format_real(params_.v_min);
}

void SurrogateBackend::reset(const ValueMap& initial_inputs) {
  inputs_ = decode(initial_inputs);
  state_ = {inputs_.T_set, 0.0};
}

void SurrogateBackend::set_inputs(const ValueMap& inputs) { inputs_ = decode(inputs); }

void SurrogateBackend::do_step(double /*t*/, double h) {
  state_ = surrogate_step(state_, inputs_, params_, h).next;
}

ValueMap SurrogateBackend::outputs() const {
  const SurrogateOutputs o = surrogate_outputs(state_, inputs_, params_);
  return {{"mass_flow_cooling_liquid_out", o.mass_flow_cooling_liquid_out},
          {"position_valve", o.position_valve},
          {"temperature_cooling_liquid_out", o.temperature_cooling_liquid_out},
          {"temperature_oil", o.temperature_oil}};
}

}  // namespace fmutest::sim
