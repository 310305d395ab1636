#include "fmutest/signal/synthesize.hpp"

#include <algorithm>
#include <cmath>

#include "fmutest/error.hpp"
#include "fmutest/format.hpp"

namespace fmutest::signal {

using scenario::ConstantSignal;
using scenario::ParamValue;
using scenario::RampSignal;
using scenario::StepSignal;

namespace {

double scalar(const ParamValue& p, const char* field) {
  if (p.ranged()) {
    throw Error(Errc::InvalidConfig, std::string("unresolved range in '") + field + "'");
  }
  return p.lo;
}

void require_in_window(double t, const SimulationConfig& cfg, const std::string& what) {
  if (!cfg.in_window(t)) {
    throw Error(Errc::OutOfWindow, what + " = " + format_real(t) + " outside [" +
                                       format_real(cfg.start_time) + ", " +
                                       format_real(cfg.stop_time) + "]");
  }
}

}  // namespace

TimeSeries synthesize(const std::string& var, const scenario::SignalSpace& spec,
                      const SimulationConfig& cfg) {
  TimeSeries ts;
  ts.var = var;
  ts.times = cfg.grid();
  const std::size_t n = ts.times.size();
  ts.values.resize(n);

  if (const auto* c = std::get_if<ConstantSignal>(&spec)) {
    std::fill(ts.values.begin(), ts.values.end(), scalar(c->value, "value"));
  } else if (const auto* s = std::get_if<StepSignal>(&spec)) {
    const double from = scalar(s->from, "from");
    const double to = scalar(s->to, "to");
    const double at = scalar(s->at, "at");
    require_in_window(at, cfg, var + ".at");
    const std::size_t k_at = cfg.snap_index(at);
    for (std::size_t k = 0; k < n; ++k) ts.values[k] = k < k_at ? from : to;
  } else {
    const auto& r = std::get<RampSignal>(spec);
    const double start = scalar(r.start, "start");
    const double end = scalar(r.end, "end");
    const double duration = scalar(r.duration, "duration");
    const double at = r.at ? scalar(*r.at, "at") : cfg.start_time;
    require_in_window(at, cfg, var + ".at");
    require_in_window(at + duration, cfg, var + ".at+duration");
    const std::size_t ka = cfg.snap_index(at);
    const std::size_t kb = cfg.snap_index(at + duration);
    const double lo = std::min(start, end);
    const double hi = std::max(start, end);
    for (std::size_t k = 0; k < n; ++k) {
      if (k < ka) {
        ts.values[k] = start;
      } else if (k >= kb) {
        ts.values[k] = end;
      } else {
        const double f = static_cast<double>(k - ka) / static_cast<double>(kb - ka);
        ts.values[k] = std::clamp(std::lerp(start, end, f), lo, hi);
      }
    }
  }
  return ts;
}

nlohmann::json to_json(const TimeSeries& ts) {
  return {{"times", ts.times}, {"values", ts.values}};
}

TimeSeries time_series_from_json(const std::string& var, const nlohmann::json& j) {
  TimeSeries ts;
  ts.var = var;
  ts.times = j.at("times").get<std::vector<double>>();
  ts.values = j.at("values").get<std::vector<double>>();
  if (ts.times.size() != ts.values.size()) {
    throw Error(Errc::LengthMismatch, "series '" + var + "' has mismatched times/values");
  }
  return ts;
}

}  // namespace fmutest::signal
