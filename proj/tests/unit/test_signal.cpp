#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fmutest/digest.hpp"
#include "fmutest/error.hpp"
#include "fmutest/io.hpp"
#include "fmutest/scenario/canonical.hpp"
#include "fmutest/scenario/json_codec.hpp"
#include "fmutest/scenario/validation.hpp"
#include "fmutest/signal/instantiate.hpp"
#include "fmutest/signal/lhs.hpp"
#include "fmutest/signal/pcg32.hpp"
#include "fmutest/signal/synthesize.hpp"
#include "loc_fixtures.hpp"
#include "test_support.hpp"

using namespace fmutest;
using namespace fmutest::signal;
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

std::vector<scenario::ScenarioPlan> bundled_plans() {
  static const auto cs = fmutest_test::expected_loc_constraints();
  scenario::ValidationContext ctx;
  ctx.constraints = &cs;
  ctx.window = scenario::SimWindow{0.0, 1000.0};
  const auto out = scenario::validate_and_repair(
      read_file(fmutest_test::loc_dir() / "responses" / "plans.txt"), Phase::Plans, ctx);
  auto plans = std::get<std::vector<scenario::ScenarioPlan>>(out.value);
  std::vector<std::string> none;
  scenario::assign_ids(plans, none);
  return plans;
}

}  // namespace

TEST(Pcg32, ReferenceStreamSeed42Stream54) {
  Pcg32 g(42, 54);
  const std::uint32_t expect[] = {0xa15c02b7u, 0x7b47f409u, 0xba1d3330u,
                                  0x83d2f293u, 0xbfa4784bu, 0xcbed606eu};
  for (auto e : expect) EXPECT_EQ(g(), e);
}

TEST(Pcg32, ReferenceStreamSeed42Stream0) {
  Pcg32 g(42, 0);
  const std::uint32_t expect[] = {565663470u, 3244226384u, 2504567229u, 903561869u};
  for (auto e : expect) EXPECT_EQ(g(), e);
}

TEST(Pcg32, BoundedAndUniformStayInRange) {
  Pcg32 g(7);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_LT(g.bounded(7), 7u);
    const double u = g.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Lhs, FourStrataOnUnitInterval) {
  for (std::uint64_t seed : {1ull, 42ull, 12345ull}) {
    const auto pts = lhs_sample({{0.0, 1.0}}, 4, seed);
    ASSERT_EQ(pts.size(), 4u);
    std::vector<double> xs;
    for (const auto& p : pts) xs.push_back(p.at(0));
    std::sort(xs.begin(), xs.end());
    EXPECT_GE(xs[0], 0.0);
    EXPECT_LT(xs[0], 0.25);
    EXPECT_GE(xs[1], 0.25);
    EXPECT_LT(xs[1], 0.5);
    EXPECT_GE(xs[2], 0.5);
    EXPECT_LT(xs[2], 0.75);
    EXPECT_GE(xs[3], 0.75);
    EXPECT_LE(xs[3], 1.0);
  }
}

TEST(Lhs, StratumEdgesAreEvenlySpaced) {
  const Range r{-2.0, 6.0};
  for (std::size_t n = 1; n <= 64; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      EXPECT_NEAR(stratum_edge(r, k, n), -2.0 + 8.0 * static_cast<double>(k) / static_cast<double>(n), 1e-12);
    }
  }
}

TEST(Lhs, StratificationHoldsForEveryNUpTo64) {
  const std::vector<Range> ranges{{0.0, 1.0}, {-5.0, 5.0}, {30.0, 90.0}};
  for (std::size_t n = 1; n <= 64; ++n) {
    const auto pts = lhs_sample(ranges, n, 42 + n);
    ASSERT_EQ(pts.size(), n);
    for (std::size_t d = 0; d < ranges.size(); ++d) {
      std::vector<int> hits(n, 0);
      for (const auto& p : pts) {
        ASSERT_EQ(p.size(), ranges.size());
        const double x = p[d];
        int found = 0;
        for (std::size_t k = 0; k < n; ++k) {
          const double a = stratum_edge(ranges[d], k, n);
          const double b = stratum_edge(ranges[d], k + 1, n);
          const bool inside = k + 1 == n ? (x >= a && x <= b) : (x >= a && x < b);
          if (inside) {
            ++hits[k];
            ++found;
          }
        }
        EXPECT_EQ(found, 1) << "n=" << n << " d=" << d << " x=" << x;
      }
      for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(hits[k], 1) << "n=" << n << " d=" << d << " k=" << k;
    }
  }
}

TEST(Lhs, DegenerateRangeAndDeterminism) {
  for (const auto& p : lhs_sample({{5.0, 5.0}}, 3, 9)) EXPECT_EQ(p.at(0), 5.0);
  EXPECT_EQ(lhs_sample({{0.0, 1.0}, {2.0, 3.0}}, 8, 42), lhs_sample({{0.0, 1.0}, {2.0, 3.0}}, 8, 42));
  EXPECT_NE(lhs_sample({{0.0, 1.0}}, 8, 42), lhs_sample({{0.0, 1.0}}, 8, 43));
}

TEST(SimConfig, GridAndSnapping) {
  const auto cfg = fmutest_test::loc_sim_config();
  EXPECT_EQ(cfg.intervals(), 1000u);
  EXPECT_EQ(cfg.grid().size(), 1001u);
  EXPECT_EQ(cfg.snap(149.5), 149.0);
  EXPECT_EQ(cfg.snap(149.6), 150.0);
  auto bad = cfg;
  bad.stop_time = -1;
  EXPECT_EQ(error_of([&] { bad.validate(); }), Errc::InvalidConfig);
  bad = cfg;
  bad.output_interval = 0.5;
  bad.step_size = 1.0;
  EXPECT_EQ(error_of([&] { bad.validate(); }), Errc::InvalidConfig);
}

TEST(Synthesize, StepIsRightContinuousAtEvent) {
  const auto ts = synthesize(
      "engine_load",
      scenario::StepSignal{ParamValue::scalar(0.5), ParamValue::scalar(0.9), ParamValue::scalar(150)},
      fmutest_test::loc_sim_config());
  ASSERT_EQ(ts.size(), 1001u);
  EXPECT_EQ(ts.values[149], 0.5);
  EXPECT_EQ(ts.values[150], 0.9);
  EXPECT_EQ(ts.values.front(), 0.5);
  EXPECT_EQ(ts.values.back(), 0.9);
}

TEST(Synthesize, ConstantIsFlat) {
  const auto ts = synthesize("setpoint_temperature_oil", scenario::ConstantSignal{ParamValue::scalar(70)},
                             fmutest_test::loc_sim_config());
  EXPECT_TRUE(std::all_of(ts.values.begin(), ts.values.end(), [](double v) { return v == 70.0; }));
}

TEST(Synthesize, ZeroDurationRampMatchesStep) {
  const auto cfg = fmutest_test::loc_sim_config();
  const auto ramp = synthesize("x",
                               scenario::RampSignal{ParamValue::scalar(0), ParamValue::scalar(10),
                                                    ParamValue::scalar(0), ParamValue::scalar(100)},
                               cfg);
  const auto step = synthesize(
      "x", scenario::StepSignal{ParamValue::scalar(0), ParamValue::scalar(10), ParamValue::scalar(100)}, cfg);
  EXPECT_EQ(ramp.values, step.values);
  EXPECT_EQ(ramp.values[99], 0.0);
  EXPECT_EQ(ramp.values[100], 10.0);
}

TEST(Synthesize, RampIsLinearBetweenSnappedEnds) {
  const auto ts = synthesize("x",
                             scenario::RampSignal{ParamValue::scalar(20), ParamValue::scalar(40),
                                                  ParamValue::scalar(100), ParamValue::scalar(200)},
                             fmutest_test::loc_sim_config());
  EXPECT_EQ(ts.values[199], 20.0);
  EXPECT_EQ(ts.values[200], 20.0);
  EXPECT_DOUBLE_EQ(ts.values[250], 30.0);
  EXPECT_EQ(ts.values[300], 40.0);
  EXPECT_EQ(ts.values[1000], 40.0);
}

TEST(Synthesize, EventsOutsideWindowAndUnresolvedRanges) {
  const auto cfg = fmutest_test::loc_sim_config();
  EXPECT_EQ(error_of([&] {
              (void)synthesize("x", scenario::StepSignal{ParamValue::scalar(0), ParamValue::scalar(1),
                                                         ParamValue::scalar(1200)},
                               cfg);
            }),
            Errc::OutOfWindow);
  EXPECT_EQ(error_of([&] {
              (void)synthesize("x", scenario::ConstantSignal{ParamValue::range(0, 1)}, cfg);
            }),
            Errc::InvalidConfig);
}

TEST(Instantiate, LoadStepPlanGivesOneScenarioWithPlanAssertions) {
  const auto plan = fmutest_test::load_step_plan();
  scenario::HashIndex index;
  const auto res = instantiate(plan, fmutest_test::loc_sim_config(), index);
  ASSERT_EQ(res.accepted.size(), 1u);
  const auto& s = res.accepted[0];
  EXPECT_EQ(s.test_id, "G001-P001-T001");
  EXPECT_EQ(s.assertions, plan.assertions);
  EXPECT_EQ(s.inputs.size(), 4u);
  EXPECT_EQ(s.provenance.plan_id, "G001-P001");
  EXPECT_EQ(s.provenance.seed, 42u);
  EXPECT_EQ(s.input_hash, input_hash(s.inputs));

  const auto again = instantiate(plan, fmutest_test::loc_sim_config(), index);
  EXPECT_TRUE(again.accepted.empty());
  ASSERT_EQ(again.duplicates.size(), 1u);
  EXPECT_EQ(again.duplicates[0].second, "G001-P001-T001");
}

TEST(Instantiate, AllScalarPlanWithTwoDrawsKeepsOne) {
  auto cfg = fmutest_test::loc_sim_config();
  cfg.instantiations_per_plan = 2;
  scenario::HashIndex index;
  const auto res = instantiate(fmutest_test::load_step_plan(), cfg, index);
  EXPECT_EQ(res.accepted.size(), 1u);
  EXPECT_EQ(res.duplicates.size(), 1u);
}

TEST(Instantiate, DeterministicAndSerializable) {
  auto cfg = fmutest_test::loc_sim_config();
  cfg.instantiations_per_plan = 3;
  for (const auto& plan : bundled_plans()) {
    scenario::HashIndex a, b;
    const auto x = instantiate(plan, cfg, a);
    const auto y = instantiate(plan, cfg, b);
    ASSERT_EQ(x.accepted.size(), y.accepted.size());
    for (std::size_t i = 0; i < x.accepted.size(); ++i) {
      EXPECT_EQ(scenario::canonical_dump(to_json(x.accepted[i])),
                scenario::canonical_dump(to_json(y.accepted[i])));
      EXPECT_EQ(scenario_from_json(to_json(x.accepted[i])), x.accepted[i]);
    }
  }
}

TEST(Instantiate, RangedPlansFillEveryDrawAndStayInBounds) {
  const auto cs = fmutest_test::expected_loc_constraints();
  auto cfg = fmutest_test::loc_sim_config();
  cfg.instantiations_per_plan = 4;
  std::size_t ranged = 0;
  for (const auto& plan : bundled_plans()) {
    scenario::HashIndex index;
    const auto res = instantiate(plan, cfg, index);
    if (!ranged_fields(plan).empty()) {
      ++ranged;
      EXPECT_EQ(res.accepted.size(), 4u) << plan.id;
    }
    EXPECT_LE(res.accepted.size(), 4u);
    for (const auto& s : res.accepted) {
      for (const auto& [name, ts] : s.inputs) {
        const auto* c = cs.find_input(name);
        ASSERT_NE(c, nullptr) << name;
        for (double v : ts.values) {
          EXPECT_GE(v, *c->min) << s.test_id << " " << name;
          EXPECT_LE(v, *c->max) << s.test_id << " " << name;
        }
      }
    }
  }
  EXPECT_GT(ranged, 0u);
}

TEST(Instantiate, SubSeedFollowsPlanDigest) {
  const auto plan = fmutest_test::load_step_plan();
  const auto hex = scenario::canonical_digest(plan).hex64;
  const std::uint64_t head = std::stoull(hex.substr(0, 16), nullptr, 16);
  EXPECT_EQ(plan_sub_seed(plan, 42), head ^ 42u);
}

TEST(Instantiate, RangedFieldsOrderedByInputThenField) {
  for (const auto& plan : bundled_plans()) {
    const auto f = ranged_fields(plan);
    for (std::size_t i = 1; i < f.size(); ++i) {
      EXPECT_LT(std::tie(f[i - 1].input, f[i - 1].field), std::tie(f[i].input, f[i].field));
    }
  }
}
