// Acceptance runner: one PASS/FAIL line per primary criterion.
// Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fmutest/error.hpp"
#include "fmutest/format.hpp"
#include "fmutest/io.hpp"
#include "fmutest/llm/providers.hpp"
#include "fmutest/mutation/campaign.hpp"
#include "fmutest/oracle/aggregate.hpp"
#include "fmutest/pipeline/pipeline.hpp"
#include "fmutest/scenario/canonical.hpp"
#include "fmutest/scenario/json_codec.hpp"
#include "fmutest/scenario/stats.hpp"
#include "fmutest/scenario/store.hpp"
#include "fmutest/signal/instantiate.hpp"
#include "fmutest/sim/runner.hpp"
#include "fmutest/sim/surrogate.hpp"
#include "loc_fixtures.hpp"
#include "oracle_reference.hpp"
#include "test_support.hpp"

using namespace fmutest;
using namespace fmutest::pipeline;
using nlohmann::json;
namespace ref = fmutest_test::ref;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Check {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  void note(const std::string& text) {
    if (out_.ok) out_.detail = text;
  }
  [[nodiscard]] Outcome result() const { return out_; }

 private:
  Outcome out_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) { return format_real(v); }

std::vector<std::string> log_lines(const RunStore& store, const std::string& run, const std::string& needle) {
  std::vector<std::string> out;
  std::istringstream in(read_file(store.dir(run) / "pipeline.log"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.find(needle) != std::string::npos) out.push_back(line);
  }
  return out;
}

RunConfig auto_config() {
  auto cfg = fmutest_test::loc_config();
  cfg.auto_accept = true;
  cfg.sim.seed = 42;
  return cfg;
}

/// Shared fixture: one full auto-accepted replay run.
struct FixtureRun {
  fmutest_test::TempDir dir;
  RunStore store{dir.path()};
  Pipeline pipeline{store};
  std::string id = "fixture";
  FixtureRun() {
    pipeline.create_run(auto_config(), id);
    pipeline.run_to(id, Stage::Reported);
  }
};

FixtureRun& fixture() {
  static FixtureRun run;
  return run;
}

Outcome extraction() {
  Check c;
  fmutest_test::TempDir dir;
  RunStore store(dir.path());
  Pipeline p(store);
  p.create_run(fmutest_test::loc_config(), "extract");
  const auto t0 = std::chrono::steady_clock::now();
  p.advance("extract", Stage::ConstraintsReady);
  const double dt = seconds_since(t0);
  const json written = store.read_json("extract", "constraints.json");
  const auto cs = scenario::constraint_set_from_json(written);
  c.require(cs == fmutest_test::expected_loc_constraints(), "constraint set differs from the reference");
  c.require(cs.inputs.size() + cs.outputs.size() == 8, "expected 8 variables");
  c.require(scenario::canonical_dump(written) ==
                scenario::canonical_dump(json::parse(fmutest_test::kLocConstraintsText)),
            "canonical bytes differ from the reference text");
  c.require(dt < 1.0, "runtime " + fmt(dt) + " s exceeds 1 s");
  c.note("8 variables byte-equal after canonicalization, " + fmt(dt) + " s");
  return c.result();
}

Outcome determinism() {
  Check c;
  fmutest_test::TempDir dir;
  RunStore store(dir.path());
  Pipeline p(store);
  for (const char* id : {"a", "b"}) {
    p.create_run(auto_config(), std::string(id));
    p.run_to(id, Stage::Reported);
  }
  std::vector<std::string> files{"goals.json", "plans.json"};
  for (const char* sub : {"scenarios", "results"}) {
    const auto a = store.list_json("a", sub);
    c.require(a == store.list_json("b", sub), std::string("file sets differ under ") + sub);
    c.require(!a.empty(), std::string("no files under ") + sub);
    for (const auto& n : a) files.push_back(std::string(sub) + "/" + n + ".json");
  }
  for (const auto& f : files) {
    c.require(read_file(store.dir("a") / f) == read_file(store.dir("b") / f), f + " differs");
  }
  c.note(std::to_string(files.size()) + " files byte-identical across two replay runs");
  return c.result();
}

Outcome deduplication() {
  Check c;
  fmutest_test::TempDir dir;
  RunStore store(dir.path() / "runs");
  Pipeline p(store);
  auto cfg = fmutest_test::loc_config();
  cfg.store_path = dir.path() / "shared-index.jsonl";
  p.create_run(cfg, "first");
  p.run_to("first", Stage::GoalsGenerated);
  std::set<std::string> existing;
  for (const auto& g : p.goals("first")) existing.insert(g.id);
  c.require(existing.size() == 7, "first run should admit 7 goals");

  auto check_rerun = [&](const std::string& run, std::size_t expected_log_lines) {
    const auto dups = log_lines(store, run, "duplicate goal dropped; identical to ");
    c.require(dups.size() == expected_log_lines, run + ": " + std::to_string(dups.size()) + " duplicate lines");
    std::set<std::string> named;
    for (const auto& line : dups) {
      const auto pos = line.rfind("identical to ");
      named.insert(line.substr(pos + 13, 4));
    }
    c.require(named == existing, run + ": duplicates do not name every existing goal id");
  };

  p.create_run(cfg, "second");
  p.run_to("second", Stage::GoalsGenerated);
  c.require(p.goals("second").empty(), "second run admitted new goals");
  check_rerun("second", 7);

  p.advance("first", Stage::GoalsGenerated);
  c.require(p.goals("first").size() == 7, "re-run changed the goal set");
  check_rerun("first", 7);
  c.note("0 new goals; 7 duplicates logged with existing ids (cross-run and re-run)");
  return c.result();
}

Outcome oracle_equivalence() {
  Check c;
  std::string summary;
  for (int k = 0; k < 6; ++k) {
    const auto kind = static_cast<ref::Kind>(k);
    const auto rep = ref::run_equivalence(kind, 1000, 20261014 + static_cast<std::uint64_t>(k));
    c.require(rep.cases == 1000, "case count");
    c.require(rep.disagreements == 0,
              std::string(ref::kind_name(kind)) + ": " + std::to_string(rep.disagreements) + " disagreements");
    if (!summary.empty()) summary += ", ";
    summary += std::string(ref::kind_name(kind)) + " 0/1000";
  }
  c.note(summary);
  return c.result();
}

Outcome end_to_end() {
  Check c;
  auto& fx = fixture();
  const auto scn = signal::scenario_from_json(fx.store.read_json(fx.id, "scenarios/G001-P001-T001.json"));
  const auto plan = fmutest_test::load_step_plan();
  c.require(scn.assertions == plan.assertions, "scenario assertions differ from the load-step plan");
  const auto cfg = fmutest_test::loc_sim_config();
  const auto t0 = std::chrono::steady_clock::now();
  sim::SurrogateBackend backend;
  const auto result = sim::run_scenario(scn, backend, cfg);
  const auto verdict = oracle::aggregate(scn, result);
  const double dt = seconds_since(t0);
  c.require(result.status == sim::RunStatus::Completed, "simulation did not complete");
  c.require(verdict.assertion_verdicts.size() == 4, "expected 4 assertion verdicts");
  std::string details;
  for (const auto& v : verdict.assertion_verdicts) {
    c.require(v.passed, scenario::var_of(v.assertion) + ": " + v.detail);
    if (!details.empty()) details += "; ";
    details += std::string(scenario::to_string(scenario::kind_of(v.assertion))) + " " + v.detail;
  }
  c.require(verdict.passed, "scenario verdict FAIL");
  c.require(dt < 5.0, "runtime " + fmt(dt) + " s exceeds 5 s");
  const auto stored = fx.store.read_json(fx.id, "report.json");
  c.require(stored["scenarios"].is_array() || stored["scenarios"].is_object(), "report lacks scenarios");
  c.note("PASS with 4/4 assertions (" + details + "), " + fmt(dt) + " s");
  return c.result();
}

/// Reference verdict of one assertion on a (possibly mutated) result.
bool reference_passes(const scenario::AssertionSpec& a, const signal::Scenario& scn,
                      const sim::SimulationResult& r) {
  const auto& y = r.outputs.at(scenario::var_of(a));
  ref::Outcome o;
  if (const auto* b = std::get_if<scenario::BoundedAssertion>(&a)) {
    o = ref::bounded(y, *b);
  } else if (const auto* x = std::get_if<scenario::CrossingAssertion>(&a)) {
    o = ref::crossing(y, *x);
  } else if (const auto* m = std::get_if<scenario::MonotonicAssertion>(&a)) {
    o = ref::monotonic(y, *m);
  } else {
    const auto& s = std::get<scenario::SettlesToAssertion>(a);
    double target = s.target.value_or(0.0);
    if (s.target_var) target = scn.inputs.at(*s.target_var).values.front();
    o = ref::settles(y, s, target);
  }
  return !o.empty_window && o.passed;
}

Outcome mutation_soundness() {
  Check c;
  c.require(mutation::score_report(47, 70, 2) == 0.67, "47/70 does not report 0.67");
  c.require(mutation::score_report(48, 70, 3) == 0.685, "48/70 does not report 0.685");

  auto& fx = fixture();
  std::map<std::string, signal::Scenario> scenarios;
  std::map<std::string, sim::SimulationResult> results;
  for (const auto& n : fx.store.list_json(fx.id, "scenarios")) {
    scenarios[n] = signal::scenario_from_json(fx.store.read_json(fx.id, "scenarios/" + n + ".json"));
    results[n] = sim::simulation_result_from_json(fx.store.read_json(fx.id, "results/" + n + ".json"));
  }
  const auto names = fx.store.list_json(fx.id, "mutants");
  c.require(!names.empty(), "no mutants written");
  std::size_t killed = 0, mirrors = 0, settling_mirrors = 0;
  bool mirror_oil_killed = false;
  for (const auto& n : names) {
    const json m = fx.store.read_json(fx.id, "mutants/" + n + ".json");
    const std::string tid = m["source"]["test_id"];
    const std::string var = m["source"]["var"];
    auto mutated = results.at(tid);
    mutated.outputs.at(var).values = m["series"].get<std::vector<double>>();
    std::size_t failing = 0;
    for (const auto& a : scenarios.at(tid).assertions) failing += reference_passes(a, scenarios.at(tid), mutated) ? 0 : 1;
    const bool k = m["killed"].get<bool>();
    const auto nkill = m["killing_assertions"].size();
    c.require(k == (failing > 0), n + ": kill flag disagrees with re-evaluation");
    c.require(k ? nkill >= 1 : nkill == 0, n + ": killing assertion list inconsistent");
    c.require(nkill == failing, n + ": killing assertion count differs from re-evaluation");
    killed += k ? 1 : 0;
    if (m["operator"] == "mirror") {
      ++mirrors;
      if (tid == "G001-P001-T001" && var == "temperature_oil") mirror_oil_killed = k;
      for (const auto& a : scenarios.at(tid).assertions) {
        if (scenario::kind_of(a) == scenario::AssertionKind::SettlesTo && scenario::var_of(a) == var) {
          ++settling_mirrors;
          c.require(k, n + ": mirror of a settling trace survived");
        }
      }
    }
  }
  const json rep = fx.pipeline.mutation(fx.id);
  const std::size_t total = names.size();
  c.require(rep["total"].get<std::size_t>() == total, "report total differs from mutant files");
  c.require(rep["killed"].get<std::size_t>() == killed, "report killed differs from mutant files");
  const double score = static_cast<double>(killed) / static_cast<double>(total);
  c.require(std::abs(rep["score"].get<double>() - score) <= 1e-9 * score, "score is not killed/total");
  c.require(rep["score_3dp"].get<double>() == mutation::score_report(killed, total, 3), "3dp score differs");
  c.require(mirrors > 0, "no mirror mutants generated");
  c.require(score > 0.0 && score < 1.0, "score " + fmt(score) + " not strictly inside (0, 1)");
  c.require(settling_mirrors > 0, "no mirror of a settles_to variable");
  c.require(mirror_oil_killed, "mirror of the settling temperature_oil trace survived");
  char buf[160];
  std::snprintf(buf, sizeof buf, "0.67 and 0.685 reports; %zu/%zu killed (score %.3f), all verdicts re-derived, %zu settling mirrors killed",
                killed, total, score, settling_mirrors);
  c.note(buf);
  return c.result();
}

Outcome accuracy() {
  Check c;
  struct Row {
    std::size_t valid, invalid;
    double expect;
  };
  const Row rows[] = {{4, 3, 0.57}, {3, 4, 0.43}, {5, 8, 0.38}, {7, 2, 0.78}, {3, 7, 0.30}, {3, 5, 0.38}};
  std::string got;
  for (const auto& r : rows) {
    const double v = scenario::run_accuracy(r.valid, r.invalid);
    c.require(v == r.expect, "(" + std::to_string(r.valid) + "," + std::to_string(r.invalid) + ") gave " + fmt(v));
    if (!got.empty()) got += " ";
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    got += buf;
  }
  c.note("six rows: " + got);
  return c.result();
}

Outcome stage_gating() {
  Check c;
  fmutest_test::TempDir dir;
  RunStore store(dir.path());
  const auto replies = fmutest_test::loc_dir() / "responses";
  Pipeline p(store, std::make_shared<llm::CallbackProvider>([replies](const llm::LlmRequest& r) {
    return read_file(replies / (std::string(to_string(r.phase)) + ".txt"));
  }));
  auto cfg = fmutest_test::loc_config();
  cfg.llm_mode = llm::LlmMode::Live;
  p.create_run(cfg, "gate");
  p.run_to("gate", Stage::GoalsGenerated);

  auto gate_code = [&](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code() == Errc::StageGateViolation;
    }
    return false;
  };
  c.require(gate_code([&] { p.advance("gate", Stage::PlansGenerated); }),
            "plan generation with undecided goals was not a StageGateViolation");
  for (const auto& g : p.goals("gate")) {
    if (g.id != "G007") p.review_goal("gate", g.id, g.id == "G003" ? scenario::Decision::Reject : scenario::Decision::Accept);
  }
  c.require(gate_code([&] { p.advance("gate", Stage::GoalsReviewed); }),
            "review stage passed with one undecided goal");
  p.review_goal("gate", "G007", scenario::Decision::Accept);
  p.run_to("gate", Stage::PlansGenerated);

  const auto goals = p.goals("gate");
  const auto plans = p.plans("gate");
  c.require(!plans.empty(), "no plans generated");
  for (const auto& plan : plans) c.require(plan.goal_id != "G003", plan.id + " references rejected G003");

  scenario::ScenarioStore scan;
  scan.restore(goals, plans);
  c.require(scan.gating_violations().empty(), "store scan reports plans under ineligible goals");
  auto orphan = fmutest_test::load_step_plan();
  orphan.id.clear();
  orphan.goal_id = "G003";
  c.require(gate_code([&] { (void)scan.admit_plans({orphan}); }), "plan for rejected G003 was admitted");
  c.note("undecided goal gated; " + std::to_string(plans.size()) + " plans, none under rejected G003");
  return c.result();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"extraction-fidelity", extraction},
      {"determinism", determinism},
      {"deduplication", deduplication},
      {"oracle-equivalence", oracle_equivalence},
      {"end-to-end-load-step", end_to_end},
      {"mutation-arithmetic-and-soundness", mutation_soundness},
      {"accuracy-statistic", accuracy},
      {"stage-gating", stage_gating},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
    failed += o.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
