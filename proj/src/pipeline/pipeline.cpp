#include "fmutest/pipeline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "fmutest/error.hpp"
#include "fmutest/format.hpp"
#include "fmutest/io.hpp"
#include "fmutest/llm/prompt_template.hpp"
#include "fmutest/llm/providers.hpp"
#include "fmutest/model/context_document.hpp"
#include "fmutest/model/fmu_archive.hpp"
#include "fmutest/model/model_description.hpp"
#include "fmutest/mutation/campaign.hpp"
#include "fmutest/oracle/aggregate.hpp"
#include "fmutest/oracle/report.hpp"
#include "fmutest/scenario/json_codec.hpp"
#include "fmutest/scenario/stats.hpp"
#include "fmutest/scenario/validation.hpp"
#include "fmutest/signal/instantiate.hpp"
#include "fmutest/sim/backend.hpp"
#include "fmutest/sim/runner.hpp"
#include "fmutest/sim/surrogate.hpp"

namespace fmutest::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using scenario::ScenarioGoal;
using scenario::ScenarioPlan;

namespace {

std::string stage_name(Stage s) { return std::string(to_string(s)); }

[[noreturn]] void gate(const std::string& message) {
  throw Error(Errc::StageGateViolation, message);
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

model::ModelDescription load_model(const RunConfig& cfg) {
  return model::parse_model_description(model::load_model_description_bytes(cfg.fmu));
}

json goals_json(const std::vector<ScenarioGoal>& goals) {
  json arr = json::array();
  for (const auto& g : goals) arr.push_back(scenario::to_json(g));
  return arr;
}

json plans_json(const std::vector<ScenarioPlan>& plans) {
  json arr = json::array();
  for (const auto& p : plans) arr.push_back(scenario::to_json(p));
  return arr;
}

// Prompt view of a goal: content only.
json goal_brief(const ScenarioGoal& g) {
  json j = scenario::to_json(g);
  j.erase("review_status");
  return j;
}

}  // namespace

struct Pipeline::Loaded {
  RunConfig config;
  RunState state;
  scenario::ScenarioStore items;
  std::optional<scenario::ConstraintSet> constraints;
};

Pipeline::Pipeline(RunStore& store, std::shared_ptr<llm::Provider> provider)
    : store_(store), provider_(std::move(provider)) {}

RunState Pipeline::create_run(const RunConfig& config, std::optional<std::string> run_id) {
  config.validate(true);
  return store_.create(config, std::move(run_id));
}

RunState Pipeline::state(const std::string& run_id) const { return store_.load_state(run_id); }

RunConfig Pipeline::config(const std::string& run_id) const {
  (void)store_.load_state(run_id);
  return store_.load_config(run_id);
}

void Pipeline::update_config(const std::string& run_id, const RunConfig& config) {
  std::lock_guard lock(store_.lock_for(run_id));
  const RunState st = store_.load_state(run_id);
  config.validate(true);
  store_.save_config(run_id, config);
  store_.log(run_id, to_string(st.stage), "INFO", "configuration updated");
}

Pipeline::Loaded Pipeline::load(const std::string& run_id) const {
  Loaded l;
  l.state = store_.load_state(run_id);
  l.config = store_.load_config(run_id);
  const fs::path index_path =
      l.config.store_path ? *l.config.store_path : store_.dir(run_id) / "hash-index.jsonl";
  l.items = scenario::ScenarioStore(scenario::HashIndex(index_path));
  std::vector<ScenarioGoal> goals;
  std::vector<ScenarioPlan> plans;
  if (store_.has(run_id, "goals.json")) {
    for (const auto& j : store_.read_json(run_id, "goals.json")) goals.push_back(scenario::goal_from_json(j));
  }
  if (store_.has(run_id, "plans.json")) {
    for (const auto& j : store_.read_json(run_id, "plans.json")) plans.push_back(scenario::plan_from_json(j));
  }
  l.items.restore(std::move(goals), std::move(plans));
  if (store_.has(run_id, "constraints.json")) {
    l.constraints = scenario::constraint_set_from_json(store_.read_json(run_id, "constraints.json"));
  }
  return l;
}

void Pipeline::save_items(const std::string& run_id, const scenario::ScenarioStore& items) const {
  store_.write_json(run_id, "goals.json", goals_json(items.goals()));
  store_.write_json(run_id, "plans.json", plans_json(items.plans()));
}

llm::LlmGateway Pipeline::gateway_for(const std::string& run_id, const RunConfig& cfg) const {
  llm::GatewayOptions opts;
  opts.mode = cfg.llm_mode;
  opts.fixture_dir = cfg.fixture_dir;
  opts.journal_path = store_.dir(run_id) / "llm-journal.jsonl";
  opts.budget = cfg.request_budget;
  std::shared_ptr<llm::Provider> provider = provider_;
  if (!provider && cfg.llm_mode != llm::LlmMode::Replay) provider = llm::make_provider(cfg.provider);
  return llm::LlmGateway(std::move(opts), std::move(provider));
}

RunState Pipeline::advance(const std::string& run_id, Stage target) {
  std::lock_guard lock(store_.lock_for(run_id));
  RunState st = store_.load_state(run_id);
  const int cur = stage_index(st.stage);
  const int tgt = stage_index(target);
  if (target == Stage::Created) gate("stage gate: runs start at created");
  if (tgt < cur) {
    gate("stage gate: " + stage_name(target) + " already completed; run is at " +
         stage_name(st.stage));
  }
  if (tgt > cur) {
    Stage required = static_cast<Stage>(tgt - 1);
    bool ok = cur == tgt - 1;
    if (target == Stage::Reported) {
      ok = cur >= stage_index(Stage::Executed);
      if (!ok) required = Stage::Executed;
    }
    if (!ok) gate("stage gate: " + stage_name(required) + " required");
  }

  const std::string name = stage_name(target);
  store_.log(run_id, name, "INFO", tgt == cur ? "re-running stage" : "starting stage");
  try {
    switch (target) {
      case Stage::Created: break;
      case Stage::ConstraintsReady: stage_constraints(run_id); break;
      case Stage::GoalsGenerated: stage_goals(run_id); break;
      case Stage::GoalsReviewed: stage_goals_reviewed(run_id); break;
      case Stage::PlansGenerated: stage_plans(run_id); break;
      case Stage::PlansReviewed: stage_plans_reviewed(run_id); break;
      case Stage::ScenariosReady: stage_scenarios(run_id); break;
      case Stage::Executed: stage_execute(run_id); break;
      case Stage::Mutated: stage_mutate(run_id); break;
      case Stage::Reported: stage_report(run_id); break;
    }
  } catch (const Error& e) {
    store_.log(run_id, name, "ERROR", std::string(errc_name(e.code())) + ": " + e.what());
    throw;
  }

  st = store_.load_state(run_id);
  st.stage = target;
  st.timestamps[name] = iso8601_now();
  store_.save_state(st);
  store_.log(run_id, name, "INFO", "stage complete");
  return st;
}

RunState Pipeline::run_to(const std::string& run_id, Stage target) {
  RunState st = state(run_id);
  while (stage_index(st.stage) < stage_index(target)) {
    st = advance(run_id, static_cast<Stage>(stage_index(st.stage) + 1));
  }
  return st;
}

void Pipeline::stage_constraints(const std::string& run_id) {
  const RunConfig cfg = store_.load_config(run_id);
  const model::ModelDescription md = load_model(cfg);
  std::vector<model::SourceDocument> docs;
  for (const auto& p : cfg.docs) docs.push_back({p.filename().string(), read_file(p)});
  const model::ContextDocument ctx_doc = model::build_context_document(md, docs);

  json manifest = json::array();
  for (const auto& m : ctx_doc.source_manifest) {
    manifest.push_back({{"source", m.source}, {"byte_length", m.byte_length}, {"digest", m.digest}});
  }
  store_.write_json(run_id, "context.json",
                    {{"merged_text", ctx_doc.merged_text}, {"source_manifest", manifest}});

  const auto tpl = llm::load_template(cfg.prompt_dir, Phase::Constraints, cfg.prompt_version);
  const std::string prompt = llm::render_prompt(
      tpl, {{"system_name", cfg.system_name}, {"merged_doc", ctx_doc.merged_text}});
  auto gw = gateway_for(run_id, cfg);
  const auto resp = gw.complete(llm::LlmRequest::make(
      Phase::Constraints, cfg.model_id, llm::phase_temperature(Phase::Constraints, &cfg.temperatures),
      prompt));

  scenario::ValidationContext vctx;
  vctx.model = &md;
  std::vector<std::string> repairs;
  const auto cs = scenario::validate_constraints(resp.raw_text, vctx, &repairs);
  for (const auto& r : repairs) store_.log(run_id, "constraints_ready", "INFO", "repair: " + r);
  store_.write_json(run_id, "constraints.json", scenario::to_json(cs));
}

void Pipeline::stage_goals(const std::string& run_id) {
  Loaded l = load(run_id);
  const RunConfig& cfg = l.config;
  const model::ModelDescription md = load_model(cfg);
  const json context = store_.read_json(run_id, "context.json");

  const auto tpl = llm::load_template(cfg.prompt_dir, Phase::Goals, cfg.prompt_version);
  const std::string prompt = llm::render_prompt(
      tpl, {{"system_name", cfg.system_name},
            {"merged_doc", context.at("merged_text").get<std::string>()},
            {"constraints_json", scenario::to_json(*l.constraints).dump(2)},
            {"types_str", cfg.types_str}});
  auto gw = gateway_for(run_id, cfg);
  const auto resp = gw.complete(llm::LlmRequest::make(
      Phase::Goals, cfg.model_id, llm::phase_temperature(Phase::Goals, &cfg.temperatures), prompt));

  scenario::ValidationContext vctx;
  vctx.constraints = &*l.constraints;
  vctx.model = &md;
  auto outcome = scenario::validate_and_repair(resp.raw_text, Phase::Goals, vctx);
  for (const auto& r : outcome.repairs) store_.log(run_id, "goals_generated", "INFO", "repair: " + r);
  for (const auto& rej : outcome.rejected) {
    std::string why;
    for (const auto& r : rej.reasons) why += (why.empty() ? "" : "; ") + r;
    store_.log(run_id, "goals_generated", "WARN",
               "goal #" + std::to_string(rej.index) + " rejected: " + why);
  }
  auto candidates = std::get<std::vector<ScenarioGoal>>(std::move(outcome.value));
  for (auto& g : candidates) {
    g.id.clear();
    g.review_status = scenario::ReviewStatus::Generated;
  }
  const auto report = l.items.admit_goals(std::move(candidates));
  for (const auto& [dropped, existing] : report.duplicates) {
    store_.log(run_id, "goals_generated", "INFO", "duplicate goal dropped; identical to " + existing);
  }
  for (const auto& g : report.accepted) {
    store_.log(run_id, "goals_generated", "INFO", "goal " + g.id + " generated");
    if (cfg.auto_accept) l.items.review_goal(g.id, scenario::Decision::Accept, nullptr, vctx);
  }

  json stats = store_.has(run_id, "generation.json") ? store_.read_json(run_id, "generation.json")
                                                     : json::object();
  stats["goals"] = {{"accepted", report.accepted.size()},
                    {"duplicates", report.duplicates.size()},
                    {"rejected_by_validation", outcome.rejected.size()}};
  store_.write_json(run_id, "generation.json", stats);
  save_items(run_id, l.items);
}

void Pipeline::stage_goals_reviewed(const std::string& run_id) {
  const Loaded l = load(run_id);
  std::vector<std::string> undecided;
  for (const auto& g : l.items.goals()) {
    if (g.review_status == scenario::ReviewStatus::Generated) undecided.push_back(g.id);
  }
  if (!undecided.empty()) gate("stage gate: undecided goals: " + join_ids(undecided));
}

void Pipeline::stage_plans(const std::string& run_id) {
  Loaded l = load(run_id);
  const RunConfig& cfg = l.config;
  const std::vector<ScenarioGoal> eligible = l.items.eligible_goals();
  if (eligible.empty()) gate("stage gate: no accepted goals");
  const model::ModelDescription md = load_model(cfg);

  json brief = json::array();
  for (const auto& g : eligible) brief.push_back(goal_brief(g));
  const auto tpl = llm::load_template(cfg.prompt_dir, Phase::Plans, cfg.prompt_version);
  const std::string prompt = llm::render_prompt(
      tpl, {{"system_name", cfg.system_name},
            {"sim_start", format_real(cfg.sim.start_time)},
            {"sim_stop", format_real(cfg.sim.stop_time)},
            {"constraints_json", scenario::to_json(*l.constraints).dump(2)},
            {"goals_brief", brief.dump(2)},
            {"avoid_text", "none"},
            {"avoid_hint", "."}});
  auto gw = gateway_for(run_id, cfg);
  const auto resp = gw.complete(llm::LlmRequest::make(
      Phase::Plans, cfg.model_id, llm::phase_temperature(Phase::Plans, &cfg.temperatures), prompt));

  scenario::ValidationContext vctx;
  vctx.constraints = &*l.constraints;
  vctx.model = &md;
  vctx.window = scenario::SimWindow{cfg.sim.start_time, cfg.sim.stop_time};
  vctx.goals = &eligible;
  auto outcome = scenario::validate_and_repair(resp.raw_text, Phase::Plans, vctx);
  for (const auto& r : outcome.repairs) store_.log(run_id, "plans_generated", "INFO", "repair: " + r);
  for (const auto& rej : outcome.rejected) {
    std::string why;
    for (const auto& r : rej.reasons) why += (why.empty() ? "" : "; ") + r;
    store_.log(run_id, "plans_generated", "WARN",
               "plan #" + std::to_string(rej.index) + " rejected: " + why);
  }
  auto candidates = std::get<std::vector<ScenarioPlan>>(std::move(outcome.value));
  for (auto& p : candidates) {
    p.id.clear();
    p.review_status = scenario::ReviewStatus::Generated;
  }
  const auto report = l.items.admit_plans(std::move(candidates));
  for (const auto& [dropped, existing] : report.duplicates) {
    store_.log(run_id, "plans_generated", "INFO", "duplicate plan dropped; identical to " + existing);
  }
  for (const auto& p : report.accepted) {
    store_.log(run_id, "plans_generated", "INFO", "plan " + p.id + " generated");
    if (cfg.auto_accept) l.items.review_plan(p.id, scenario::Decision::Accept, nullptr, vctx);
  }

  json stats = store_.has(run_id, "generation.json") ? store_.read_json(run_id, "generation.json")
                                                     : json::object();
  stats["plans"] = {{"accepted", report.accepted.size()},
                    {"duplicates", report.duplicates.size()},
                    {"rejected_by_validation", outcome.rejected.size()}};
  store_.write_json(run_id, "generation.json", stats);
  save_items(run_id, l.items);
}

void Pipeline::stage_plans_reviewed(const std::string& run_id) {
  const Loaded l = load(run_id);
  std::vector<std::string> undecided;
  for (const auto& p : l.items.plans()) {
    if (p.review_status == scenario::ReviewStatus::Generated) undecided.push_back(p.id);
  }
  if (!undecided.empty()) gate("stage gate: undecided plans: " + join_ids(undecided));
}

void Pipeline::stage_scenarios(const std::string& run_id) {
  Loaded l = load(run_id);
  const auto violations = l.items.gating_violations();
  if (!violations.empty()) gate("stage gate: " + join_ids(violations));
  const auto plans = l.items.eligible_plans();
  if (plans.empty()) gate("stage gate: no accepted plans");
  for (const auto& plan : plans) {
    const auto res = signal::instantiate(plan, l.config.sim, l.items.index());
    for (const auto& [hash, existing] : res.duplicates) {
      store_.log(run_id, "scenarios_ready", "INFO",
                 "duplicate inputs for " + plan.id + " dropped; identical to " + existing);
    }
    for (const auto& s : res.accepted) {
      store_.write_json(run_id, "scenarios/" + s.test_id + ".json", signal::to_json(s));
      store_.log(run_id, "scenarios_ready", "INFO", "scenario " + s.test_id + " instantiated");
    }
  }
}

namespace {

std::vector<signal::Scenario> load_scenarios(const RunStore& store, const std::string& run_id) {
  std::vector<signal::Scenario> out;
  for (const auto& id : store.list_json(run_id, "scenarios")) {
    out.push_back(signal::scenario_from_json(store.read_json(run_id, "scenarios/" + id + ".json")));
  }
  return out;
}

std::vector<sim::SimulationResult> load_results(const RunStore& store, const std::string& run_id,
                                                const std::vector<signal::Scenario>& scenarios) {
  std::vector<sim::SimulationResult> out;
  for (const auto& s : scenarios) {
    const std::string rel = "results/" + s.test_id + ".json";
    if (!store.has(run_id, rel)) throw Error(Errc::StageGateViolation, "stage gate: executed required");
    out.push_back(sim::simulation_result_from_json(store.read_json(run_id, rel)));
  }
  return out;
}

std::vector<oracle::ScenarioVerdict> verdicts_for(const std::vector<signal::Scenario>& scenarios,
                                                  const std::vector<sim::SimulationResult>& results) {
  std::vector<oracle::ScenarioVerdict> out;
  for (std::size_t i = 0; i < scenarios.size(); ++i) out.push_back(oracle::aggregate(scenarios[i], results[i]));
  return out;
}

}  // namespace

void Pipeline::stage_execute(const std::string& run_id) {
  const RunConfig cfg = store_.load_config(run_id);
  const auto scenarios = load_scenarios(store_, run_id);
  if (scenarios.empty()) gate("stage gate: no scenarios to execute");

  sim::BackendFactory factory;
  if (cfg.backend == "surrogate") {
    const sim::SurrogateParams params = cfg.surrogate;
    factory = [params] { return std::make_unique<sim::SurrogateBackend>(params); };
  } else {
    factory = sim::resolve_backend(cfg.backend);
  }

  std::vector<std::optional<sim::SimulationResult>> results(scenarios.size());
  std::vector<std::exception_ptr> errors(scenarios.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, scenarios.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      std::unique_ptr<sim::SimulatorBackend> backend;
      for (std::size_t i = next++; i < scenarios.size(); i = next++) {
        try {
          if (!backend) backend = factory();
          results[i] = sim::run_scenario(scenarios[i], *backend, cfg.sim);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<sim::SimulationResult> flat;
  for (const auto& r : results) {
    store_.write_json(run_id, "results/" + r->test_id + ".json", sim::to_json(*r));
    if (r->status == sim::RunStatus::SimError) {
      store_.log(run_id, "executed", "WARN", r->test_id + " simulation error: " + r->error);
    }
    flat.push_back(*r);
  }
  const auto verdicts = verdicts_for(scenarios, flat);
  for (const auto& v : verdicts) {
    std::string line = v.test_id + (v.passed ? " PASS" : " FAIL");
    for (const auto& av : v.assertion_verdicts) {
      if (!av.passed) line += "; " + av.detail;
    }
    store_.log(run_id, "executed", "INFO", line);
  }
  const auto bundle = oracle::render_report(verdicts, flat, scenarios);
  store_.write_json(run_id, "report.json", bundle.report);
  for (const auto& [test_id, plot] : bundle.plots) {
    store_.write_json(run_id, "plots/" + test_id + ".json", plot);
  }
}

void Pipeline::stage_mutate(const std::string& run_id) {
  const Loaded l = load(run_id);
  const auto scenarios = load_scenarios(store_, run_id);
  const auto results = load_results(store_, run_id, scenarios);
  mutation::CampaignOptions opts;
  opts.operators = l.config.operators;
  opts.seed = l.config.mutation_seed;
  const auto campaign = mutation::run_campaign(scenarios, results, *l.constraints, opts);
  for (const auto& m : campaign.mutants) {
    store_.write_json(run_id, "mutants/" + m.mutant_id + ".json", mutation::to_json(m));
  }
  for (const auto& id : campaign.excluded) {
    store_.log(run_id, "mutated", "INFO", id + " excluded: fails on the unmutated system");
  }
  const json rep = mutation::mutation_report(campaign);
  store_.write_json(run_id, "mutation-report.json", rep);
  store_.log(run_id, "mutated", "INFO",
             "mutation score " + std::to_string(campaign.killed) + "/" +
                 std::to_string(campaign.mutants.size()));
}

void Pipeline::stage_report(const std::string& run_id) {
  const Loaded l = load(run_id);
  const auto scenarios = load_scenarios(store_, run_id);
  const auto results = load_results(store_, run_id, scenarios);
  const auto verdicts = verdicts_for(scenarios, results);
  auto bundle = oracle::render_report(verdicts, results, scenarios);

  if (store_.has(run_id, "mutation-report.json")) {
    const json m = store_.read_json(run_id, "mutation-report.json");
    bundle.report["mutation"] = {{"killed", m.at("killed")},
                                 {"total", m.at("total")},
                                 {"score", m.at("score")},
                                 {"score_2dp", m.at("score_2dp")},
                                 {"score_3dp", m.at("score_3dp")}};
  }

  const json gen = store_.has(run_id, "generation.json") ? store_.read_json(run_id, "generation.json")
                                                         : json::object();
  json accuracy = json::object();
  auto phase_accuracy = [&](const char* key, std::size_t eligible, std::size_t review_rejected) {
    const std::size_t invalid =
        review_rejected +
        (gen.contains(key) ? gen[key].value("rejected_by_validation", std::size_t{0}) : 0);
    if (eligible + invalid == 0) return;
    accuracy[key] = {{"valid", eligible},
                     {"invalid", invalid},
                     {"accuracy", scenario::run_accuracy(eligible, invalid)}};
  };
  const auto count_rejected = [](const auto& items) {
    return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const auto& x) {
      return x.review_status == scenario::ReviewStatus::Rejected;
    }));
  };
  phase_accuracy("goals", l.items.eligible_goals().size(), count_rejected(l.items.goals()));
  phase_accuracy("plans", l.items.eligible_plans().size(), count_rejected(l.items.plans()));
  bundle.report["accuracy"] = accuracy;

  store_.write_json(run_id, "report.json", bundle.report);
  for (const auto& [test_id, plot] : bundle.plots) {
    store_.write_json(run_id, "plots/" + test_id + ".json", plot);
  }
}

ScenarioGoal Pipeline::review_goal(const std::string& run_id, const std::string& goal_id,
                                   scenario::Decision decision, const json* payload) {
  std::lock_guard lock(store_.lock_for(run_id));
  Loaded l = load(run_id);
  if (l.state.stage != Stage::GoalsGenerated) {
    gate("stage gate: goal review needs goals_generated; run is at " + stage_name(l.state.stage));
  }
  const model::ModelDescription md = load_model(l.config);
  scenario::ValidationContext vctx;
  vctx.constraints = l.constraints ? &*l.constraints : nullptr;
  vctx.model = &md;
  ScenarioGoal out = l.items.review_goal(goal_id, decision, payload, vctx);
  save_items(run_id, l.items);
  store_.log(run_id, "goals_generated", "INFO",
             "goal " + goal_id + " " + std::string(scenario::to_string(out.review_status)));
  return out;
}

ScenarioPlan Pipeline::review_plan(const std::string& run_id, const std::string& plan_id,
                                   scenario::Decision decision, const json* payload) {
  std::lock_guard lock(store_.lock_for(run_id));
  Loaded l = load(run_id);
  if (l.state.stage != Stage::PlansGenerated) {
    gate("stage gate: plan review needs plans_generated; run is at " + stage_name(l.state.stage));
  }
  const model::ModelDescription md = load_model(l.config);
  const std::vector<ScenarioGoal> eligible = l.items.eligible_goals();
  scenario::ValidationContext vctx;
  vctx.constraints = l.constraints ? &*l.constraints : nullptr;
  vctx.model = &md;
  vctx.window = scenario::SimWindow{l.config.sim.start_time, l.config.sim.stop_time};
  vctx.goals = &eligible;
  ScenarioPlan out = l.items.review_plan(plan_id, decision, payload, vctx);
  save_items(run_id, l.items);
  store_.log(run_id, "plans_generated", "INFO",
             "plan " + plan_id + " " + std::string(scenario::to_string(out.review_status)));
  return out;
}

std::vector<ScenarioGoal> Pipeline::goals(const std::string& run_id) const {
  return load(run_id).items.goals();
}

std::vector<ScenarioPlan> Pipeline::plans(const std::string& run_id) const {
  return load(run_id).items.plans();
}

json Pipeline::results(const std::string& run_id) const {
  (void)store_.load_state(run_id);
  if (!store_.has(run_id, "report.json")) gate("stage gate: executed required");
  return store_.read_json(run_id, "report.json");
}

json Pipeline::plot(const std::string& run_id, const std::string& test_id) const {
  (void)store_.load_state(run_id);
  const std::string rel = "plots/" + test_id + ".json";
  if (test_id.find('/') != std::string::npos || !store_.has(run_id, rel)) {
    throw Error(Errc::UnknownItem, "no plot for '" + test_id + "'");
  }
  return store_.read_json(run_id, rel);
}

json Pipeline::mutation(const std::string& run_id) const {
  (void)store_.load_state(run_id);
  if (!store_.has(run_id, "mutation-report.json")) gate("stage gate: mutated required");
  return store_.read_json(run_id, "mutation-report.json");
}

}  // namespace fmutest::pipeline
