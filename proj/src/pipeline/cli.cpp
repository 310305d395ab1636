#include "fmutest/pipeline/cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fmutest/model/fmu_archive.hpp"
#include "fmutest/model/model_description.hpp"
#include "fmutest/mutation/operators.hpp"
#include "fmutest/pipeline/http_api.hpp"
#include "fmutest/pipeline/pipeline.hpp"
#include "fmutest/pipeline/run_config.hpp"
#include "fmutest/pipeline/run_store.hpp"
#include "fmutest/scenario/store.hpp"
#include "fmutest/sim/fmi_adapter.hpp"

#ifndef FMUTEST_DEFAULT_CONFIG
#define FMUTEST_DEFAULT_CONFIG ""
#endif

namespace fmutest::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::Rejection:
    case Errc::StageGateViolation:
    case Errc::IllegalTransition:
    case Errc::InvalidEdit:
    case Errc::UnknownItem:
    case Errc::EmptyRun:
    case Errc::NoPassingScenarios:
    case Errc::DuplicateName:
    case Errc::InvalidBounds:
    case Errc::OutOfWindow: return 1;
    default: return 2;
  }
}

namespace {

struct Globals {
  std::string runs_dir = "runs";
  std::string config = FMUTEST_DEFAULT_CONFIG;
  std::string llm_mode;
  std::string replay_dir;
  std::string provider;
  bool auto_accept = false;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

RunConfig base_config(const Globals& g) {
  if (g.config.empty()) throw Error(Errc::ConfigError, "no --config given and no default configured");
  return load_run_config(g.config);
}

// Returns true when any global override changed the config.
bool apply_globals(const Globals& g, RunConfig& cfg) {
  bool changed = false;
  if (!g.llm_mode.empty()) {
    auto m = llm::parse_llm_mode(g.llm_mode);
    if (!m) throw Error(Errc::ConfigError, "--llm-mode must be live, record or replay");
    cfg.llm_mode = *m;
    changed = true;
  }
  if (!g.replay_dir.empty()) {
    cfg.fixture_dir = fs::absolute(g.replay_dir);
    changed = true;
  }
  if (!g.provider.empty()) {
    cfg.provider = g.provider;
    changed = true;
  }
  if (g.auto_accept) {
    cfg.auto_accept = true;
    changed = true;
  }
  return changed;
}

void print_state(std::ostream& out, const RunState& st) {
  out << "run " << st.run_id << " at " << to_string(st.stage) << "\n";
}

void print_goals(std::ostream& out, const std::vector<scenario::ScenarioGoal>& goals) {
  for (const auto& g : goals) {
    out << "  " << g.id << " [" << scenario::to_string(g.review_status) << "] " << g.when << "\n";
  }
}

void print_plans(std::ostream& out, const std::vector<scenario::ScenarioPlan>& plans) {
  for (const auto& p : plans) {
    out << "  " << p.id << " [" << scenario::to_string(p.review_status) << "] goal " << p.goal_id
        << "\n";
  }
}

bool all_decided(const Pipeline& p, const std::string& run, bool goals) {
  if (goals) {
    for (const auto& g : p.goals(run)) {
      if (g.review_status == scenario::ReviewStatus::Generated) return false;
    }
  } else {
    for (const auto& pl : p.plans(run)) {
      if (pl.review_status == scenario::ReviewStatus::Generated) return false;
    }
  }
  return true;
}

void print_report(std::ostream& out, const json& report) {
  const auto& agg = report.at("aggregate");
  out << "scenarios passed " << agg.at("passed").get<int>() << "/" << agg.at("total").get<int>()
      << " (pass rate " << agg.at("pass_rate_text").get<std::string>() << ")\n";
  for (const auto& [gid, g] : report.at("goals").items()) {
    out << "  " << gid << " " << g.at("outcome").get<std::string>() << "\n";
  }
  if (report.contains("mutation")) {
    const auto& m = report.at("mutation");
    out << "mutation score " << m.at("killed").get<int>() << "/" << m.at("total").get<int>()
        << " = " << m.at("score_3dp").dump() << "\n";
  }
}

HttpApi* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scenario generation and black-box testing for FMU simulations", "fmutest"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--runs-dir", g.runs_dir, "Run store directory")->capture_default_str();
  app.add_option("--config", g.config, "RunConfig JSON file")->capture_default_str();
  app.add_option("--llm-mode", g.llm_mode, "live, record or replay");
  app.add_option("--replay-dir", g.replay_dir, "Fixture directory for record/replay");
  app.add_option("--provider", g.provider, "http or scripted:<dir>");
  app.add_flag("--auto-accept", g.auto_accept, "Accept every generated goal and plan");

  std::string run_id;
  std::string new_run_id_opt;

  auto* extract = app.add_subcommand("extract", "Create a run and extract I/O constraints");
  std::string fmu;
  std::vector<std::string> docs;
  extract->add_option("--fmu", fmu, "FMU archive or modelDescription.xml");
  extract->add_option("--doc", docs, "Specification documents");
  extract->add_option("--run-id", new_run_id_opt, "Explicit run id");

  auto* goals = app.add_subcommand("goals", "Generate scenario goals");
  goals->add_option("--run", run_id)->required();

  auto* plans = app.add_subcommand("plans", "Generate scenario plans for accepted goals");
  plans->add_option("--run", run_id)->required();

  auto* scenarios = app.add_subcommand("scenarios", "Instantiate concrete scenarios");
  scenarios->add_option("--run", run_id)->required();
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> per_plan;
  scenarios->add_option("--seed", seed, "Run seed (default 42)");
  scenarios->add_option("--per-plan", per_plan, "Instantiations per plan (default 1)");

  auto* run = app.add_subcommand("run", "Execute scenarios and evaluate assertions");
  run->add_option("--run", run_id)->required();
  std::string backend;
  run->add_option("--backend", backend, "surrogate or fmi:<path>");

  auto* mutate = app.add_subcommand("mutate", "Run the output-mutation campaign");
  mutate->add_option("--run", run_id)->required();
  std::string operators;
  std::optional<std::uint64_t> mutation_seed;
  mutate->add_option("--operators", operators, "mirror,uniform,crossover,polynomial");
  mutate->add_option("--seed", mutation_seed, "Mutation seed (default 42)");

  auto* report = app.add_subcommand("report", "Render the final report");
  report->add_option("--run", run_id)->required();

  auto* review = app.add_subcommand("review", "Accept or reject pending goals or plans");
  review->add_option("--run", run_id)->required();
  std::vector<std::string> accept_ids;
  std::vector<std::string> reject_ids;
  bool accept_all = false;
  bool finalize = false;
  review->add_option("--accept", accept_ids, "Ids to accept")->delimiter(',');
  review->add_option("--reject", reject_ids, "Ids to reject")->delimiter(',');
  review->add_flag("--all", accept_all, "Accept every pending item");
  review->add_flag("--finalize", finalize, "Close the review stage once all items are decided");

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string static_dir;
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--static", static_dir, "Review UI bundle directory");

  auto* full = app.add_subcommand("full", "Create a run and drive it to reported (auto-accept)");
  full->add_option("--run-id", new_run_id_opt, "Explicit run id");
  bool skip_mutation = false;
  full->add_flag("--no-mutate", skip_mutation, "Stop after execution before reporting");

  auto* adapter = app.add_subcommand("adapter", "Print the FMI adapter contract");
  std::string adapter_fmu;
  adapter->add_option("--fmu", adapter_fmu, "FMU or modelDescription.xml to bind");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }

  try {
    RunStore store(g.runs_dir);
    Pipeline pipeline(store);

    auto with_overrides = [&](const std::string& id) {
      RunConfig cfg = pipeline.config(id);
      if (apply_globals(g, cfg)) pipeline.update_config(id, cfg);
      return cfg;
    };

    if (*extract) {
      RunConfig cfg = base_config(g);
      apply_globals(g, cfg);
      if (!fmu.empty()) cfg.fmu = fs::absolute(fmu);
      if (!docs.empty()) {
        cfg.docs.clear();
        for (const auto& d : docs) cfg.docs.push_back(fs::absolute(d));
      }
      std::optional<std::string> id;
      if (!new_run_id_opt.empty()) id = new_run_id_opt;
      const RunState created = pipeline.create_run(cfg, id);
      const RunState st = pipeline.advance(created.run_id, Stage::ConstraintsReady);
      print_state(out, st);
      out << "constraints: " << (store.dir(st.run_id) / "constraints.json").string() << "\n";
      return 0;
    }
    if (*goals) {
      with_overrides(run_id);
      const RunState st = pipeline.advance(run_id, Stage::GoalsGenerated);
      print_state(out, st);
      print_goals(out, pipeline.goals(run_id));
      return 0;
    }
    if (*plans) {
      with_overrides(run_id);
      if (pipeline.state(run_id).stage == Stage::GoalsGenerated && all_decided(pipeline, run_id, true)) {
        pipeline.advance(run_id, Stage::GoalsReviewed);
      }
      const RunState st = pipeline.advance(run_id, Stage::PlansGenerated);
      print_state(out, st);
      print_plans(out, pipeline.plans(run_id));
      return 0;
    }
    if (*scenarios) {
      RunConfig cfg = with_overrides(run_id);
      if (seed || per_plan) {
        if (seed) cfg.sim.seed = *seed;
        if (per_plan) cfg.sim.instantiations_per_plan = *per_plan;
        pipeline.update_config(run_id, cfg);
      }
      if (pipeline.state(run_id).stage == Stage::PlansGenerated && all_decided(pipeline, run_id, false)) {
        pipeline.advance(run_id, Stage::PlansReviewed);
      }
      const RunState st = pipeline.advance(run_id, Stage::ScenariosReady);
      print_state(out, st);
      for (const auto& id : store.list_json(run_id, "scenarios")) out << "  " << id << "\n";
      return 0;
    }
    if (*run) {
      RunConfig cfg = with_overrides(run_id);
      if (!backend.empty() && backend != cfg.backend) {
        cfg.backend = backend;
        pipeline.update_config(run_id, cfg);
      }
      const RunState st = pipeline.advance(run_id, Stage::Executed);
      print_state(out, st);
      print_report(out, pipeline.results(run_id));
      return 0;
    }
    if (*mutate) {
      RunConfig cfg = with_overrides(run_id);
      bool changed = false;
      if (!operators.empty()) {
        cfg.operators.clear();
        for (const auto& name : split_csv(operators)) {
          auto op = mutation::parse_operator(name);
          if (!op) throw Error(Errc::ConfigError, "unknown mutation operator '" + name + "'");
          cfg.operators.insert(*op);
        }
        changed = true;
      }
      if (mutation_seed) {
        cfg.mutation_seed = *mutation_seed;
        changed = true;
      }
      if (changed) pipeline.update_config(run_id, cfg);
      const RunState st = pipeline.advance(run_id, Stage::Mutated);
      print_state(out, st);
      const json m = pipeline.mutation(run_id);
      out << "mutation score " << m.at("killed").get<int>() << "/" << m.at("total").get<int>()
          << " = " << m.at("score_2dp").dump() << " (3dp " << m.at("score_3dp").dump() << ")\n";
      return 0;
    }
    if (*report) {
      const RunState st = pipeline.advance(run_id, Stage::Reported);
      print_state(out, st);
      print_report(out, pipeline.results(run_id));
      out << "report: " << (store.dir(run_id) / "report.json").string() << "\n";
      return 0;
    }
    if (*review) {
      const RunState st = pipeline.state(run_id);
      const bool on_goals = st.stage == Stage::GoalsGenerated;
      if (!on_goals && st.stage != Stage::PlansGenerated) {
        throw Error(Errc::StageGateViolation,
                    "stage gate: nothing to review at " + std::string(to_string(st.stage)));
      }
      std::vector<std::string> pending;
      if (on_goals) {
        for (const auto& it : pipeline.goals(run_id)) {
          if (it.review_status == scenario::ReviewStatus::Generated) pending.push_back(it.id);
        }
      } else {
        for (const auto& it : pipeline.plans(run_id)) {
          if (it.review_status == scenario::ReviewStatus::Generated) pending.push_back(it.id);
        }
      }
      if (accept_all) accept_ids.insert(accept_ids.end(), pending.begin(), pending.end());
      auto decide = [&](const std::string& id, scenario::Decision d) {
        if (on_goals) {
          out << id << " " << scenario::to_string(pipeline.review_goal(run_id, id, d).review_status) << "\n";
        } else {
          out << id << " " << scenario::to_string(pipeline.review_plan(run_id, id, d).review_status) << "\n";
        }
      };
      for (const auto& id : accept_ids) decide(id, scenario::Decision::Accept);
      for (const auto& id : reject_ids) decide(id, scenario::Decision::Reject);
      if (accept_ids.empty() && reject_ids.empty() && !finalize) {
        if (on_goals) print_goals(out, pipeline.goals(run_id));
        else print_plans(out, pipeline.plans(run_id));
      }
      if (finalize) {
        print_state(out, pipeline.advance(run_id, on_goals ? Stage::GoalsReviewed : Stage::PlansReviewed));
      }
      return 0;
    }
    if (*serve) {
      RunConfig defaults = base_config(g);
      apply_globals(g, defaults);
      std::optional<fs::path> sdir;
      if (!static_dir.empty()) sdir = fs::path(static_dir);
      HttpApi api(pipeline, defaults, sdir);
      g_server = &api;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      out << "listening on http://" << host << ":" << port << std::endl;
      const bool ok = api.listen(host, port);
      g_server = nullptr;
      if (!ok) {
        err << "error: IoError: cannot listen on " << host << ":" << port << "\n";
        return 2;
      }
      return 0;
    }
    if (*full) {
      RunConfig cfg = base_config(g);
      apply_globals(g, cfg);
      cfg.auto_accept = true;
      std::optional<std::string> id;
      if (!new_run_id_opt.empty()) id = new_run_id_opt;
      const RunState created = pipeline.create_run(cfg, id);
      pipeline.run_to(created.run_id, Stage::Executed);
      if (!skip_mutation) pipeline.advance(created.run_id, Stage::Mutated);
      const RunState st = pipeline.advance(created.run_id, Stage::Reported);
      print_state(out, st);
      print_report(out, pipeline.results(created.run_id));
      return 0;
    }
    if (*adapter) {
      std::optional<model::ModelDescription> md;
      if (!adapter_fmu.empty()) {
        md = model::parse_model_description(model::load_model_description_bytes(adapter_fmu));
      }
      out << sim::render_contract(sim::describe_fmi_adapter(md ? &*md : nullptr));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace fmutest::pipeline
