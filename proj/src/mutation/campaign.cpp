#include "fmutest/mutation/campaign.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "fmutest/error.hpp"
#include "fmutest/format.hpp"
#include "fmutest/oracle/aggregate.hpp"

namespace fmutest::mutation {

namespace {

struct Owned {
  const signal::Scenario* scenario;
  const sim::SimulationResult* result;
};

std::pair<double, double> bounds_of(const scenario::ConstraintSet& cs, const std::string& var) {
  const scenario::IoConstraint* c = cs.find_output(var);
  if (c == nullptr || !c->min || !c->max) {
    throw Error(Errc::DegenerateBounds, "output '" + var + "' has no declared bounds");
  }
  return {*c->min, *c->max};
}

std::vector<std::string> asserted_vars(const signal::Scenario& s) {
  std::set<std::string> vars;
  for (const auto& a : s.assertions) vars.insert(scenario::var_of(a));
  return {vars.begin(), vars.end()};
}

std::string mutant_id(std::size_t ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "M%04zu", ordinal);
  return buf;
}

void judge(MutantRecord& m, const Owned& owner) {
  sim::SimulationResult mutated = *owner.result;
  mutated.outputs.at(m.var).values = m.series;
  const oracle::ScenarioVerdict v = oracle::aggregate(*owner.scenario, mutated);
  m.killed = !v.passed;
  for (const auto& av : v.assertion_verdicts) {
    if (!av.passed) {
      m.killing_assertions.push_back(
          std::string(scenario::to_string(scenario::kind_of(av.assertion))) + ":" +
          scenario::var_of(av.assertion));
    }
  }
}

}  // namespace

double score_report(std::size_t killed, std::size_t total, int decimals) {
  if (total == 0) throw Error(Errc::NoPassingScenarios, "mutation score of an empty campaign");
  return truncate_decimals(static_cast<double>(killed) / static_cast<double>(total), decimals);
}

MutationCampaign run_campaign(const std::vector<signal::Scenario>& scenarios,
                              const std::vector<sim::SimulationResult>& results,
                              const scenario::ConstraintSet& constraints,
                              const CampaignOptions& options) {
  std::map<std::string, const sim::SimulationResult*> result_by_id;
  for (const auto& r : results) result_by_id[r.test_id] = &r;

  MutationCampaign campaign;
  std::map<std::string, Owned> passing;
  for (const auto& s : scenarios) {
    auto it = result_by_id.find(s.test_id);
    if (it == result_by_id.end() || !oracle::aggregate(s, *it->second).passed) {
      campaign.excluded.push_back(s.test_id);
      continue;
    }
    passing.emplace(s.test_id, Owned{&s, it->second});
  }
  std::sort(campaign.excluded.begin(), campaign.excluded.end());
  if (passing.empty()) {
    throw Error(Errc::NoPassingScenarios, "no scenario passes on the unmutated system");
  }

  const auto& ops = options.operators;
  const std::uint64_t seed = options.seed;
  std::size_t ordinal = 0;
  auto next = [&](Operator op, const std::string& test_id, const std::string& var) {
    MutantRecord m;
    m.mutant_id = mutant_id(++ordinal);
    m.op = op;
    m.test_id = test_id;
    m.var = var;
    return m;
  };

  for (const auto& [test_id, owner] : passing) {
    campaign.scenarios.push_back(test_id);
    for (const auto& var : asserted_vars(*owner.scenario)) {
      const auto& y = owner.result->outputs.at(var).values;
      const auto [lo, hi] = bounds_of(constraints, var);
      const std::size_t n = y.empty() ? 0 : y.size() - 1;
      if (ops.count(Operator::Mirror)) {
        MutantRecord m = next(Operator::Mirror, test_id, var);
        m.series = mutate_mirror(y, lo, hi);
        m.params = {{"lo", lo}, {"hi", hi}, {"scope", "whole_series"}};
        campaign.mutants.push_back(std::move(m));
      }
      if (ops.count(Operator::RandomUniform)) {
        MutantRecord m = next(Operator::RandomUniform, test_id, var);
        const std::size_t a = n / 3;
        const std::size_t b = 2 * n / 3;
        double v = 0.0;
        m.series = mutate_random_uniform(y, lo, hi, a, b, seed, ordinal, &v);
        m.params = {{"lo", lo},     {"hi", hi},         {"range", {a, b}},
                    {"seed", seed}, {"stream", ordinal}, {"value", v}};
        campaign.mutants.push_back(std::move(m));
      }
      if (ops.count(Operator::Polynomial)) {
        MutantRecord m = next(Operator::Polynomial, test_id, var);
        m.series = mutate_polynomial(y, lo, hi, options.eta, seed, ordinal);
        m.params = {{"lo", lo},     {"hi", hi},          {"eta", options.eta},
                    {"seed", seed}, {"stream", ordinal}, {"probability", 1.0}};
        campaign.mutants.push_back(std::move(m));
      }
    }
  }

  if (ops.count(Operator::Crossover)) {
    std::map<std::string, std::vector<std::string>> by_var;
    for (const auto& [test_id, owner] : passing) {
      for (const auto& var : asserted_vars(*owner.scenario)) by_var[var].push_back(test_id);
    }
    for (const auto& [var, ids] : by_var) {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
          const auto& y1 = passing.at(ids[i]).result->outputs.at(var).values;
          const auto& y2 = passing.at(ids[j]).result->outputs.at(var).values;
          const std::size_t site = (y1.size() - 1) / 2;
          auto [m1s, m2s] = mutate_crossover(y1, y2, site);
          MutantRecord m1 = next(Operator::Crossover, ids[i], var);
          m1.partner_test_id = ids[j];
          m1.series = std::move(m1s);
          m1.params = {{"site", site}, {"partner", ids[j]}};
          campaign.mutants.push_back(std::move(m1));
          MutantRecord m2 = next(Operator::Crossover, ids[j], var);
          m2.partner_test_id = ids[i];
          m2.series = std::move(m2s);
          m2.params = {{"site", site}, {"partner", ids[i]}};
          campaign.mutants.push_back(std::move(m2));
        }
      }
    }
  }

  for (auto& m : campaign.mutants) {
    judge(m, passing.at(m.test_id));
    if (m.killed) ++campaign.killed;
  }
  campaign.score = campaign.mutants.empty()
                       ? 0.0
                       : static_cast<double>(campaign.killed) /
                             static_cast<double>(campaign.mutants.size());
  return campaign;
}

nlohmann::json to_json(const MutantRecord& m) {
  nlohmann::json source = {{"test_id", m.test_id}, {"var", m.var}};
  if (m.partner_test_id) source["partner_test_id"] = *m.partner_test_id;
  return {{"mutant_id", m.mutant_id},
          {"operator", std::string(to_string(m.op))},
          {"source", source},
          {"params", m.params},
          {"killed", m.killed},
          {"killing_assertions", m.killing_assertions},
          {"series", m.series}};
}

nlohmann::json mutation_report(const MutationCampaign& c) {
  nlohmann::json matrix = nlohmann::json::object();
  for (const auto& id : c.scenarios) matrix[id] = nlohmann::json::object();
  nlohmann::json per_op = nlohmann::json::object();
  for (const auto& m : c.mutants) {
    matrix[m.test_id][m.mutant_id] = m.killed;
    auto& slot = per_op[std::string(to_string(m.op))];
    if (slot.is_null()) slot = {{"killed", 0}, {"total", 0}};
    slot["total"] = slot["total"].get<int>() + 1;
    if (m.killed) slot["killed"] = slot["killed"].get<int>() + 1;
  }
  const std::size_t total = c.mutants.size();
  nlohmann::json j = {{"scenarios", c.scenarios},
                      {"excluded", c.excluded},
                      {"killed", c.killed},
                      {"total", total},
                      {"score", c.score},
                      {"by_operator", per_op},
                      {"kill_matrix", matrix}};
  if (total > 0) {
    j["score_2dp"] = score_report(c.killed, total, 2);
    j["score_3dp"] = score_report(c.killed, total, 3);
  }
  return j;
}

}  // namespace fmutest::mutation
