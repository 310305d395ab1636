#include <gtest/gtest.h>

#include <atomic>
#include <regex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "fmutest/error.hpp"
#include "fmutest/io.hpp"
#include "fmutest/llm/gateway.hpp"
#include "fmutest/llm/prompt_template.hpp"
#include "fmutest/llm/providers.hpp"
#include "fmutest/model/context_document.hpp"
#include "fmutest/model/fmu_archive.hpp"
#include "fmutest/model/model_description.hpp"
#include "fmutest/scenario/json_codec.hpp"
#include "loc_fixtures.hpp"
#include "test_support.hpp"

using namespace fmutest;
using namespace fmutest::llm;

namespace {

std::filesystem::path prompt_dir() { return fmutest_test::loc_dir() / "prompts"; }

std::string loc_merged_doc() {
  const auto md = model::parse_model_description(
      model::load_model_description_bytes(fmutest_test::loc_dir() / "loc.fmu"));
  const auto spec = fmutest_test::loc_dir() / "loc-spec.md";
  return model::build_context_document(md, {{spec.filename().string(), read_file(spec)}}).merged_text;
}

/// Placeholder-shaped leftovers: `{identifier}` after rendering.
bool has_placeholder(const std::string& text) {
  static const std::regex re(R"(\{[A-Za-z_][A-Za-z0-9_]*\})");
  return std::regex_search(text, re);
}

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::IoError;
}

}  // namespace

TEST(PromptTemplate, ConstraintsRenderNamesTheFmuAndEmbedsTheDocument) {
  const auto tpl = load_template(prompt_dir(), Phase::Constraints);
  const std::string doc = "DOC-BODY-MARKER";
  const auto text = render_prompt(tpl, {{"system_name", "LOC"}, {"merged_doc", doc}});
  EXPECT_NE(text.find("LOC.fmu"), std::string::npos);
  EXPECT_NE(text.find(doc), std::string::npos);
  EXPECT_FALSE(has_placeholder(text));
}

TEST(PromptTemplate, MissingBindingIsNamed) {
  const auto tpl = load_template(prompt_dir(), Phase::Constraints);
  try {
    (void)render_prompt(tpl, {{"system_name", "LOC"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingBinding);
    EXPECT_NE(std::string(e.what()).find("merged_doc"), std::string::npos);
  }
}

TEST(PromptTemplate, PlansRenderSimulationWindow) {
  const auto tpl = load_template(prompt_dir(), Phase::Plans);
  std::map<std::string, std::string> b;
  for (const auto& name : tpl.placeholders) b[name] = "x";
  b["sim_start"] = "0";
  b["sim_stop"] = "1000";
  const auto text = render_prompt(tpl, b);
  EXPECT_NE(text.find("start=0, stop=1000"), std::string::npos);
}

TEST(PromptTemplate, BundledTemplatesRenderWithoutLeftoverPlaceholders) {
  const std::string merged = loc_merged_doc();
  for (Phase p : {Phase::Constraints, Phase::Goals, Phase::Plans}) {
    const auto tpl = load_template(prompt_dir(), p);
    EXPECT_EQ(tpl.sections.at(0).label.rfind("Role", 0), 0u);
    std::map<std::string, std::string> b;
    for (const auto& name : tpl.placeholders) b[name] = name == "merged_doc" ? merged : "value";
    const auto text = render_prompt(tpl, b);
    EXPECT_FALSE(has_placeholder(text)) << to_string(p);
  }
}

TEST(PromptTemplate, LiteralBracesAndSyntaxErrors) {
  const auto tpl = parse_template(Phase::Goals, "1. Role:\n{{\"a\": {system_name}}}\n");
  EXPECT_EQ(render_prompt(tpl, {{"system_name", "S"}}), "1. Role:\n{\"a\": S}\n");
  EXPECT_EQ(error_of([] { (void)parse_template(Phase::Goals, "1. Role:\n{unknown_name}\n"); }),
            Errc::TemplateSyntax);
  EXPECT_EQ(error_of([] { (void)parse_template(Phase::Goals, "1. Role:\na } b\n"); }),
            Errc::TemplateSyntax);
  EXPECT_EQ(error_of([] { (void)parse_template(Phase::Goals, "1. Task:\n{system_name}\n"); }),
            Errc::TemplateSyntax);
}

TEST(PhaseTemperature, Defaults) {
  EXPECT_DOUBLE_EQ(phase_temperature(Phase::Goals), 0.7);
  EXPECT_DOUBLE_EQ(phase_temperature(Phase::Plans), 0.2);
  EXPECT_DOUBLE_EQ(phase_temperature(Phase::Constraints), 0.2);
  const std::map<Phase, double> o{{Phase::Goals, 0.3}};
  EXPECT_DOUBLE_EQ(phase_temperature(Phase::Goals, &o), 0.3);
  EXPECT_EQ(error_of([] { (void)LlmRequest::make(Phase::Goals, "m", 1.5, "p"); }), Errc::ConfigError);
}

TEST(Gateway, ReplayOfBundledConstraintsPromptGivesReferenceConstraints) {
  const auto tpl = load_template(prompt_dir(), Phase::Constraints);
  const auto prompt = render_prompt(tpl, {{"system_name", "LOC"}, {"merged_doc", loc_merged_doc()}});
  GatewayOptions opt;
  opt.mode = LlmMode::Replay;
  opt.fixture_dir = fmutest_test::loc_dir() / "fixtures";
  LlmGateway gw(opt, nullptr);
  const auto resp = gw.complete(LlmRequest::make(Phase::Constraints, "gpt-4.1", 0.2, prompt));
  EXPECT_EQ(resp.mode, LlmMode::Replay);
  std::vector<std::string> reasons;
  const auto got = scenario::parse_constraint_set(nlohmann::json::parse(resp.raw_text), reasons);
  EXPECT_TRUE(reasons.empty());
  EXPECT_EQ(got, fmutest_test::expected_loc_constraints());
  EXPECT_EQ(nlohmann::json::parse(resp.raw_text),
            nlohmann::json::parse(fmutest_test::kLocConstraintsText));
}

TEST(Gateway, ReplayMissIsFixtureMiss) {
  fmutest_test::TempDir dir;
  GatewayOptions opt;
  opt.fixture_dir = dir.path();
  LlmGateway gw(opt, nullptr);
  EXPECT_EQ(error_of([&] { (void)gw.complete(LlmRequest::make(Phase::Goals, "m", 0.7, "unseen")); }),
            Errc::FixtureMiss);
}

TEST(Gateway, RecordThenReplayRoundTrip) {
  fmutest_test::TempDir dir;
  int calls = 0;
  auto provider = std::make_shared<CallbackProvider>([&](const LlmRequest& r) {
    ++calls;
    return "reply to " + r.prompt_digest;
  });
  const auto req = LlmRequest::make(Phase::Plans, "m", 0.2, "a prompt");
  GatewayOptions rec;
  rec.mode = LlmMode::Record;
  rec.fixture_dir = dir.path();
  const auto first = LlmGateway(rec, provider).complete(req);
  EXPECT_EQ(first.mode, LlmMode::Live);
  ASSERT_TRUE(first.latency_ms.has_value());
  const auto file = fixture_path(dir.path(), Phase::Plans, req.prompt_digest);
  ASSERT_TRUE(std::filesystem::exists(file));
  EXPECT_EQ(file.filename().string(), "plans-" + req.prompt_digest + ".json");
  const auto fixture = nlohmann::json::parse(read_file(file));
  EXPECT_EQ(fixture.at("prompt_digest"), req.prompt_digest);

  GatewayOptions rep = rec;
  rep.mode = LlmMode::Replay;
  const auto second = LlmGateway(rep, provider).complete(req);
  EXPECT_EQ(second.raw_text, first.raw_text);
  EXPECT_EQ(calls, 1);
}

TEST(Gateway, BudgetPerPhase) {
  auto provider = std::make_shared<CallbackProvider>([](const LlmRequest&) { return "ok"; });
  GatewayOptions opt;
  opt.mode = LlmMode::Live;
  opt.budget[Phase::Goals] = 2;
  LlmGateway gw(opt, provider);
  const auto req = LlmRequest::make(Phase::Goals, "m", 0.7, "p");
  (void)gw.complete(req);
  (void)gw.complete(req);
  EXPECT_EQ(error_of([&] { (void)gw.complete(req); }), Errc::BudgetExceeded);
  EXPECT_EQ(gw.requests(Phase::Goals), 2);
  (void)gw.complete(LlmRequest::make(Phase::Plans, "m", 0.2, "p"));
}

TEST(Gateway, JournalsBeforeSending) {
  fmutest_test::TempDir dir;
  const auto journal = dir.path() / "journal.jsonl";
  bool journaled_first = false;
  auto provider = std::make_shared<CallbackProvider>([&](const LlmRequest&) {
    journaled_first = std::filesystem::exists(journal) && !read_file(journal).empty();
    return "ok";
  });
  GatewayOptions opt;
  opt.mode = LlmMode::Live;
  opt.journal_path = journal;
  LlmGateway gw(opt, provider);
  const auto req = LlmRequest::make(Phase::Constraints, "model-x", 0.2, "p");
  (void)gw.complete(req);
  EXPECT_TRUE(journaled_first);
  const auto entry = nlohmann::json::parse(read_file(journal));
  EXPECT_EQ(entry.at("phase"), "constraints");
  EXPECT_EQ(entry.at("prompt_digest"), req.prompt_digest);
  EXPECT_EQ(entry.at("model"), "model-x");
  EXPECT_DOUBLE_EQ(entry.at("temperature").get<double>(), 0.2);
}

TEST(Gateway, RetriesOnceOnTransportFailureOnly) {
  int calls = 0;
  auto flaky = std::make_shared<CallbackProvider>([&](const LlmRequest&) -> std::string {
    if (++calls == 1) throw ProviderError(0, "connection reset");
    return "second time";
  });
  GatewayOptions opt;
  opt.mode = LlmMode::Live;
  EXPECT_EQ(LlmGateway(opt, flaky).complete(LlmRequest::make(Phase::Goals, "m", 0.7, "p")).raw_text,
            "second time");
  EXPECT_EQ(calls, 2);

  calls = 0;
  auto down = std::make_shared<CallbackProvider>([&](const LlmRequest&) -> std::string {
    ++calls;
    throw ProviderError(0, "refused");
  });
  EXPECT_EQ(error_of([&] { (void)LlmGateway(opt, down).complete(LlmRequest::make(Phase::Goals, "m", 0.7, "p")); }),
            Errc::ProviderError);
  EXPECT_EQ(calls, 2);

  calls = 0;
  auto http500 = std::make_shared<CallbackProvider>([&](const LlmRequest&) -> std::string {
    ++calls;
    throw ProviderError(500, "server error");
  });
  EXPECT_EQ(error_of([&] { (void)LlmGateway(opt, http500).complete(LlmRequest::make(Phase::Goals, "m", 0.7, "p")); }),
            Errc::ProviderError);
  EXPECT_EQ(calls, 1);
}

TEST(Providers, ScriptedServesPhaseFile) {
  auto p = make_provider("scripted:" + (fmutest_test::loc_dir() / "responses").string());
  EXPECT_EQ(p->name(), "scripted");
  const auto text = p->complete(LlmRequest::make(Phase::Constraints, "m", 0.2, "anything"));
  EXPECT_EQ(text, read_file(fmutest_test::loc_dir() / "responses" / "constraints.txt"));
  EXPECT_EQ(error_of([] { (void)make_provider("carrier-pigeon"); }), Errc::ConfigError);
}

TEST(Providers, HttpProviderSpeaksChatCompletions) {
  httplib::Server server;
  nlohmann::json seen;
  std::string auth;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen = nlohmann::json::parse(req.body);
    auth = req.get_header_value("Authorization");
    const nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "hello"}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  server.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
    res.status = 503;
    res.set_content("busy", "text/plain");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const std::string base = "http://127.0.0.1:" + std::to_string(port);
  HttpProvider ok({base + "/v1/chat/completions", "secret", 10});
  EXPECT_EQ(ok.complete(LlmRequest::make(Phase::Goals, "gpt-4.1", 0.7, "prompt text")), "hello");
  EXPECT_EQ(seen.at("model"), "gpt-4.1");
  EXPECT_DOUBLE_EQ(seen.at("temperature").get<double>(), 0.7);
  EXPECT_EQ(seen.at("messages").at(0).at("content"), "prompt text");
  EXPECT_EQ(auth, "Bearer secret");

  HttpProvider broken({base + "/broken", "", 10});
  try {
    (void)broken.complete(LlmRequest::make(Phase::Goals, "m", 0.7, "p"));
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.status(), 503);
  }
  server.stop();
  th.join();

  HttpProvider gone({base + "/v1/chat/completions", "", 2});
  try {
    (void)gone.complete(LlmRequest::make(Phase::Goals, "m", 0.7, "p"));
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.status(), 0);
  }
}
