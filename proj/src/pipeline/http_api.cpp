#include "fmutest/pipeline/http_api.hpp"

#include <httplib.h>

#include "fmutest/scenario/json_codec.hpp"
#include "fmutest/scenario/store.hpp"

namespace fmutest::pipeline {

using nlohmann::json;

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownItem: return 404;
    case Errc::IllegalTransition:
    case Errc::StageGateViolation: return 409;
    case Errc::Rejection:
    case Errc::InvalidEdit:
    case Errc::InvalidConfig:
    case Errc::ConfigError:
    case Errc::OutOfWindow: return 422;
    case Errc::ProviderError:
    case Errc::FixtureMiss:
    case Errc::BudgetExceeded: return 502;
    case Errc::EmptyRun:
    case Errc::NoPassingScenarios: return 409;
    default: return 500;
  }
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& detail) {
  send_json(res, status, {{"error", code}, {"detail", detail}});
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

Handler guarded(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const Rejection& e) {
      json body{{"error", "Rejection"}, {"detail", e.what()}, {"reasons", e.reasons()}};
      send_json(res, 422, body);
    } catch (const Error& e) {
      send_error(res, http_status(e.code()), errc_name(e.code()), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "BadRequest", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "Internal", e.what());
    }
  };
}

json request_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body);
  if (!j.is_object()) throw json::type_error::create(302, "request body must be an object", nullptr);
  return j;
}

std::optional<scenario::ReviewStatus> status_filter(const httplib::Request& req, httplib::Response& res,
                                                    bool& bad) {
  bad = false;
  if (!req.has_param("status")) return std::nullopt;
  const auto text = req.get_param_value("status");
  auto s = scenario::parse_review_status(text);
  if (!s) {
    bad = true;
    send_error(res, 400, "BadRequest", "unknown status '" + text + "'");
  }
  return s;
}

}  // namespace

HttpApi::HttpApi(Pipeline& pipeline, RunConfig defaults, std::optional<std::filesystem::path> static_dir)
    : pipeline_(pipeline), defaults_(std::move(defaults)), server_(std::make_unique<httplib::Server>()) {
  install_routes();
  if (static_dir) server_->set_mount_point("/", static_dir->string());
}

HttpApi::~HttpApi() { stop(); }

bool HttpApi::listen(const std::string& host, int port) { return server_->listen(host, port); }

int HttpApi::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpApi::listen_after_bind() { return server_->listen_after_bind(); }

void HttpApi::stop() {
  if (server_) server_->stop();
}

void HttpApi::install_routes() {
  auto& s = *server_;
  Pipeline& p = pipeline_;

  s.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"status", "ok"}});
  });

  s.Get("/runs", guarded([&p](const httplib::Request&, httplib::Response& res) {
    json out = json::array();
    for (const auto& id : p.store().list_runs()) out.push_back(to_json(p.state(id)));
    send_json(res, 200, out);
  }));

  s.Post("/runs", guarded([this, &p](const httplib::Request& req, httplib::Response& res) {
    const json body = request_body(req);
    json cfg_json = to_json(defaults_);
    if (body.contains("config")) cfg_json.merge_patch(body.at("config"));
    const RunConfig cfg = run_config_from_json(cfg_json, std::filesystem::current_path());
    std::optional<std::string> id;
    if (body.contains("run_id")) id = body.at("run_id").get<std::string>();
    const RunState st = p.create_run(cfg, id);
    send_json(res, 201, to_json(st));
  }));

  s.Get(R"(/runs/([^/]+))", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    const RunState st = p.state(req.matches[1]);
    json out = to_json(st);
    out["config"] = to_json(p.config(st.run_id));
    send_json(res, 200, out);
  }));

  s.Post(R"(/runs/([^/]+)/advance/([a-z_]+))",
         guarded([&p](const httplib::Request& req, httplib::Response& res) {
           const std::string stage = req.matches[2];
           auto target = parse_stage(stage);
           if (!target) {
             send_error(res, 400, "BadRequest", "unknown stage '" + stage + "'");
             return;
           }
           send_json(res, 200, to_json(p.advance(req.matches[1], *target)));
         }));

  s.Get(R"(/runs/([^/]+)/goals)", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    bool bad = false;
    const auto filter = status_filter(req, res, bad);
    if (bad) return;
    json out = json::array();
    for (const auto& g : p.goals(req.matches[1])) {
      if (!filter || g.review_status == *filter) out.push_back(scenario::to_json(g));
    }
    send_json(res, 200, out);
  }));

  s.Get(R"(/runs/([^/]+)/plans)", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    bool bad = false;
    const auto filter = status_filter(req, res, bad);
    if (bad) return;
    json out = json::array();
    for (const auto& pl : p.plans(req.matches[1])) {
      if (!filter || pl.review_status == *filter) out.push_back(scenario::to_json(pl));
    }
    send_json(res, 200, out);
  }));

  auto review = [&p](bool goal) {
    return guarded([&p, goal](const httplib::Request& req, httplib::Response& res) {
      const json body = request_body(req);
      const std::string text = body.value("decision", std::string());
      const auto decision = scenario::parse_decision(text);
      if (!decision) {
        send_error(res, 400, "BadRequest", "decision must be accept, reject or edit");
        return;
      }
      const json* payload = body.contains("payload") ? &body.at("payload") : nullptr;
      if (*decision == scenario::Decision::Edit && !payload) {
        send_error(res, 400, "BadRequest", "edit requires a payload");
        return;
      }
      if (goal) {
        send_json(res, 200, scenario::to_json(p.review_goal(req.matches[1], req.matches[2], *decision, payload)));
      } else {
        send_json(res, 200, scenario::to_json(p.review_plan(req.matches[1], req.matches[2], *decision, payload)));
      }
    });
  };
  s.Post(R"(/runs/([^/]+)/goals/([^/]+)/review)", review(true));
  s.Post(R"(/runs/([^/]+)/plans/([^/]+)/review)", review(false));

  s.Get(R"(/runs/([^/]+)/results)", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, p.results(req.matches[1]));
  }));

  s.Get(R"(/runs/([^/]+)/plots/([^/]+))", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, p.plot(req.matches[1], req.matches[2]));
  }));

  s.Get(R"(/runs/([^/]+)/mutation)", guarded([&p](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, p.mutation(req.matches[1]));
  }));
}

}  // namespace fmutest::pipeline
