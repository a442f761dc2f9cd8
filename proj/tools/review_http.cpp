#include "review_http.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace nade::review {

namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(nlohmann::json{{"error", message}}.dump(), kJson);
}

std::optional<Flow> flow_param(const httplib::Request& req, httplib::Response& res) {
  const auto name = req.get_param_value("flow");
  const auto flow = parse_flow(name);
  if (!flow) send_error(res, 400, fmt::format("unknown flow '{}'", name));
  return flow;
}

// Runs a handler, mapping workflow errors to HTTP statuses.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ReviewError& e) {
    send_error(res, http_status(e.kind()), e.what());
  } catch (const IoError& e) {
    send_error(res, 500, e.what());
  } catch (const ValidationError& e) {
    send_error(res, 400, e.what());
  }
}

}  // namespace

int http_status(ReviewError::Kind kind) {
  switch (kind) {
    case ReviewError::Kind::UnknownAnnotator:
    case ReviewError::Kind::UnknownTask:
      return 404;
    case ReviewError::Kind::NotAssigned:
    case ReviewError::Kind::SelfReview:
      return 403;
    case ReviewError::Kind::ClosedTask:
      return 409;
    case ReviewError::Kind::WrongFlow:
    case ReviewError::Kind::BadRequest:
      return 400;
  }
  return 400;
}

void mount_review_api(httplib::Server& server, ReviewStore& store,
                      const std::optional<std::string>& ui_dir) {
  server.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", kJson);
  });

  server.Get("/api/tasks/next", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_param("annotator")) {
        send_error(res, 400, "missing 'annotator' parameter");
        return;
      }
      const auto flow = flow_param(req, res);
      if (!flow) return;
      const auto task = store.next_task(req.get_param_value("annotator"), *flow);
      if (!task) {
        res.status = 204;
        return;
      }
      res.set_content(task_to_json(*task, store.status(task->task_id)), kJson);
    });
  });

  server.Post("/api/decisions", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto state = store.submit(decision_from_json(req.body));
      res.set_content(agreement_to_json(state), kJson);
    });
  });

  server.Get("/api/agreement", [&store](const httplib::Request&, httplib::Response& res) {
    res.set_content(report_to_json(store.report()), kJson);
  });

  server.Get("/api/export", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto flow = flow_param(req, res);
      if (!flow) return;
      res.set_content(store.export_accepted(*flow), "application/x-ndjson");
    });
  });

  if (ui_dir) server.set_mount_point("/", *ui_dir);
}

}  // namespace nade::review
