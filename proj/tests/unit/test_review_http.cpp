#include <doctest.h>

#include <thread>

#include <json.hpp>

#include "nade/corpus.hpp"
#include "review_http.hpp"
#include "review_session.hpp"
#include "test_support.hpp"

using namespace nade;
using namespace nade::review;
using nlohmann::json;

namespace {

/// Serves the review API on an ephemeral localhost port for one test.
class TestServer {
 public:
  TestServer(ReviewStore& store, std::optional<std::string> ui_dir = std::nullopt) {
    mount_review_api(server_, store, ui_dir);
    port_ = server_.bind_to_any_port("127.0.0.1");
    REQUIRE(port_ > 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_connection_timeout(5);
    c.set_read_timeout(5);
    return c;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

std::string decision_body(std::uint64_t task, const std::string& annotator, const std::string& verdict) {
  return json{{"task_id", task}, {"annotator_id", annotator}, {"verdict", verdict}}.dump();
}

}  // namespace

TEST_SUITE("review http") {
  TEST_CASE("health, next task and decisions") {
    ReviewStore store(testing::session_tasks(), testing::kAnnotators);
    TestServer server(store);
    auto cli = server.client();

    auto health = cli.Get("/api/health");
    REQUIRE(health);
    CHECK(health->status == 200);
    CHECK(json::parse(health->body)["status"] == "ok");

    auto next = cli.Get("/api/tasks/next?annotator=ann1&flow=recovery");
    REQUIRE(next);
    CHECK(next->status == 200);
    const auto task = json::parse(next->body);
    CHECK(task["task_id"] == 1);
    CHECK(task["status"] == "open");
    CHECK(task["cues"][0] == json::array({56, 58}));

    auto gen = cli.Get("/api/tasks/next?annotator=ann1&flow=generation");
    REQUIRE(gen);
    CHECK(json::parse(gen->body)["task_id"] == 8);
    CHECK(json::parse(gen->body)["original_text"] == "Tamiflu gave me awful nightmares.");

    auto posted = cli.Post("/api/decisions", decision_body(1, "ann1", "NEGATES_ADE"), "application/json");
    REQUIRE(posted);
    CHECK(posted->status == 200);
    const auto state = json::parse(posted->body);
    CHECK(state["resolution"] == "pending");
    CHECK(state["decided"] == 1);
    CHECK(state["assigned"] == 4);
  }

  TEST_CASE("error statuses") {
    ReviewStore store(testing::session_tasks(), testing::kAnnotators);
    TestServer server(store);
    auto cli = server.client();
    CHECK(cli.Get("/api/tasks/next?annotator=ann1")->status == 400);
    CHECK(cli.Get("/api/tasks/next?annotator=ann1&flow=sideways")->status == 400);
    CHECK(cli.Get("/api/tasks/next?annotator=nobody&flow=recovery")->status == 404);
    CHECK(cli.Post("/api/decisions", "{broken", "application/json")->status == 400);
    CHECK(cli.Post("/api/decisions", decision_body(99, "ann1", "INVALID"), "application/json")->status == 404);
    CHECK(cli.Post("/api/decisions", decision_body(7, "ann1", "APPROVE"), "application/json")->status == 403);
    CHECK(cli.Post("/api/decisions", decision_body(1, "ann1", "APPROVE"), "application/json")->status == 400);
    for (const auto& a : testing::kAnnotators) {
      CHECK(cli.Post("/api/decisions", decision_body(4, a, "INVALID"), "application/json")->status == 200);
    }
    auto closed = cli.Post("/api/decisions", decision_body(4, "ann1", "NEGATES_ADE"), "application/json");
    CHECK(closed->status == 409);
    CHECK(json::parse(closed->body).contains("error"));
    CHECK(cli.Get("/api/export?flow=nope")->status == 400);
  }

  TEST_CASE("a full session over HTTP matches the in-process store") {
    ReviewStore store(testing::session_tasks(), testing::kAnnotators);
    TestServer server(store);
    auto cli = server.client();
    const auto script = testing::session_script();
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& a : testing::kAnnotators) {
        for (const char* flow : {"recovery", "generation"}) {
          auto res = cli.Get(("/api/tasks/next?annotator=" + a + "&flow=" + flow).c_str());
          REQUIRE(res);
          if (res->status == 204) continue;
          REQUIRE(res->status == 200);
          progress = true;
          const std::uint64_t id = json::parse(res->body)["task_id"];
          const auto verdict = std::string(to_string(script.at({id, a})));
          REQUIRE(cli.Post("/api/decisions", decision_body(id, a, verdict), "application/json")->status == 200);
        }
      }
    }
    auto report = json::parse(cli.Get("/api/agreement")->body);
    CHECK(report["recovery"]["accepted"] == 3);
    CHECK(report["recovery"]["rejected"] == 2);
    CHECK(report["recovery"]["discarded"] == 1);
    CHECK(report["generation"]["accepted"] == 2);
    CHECK(report["annotators"]["ann3"] == 9);

    auto exported = cli.Get("/api/export?flow=generation");
    REQUIRE(exported);
    CHECK(exported->get_header_value("Content-Type") == "application/x-ndjson");
    std::istringstream in(exported->body);
    const auto corpus = load_corpus(in);
    CHECK(corpus.size() == 2);
    CHECK(corpus.find("g_r01")->origin_id == "r01");
  }

  TEST_CASE("static UI hosting") {
    testing::TempDir dir("ui");
    testing::write_file(dir / "index.html", "<html>review</html>");
    ReviewStore store(testing::session_tasks(), testing::kAnnotators);
    TestServer server(store, dir.path().string());
    auto cli = server.client();
    auto page = cli.Get("/index.html");
    REQUIRE(page);
    CHECK(page->status == 200);
    CHECK(page->body == "<html>review</html>");
    CHECK(cli.Get("/api/health")->status == 200);
  }
}
