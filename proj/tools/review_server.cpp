// nade-review: HTTP service for the human curation workflows.
//
// State is rebuilt on startup by replaying the decision log over the task
// file, then every accepted decision is appended to the same log.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "review_http.hpp"

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* value = std::getenv(name);
  return value && *value ? std::string(value) : std::move(fallback);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Review service for negation candidate curation"};
  std::string tasks_path = env_or("NADE_REVIEW_TASKS", "");
  std::string log_path = env_or("NADE_REVIEW_LOG", "decisions.jsonl");
  std::string annotators = env_or("NADE_REVIEW_ANNOTATORS", "");
  std::string host = env_or("NADE_REVIEW_HOST", "127.0.0.1");
  int port = std::atoi(env_or("NADE_REVIEW_PORT", "8080").c_str());
  std::string ui_dir;
  app.add_option("--tasks", tasks_path, "Task file (JSON lines; `nade recover` output works)");
  app.add_option("--log", log_path, "Append-only decision log");
  app.add_option("--annotators", annotators, "Comma-separated annotator ids");
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Port");
  app.add_option("--ui-dir", ui_dir, "Static review UI bundle to serve at /");
  CLI11_PARSE(app, argc, argv);

  try {
    if (tasks_path.empty()) throw nade::ValidationError("--tasks (or NADE_REVIEW_TASKS) is required");
    nade::review::ReviewStore store(nade::review::load_tasks_file(tasks_path), split_csv(annotators));
    if (std::ifstream existing(log_path); existing) store.replay(existing);
    std::ofstream log(log_path, std::ios::app);
    if (!log) throw nade::IoError(fmt::format("cannot open decision log '{}'", log_path));
    store.attach_log(&log);

    httplib::Server server;
    nade::review::mount_review_api(server, store,
                                   ui_dir.empty() ? std::nullopt : std::optional(ui_dir));
    std::cerr << fmt::format("nade-review: {} decisions replayed, listening on {}:{}\n",
                             store.decisions().size(), host, port);
    if (!server.listen(host, port)) {
      std::cerr << fmt::format("error: cannot listen on {}:{}\n", host, port);
      return 2;
    }
  } catch (const nade::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nade::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
