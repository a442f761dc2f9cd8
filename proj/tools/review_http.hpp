#ifndef NADE_TOOLS_REVIEW_HTTP_HPP_
#define NADE_TOOLS_REVIEW_HTTP_HPP_

#include <optional>
#include <string>

#include <httplib.h>

#include "nade/review.hpp"

namespace nade::review {

/// Registers the review API on `server`:
///
///   GET  /api/health
///   GET  /api/tasks/next?annotator=ID&flow=recovery|generation   (204 when empty)
///   POST /api/decisions        {"task_id","annotator_id","verdict","comment"?,"timestamp"?}
///   GET  /api/agreement
///   GET  /api/export?flow=recovery|generation                    (corpus JSON lines)
///
/// When `ui_dir` is set, its files are served from "/".
void mount_review_api(httplib::Server& server, ReviewStore& store,
                      const std::optional<std::string>& ui_dir = std::nullopt);

int http_status(ReviewError::Kind kind);

}  // namespace nade::review

#endif  // NADE_TOOLS_REVIEW_HTTP_HPP_
