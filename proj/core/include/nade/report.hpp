#ifndef NADE_REPORT_HPP_
#define NADE_REPORT_HPP_

// Deterministic rendering of evaluation reports: FP and P/R/F1 tables in
// TSV or Markdown, FP-vs-k curve data, and a standalone SVG line chart.
//
// Display rounding: FP counts to one decimal, scores as percentages with two
// decimals, reductions to whole percents.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nade/metrics.hpp"

namespace nade {

enum class TableFormat { Tsv, Markdown };

std::optional<TableFormat> parse_table_format(std::string_view name);
std::string_view file_extension(TableFormat format);

std::string format_fp(double fp);
std::string format_score(double ratio);

std::string render_fp_table(std::span<const EvalReport> reports, TableFormat format);
std::string render_score_table(std::span<const EvalReport> reports, TableFormat format);

/// One line per report, see to_record().
std::string render_records(std::span<const EvalReport> reports);

struct CurvePoint {
  std::string series;    // variant label
  std::string category;  // "total", "ADE", "noADE", "negADE"
  std::size_t k = 0;
  double fp = 0.0;
};

inline constexpr std::string_view kCurveCategories[] = {"total", "ADE", "noADE", "negADE"};

/// Points for every report whose config id encodes k ("k50"); others are
/// ignored. Ordered by series (first appearance), category, then k.
std::vector<CurvePoint> build_curves(std::span<const EvalReport> reports);

std::string render_curve_tsv(std::span<const CurvePoint> points);

/// One panel per category, one polyline plus markers per series. Each
/// series group carries data-series, data-category and data-points
/// ("k:fp k:fp ...", fp formatted as in the TSV) attributes.
std::string render_curve_svg(std::span<const CurvePoint> points);

}  // namespace nade

#endif  // NADE_REPORT_HPP_
