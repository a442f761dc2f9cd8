#include "nade/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "nade/corpus.hpp"

namespace nade {

std::optional<TableFormat> parse_table_format(std::string_view name) {
  if (name == "tsv") return TableFormat::Tsv;
  if (name == "markdown" || name == "md") return TableFormat::Markdown;
  return std::nullopt;
}

std::string_view file_extension(TableFormat format) {
  return format == TableFormat::Tsv ? "tsv" : "md";
}

std::string format_fp(double fp) { return fmt::format("{:.1f}", fp); }

std::string format_score(double ratio) { return fmt::format("{:.2f}", 100.0 * ratio); }

namespace {

struct Column {
  std::string header;
  bool numeric = false;
};

std::string render_table(const std::vector<Column>& columns,
                         const std::vector<std::vector<std::string>>& rows, TableFormat format) {
  std::string out;
  if (format == TableFormat::Tsv) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out += (i ? "\t" : "") + columns[i].header;
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + row[i];
      out += '\n';
    }
    return out;
  }
  out += "|";
  for (const auto& c : columns) out += " " + c.header + " |";
  out += "\n|";
  for (const auto& c : columns) out += c.numeric ? "---:|" : ":---|";
  out += '\n';
  for (const auto& row : rows) {
    out += "|";
    for (const auto& cell : row) out += " " + cell + " |";
    out += '\n';
  }
  return out;
}

}  // namespace

std::string render_fp_table(std::span<const EvalReport> reports, TableFormat format) {
  const std::vector<Column> columns{{"Model", false}, {"Config", false}, {"FP", true},
                                    {"ADE", true},    {"noADE", true},   {"negADE", true},
                                    {"Runs", true},   {"Mode", false}};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    rows.push_back({r.model_id, r.config_id, format_fp(r.fp_total), format_fp(r.fp(FpBucket::ADE)),
                    format_fp(r.fp(FpBucket::NoADE)), format_fp(r.fp(FpBucket::NegADE)),
                    std::to_string(r.runs), std::string(to_string(r.mode))});
  }
  return render_table(columns, rows, format);
}

std::string render_score_table(std::span<const EvalReport> reports, TableFormat format) {
  const std::vector<Column> columns{{"Model", false}, {"Config", false}, {"P", true},
                                    {"R", true},      {"F1", true},      {"Runs", true},
                                    {"Mode", false}};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    rows.push_back({r.model_id, r.config_id, format_score(r.precision), format_score(r.recall),
                    format_score(r.f1), std::to_string(r.runs), std::string(to_string(r.mode))});
  }
  return render_table(columns, rows, format);
}

std::string render_records(std::span<const EvalReport> reports) {
  std::string out;
  for (const auto& r : reports) out += to_record(r) + '\n';
  return out;
}

std::vector<CurvePoint> build_curves(std::span<const EvalReport> reports) {
  std::vector<std::string> series_order;
  for (const auto& r : reports) {
    if (!k_from_config_id(r.config_id)) continue;
    if (std::find(series_order.begin(), series_order.end(), r.model_id) == series_order.end()) {
      series_order.push_back(r.model_id);
    }
  }
  std::vector<CurvePoint> points;
  for (const auto& series : series_order) {
    std::vector<const EvalReport*> mine;
    for (const auto& r : reports) {
      if (r.model_id == series && k_from_config_id(r.config_id)) mine.push_back(&r);
    }
    std::stable_sort(mine.begin(), mine.end(), [](const EvalReport* a, const EvalReport* b) {
      return *k_from_config_id(a->config_id) < *k_from_config_id(b->config_id);
    });
    for (const auto category : kCurveCategories) {
      for (const auto* r : mine) {
        double fp = r->fp_total;
        if (category == "ADE") fp = r->fp(FpBucket::ADE);
        if (category == "noADE") fp = r->fp(FpBucket::NoADE);
        if (category == "negADE") fp = r->fp(FpBucket::NegADE);
        points.push_back(CurvePoint{series, std::string(category), *k_from_config_id(r->config_id), fp});
      }
    }
  }
  return points;
}

std::string render_curve_tsv(std::span<const CurvePoint> points) {
  std::string out = "series\tcategory\tk\tfp\n";
  for (const auto& p : points) {
    out += fmt::format("{}\t{}\t{}\t{}\n", p.series, p.category, p.k, format_fp(p.fp));
  }
  return out;
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::string_view kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                         "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string render_curve_svg(std::span<const CurvePoint> points) {
  constexpr double kWidth = 760;
  constexpr double kPanelHeight = 220;
  constexpr double kLeft = 70;
  constexpr double kRight = 200;  // legend column
  constexpr double kTop = 30;
  constexpr double kBottom = 40;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kPanelHeight - kTop - kBottom;

  std::vector<std::string> series;
  std::vector<std::size_t> ks;
  for (const auto& p : points) {
    if (std::find(series.begin(), series.end(), p.series) == series.end()) series.push_back(p.series);
    ks.push_back(p.k);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  const double k_min = ks.empty() ? 0.0 : static_cast<double>(ks.front());
  const double k_max = ks.empty() ? 1.0 : static_cast<double>(ks.back());

  std::vector<std::string_view> categories;
  for (const auto c : kCurveCategories) {
    if (std::any_of(points.begin(), points.end(), [&](const auto& p) { return p.category == c; })) {
      categories.push_back(c);
    }
  }
  const double height = kPanelHeight * static_cast<double>(std::max<std::size_t>(categories.size(), 1));

  std::ostringstream svg;
  svg << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"11\">\n",
      kWidth, height, kWidth, height);
  svg << fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth, height);

  for (std::size_t panel = 0; panel < categories.size(); ++panel) {
    const auto category = categories[panel];
    const double y0 = kPanelHeight * static_cast<double>(panel);
    double fp_max = 0.0;
    for (const auto& p : points) {
      if (p.category == category) fp_max = std::max(fp_max, p.fp);
    }
    const double y_max = fp_max > 0 ? fp_max * 1.1 : 1.0;
    auto x_of = [&](double k) {
      return k_max > k_min ? kLeft + (k - k_min) / (k_max - k_min) * plot_w : kLeft + plot_w / 2;
    };
    auto y_of = [&](double fp) { return y0 + kTop + plot_h - fp / y_max * plot_h; };

    svg << fmt::format("<g class=\"panel\" data-category=\"{}\">\n", category);
    svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-weight=\"bold\">FP ({})</text>\n",
                       kLeft, y0 + kTop - 10, category);
    svg << fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
        kLeft, y0 + kTop, y0 + kTop + plot_h);
    svg << fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{2:.2f}\" x2=\"{1:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
        kLeft, kLeft + plot_w, y0 + kTop + plot_h);
    for (const auto k : ks) {
      const double x = x_of(static_cast<double>(k));
      svg << fmt::format(
          "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x,
          y0 + kTop + plot_h + 15, k);
    }
    for (int tick = 0; tick <= 4; ++tick) {
      const double v = y_max * tick / 4.0;
      svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.1f}</text>\n",
                         kLeft - 5, y_of(v) + 4, v);
    }
    svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">negADE_G samples in training</text>\n",
                       kLeft + plot_w / 2, y0 + kTop + plot_h + 30);

    for (std::size_t si = 0; si < series.size(); ++si) {
      std::vector<const CurvePoint*> mine;
      for (const auto& p : points) {
        if (p.series == series[si] && p.category == category) mine.push_back(&p);
      }
      if (mine.empty()) continue;
      const auto color = kPalette[si % std::size(kPalette)];
      std::string data;
      std::string coords;
      for (const auto* p : mine) {
        data += fmt::format("{}{}:{}", data.empty() ? "" : " ", p->k, format_fp(p->fp));
        coords += fmt::format("{}{:.2f},{:.2f}", coords.empty() ? "" : " ",
                              x_of(static_cast<double>(p->k)), y_of(p->fp));
      }
      svg << fmt::format(
          "<g class=\"series\" data-series=\"{}\" data-category=\"{}\" data-points=\"{}\">\n",
          xml_escape(series[si]), category, data);
      svg << fmt::format(
          "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", color,
          coords);
      for (const auto* p : mine) {
        svg << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n",
                           x_of(static_cast<double>(p->k)), y_of(p->fp), color);
      }
      svg << "</g>\n";
      const double ly = y0 + kTop + 14.0 * static_cast<double>(si);
      svg << fmt::format(
          "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
          "stroke-width=\"2\"/>\n",
          kLeft + plot_w + 15, ly, kLeft + plot_w + 35, ly, color);
      svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kLeft + plot_w + 40,
                         ly + 4, xml_escape(series[si]));
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace nade
