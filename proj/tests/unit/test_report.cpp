#include <doctest.h>

#include <sstream>

#include "nade/metrics.hpp"
#include "nade/report.hpp"
#include "test_support.hpp"

using namespace nade;

namespace {

std::vector<EvalReport> load_records(const std::string& name) {
  std::istringstream in(testing::read_file(testing::data_path(name)));
  std::vector<EvalReport> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse_record(line));
  }
  return out;
}

EvalReport point(std::string model, std::size_t k, double ade, double noade, double negade) {
  EvalReport r;
  r.model_id = std::move(model);
  r.config_id = "k" + std::to_string(k);
  r.fp_by_category = {ade, noade, negade};
  r.fp_total = ade + noade + negade;
  return r;
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("report formatting") {
  TEST_CASE("display rounding") {
    CHECK(format_fp(161.2) == "161.2");
    CHECK(format_fp(68.0) == "68.0");
    CHECK(format_fp(101.6 - 42.6 - 35.8) == "23.2");
    CHECK(format_score(0.5015) == "50.15");
    CHECK(format_score(0.656) == "65.60");
    CHECK(format_score(0.5678) == "56.78");
    CHECK(format_score(0.0) == "0.00");
    CHECK(parse_table_format("md") == TableFormat::Markdown);
    CHECK(file_extension(TableFormat::Tsv) == "tsv");
  }

  TEST_CASE("reference rows render byte-identically") {
    const auto fp = load_records("fixtures/table2_bert.records");
    CHECK(render_fp_table(fp, TableFormat::Tsv) == testing::read_file(testing::data_path("golden/table2_bert_fp.tsv")));
    CHECK(render_fp_table(fp, TableFormat::Markdown) ==
          testing::read_file(testing::data_path("golden/table2_bert_fp.md")));
    const auto scores = load_records("fixtures/table3_bert.records");
    CHECK(render_score_table(scores, TableFormat::Tsv) ==
          testing::read_file(testing::data_path("golden/table3_bert_scores.tsv")));
    CHECK(render_score_table(scores, TableFormat::Markdown) ==
          testing::read_file(testing::data_path("golden/table3_bert_scores.md")));
  }

  TEST_CASE("records render one line per report") {
    const auto fp = load_records("fixtures/table2_bert.records");
    const auto text = render_records(fp);
    CHECK(count(text, "\n") == fp.size());
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(to_record(parse_record(line)) == line);
  }
}

TEST_SUITE("curves") {
  TEST_CASE("points from the reference FP column") {
    auto reports = load_records("fixtures/table2_bert.records");
    EvalReport not_a_sweep = reports[0];
    not_a_sweep.config_id = "base";
    reports.push_back(not_a_sweep);
    const auto points = build_curves(reports);
    // BERT: 6 ks x 4 categories; the two k0-only pipeline series: 4 each.
    CHECK(points.size() == 32);
    std::vector<CurvePoint> bert;
    for (const auto& p : points) {
      if (p.series == "BERT") bert.push_back(p);
    }
    CHECK(render_curve_tsv(bert) == testing::read_file(testing::data_path("golden/figure_curve_bert.tsv")));
  }

  TEST_CASE("category series sum to the total series pointwise") {
    std::vector<EvalReport> reports{point("M", 100, 3, 4, 5), point("M", 0, 10, 2, 1.2),
                                    point("M+NegEx", 0, 9, 2, 0.2)};
    const auto points = build_curves(reports);
    REQUIRE(points.size() == 12);
    CHECK(points[0].k == 0);
    CHECK(points[1].k == 100);
    for (const auto& series : {"M", "M+NegEx"}) {
      for (std::size_t k : {0u, 100u}) {
        double total = -1, parts = 0;
        for (const auto& p : points) {
          if (p.series != series || p.k != k) continue;
          if (p.category == "total") {
            total = p.fp;
          } else {
            parts += p.fp;
          }
        }
        if (total >= 0) CHECK(parts == doctest::Approx(total).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("svg chart carries every series and point") {
    const auto points = build_curves(load_records("fixtures/table2_bert.records"));
    const auto svg = render_curve_svg(points);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "<g class=\"series\"") == 12);
    CHECK(svg.find("data-points=\"0:161.2 50:146.6 100:166.8 150:125.8 200:105.4 253:101.6\"") !=
          std::string::npos);
    CHECK(svg.find("BERT+NegEx") != std::string::npos);
    CHECK(count(svg, "<svg") == count(svg, "</svg>"));
    CHECK(count(svg, "<g") == count(svg, "</g>"));

    const std::vector<CurvePoint> single{{"M", "total", 50, 12.0}};
    const auto one = render_curve_svg(single);
    CHECK(one.find("data-points=\"50:12.0\"") != std::string::npos);
    CHECK(one.find("nan") == std::string::npos);
    CHECK(render_curve_svg({}).find("</svg>") != std::string::npos);
  }
}
