#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "nade/corpus.hpp"
#include "nade/error.hpp"
#include "nade/experiment.hpp"
#include "nade/negex.hpp"
#include "nade/pipeline.hpp"
#include "nade/report.hpp"
#include "nade/text.hpp"

namespace nade::cli {

namespace {

struct CommonNegex {
  std::string lexicon;
  std::size_t window = NegexConfig{}.window;
};

void add_negex_options(CLI::App& cmd, CommonNegex& opts) {
  cmd.add_option("--lexicon", opts.lexicon,
                 fmt::format("Cue lexicon file (default: ${} or the built-in lexicon)", kLexiconEnv));
  cmd.add_option("--window", opts.window, "Maximum scope length in tokens")
      ->check(CLI::PositiveNumber);
}

std::optional<std::string> lexicon_path(const CommonNegex& opts) {
  if (!opts.lexicon.empty()) return opts.lexicon;
  if (const char* env = std::getenv(kLexiconEnv); env && *env) return std::string(env);
  return std::nullopt;
}

CueLexicon resolve_lexicon(const CommonNegex& opts, std::ostream& err) {
  const auto path = lexicon_path(opts);
  if (!path) return default_lexicon();
  std::vector<std::string> warnings;
  auto lexicon = load_lexicon_file(*path, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  return lexicon;
}

NegexConfig negex_config(const CommonNegex& opts) {
  NegexConfig config;
  config.window = opts.window;
  return config;
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Wraps each span in [[ ]] markers; spans are code-point offsets.
std::string highlight(const std::string& text, const std::vector<Span>& spans) {
  const auto offsets = codepoint_byte_offsets(text);
  std::string out;
  std::size_t cursor = 0;
  for (const auto& s : sorted_spans(spans)) {
    out += text.substr(cursor, offsets[s.start] - cursor);
    out += "[[" + text.substr(offsets[s.start], offsets[s.end] - offsets[s.start]) + "]]";
    cursor = offsets[s.end];
  }
  out += text.substr(cursor);
  return out;
}

struct EvalOptions {
  std::string corpus;
  std::vector<std::string> predictions;
  std::vector<std::string> detectors{"none"};
  CommonNegex negex;
  std::string match_mode = "relaxed";
  std::string format = "tsv";
  std::string out;
  std::vector<std::string> ks;
};

void add_eval_options(CLI::App& cmd, EvalOptions& opts) {
  cmd.add_option("--corpus", opts.corpus, "Corpus file (JSON lines)")->required();
  cmd.add_option("--predictions", opts.predictions, "Prediction files or glob patterns")
      ->required();
  cmd.add_option("--detector", opts.detectors, "Variant per value: none | negex | file:PATH");
  add_negex_options(cmd, opts.negex);
  cmd.add_option("--match-mode", opts.match_mode, "relaxed | strict")
      ->check(CLI::IsMember({"relaxed", "strict"}));
  cmd.add_option("--format", opts.format, "tsv | markdown")
      ->check(CLI::IsMember({"tsv", "markdown", "md"}));
  cmd.add_option("--out", opts.out, "Output directory for report files");
}

ExperimentSpec to_spec(const EvalOptions& opts) {
  ExperimentSpec spec;
  spec.corpus_path = opts.corpus;
  spec.prediction_paths = expand_globs(opts.predictions);
  spec.detectors.clear();
  for (const auto& d : opts.detectors) spec.detectors.push_back(DetectorChoice::parse(d));
  spec.lexicon_path = lexicon_path(opts.negex);
  spec.negex = negex_config(opts.negex);
  spec.mode = *parse_match_mode(opts.match_mode);
  for (const auto& k : opts.ks) {
    if (k == "presets") {
      spec.ks.insert(spec.ks.end(), std::begin(kSweepPresets), std::end(kSweepPresets));
      continue;
    }
    std::size_t value = 0;
    std::size_t used = 0;
    try {
      value = std::stoul(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != k.size()) throw ValidationError(fmt::format("bad --k value '{}'", k));
    spec.ks.push_back(value);
  }
  return spec;
}

void emit_bundle(const ReportBundle& bundle, const EvalOptions& opts, std::ostream& out,
                 std::ostream& err) {
  const auto format = *parse_table_format(opts.format);
  out << render_fp_table(bundle.reports, format) << '\n'
      << render_score_table(bundle.reports, format);
  if (!bundle.curve.empty() && opts.out.empty()) out << '\n' << render_curve_tsv(bundle.curve);
  for (const auto& w : bundle.warnings) err << "warning: " << w << '\n';
  if (!opts.out.empty()) write_bundle(bundle, opts.out, format);
}

int cmd_detect(const std::string& text_arg, const std::string& input, const std::string& corpus,
               const CommonNegex& opts, std::ostream& out, std::ostream& err) {
  const auto lexicon = resolve_lexicon(opts, err);
  const auto config = negex_config(opts);
  if (!corpus.empty()) {
    NegexDetector detector{&lexicon, config, "NegEx"};
    save_predictions(out, export_scopes(load_corpus_file(corpus).samples(), detector));
    return kExitOk;
  }
  std::vector<std::string> lines;
  if (!input.empty()) {
    if (input == "-") {
      lines = split_lines(read_all(std::cin));
    } else {
      std::ifstream in(input);
      if (!in) throw IoError(fmt::format("cannot open input '{}'", input));
      lines = split_lines(read_all(in));
    }
  } else {
    lines = {text_arg};
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& text = lines[i];
    for (const auto& scope : detect(text, lexicon, config)) {
      out << fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", i + 1, scope.cue.span.start,
                         scope.cue.span.end, to_string(scope.cue.category),
                         slice_codepoints(text, scope.cue.span.start, scope.cue.span.end),
                         scope.span.start, scope.span.end,
                         slice_codepoints(text, scope.span.start, scope.span.end));
    }
  }
  return kExitOk;
}

int cmd_recover(const std::string& corpus_path, const std::string& out_path,
                const CommonNegex& opts, std::ostream& out, std::ostream& err) {
  const auto corpus = load_corpus_file(corpus_path);
  const auto lexicon = resolve_lexicon(opts, err);
  std::ostringstream doc;
  std::uint64_t task_id = 0;
  for (const auto& s : cue_filter(corpus.samples(), lexicon)) {
    nlohmann::ordered_json record;
    record["task_id"] = ++task_id;
    record["flow"] = "recovery";
    record["sample_id"] = s.id;
    record["text"] = s.text;
    auto cues = nlohmann::ordered_json::array();
    std::vector<Span> spans;
    for (const auto& cue : find_cues(tokenize(s.text), lexicon)) {
      if (cue.category != CueCategory::Pre && cue.category != CueCategory::Post) continue;
      cues.push_back({cue.span.start, cue.span.end, std::string(to_string(cue.category))});
      spans.push_back(cue.span);
    }
    record["cues"] = std::move(cues);
    record["highlighted"] = highlight(s.text, spans);
    doc << record.dump() << '\n';
  }
  if (out_path.empty()) {
    out << doc.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw IoError(fmt::format("cannot write '{}'", out_path));
    file << doc.str();
    if (!file) throw IoError(fmt::format("failed writing '{}'", out_path));
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Negation-aware ADE extraction toolkit"};
  app.require_subcommand(1);

  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Score prediction files, optionally through a negation pipeline");
  add_eval_options(*eval, eval_opts);

  EvalOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "FP-vs-k curves over augmentation configs");
  add_eval_options(*sweep, sweep_opts);
  sweep->add_option("--k", sweep_opts.ks, "Expected k values, or 'presets' for 0,50,...,253");

  std::string detect_text;
  std::string detect_input;
  std::string detect_corpus;
  CommonNegex detect_opts;
  auto* detect_cmd = app.add_subcommand("detect", "List negation scopes");
  auto* text_opt = detect_cmd->add_option("--text", detect_text, "Text to analyze");
  auto* input_opt = detect_cmd->add_option("--input", detect_input, "File with one text per line ('-' = stdin)");
  auto* corpus_opt = detect_cmd->add_option("--corpus", detect_corpus, "Write a scope prediction file for a corpus");
  text_opt->excludes(input_opt)->excludes(corpus_opt);
  input_opt->excludes(corpus_opt);
  add_negex_options(*detect_cmd, detect_opts);

  std::string recover_corpus;
  std::string recover_out;
  CommonNegex recover_opts;
  auto* recover = app.add_subcommand("recover", "Keep samples containing a PRE/POST cue, as review tasks");
  recover->add_option("--corpus", recover_corpus, "Corpus file")->required();
  recover->add_option("--out", recover_out, "Candidate file (default: stdout)");
  add_negex_options(*recover, recover_opts);

  std::string summary_corpus;
  auto* summary = app.add_subcommand("summary", "Sample counts per split and category");
  summary->add_option("--corpus", summary_corpus, "Corpus file")->required();

  std::string config_corpus;
  std::vector<std::size_t> config_ks;
  std::optional<std::uint64_t> config_seed;
  auto* config_cmd = app.add_subcommand("config", "Training-set composition for augmentation sizes");
  config_cmd->add_option("--corpus", config_corpus, "Corpus file")->required();
  config_cmd->add_option("--k", config_ks, "negADE_G samples to include (default: presets)");
  config_cmd->add_option("--seed", config_seed, "Shuffle negADE_G order with this seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (auto* sub : app.get_subcommands()) err << sub->help();
    return kExitValidation;
  }

  try {
    if (eval->parsed()) {
      emit_bundle(run_eval(to_spec(eval_opts)), eval_opts, out, err);
    } else if (sweep->parsed()) {
      emit_bundle(run_sweep(to_spec(sweep_opts)), sweep_opts, out, err);
    } else if (detect_cmd->parsed()) {
      return cmd_detect(detect_text, detect_input, detect_corpus, detect_opts, out, err);
    } else if (recover->parsed()) {
      return cmd_recover(recover_corpus, recover_out, recover_opts, out, err);
    } else if (summary->parsed()) {
      out << render_partition_summary(partition_summary(load_corpus_file(summary_corpus)));
    } else if (config_cmd->parsed()) {
      const auto corpus = load_corpus_file(config_corpus);
      if (config_ks.empty()) config_ks.assign(std::begin(kSweepPresets), std::end(kSweepPresets));
      for (const auto k : config_ks) {
        const auto config = build_config(corpus, k, config_seed);
        out << config.id;
        for (const auto& id : config.training_ids()) out << '\t' << id;
        out << '\n';
      }
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace nade::cli
