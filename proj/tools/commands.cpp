#include "commands.hpp"

#include <CLI11.hpp>
#include <exception>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "condsplit/corpus_stats.hpp"
#include "condsplit/errors.hpp"
#include "condsplit/eval.hpp"
#include "condsplit/iob.hpp"
#include "condsplit/process_graph.hpp"

namespace condsplit::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "-" is standard input.
class InputFile {
 public:
  explicit InputFile(const std::string& path) {
    if (path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw IoError("cannot open input file " + path);
  }

  std::istream& stream() { return file_.is_open() ? static_cast<std::istream&>(file_) : std::cin; }

 private:
  std::ifstream file_;
};

// "-" is the caller's data stream.
class OutputFile {
 public:
  OutputFile(const std::string& path, std::ostream& fallback) : fallback_(fallback), path_(path) {
    if (path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot open output file " + path);
  }

  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failed for " + (path_ == "-" ? "standard output" : path_));
  }

 private:
  std::ostream& fallback_;
  std::string path_;
  std::ofstream file_;
};

template <typename F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    log << "condsplit: error: " << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    log << "condsplit: error: " << e.what() << '\n';
    return kDataError;
  } catch (const ValidationError& e) {
    log << "condsplit: error: " << e.what() << '\n';
    return kDataError;
  } catch (const EmptyInputError& e) {
    log << "condsplit: error: " << e.what() << '\n';
    return kDataError;
  } catch (const Error& e) {
    log << "condsplit: error: " << e.what() << '\n';
    return kIoError;
  }
}

void report_issues(std::ostream& log, const std::vector<ReadIssue>& issues, const std::string& source) {
  for (const auto& issue : issues)
    log << "condsplit: warning: " << source << ": skipped line " << issue.line << ": " << issue.message
        << '\n';
  if (!issues.empty()) log << "condsplit: " << source << ": skipped " << issues.size() << " record(s)\n";
}

// Applies `fn` to every item on `jobs` worker threads; results keep input
// order. The first exception in input order is rethrown after all workers
// finish.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, std::size_t jobs, F&& fn) {
  using R = decltype(fn(items.front()));
  std::vector<R> results(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  auto work = [&](std::size_t worker, std::size_t stride) {
    for (std::size_t i = worker; i < items.size(); i += stride) {
      try {
        results[i] = fn(items[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(jobs, items.size());
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w, workers);
  }
  for (auto& error : errors)
    if (error) std::rethrow_exception(error);
  return results;
}

std::vector<AnnotatedSentence> read_all_doccano(const std::string& path, ParseMode mode,
                                                std::ostream& log) {
  InputFile input(path);
  DoccanoReader reader(input.stream(), mode);
  std::vector<AnnotatedSentence> out;
  while (auto sentence = reader.next()) out.push_back(std::move(*sentence));
  report_issues(log, reader.issues(), path);
  return out;
}

ordered_json trace_json(const std::vector<RuleTrace>& trace) {
  ordered_json out = ordered_json::array();
  for (const auto& entry : trace)
    out.push_back({{"stage", std::string(to_string(entry.stage))},
                   {"rule", entry.rule_id},
                   {"tokens", {entry.tokens.begin, entry.tokens.end}},
                   {"note", entry.note}});
  return out;
}

}  // namespace

RuleSplitter make_splitter(const RunConfig& config) {
  SplitterOptions options = config.extended_patterns ? SplitterOptions::extended() : SplitterOptions{};
  for (const auto& pattern : config.patterns) {
    if (pattern == "imperative-and")
      options.imperative_and_pattern = true;
    else if (pattern == "interrogative")
      options.interrogative_pattern = true;
    else if (pattern == "for-phrase")
      options.for_phrase_pattern = true;
    else
      throw ValidationError("unknown pattern " + pattern);
  }
  options.min_weak_cues = config.min_weak_cues;
  Lexicons lexicons = config.lexicon_dir ? Lexicons::load_dir(*config.lexicon_dir) : Lexicons::defaults();
  return RuleSplitter(std::move(lexicons), options);
}

int cmd_split(const RunConfig& config, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const RuleSplitter splitter = make_splitter(config);
    InputFile input(config.input);
    OutputFile output(config.output, out);

    struct Item {
      std::int64_t id;
      std::string text;
    };
    auto process = [&](const Item& item) {
      const SplitOutput result = splitter.split(item.text);
      ordered_json meta;
      meta["sentence_class"] = std::string(to_code(result.result.sentence_class));
      meta["low_confidence"] = result.result.low_confidence;
      meta["multi_clause"] = result.result.multi_clause;
      if (config.trace) meta["trace"] = trace_json(result.trace);
      return to_prediction_line(to_annotated(item.id, item.text, result.result), config.model, meta);
    };

    const std::size_t batch_size = 256 * std::max<std::size_t>(config.jobs, 1);
    std::vector<Item> batch;
    auto flush = [&] {
      for (const auto& line : parallel_map(batch, config.jobs, process)) output.stream() << line << '\n';
      batch.clear();
    };

    if (config.format == "text") {
      std::string line;
      std::int64_t line_no = 0;
      while (std::getline(input.stream(), line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        batch.push_back({line_no, std::move(line)});
        if (batch.size() >= batch_size) flush();
      }
    } else if (config.format == "doccano") {
      DoccanoReader reader(input.stream(), config.mode);
      while (auto sentence = reader.next()) {
        batch.push_back({sentence->id, std::move(sentence->text)});
        if (batch.size() >= batch_size) flush();
      }
      report_issues(log, reader.issues(), config.input);
    } else {
      throw ValidationError("split reads text or doccano input, not " + config.format);
    }
    flush();
    output.finish();
    return kSuccess;
  });
}

int cmd_convert(const RunConfig& config, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    InputFile input(config.input);
    OutputFile output(config.output, out);
    auto write = [&](const AnnotatedSentence& sentence) {
      if (config.to_format == "iob")
        write_iob(output.stream(), sentence, {config.iob_metadata});
      else
        output.stream() << to_doccano_line(sentence) << '\n';
    };
    if (config.to_format != "iob" && config.to_format != "doccano")
      throw ValidationError("unknown target format " + config.to_format);

    if (config.format == "doccano") {
      DoccanoReader reader(input.stream(), config.mode);
      while (auto sentence = reader.next()) write(*sentence);
      report_issues(log, reader.issues(), config.input);
    } else if (config.format == "iob") {
      IobReader reader(input.stream(), config.mode);
      while (auto sentence = reader.next()) write(*sentence);
      report_issues(log, reader.issues(), config.input);
    } else {
      throw ValidationError("convert reads doccano or iob input, not " + config.format);
    }
    output.finish();
    return kSuccess;
  });
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    EvalOptions options;
    options.mode = config.mode;
    options.labels.clear();
    for (const auto& name : config.labels) {
      const auto label = parse_label(name);
      if (!label || !is_clause_level(*label)) throw ValidationError("cannot score label " + name);
      options.labels.push_back(*label);
    }
    const auto gold = read_all_doccano(config.gold, config.mode, log);
    const auto pred = read_all_doccano(config.pred, config.mode, log);
    OutputFile output(config.output, out);

    const EvalReport report = exact_match_score(gold, pred, options);
    if (!report.gold_only_ids.empty() || !report.pred_only_ids.empty() || !report.text_mismatch_ids.empty())
      log << "condsplit: warning: scored " << report.sentences << " aligned sentences; "
          << report.gold_only_ids.size() << " gold-only, " << report.pred_only_ids.size()
          << " prediction-only, " << report.text_mismatch_ids.size() << " with differing text\n";
    output.stream() << (config.report == "json" ? render_report_json(report) : render_report_table(report));
    output.finish();

    if (config.errors_output) {
      OutputFile errors(*config.errors_output, out);
      errors.stream() << render_mismatches_json(error_breakdown(gold, pred));
      errors.finish();
    }
    return kSuccess;
  });
}

int cmd_graph(const RunConfig& config, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    if (config.to_format != "dot" && config.to_format != "json")
      throw ValidationError("graph output is dot or json, not " + config.to_format);
    std::vector<GraphInput> inputs;
    for (auto& sentence : read_all_doccano(config.input, config.mode, log)) {
      SplitResult result = to_split_result(sentence);
      inputs.push_back({std::move(sentence.text), result});
    }
    const ProcessGraph graph = build_graph(inputs);
    OutputFile output(config.output, out);
    output.stream() << (config.to_format == "json" ? export_json(graph) : export_dot(graph));
    output.finish();
    return kSuccess;
  });
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    CorpusStats stats;
    for (const auto& spec : config.splits) {
      std::string name;
      std::string path = spec;
      if (const auto eq = spec.find('='); eq != std::string::npos) {
        name = spec.substr(0, eq);
        path = spec.substr(eq + 1);
      } else {
        name = std::filesystem::path(spec).stem().string();
      }
      InputFile input(path);
      DoccanoReader reader(input.stream(), config.mode);
      LabelCounts counts;
      while (auto sentence = reader.next()) counts.add(*sentence);
      report_issues(log, reader.issues(), path);
      stats.total += counts;
      stats.splits.emplace_back(name, counts);
    }
    OutputFile output(config.output, out);
    output.stream() << (config.report == "json" ? render_stats_json(stats) : render_stats_table(stats));
    output.finish();
    return kSuccess;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Recognize conditional sentences and split them into condition and resultant clauses.",
               "condsplit"};
  app.set_config("--config", "", "Read options from a key = value file ([split], [convert], ... sections)");
  app.require_subcommand(1, 1);

  RunConfig config;
  bool lenient = false;
  auto add_mode = [&](CLI::App* sub) {
    sub->add_flag("--lenient,!--strict", lenient, "Skip malformed records instead of failing (default strict)");
  };
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("-i,--input", config.input, "Input path, - for standard input")->capture_default_str();
    sub->add_option("-o,--output", config.output, "Output path, - for standard output")->capture_default_str();
  };
  auto add_report = [&](CLI::App* sub) {
    sub->add_option("--report", config.report, "Report format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
  };

  auto* split = app.add_subcommand("split", "Split sentences into condition and resultant clauses");
  add_io(split);
  add_mode(split);
  split->add_option("--format", config.format, "Input format")
      ->check(CLI::IsMember({"text", "doccano"}))
      ->capture_default_str();
  split->add_flag("--extended-patterns", config.extended_patterns,
                  "Enable the imperative-and, interrogative and for-phrase pattern rules");
  split->add_option("--patterns", config.patterns, "Enable individual pattern rules")
      ->delimiter(',')
      ->check(CLI::IsMember({"imperative-and", "interrogative", "for-phrase"}));
  split->add_option("--lexicon-dir", config.lexicon_dir, "Directory with replacement lexicon files");
  split->add_option("--min-weak-cues", config.min_weak_cues,
                    "Weak action cues needed to flag a Consequence as low-confidence (0 disables)")
      ->capture_default_str();
  split->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  split->add_option("--model", config.model, "Value of the \"model\" field")->capture_default_str();
  split->add_flag("--trace", config.trace, "Include the fired rules in each record's meta");

  auto* convert = app.add_subcommand("convert", "Convert between Doccano JSONL and IOB");
  add_io(convert);
  add_mode(convert);
  std::string convert_from = "doccano";
  std::string convert_to = "iob";
  convert->add_option("--format,--from", convert_from, "Input format")
      ->check(CLI::IsMember({"doccano", "iob"}))
      ->capture_default_str();
  convert->add_option("--to", convert_to, "Output format")
      ->check(CLI::IsMember({"doccano", "iob"}))
      ->capture_default_str();
  bool no_metadata = false;
  convert->add_flag("--no-iob-metadata", no_metadata, "Omit the # id / # text lines in IOB output");

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against gold annotations");
  add_mode(evaluate);
  add_report(evaluate);
  evaluate->add_option("-g,--gold", config.gold, "Gold Doccano JSONL")->required();
  evaluate->add_option("-p,--pred", config.pred, "Prediction JSONL")->required();
  evaluate->add_option("-o,--output", config.output, "Report path, - for standard output")->capture_default_str();
  evaluate->add_option("--labels", config.labels, "Labels to score")->delimiter(',')->capture_default_str();
  evaluate->add_option("--errors", config.errors_output, "Write the mismatch breakdown as JSON to this path");

  auto* graph = app.add_subcommand("graph", "Build a process graph from predictions");
  add_io(graph);
  add_mode(graph);
  std::string graph_to = "dot";
  graph->add_option("--to", graph_to, "Output format")->check(CLI::IsMember({"dot", "json"}))->capture_default_str();

  auto* stats = app.add_subcommand("stats", "Count labels per data split");
  add_mode(stats);
  add_report(stats);
  stats->add_option("splits", config.splits, "Doccano files as name=path or path")->required();
  stats->add_option("-o,--output", config.output, "Report path, - for standard output")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, log);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, log);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, log);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, log);
    return e.get_exit_code() == static_cast<int>(CLI::ExitCodes::FileError) ? kIoError : kDataError;
  }

  config.mode = lenient ? ParseMode::Lenient : ParseMode::Strict;
  if (*split) return cmd_split(config, out, log);
  if (*convert) {
    config.format = convert_from;
    config.to_format = convert_to;
    config.iob_metadata = !no_metadata;
    return cmd_convert(config, out, log);
  }
  if (*evaluate) return cmd_evaluate(config, out, log);
  if (*graph) {
    config.to_format = graph_to;
    return cmd_graph(config, out, log);
  }
  return cmd_stats(config, out, log);
}

}  // namespace condsplit::cli
