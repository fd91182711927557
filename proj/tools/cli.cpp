#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "uilog/error.hpp"
#include "uilog/tabular.hpp"
#include "uilog/transform.hpp"
#include "uilog/validation.hpp"
#include "uilog/xes.hpp"

namespace uilog::cli {

namespace fs = std::filesystem;

namespace {

struct PipelineConfig {
  std::string input;
  std::string format;
  std::string mapping;
  std::string notion;
  std::string rules;
  std::string output;
  std::string out_format;
  std::string report;
  bool strict = false;
};

class Console {
 public:
  Console(std::ostream& out, std::ostream& err, bool color) : out(out), err_(err), color_(color) {}

  void error(const std::string& msg) { line("error", "\033[31m", msg); }
  void warn(const std::string& msg) { line("warning", "\033[33m", msg); }
  void note(const std::string& msg) { err_ << "uilog: " << msg << '\n'; }

  std::ostream& out;

 private:
  void line(const char* label, const char* style, const std::string& msg) {
    err_ << "uilog: ";
    if (color_) err_ << style << label << "\033[0m";
    else err_ << label;
    err_ << ": " << msg << '\n';
  }

  std::ostream& err_;
  bool color_;
};

/// Operational failure carrying its own message; maps to exit code 1.
struct Failure {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot open '" + path + "' for reading"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{"cannot open '" + path + "' for writing"};
  out << content;
  if (!out.flush()) throw Failure{"failed writing '" + path + "'"};
}

std::string lower_extension(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

std::string input_format(const PipelineConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  auto ext = lower_extension(cfg.input);
  return ext == ".xes" || ext == ".xml" ? "xes" : "csv";
}

std::string output_format(const PipelineConfig& cfg) {
  if (!cfg.out_format.empty()) return cfg.out_format;
  auto ext = lower_extension(cfg.output);
  return ext == ".csv" || ext == ".tsv" || ext == ".txt" ? "csv" : "xes";
}

struct Loaded {
  UILog log;
  std::optional<IngestReport> ingest;
};

Loaded load(const PipelineConfig& cfg, Console& console) {
  if (!fs::exists(cfg.input)) throw Failure{"input '" + cfg.input + "' does not exist"};
  std::string text = read_file(cfg.input);
  if (input_format(cfg) == "xes") {
    std::vector<std::string> warnings;
    XesReadOptions options;
    options.allow_missing_names = true;
    options.warnings = &warnings;
    Loaded loaded{read_xes(text, options), std::nullopt};
    for (const auto& w : warnings) console.warn(w);
    return loaded;
  }
  auto result = cfg.mapping.empty() ? ingest(text) : ingest(text, load_mapping(read_file(cfg.mapping)));
  for (const auto& w : result.report.warnings) console.warn(w);
  for (const auto& s : result.report.rows_skipped) console.warn("row " + std::to_string(s.row) + " skipped: " + s.reason);
  return Loaded{std::move(result.log), std::move(result.report)};
}

void emit(const std::string& path, const std::string& content, Console& console) {
  if (path.empty() || path == "-") {
    console.out << content;
  } else {
    write_file(path, content);
  }
}

/// Writes the log in the configured output format. Returns kViolations when
/// strict mode rejects the log.
int write_log(const UILog& log, const PipelineConfig& cfg, Console& console) {
  auto report = validate(log);
  if (!report.ok()) {
    if (cfg.strict) {
      console.error(std::to_string(report.violations.size()) + " violations; nothing written (strict mode)");
      for (const auto& v : report.violations) console.note(std::string(to_string(v.code)) + ": " + v.message);
      return kViolations;
    }
    console.warn(std::to_string(report.violations.size()) + " violations; writing anyway");
  }
  if (output_format(cfg) == "csv") {
    emit(cfg.output, write_tabular(log, default_output_mapping(log)), console);
  } else {
    emit(cfg.output, write_xes(log, XesWriteOptions{report.ok()}), console);
  }
  return kOk;
}

int cmd_convert(const PipelineConfig& cfg, Console& console) {
  auto loaded = load(cfg, console);
  if (!cfg.report.empty()) {
    nlohmann::ordered_json doc;
    doc["ingest"] = loaded.ingest ? nlohmann::ordered_json::parse(render_json(*loaded.ingest)) : nullptr;
    doc["validation"] = nlohmann::ordered_json::parse(render_json(validate(loaded.log)));
    write_file(cfg.report, doc.dump(2) + "\n");
  }
  return write_log(loaded.log, cfg, console);
}

int cmd_validate(const PipelineConfig& cfg, Console& console) {
  auto loaded = load(cfg, console);
  auto report = validate(loaded.log);
  console.out << render_text(report);
  if (!cfg.report.empty()) write_file(cfg.report, render_json(report));
  return report.ok() ? kOk : kViolations;
}

int cmd_stats(const PipelineConfig& cfg, Console& console) {
  auto loaded = load(cfg, console);
  auto matrix = coverage(loaded.log);
  auto prof = profile(loaded.log);
  console.out << render_text(matrix, prof);
  if (!cfg.report.empty()) write_file(cfg.report, render_json(matrix, prof));
  return kOk;
}

int cmd_segment(const PipelineConfig& cfg, Console& console) {
  if (cfg.notion.empty()) throw Failure{"segment needs --notion"};
  auto notion = load_case_notion(read_file(cfg.notion));
  auto loaded = load(cfg, console);
  auto out = segment(loaded.log, notion);
  console.note("segmented " + std::to_string(out.events.size()) + " events into " +
               std::to_string(out.traces->size()) + " traces");
  return write_log(out, cfg, console);
}

int cmd_abstract(const PipelineConfig& cfg, Console& console) {
  if (cfg.rules.empty()) throw Failure{"abstract needs --rules"};
  auto rules = load_abstraction_rules(read_file(cfg.rules));
  auto loaded = load(cfg, console);
  auto result = abstract(loaded.log, rules);
  for (const auto& w : result.warnings) console.warn(w);
  console.note("abstracted " + std::to_string(result.abstracted_runs) + " runs; " +
               std::to_string(loaded.log.events.size()) + " -> " + std::to_string(result.log.events.size()) +
               " events");
  if (!cfg.report.empty()) {
    nlohmann::ordered_json doc;
    doc["abstracted_runs"] = result.abstracted_runs;
    doc["events_before"] = loaded.log.events.size();
    doc["events_after"] = result.log.events.size();
    doc["warnings"] = result.warnings;
    write_file(cfg.report, doc.dump(2) + "\n");
  }
  return write_log(result.log, cfg, console);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color) {
  Console console(out, err, color);
  CLI::App app{"uilog: UI interaction log toolkit (XES UILog extension, tabular ingestion, validation, transforms)"};
  app.require_subcommand(1);

  PipelineConfig cfg;
  auto add_io = [&](CLI::App* sub, bool writes) {
    sub->add_option("--input", cfg.input, "Input log file")->required();
    sub->add_option("--format", cfg.format, "Input format (default: from file extension)")
        ->check(CLI::IsMember({"csv", "xes"}));
    sub->add_option("--mapping", cfg.mapping, "Column mapping file for CSV input");
    sub->add_option("--report", cfg.report, "Write a machine-readable report to this file");
    sub->add_flag("--strict", cfg.strict, "Treat validation findings as fatal (exit 2)");
    if (writes) {
      sub->add_option("--output", cfg.output, "Output file ('-' or omitted: standard output)");
      sub->add_option("--out-format", cfg.out_format, "Output format (default: from output extension, else xes)")
          ->check(CLI::IsMember({"csv", "xes"}));
    }
  };

  auto* convert = app.add_subcommand("convert", "Convert between CSV and XES");
  add_io(convert, true);
  auto* validate_cmd = app.add_subcommand("validate", "Check model invariants");
  add_io(validate_cmd, false);
  auto* stats = app.add_subcommand("stats", "Print core-attribute coverage and a log profile");
  add_io(stats, false);
  auto* segment_cmd = app.add_subcommand("segment", "Partition events into traces by a case notion");
  add_io(segment_cmd, true);
  segment_cmd->add_option("--notion", cfg.notion, "Case notion definition file")->required();
  auto* abstract_cmd = app.add_subcommand("abstract", "Collapse UI-group runs into abstract events");
  add_io(abstract_cmd, true);
  abstract_cmd->add_option("--rules", cfg.rules, "Abstraction rule file")->required();
  auto* extension = app.add_subcommand("extension", "Print the UILog XES extension definition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (extension->parsed()) {
      out << emit_extension_definition();
      return kOk;
    }
    if (convert->parsed()) return cmd_convert(cfg, console);
    if (validate_cmd->parsed()) return cmd_validate(cfg, console);
    if (stats->parsed()) return cmd_stats(cfg, console);
    if (segment_cmd->parsed()) return cmd_segment(cfg, console);
    if (abstract_cmd->parsed()) return cmd_abstract(cfg, console);
  } catch (const Failure& f) {
    console.error(f.message);
    return kFailure;
  } catch (const Error& e) {
    console.error(e.what());
    return kFailure;
  } catch (const std::exception& e) {
    console.error(e.what());
    return kFailure;
  }
  return kFailure;
}

}  // namespace uilog::cli
