#include "epiladder/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "epiladder/errors.hpp"
#include "epiladder/generate.hpp"
#include "epiladder/grid.hpp"
#include "epiladder/harness.hpp"
#include "epiladder/narrative.hpp"

namespace epiladder {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
  std::string grid = "full";
  int rung = 0;
  std::optional<std::uint64_t> seed;
  std::optional<int> count;
  std::string templates;
  std::string names;
  std::string responder = "oracle";
  std::string out;
  std::vector<std::string> records;
  std::vector<std::string> instances;
  std::string responses;
  std::string responder_id;
  std::string config;
  std::string dump_dir;
  std::string style = "matrix";
  bool case_insensitive = false;
  unsigned workers = 0;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw ConfigError(std::string("missing --") + what);
  if (!fs::exists(path)) throw IoError(std::string(what) + " file not found: " + path);
}

json meta_for(const std::string& command, std::optional<std::uint64_t> seed, const std::string& hash) {
  return json{{"tool", "epiladder"},
              {"version", EPILADDER_VERSION},
              {"command", command},
              {"seed", seed ? json(*seed) : json(nullptr)},
              {"grid_hash", hash.empty() ? json(nullptr) : json(hash)}};
}

// Provenance of a JSONL input, read from its sidecar when one exists.
json inherited_meta(const std::string& path) {
  const std::string side = path + ".meta.json";
  if (!fs::exists(side)) return json::object();
  return read_json_file(side);
}

void write_meta(const std::string& path, json meta) {
  std::ofstream out(path + ".meta.json", std::ios::trunc);
  if (!out) throw IoError("cannot write " + path + ".meta.json");
  out << meta.dump(2) << "\n";
}

json propagate(const std::string& command, const std::vector<std::string>& inputs) {
  json meta = meta_for(command, std::nullopt, "");
  for (const auto& in : inputs) {
    json parent = inherited_meta(in);
    if (parent.contains("seed") && !parent["seed"].is_null()) meta["seed"] = parent["seed"];
    if (parent.contains("grid_hash") && !parent["grid_hash"].is_null()) meta["grid_hash"] = parent["grid_hash"];
  }
  return meta;
}

GenerationGrid resolve_grid(const std::string& grid, Rung rung) {
  if (grid == "full") return full_grid(rung);
  if (grid == "desk") return desk_grid(rung);
  if (!fs::exists(grid)) throw IoError("grid file not found: " + grid);
  return load_grid(grid);
}

std::vector<LabeledInstance> load_labeled(const std::vector<std::string>& paths, unsigned workers) {
  std::vector<LabeledInstance> out;
  for (const auto& path : paths) {
    require_file(path, "instances");
    auto lines = read_instances(path);
    std::vector<PuzzleInstance> unlabeled;
    std::vector<std::size_t> slots;
    for (auto& line : lines) {
      if (line.label) {
        out.push_back(LabeledInstance{std::move(line.instance), std::move(*line.label)});
      } else {
        slots.push_back(out.size());
        out.push_back(LabeledInstance{line.instance, {}});
        unlabeled.push_back(std::move(line.instance));
      }
    }
    if (!unlabeled.empty()) {
      auto solved = attach_ground_truth(unlabeled, workers);
      for (std::size_t i = 0; i < slots.size(); ++i) out[slots[i]] = std::move(solved.items[i]);
    }
  }
  return out;
}

EvalSettings eval_settings(const Options& o, const json& config) {
  EvalSettings s;
  if (!o.templates.empty()) s.templates = TemplateSet::load(o.templates);
  std::string style = o.style;
  if (config.contains("render")) style = config["render"].value("observation_style", style);
  if (style == "matrix") s.render.observation_style = ObservationStyle::Matrix;
  else if (style == "sentences") s.render.observation_style = ObservationStyle::Sentences;
  else throw ConfigError("--style must be matrix or sentences");
  s.grader.case_insensitive = o.case_insensitive;
  if (config.contains("grader")) s.grader.case_insensitive = config["grader"].value("case_insensitive", o.case_insensitive);
  return s;
}

json load_config(const Options& o) {
  if (o.config.empty()) return json::object();
  require_file(o.config, "config");
  return read_json_file(o.config);
}

void print_stats(std::ostream& out, const LabelStats& stats) {
  char line[160];
  std::snprintf(line, sizeof line, "labels: yes=%zu (%.3f) no=%zu (%.3f) unknown=%zu (%.3f)\n", stats.yes,
                stats.fraction(Answer::Yes), stats.no, stats.fraction(Answer::No), stats.unknown,
                stats.fraction(Answer::Unknown));
  out << line;
}

int cmd_generate(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ConfigError("missing --out");
  const Rung rung = rung_from_number(o.rung);
  GenerationGrid grid = resolve_grid(o.grid, rung);
  if (o.seed) grid.seed = *o.seed;
  if (o.count) grid.count = *o.count;
  const NamePool pool = o.names.empty() ? NamePool::builtin() : NamePool::load(o.names);
  std::vector<PuzzleInstance> insts = rung == Rung::III ? sample_rung3(grid.count, grid.seed, grid, pool)
                                                        : enumerate_rung_grid(grid, rung, pool);
  std::vector<InstanceLine> lines;
  lines.reserve(insts.size());
  for (auto& inst : insts) lines.push_back(InstanceLine{std::move(inst), std::nullopt});
  write_instances(o.out, lines);
  json meta = meta_for("generate", grid.seed, grid_hash(grid));
  meta["grid"] = to_json(grid);
  meta["rung"] = o.rung;
  meta["count"] = lines.size();
  write_meta(o.out, meta);
  out << "generated " << lines.size() << " instances (rung " << o.rung << ", grid " << grid.name << ", hash "
      << grid_hash(grid) << ")\n";
  return 0;
}

int cmd_solve(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ConfigError("missing --out");
  if (o.instances.empty()) throw ConfigError("missing --instances");
  std::vector<PuzzleInstance> insts;
  for (const auto& path : o.instances) {
    require_file(path, "instances");
    for (auto& line : read_instances(path)) insts.push_back(std::move(line.instance));
  }
  if (insts.empty()) throw EmptyInput("no instances to solve");
  LabeledSet set = attach_ground_truth(insts, o.workers);
  std::vector<InstanceLine> lines;
  for (auto& item : set.items) lines.push_back(InstanceLine{std::move(item.instance), std::move(item.label)});
  write_instances(o.out, lines);
  json meta = propagate("solve", o.instances);
  meta["labels"] = json{{"yes", set.stats.yes}, {"no", set.stats.no}, {"unknown", set.stats.unknown}};
  write_meta(o.out, meta);
  out << "solved " << lines.size() << " instances\n";
  print_stats(out, set.stats);
  std::vector<Answer> labels;
  for (const auto& line : lines) labels.push_back(line.label->answer);
  const MajorityBaseline maj = majority_baseline(labels);
  char text[128];
  std::snprintf(text, sizeof text, "majority baseline: %.4f (%s%s)\n", maj.accuracy,
                std::string(to_token(maj.label)).c_str(), maj.tie ? ", tie" : "");
  out << text;
  return 0;
}

int cmd_render(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ConfigError("missing --out");
  const json config = load_config(o);
  const EvalSettings settings = eval_settings(o, config);
  auto items = load_labeled(o.instances, o.workers);
  if (items.empty()) throw EmptyInput("no instances to render");
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + o.out + " for writing");
  if (!o.dump_dir.empty()) fs::create_directories(o.dump_dir);
  for (const auto& item : items) {
    PromptBundle bundle = render_for(item, settings);
    file << json{{"id", bundle.instance_id}, {"round_prefix", bundle.round_prefix}, {"prompt", bundle.text}}.dump()
         << "\n";
    if (!o.dump_dir.empty()) {
      std::ofstream dump(o.dump_dir + "/" + bundle.instance_id + ".txt", std::ios::trunc);
      dump << bundle.text;
    }
  }
  write_meta(o.out, propagate("render", o.instances));
  out << "rendered " << items.size() << " prompts\n";
  return 0;
}

void emit_report(const Options& o, const std::vector<EvalRecord>& records, json meta, std::ostream& out) {
  MetricsReport report = compute_metrics(records);
  report.meta = std::move(meta);
  write_report(o.out, report);
  out << format_report_table(report);
}

int cmd_grade(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ConfigError("missing --out");
  require_file(o.responses, "responses");
  const json config = load_config(o);
  const EvalSettings settings = eval_settings(o, config);
  auto items = load_labeled(o.instances, o.workers);
  if (items.empty()) throw EmptyInput("no instances to grade");
  ResponderSpec spec;
  spec.kind = ResponderKind::Scripted;
  spec.script_path = o.responses;
  spec.name = o.responder_id;
  auto responder = make_responder(spec);
  auto records = run_eval(items, *responder, settings);
  write_records(o.out, records);
  auto inputs = o.instances;
  inputs.push_back(o.responses);
  write_meta(o.out, propagate("grade", inputs));
  std::size_t correct = 0;
  for (const auto& r : records) correct += r.score == Score::Correct;
  out << "graded " << records.size() << " responses, " << correct << " correct\n";
  return 0;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ConfigError("missing --out");
  const json config = load_config(o);
  const EvalSettings settings = eval_settings(o, config);
  auto items = load_labeled(o.instances, o.workers);
  if (items.empty()) throw EmptyInput("no instances to evaluate");
  auto responder = make_responder(parse_responder(o.responder, config));
  auto records = run_eval(items, *responder, settings);
  fs::create_directories(o.out);
  const std::string records_path = o.out + "/records.jsonl";
  write_records(records_path, records);
  json meta = propagate("evaluate", o.instances);
  meta["responder"] = responder->id();
  write_meta(records_path, meta);
  emit_report(o, records, meta, out);
  return 0;
}

int cmd_report(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw ConfigError("missing --out");
  if (o.records.empty()) throw ConfigError("missing --records");
  std::vector<EvalRecord> records;
  for (const auto& path : o.records) {
    require_file(path, "records");
    auto part = read_records(path);
    records.insert(records.end(), part.begin(), part.end());
  }
  if (records.empty()) throw EmptyInput("records file is empty; no report written");
  emit_report(o, records, propagate("report", o.records), out);
  return 0;
}

int exit_code_for(const std::string& kind) {
  if (kind == "io") return static_cast<int>(ExitCode::Io);
  if (kind == "schema") return static_cast<int>(ExitCode::Schema);
  if (kind == "inconsistent" || kind == "dimension") return static_cast<int>(ExitCode::Inconsistent);
  if (kind == "config") return static_cast<int>(ExitCode::Config);
  if (kind == "empty") return static_cast<int>(ExitCode::Empty);
  if (kind == "credentials") return static_cast<int>(ExitCode::Credentials);
  return static_cast<int>(ExitCode::Failure);
}

void report_error(std::ostream& err, const std::string& kind, int code, const std::string& message) {
  std::string flat;
  for (char c : message) {
    if (c == '\n') flat += "\\n";
    else if (c == '"') flat += "\\\"";
    else flat += c;
  }
  err << "error kind=" << kind << " code=" << code << " message=\"" << flat << "\"\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Possible-worlds solver and benchmark pipeline for public-announcement puzzles", "epiladder"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(EPILADDER_VERSION));

  auto common_io = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Output path (file or directory)");
    cmd->add_option("--config", o.config, "JSON config (responders, grader, render)");
    cmd->add_option("--seed", o.seed, "Generation seed");
  };
  auto templates = [&](CLI::App* cmd) {
    cmd->add_option("--templates", o.templates, "Template directory (default: built-in)");
    cmd->add_option("--style", o.style, "Observation relation style")->check(CLI::IsMember({"matrix", "sentences"}));
  };
  auto workers = [&](CLI::App* cmd) { cmd->add_option("--workers", o.workers, "Solver threads (0 = all cores)"); };

  auto* generate = app.add_subcommand("generate", "Generate puzzle instances as JSONL");
  common_io(generate);
  generate->add_option("--grid", o.grid, "full, desk, or a grid config file");
  generate->add_option("--rung", o.rung, "Rung 1, 2 or 3")->required()->check(CLI::Range(1, 3));
  generate->add_option("--count", o.count, "Rung III sample size");
  generate->add_option("--names", o.names, "Name pool JSON");

  auto* solve = app.add_subcommand("solve", "Attach ground truth and traces to instances");
  common_io(solve);
  workers(solve);
  solve->add_option("--instances", o.instances, "Instance JSONL")->required();

  auto* render = app.add_subcommand("render", "Render prompts for instances");
  common_io(render);
  templates(render);
  workers(render);
  render->add_option("--instances", o.instances, "Instance JSONL")->required();
  render->add_option("--dump-dir", o.dump_dir, "Also write one text file per prompt here");

  auto* grade = app.add_subcommand("grade", "Score raw responses against ground truth");
  common_io(grade);
  templates(grade);
  workers(grade);
  grade->add_option("--instances", o.instances, "Instance JSONL")->required();
  grade->add_option("--responses", o.responses, "JSONL of {\"id\", \"response\"}")->required();
  grade->add_option("--responder-id", o.responder_id, "Responder id stored in the records");
  grade->add_flag("--case-insensitive", o.case_insensitive, "Accept any casing of the answer literals");

  auto* evaluate = app.add_subcommand("evaluate", "Run a responder over instances and report metrics");
  common_io(evaluate);
  templates(evaluate);
  workers(evaluate);
  evaluate->add_option("--instances", o.instances, "Instance JSONL (repeatable)")->required();
  evaluate->add_option("--responder", o.responder, "oracle | constant:<text> | scripted:<path> | remote:<name>");
  evaluate->add_flag("--case-insensitive", o.case_insensitive, "Accept any casing of the answer literals");

  auto* report = app.add_subcommand("report", "Summarize record files into metrics, table and CSV");
  common_io(report);
  report->add_option("--records", o.records, "Record JSONL (repeatable)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << EPILADDER_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", static_cast<int>(ExitCode::Usage), e.what());
    return static_cast<int>(ExitCode::Usage);
  }

  try {
    if (generate->parsed()) return cmd_generate(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (render->parsed()) return cmd_render(o, out);
    if (grade->parsed()) return cmd_grade(o, out);
    if (evaluate->parsed()) return cmd_evaluate(o, out);
    if (report->parsed()) return cmd_report(o, out);
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(err, e.kind(), code, e.what());
    return code;
  } catch (const std::exception& e) {
    report_error(err, "internal", static_cast<int>(ExitCode::Failure), e.what());
    return static_cast<int>(ExitCode::Failure);
  }
  return static_cast<int>(ExitCode::Usage);
}

}  // namespace epiladder
