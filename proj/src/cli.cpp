#include "phaseeval/cli.hpp"

#include <filesystem>
#include <fstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "phaseeval/evaluate.hpp"
#include "phaseeval/io.hpp"
#include "phaseeval/protocol.hpp"
#include "phaseeval/synth.hpp"

namespace phaseeval {

namespace {

struct CommonOptions {
  std::string manifest;
  std::string policy = "exclude-missing-phase";
  std::string std_mode = "corrected";
  std::string order = "flat";
  std::string format = "json";
  std::string out;
  std::size_t jobs = 1;
  bool per_video = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("manifest", o.manifest, "Run manifest (JSON)")->required();
  cmd->add_option("--policy", o.policy, "Undefined-value policy")
      ->check(CLI::IsMember({"exclude-undefined", "exclude-missing-phase", "zero-fill", "one-fill"}))
      ->capture_default_str();
  cmd->add_option("--std-mode", o.std_mode, "Standard deviation estimator")
      ->check(CLI::IsMember({"corrected", "uncorrected"}))
      ->capture_default_str();
  cmd->add_option("--order", o.order, "Averaging order")
      ->check(CLI::IsMember({"flat", "phase-first", "video-first"}))
      ->capture_default_str();
  cmd->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output file (default: standard output)");
  cmd->add_option("--jobs", o.jobs, "Worker threads for per-video work (0 = all cores)")->capture_default_str();
  cmd->add_flag("--per-video", o.per_video, "Include raw per-video cells");
}

EvaluationOptions evaluation_options(const CommonOptions& o) {
  EvaluationOptions opts;
  opts.policy = parse_policy(o.policy);
  opts.summary.std_mode = parse_std_mode(o.std_mode);
  opts.summary.order = parse_order(o.order);
  opts.jobs = o.jobs;
  opts.per_video = o.per_video;
  return opts;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

std::string split_json(const SplitDefinition& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["train"] = s.train;
  j["validation"] = s.validation;
  j["test"] = s.test;
  j["folds"] = nlohmann::ordered_json::array();
  for (const auto& f : s.folds) j["folds"].push_back({{"train", f.train}, {"validation", f.validation}});
  return j.dump(2) + "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluation toolkit for surgical phase recognition", "phaseeval"};
  app.require_subcommand(1);

  CommonOptions eval_opts;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Regular phase-wise, video-level and frame-wise metrics");
  add_common(evaluate_cmd, eval_opts);

  CommonOptions relaxed_opts;
  std::size_t omega = 10;
  std::string matrices = "legacy";
  bool bug_compat = false, truncate = false;
  auto* relaxed_cmd = app.add_subcommand("relaxed", "Relaxed-boundary metrics");
  add_common(relaxed_cmd, relaxed_opts);
  relaxed_cmd->add_option("--omega", omega, "Relaxation window in frames")->capture_default_str();
  relaxed_cmd->add_option("--matrices", matrices, "Acceptance matrices")
      ->check(CLI::IsMember({"legacy", "graph"}))
      ->capture_default_str();
  relaxed_cmd->add_flag("--bug-compat", bug_compat, "Replicate the historical evaluation script");
  relaxed_cmd->add_flag("--truncate", truncate, "Cap relaxed scores at 1");

  std::string ledger_path, reference, sort_by = "accuracy", compare_format = "md", compare_out;
  auto* compare_cmd = app.add_subcommand("compare", "Group a results ledger by comparability");
  compare_cmd->add_option("ledger", ledger_path, "Ledger file (default: the shipped seed ledger)");
  compare_cmd->add_option("--reference", reference,
                          "Reference protocol: a JSON file or key=value pairs such as "
                          "split_name=32:8:40,relaxed=false")
      ->required();
  compare_cmd->add_option("--sort-by", sort_by, "Metric to rank by")
      ->check(CLI::IsMember(canonical_metric_names()))
      ->capture_default_str();
  compare_cmd->add_option("--format", compare_format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->capture_default_str();
  compare_cmd->add_option("--out", compare_out, "Output file (default: standard output)");

  SynthConfig synth;
  std::string out_dir;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with a manifest");
  synth_cmd->add_option("--phase-count", synth.phase_count)->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--videos", synth.videos)->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--runs", synth.runs)->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--boundary-shift", synth.boundary_shift, "Maximum boundary shift in frames")
      ->capture_default_str();
  synth_cmd->add_option("--flip-rate", synth.flip_rate, "Per-frame flip probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--min-length", synth.min_length)->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--max-length", synth.max_length)->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth.seed)->capture_default_str();
  synth_cmd->add_option("--out-dir", out_dir)->required();

  std::string split_name;
  auto* splits_cmd = app.add_subcommand("splits", "Print a registered data split");
  splits_cmd->add_option("name", split_name, "Split name; omit to list all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*evaluate_cmd) {
      const auto opts = evaluation_options(eval_opts);
      const auto format = parse_report_format(eval_opts.format);
      const auto input = load_input(load_manifest(eval_opts.manifest), opts.jobs);
      emit(write_report(evaluate(input, opts), format), eval_opts.out, out);
    } else if (*relaxed_cmd) {
      const auto opts = evaluation_options(relaxed_opts);
      const auto format = parse_report_format(relaxed_opts.format);
      RelaxedConfig config{omega, parse_matrix_mode(matrices), bug_compat, truncate};
      const auto input = load_input(load_manifest(relaxed_opts.manifest), opts.jobs);
      const auto graph = default_graph(input.phase_count);
      emit(write_report(evaluate_relaxed(input, config, opts, graph), format), relaxed_opts.out, out);
    } else if (*compare_cmd) {
      const auto ref = std::filesystem::is_regular_file(reference)
                           ? parse_protocol(read_text_file(reference))
                           : parse_protocol_assignments(reference);
      const auto ledger = ledger_path.empty() ? seed_ledger() : load_ledger(ledger_path);
      emit(write_leaderboard(render_leaderboard(ledger, ref, sort_by), compare_format), compare_out, out);
    } else if (*synth_cmd) {
      try {
        validate_config(synth);
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
      }
      const auto path = write_corpus(synthesize(synth), out_dir);
      out << "wrote " << path << " (phase_count=" << synth.phase_count << ", videos=" << synth.videos
          << ", runs=" << synth.runs << ", boundary_shift=" << synth.boundary_shift
          << ", flip_rate=" << synth.flip_rate << ", seed=" << synth.seed << ")\n";
    } else if (*splits_cmd) {
      if (split_name.empty()) {
        for (const auto& name : registered_splits()) out << name << "\n";
        return 0;
      }
      try {
        out << split_json(resolve_split(split_name));
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace phaseeval
