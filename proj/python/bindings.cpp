#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phaseeval/confusion.hpp"
#include "phaseeval/evaluate.hpp"
#include "phaseeval/io.hpp"
#include "phaseeval/protocol.hpp"
#include "phaseeval/synth.hpp"

namespace py = pybind11;
using namespace phaseeval;

namespace {

using Labels = std::vector<PhaseId>;

std::optional<double> cell_value(const MetricCell& c) {
  if (c.is_defined()) return c.value();
  return std::nullopt;
}

EvaluationInput make_input(std::size_t phase_count, const std::vector<Labels>& annotations,
                           const std::vector<std::vector<Labels>>& predictions) {
  if (annotations.size() != predictions.size())
    throw Error(ErrorCode::DimensionMismatch, "one prediction list per annotation is required");
  EvaluationInput input;
  input.phase_count = phase_count;
  const std::size_t runs = predictions.empty() ? 0 : predictions.front().size();
  for (std::size_t r = 0; r < runs; ++r) input.run_ids.push_back("r" + std::to_string(r));
  for (std::size_t v = 0; v < annotations.size(); ++v) {
    VideoEntry e;
    e.video_id = static_cast<VideoId>(v + 1);
    e.annotation = LabelSequence(annotations[v]);
    for (const auto& run : predictions[v]) e.runs.emplace_back(run);
    input.videos.push_back(std::move(e));
  }
  return input;
}

EvaluationOptions make_options(const std::string& policy, const std::string& std_mode,
                               const std::string& order, std::size_t jobs) {
  EvaluationOptions o;
  o.policy = parse_policy(policy);
  o.summary.std_mode = parse_std_mode(std_mode);
  o.summary.order = parse_order(order);
  o.jobs = jobs;
  return o;
}

RelaxedConfig make_relaxed(std::size_t omega, const std::string& matrices, bool bug_compatible,
                           bool truncate) {
  return RelaxedConfig{omega, parse_matrix_mode(matrices), bug_compatible, truncate};
}

}  // namespace

PYBIND11_MODULE(_phaseeval, m) {
  m.doc() = "Evaluation metrics for surgical phase recognition";

  static py::exception<Error> error(m, "PhaseEvalError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("confusion_matrix",
        [](const Labels& y, const Labels& yhat, std::size_t phase_count) {
          const auto c = confusion_of(y, yhat, phase_count);
          std::vector<std::vector<std::uint64_t>> rows(phase_count, std::vector<std::uint64_t>(phase_count));
          for (PhaseId p = 0; p < phase_count; ++p)
            for (PhaseId q = 0; q < phase_count; ++q) rows[p][q] = c.at(p, q);
          return rows;
        },
        py::arg("annotation"), py::arg("prediction"), py::arg("phase_count"),
        "Rows are annotated phases, columns predicted phases.");

  m.def("phase_metric",
        [](const std::string& kind, const Labels& y, const Labels& yhat, PhaseId phase, std::size_t phase_count) {
          return cell_value(phase_metric(parse_metric_kind(kind), confusion_of(y, yhat, phase_count), phase));
        },
        py::arg("kind"), py::arg("annotation"), py::arg("prediction"), py::arg("phase"), py::arg("phase_count"),
        "precision, recall, f1 or jaccard of one phase; None when undefined.");

  m.def("accuracy",
        [](const Labels& y, const Labels& yhat, std::size_t phase_count) {
          return accuracy(confusion_of(y, yhat, phase_count)).value();
        },
        py::arg("annotation"), py::arg("prediction"), py::arg("phase_count"));

  m.def("f1_upper", &f1_upper, py::arg("mean_precision"), py::arg("mean_recall"));

  m.def("relax_flags",
        [](const Labels& y, const Labels& yhat, std::size_t phase_count, std::size_t omega,
           const std::string& matrices, bool bug_compatible) {
          const auto mats = build_matrices(default_graph(phase_count), parse_matrix_mode(matrices));
          RelaxedConfig config{omega, parse_matrix_mode(matrices), bug_compatible, false};
          auto flags = compute_flags(y, yhat, config, mats);
          return std::vector<bool>(flags.begin(), flags.end());
        },
        py::arg("annotation"), py::arg("prediction"), py::arg("phase_count") = 7, py::arg("omega") = 10,
        py::arg("matrices") = "legacy", py::arg("bug_compatible") = false);

  m.def("relaxed_counts",
        [](const Labels& y, const Labels& yhat, const std::vector<bool>& flags, PhaseId phase) {
          const auto c = relaxed_counts(y, yhat, flags, phase);
          py::dict d;
          d["r_tp"] = c.r_tp;
          d["union"] = c.union_count;
          d["pred_count"] = c.pred_count;
          d["annot_count"] = c.annot_count;
          return d;
        },
        py::arg("annotation"), py::arg("prediction"), py::arg("flags"), py::arg("phase"));

  m.def("evaluate",
        [](std::size_t phase_count, const std::vector<Labels>& annotations,
           const std::vector<std::vector<Labels>>& predictions, const std::string& policy,
           const std::string& std_mode, const std::string& order, std::size_t jobs) {
          const auto input = make_input(phase_count, annotations, predictions);
          return write_report(evaluate(input, make_options(policy, std_mode, order, jobs)), ReportFormat::Json);
        },
        py::arg("phase_count"), py::arg("annotations"), py::arg("predictions"),
        py::arg("policy") = "exclude-missing-phase", py::arg("std_mode") = "corrected", py::arg("order") = "flat",
        py::arg("jobs") = 1, "Returns the JSON report; predictions[v][r] is run r of video v.");

  m.def("evaluate_relaxed",
        [](std::size_t phase_count, const std::vector<Labels>& annotations,
           const std::vector<std::vector<Labels>>& predictions, std::size_t omega, const std::string& matrices,
           bool bug_compatible, bool truncate, const std::string& policy, const std::string& std_mode,
           const std::string& order) {
          const auto input = make_input(phase_count, annotations, predictions);
          return write_report(evaluate_relaxed(input, make_relaxed(omega, matrices, bug_compatible, truncate),
                                               make_options(policy, std_mode, order, 1),
                                               default_graph(phase_count)),
                              ReportFormat::Json);
        },
        py::arg("phase_count"), py::arg("annotations"), py::arg("predictions"), py::arg("omega") = 10,
        py::arg("matrices") = "legacy", py::arg("bug_compatible") = false, py::arg("truncate") = false,
        py::arg("policy") = "exclude-missing-phase", py::arg("std_mode") = "corrected", py::arg("order") = "flat");

  m.def("evaluate_manifest",
        [](const std::string& path, const std::string& policy, const std::string& std_mode,
           const std::string& order, const std::string& format, std::size_t jobs) {
          const auto opts = make_options(policy, std_mode, order, jobs);
          return write_report(evaluate(load_input(load_manifest(path), jobs), opts), parse_report_format(format));
        },
        py::arg("path"), py::arg("policy") = "exclude-missing-phase", py::arg("std_mode") = "corrected",
        py::arg("order") = "flat", py::arg("format") = "json", py::arg("jobs") = 1);

  m.def("check_comparable",
        [](const std::string& a, const std::string& b) {
          const auto report = check_comparable(parse_protocol(a), parse_protocol(b));
          py::list findings;
          for (const auto& f : report.findings)
            findings.append(py::make_tuple(f.rule, std::string(to_string(f.severity)), f.explanation));
          return py::make_tuple(std::string(to_string(report.verdict)), findings);
        },
        py::arg("a"), py::arg("b"), "Protocols are JSON objects; returns (verdict, findings).");

  m.def("leaderboard",
        [](const std::string& ledger_path, const std::string& reference, const std::string& sort_by,
           const std::string& format) {
          return write_leaderboard(
              render_leaderboard(load_ledger(ledger_path), parse_protocol_assignments(reference), sort_by), format);
        },
        py::arg("ledger_path"), py::arg("reference"), py::arg("sort_by") = "accuracy", py::arg("format") = "json");

  m.def("normalize_ledger", [](const std::string& path) { return serialize_ledger(load_ledger(path)); },
        py::arg("path"));

  m.def("split",
        [](const std::string& name) {
          const auto s = resolve_split(name);
          py::dict d;
          d["name"] = s.name;
          d["train"] = s.train;
          d["validation"] = s.validation;
          d["test"] = s.test;
          return d;
        },
        py::arg("name"));
  m.def("registered_splits", &registered_splits);

  m.def("synthesize",
        [](const std::string& out_dir, std::size_t phase_count, std::size_t videos, std::size_t runs,
           std::size_t boundary_shift, double flip_rate, std::uint64_t seed) {
          SynthConfig c;
          c.phase_count = phase_count;
          c.videos = videos;
          c.runs = runs;
          c.boundary_shift = boundary_shift;
          c.flip_rate = flip_rate;
          c.seed = seed;
          return write_corpus(synthesize(c), out_dir);
        },
        py::arg("out_dir"), py::arg("phase_count") = 7, py::arg("videos") = 10, py::arg("runs") = 1,
        py::arg("boundary_shift") = 0, py::arg("flip_rate") = 0.0, py::arg("seed") = 0,
        "Writes a corpus and returns the manifest path.");

  m.attr("compiled_seed_ledger_path") = seed_ledger_path();
}
