#include "cli.hpp"

#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mtlearn/analysis.hpp"
#include "mtlearn/bleu.hpp"
#include "mtlearn/corpus.hpp"
#include "mtlearn/error.hpp"
#include "mtlearn/manifest.hpp"
#include "mtlearn/pipeline.hpp"
#include "mtlearn/report.hpp"
#include "mtlearn/sampling.hpp"
#include "mtlearn/text.hpp"
#include "mtlearn/trainer.hpp"

namespace mtlearn::cli {

namespace {

namespace fs = std::filesystem;

struct ManifestFlags {
  std::string path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;

  void add_to(CLI::App& cmd, bool with_jobs) {
    cmd.add_option("--manifest", path, "Experiment manifest (JSON)")->required();
    cmd.add_option("--seed", seed, "Override the manifest's subsampling seed");
    if (with_jobs) cmd.add_option("--jobs", jobs, "Override max_parallel_jobs")->check(CLI::PositiveNumber);
  }

  ExperimentManifest load() const {
    auto m = ExperimentManifest::load(path);
    if (seed) m.seed = *seed;
    if (jobs) m.max_parallel_jobs = *jobs;
    return m;
  }
};

AucMap load_auc(const std::string& source) {
  if (source == "table3" || source == "reference") return embedded_reference_auc();
  return auc_from_csv(read_csv(source));
}

const IntelligibilityMatrix& matrix_named(const std::string& name) {
  if (name == "written") return embedded_matrices().written;
  if (name == "spoken") return embedded_matrices().spoken;
  throw Error(Errc::invalid_argument, "unknown matrix '" + name + "' (want written or spoken)");
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

int print_summary(const ReportSummary& summary, std::ostream& out) {
  out << summary.to_json();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mtlearn: learning-curve benchmarks for translation between related languages"};
  app.name(args.empty() ? "mtlearn" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);

  // tables
  auto* tables = app.add_subcommand("tables", "Print the embedded reference tables");
  std::string which = "all";
  tables->add_option("--which", which, "written | spoken | auc | all")
      ->check(CLI::IsMember({"written", "spoken", "auc", "all"}));

  // score
  auto* score = app.add_subcommand("score", "Corpus BLEU of a hypothesis file against a reference file");
  std::string hyp_path, ref_path;
  score->add_option("--hyp", hyp_path, "Hypotheses, one per line")->required();
  score->add_option("--ref", ref_path, "References, one per line")->required();

  // subsample
  auto* sub = app.add_subcommand("subsample", "Print a nested training-subset manifest");
  std::size_t n_train = 0;
  std::string fraction_text;
  std::uint64_t sub_seed = 0;
  std::string sub_src, sub_tgt;
  sub->add_option("--n", n_train, "Training-set size")->required();
  sub->add_option("--fraction", fraction_text, "Fraction in (0,1], e.g. 0.3")->required();
  sub->add_option("--seed", sub_seed, "Permutation seed");
  sub->add_option("--src", sub_src, "Source language (recorded only)");
  sub->add_option("--tgt", sub_tgt, "Target language (recorded only)");

  // train
  auto* train = app.add_subcommand("train", "Train the builtin EM model on a TSV and translate a test file");
  std::string train_tsv, test_src, hyp_out, table_out, train_ref;
  int iterations = 10;
  train->add_option("--train", train_tsv, "Training pairs (src TAB tgt)")->required();
  train->add_option("--test-src", test_src, "Test source sentences")->required();
  train->add_option("--hyp-out", hyp_out, "Where to write the translations")->required();
  train->add_option("--iterations", iterations, "EM iterations")->check(CLI::PositiveNumber);
  train->add_option("--table-out", table_out, "Also write the lexical table as JSON");
  train->add_option("--ref", train_ref, "Score the translations against this reference file");

  // build-corpus
  auto* build = app.add_subcommand("build-corpus", "Build pivot-joined train/dev/test data for every pair");
  ManifestFlags build_flags;
  build_flags.add_to(*build, false);

  // curve
  auto* curve = app.add_subcommand("curve", "Relative-BLEU learning curves from a scores CSV");
  std::string scores_path;
  curve->add_option("--scores", scores_path, "CSV with src,tgt,fraction,bleu")->required();

  // auc
  auto* auc = app.add_subcommand("auc", "Trapezoidal area under learning curves");
  std::string curve_path;
  auc->add_option("--curve", curve_path, "Curve CSV (pair,fraction,relative or bleu)")->required();

  // correlate
  auto* correlate = app.add_subcommand("correlate", "Pearson's r between AUC and an intelligibility matrix");
  std::string auc_source = "table3", against = "written", exclude;
  correlate->add_option("--auc", auc_source, "'table3' (embedded reference values) or an AUC CSV");
  correlate->add_option("--against", against, "written | spoken")->check(CLI::IsMember({"written", "spoken"}));
  correlate->add_option("--exclude-source", exclude, "Drop pairs with this source language");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run the full experiment and write the report");
  ManifestFlags run_flags;
  run_flags.add_to(*run_cmd, true);
  std::optional<std::size_t> max_cells;
  run_cmd->add_option("--max-cells", max_cells, "Stop after executing this many cells (resume later)");

  // report
  auto* report = app.add_subcommand("report", "Write CSV/SVG/JSON report files");
  std::string report_manifest, report_dir, report_auc;
  report->add_option("--manifest", report_manifest, "Experiment manifest; its output_dir holds the ledger");
  report->add_option("--output-dir", report_dir, "Output directory (overrides the manifest's)");
  report->add_option("--auc", report_auc, "Report from AUC values ('table3' or a CSV) instead of a ledger");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("mtlearn");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  try {
    if (*tables) {
      const auto& langs = romance_languages();
      if (which == "written" || which == "all") {
        out << "Written intelligibility (lexical analysis)\n"
            << format_matrix(embedded_matrices().written.scores, langs, 2) << "\n";
      }
      if (which == "spoken" || which == "all") {
        out << "Spoken intelligibility (cloze test)\n"
            << format_matrix(embedded_matrices().spoken.scores, langs, 1) << "\n";
      }
      if (which == "auc" || which == "all") {
        out << "Learning-curve AUC\n" << format_matrix(embedded_reference_auc(), langs, 2) << "\n";
      }
      return kExitOk;
    }

    if (*score) {
      auto result = corpus_bleu(text::read_lines(hyp_path), text::read_lines(ref_path));
      out << to_json(result) << "\n";
      return kExitOk;
    }

    if (*sub) {
      auto manifest = subsample(n_train, Fraction::parse(fraction_text), sub_seed);
      if (!sub_src.empty() || !sub_tgt.empty()) manifest.pair = PairId{LangCode(sub_src), LangCode(sub_tgt)};
      out << to_json(manifest);
      return kExitOk;
    }

    if (*train) {
      auto corpus = read_tsv(train_tsv, LangCode("xx"), LangCode("yy"));
      auto model = train_model1(corpus.pairs, iterations);
      if (model.skipped_pairs > 0) err << "warning: skipped " << model.skipped_pairs << " pairs with an empty side\n";
      auto hyps = decode_all(model.table, text::read_lines(test_src));
      text::write_lines(hyp_out, hyps);
      if (!table_out.empty()) text::write_file_atomic(table_out, model.table.to_json());
      out << "log-likelihood " << text::format_real(model.log_likelihood.front()) << " -> "
          << text::format_real(model.log_likelihood.back()) << "\n";
      if (!train_ref.empty()) out << to_json(corpus_bleu(hyps, text::read_lines(train_ref))) << "\n";
      return kExitOk;
    }

    if (*build) {
      int status = kExitOk;
      for (const auto& c : build_corpora(build_flags.load())) {
        if (!c.error.empty()) {
          out << c.pair.str() << " FAILED " << c.error << "\n";
          status = kExitFailure;
        } else {
          out << c.pair.str() << " train=" << c.train << " dev=" << c.dev << " test=" << c.test << "\n";
        }
      }
      return status;
    }

    if (*curve) {
      auto scores = read_csv(scores_path);
      CsvTable curves_in{{"pair", "fraction", "bleu"}, {}};
      const auto src = scores.column("src"), tgt = scores.column("tgt");
      const auto frac = scores.column("fraction"), bleu = scores.column("bleu");
      for (const auto& row : scores.rows) curves_in.rows.push_back({row[src] + "-" + row[tgt], row[frac], row[bleu]});
      auto curves = curves_from_csv(curves_in);
      out << curves_csv(curves).to_string();
      return kExitOk;
    }

    if (*auc) {
      auto table = read_csv(curve_path);
      const bool anonymous = !table.has_column("pair");
      if (anonymous) {
        // A single unlabeled curve: tag it so it can be grouped.
        table.header.push_back("pair");
        for (auto& row : table.rows) row.push_back("xx-yy");
      }
      auto curves = curves_from_csv(table);
      if (anonymous) {
        out << text::format_real(auc_trapezoid(curves.front()).auc) << "\n";
        return kExitOk;
      }
      AucMap areas;
      for (const auto& c : curves) areas[c.pair] = auc_trapezoid(c).auc;
      out << auc_csv(areas).to_string();
      return kExitOk;
    }

    if (*correlate) {
      auto points = scatter_points(load_auc(auc_source), matrix_named(against));
      if (!exclude.empty()) points = filter_by_source(points, LangCode(exclude));
      double r = pearson(points);
      out << "r = " << fixed(r, 3) << " (n = " << points.size() << ", " << against
          << (exclude.empty() ? "" : ", excluding source " + exclude) << ", exact " << text::format_real(r) << ")\n";
      return kExitOk;
    }

    if (*run_cmd) {
      auto manifest = run_flags.load();
      RunOptions options;
      options.max_new_cells = max_cells;
      auto ledger = run_experiment(manifest, options);
      const auto done = ledger.count(CellStatus::done);
      const auto failed = ledger.count(CellStatus::failed);
      const auto pending = ledger.count(CellStatus::pending);
      out << "cells: " << done << " done, " << failed << " failed, " << pending << " pending\n";
      for (const auto& c : ledger.cells()) {
        if (c.status == CellStatus::failed) err << c.pair.str() << " @ " << c.fraction.str() << ": " << c.error << "\n";
      }
      if (failed > 0) return kExitFailure;
      if (ledger.complete()) {
        auto summary = build_report(ledger, embedded_matrices(), manifest.output_dir);
        out << summary.to_json();
      }
      return kExitOk;
    }

    if (*report) {
      fs::path dir = report_dir;
      if (dir.empty()) {
        if (report_manifest.empty()) {
          err << "error: report needs --manifest or --output-dir\n";
          return kExitConfig;
        }
        dir = ExperimentManifest::load(report_manifest).output_dir;
      }
      if (!report_auc.empty()) return print_summary(build_report_from_auc(load_auc(report_auc), embedded_matrices(), dir), out);
      auto ledger = RunLedger::load(dir / "ledger.json");
      if (!ledger) throw Error(Errc::incomplete_ledger, "no ledger.json in " + dir.string());
      return print_summary(build_report(*ledger, embedded_matrices(), dir), out);
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return e.code() == Errc::config || e.code() == Errc::invalid_argument ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}

}  // namespace mtlearn::cli
