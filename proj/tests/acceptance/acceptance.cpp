// Acceptance gate: `mtlearn_acceptance [N...]` checks the listed criteria
// (all of them when none is given) and prints one PASS/FAIL line each.

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "mtlearn/analysis.hpp"
#include "mtlearn/bleu.hpp"
#include "mtlearn/pipeline.hpp"
#include "mtlearn/process.hpp"
#include "mtlearn/report.hpp"
#include "mtlearn/sampling.hpp"
#include "mtlearn/text.hpp"
#include "mtlearn/trainer.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

namespace {

using namespace mtlearn;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<ScatterPoint> table_points(Medium medium) {
  const auto& m = embedded_matrices();
  return scatter_points(embedded_reference_auc(), medium == Medium::written ? m.written : m.spoken);
}

Outcome correlation_written() {
  Outcome o;
  double r = pearson(table_points(Medium::written));
  o.detail << "r = " << fixed(r) << ", published 0.539 +- 0.05. ";
  o.check(std::abs(r - 0.539) <= 0.05, "r outside tolerance");
  return o;
}

Outcome correlation_spoken() {
  Outcome o;
  auto pts = table_points(Medium::spoken);
  double r = pearson(pts);
  auto no_ro = filter_by_source(pts, LangCode("ro"));
  double r_no_ro = pearson(no_ro);
  o.detail << "r = " << fixed(r) << " (published 0.224), without ro source r = " << fixed(r_no_ro) << " over "
           << no_ro.size() << " points (published 0.585), tolerance 0.05. ";
  o.check(std::abs(r - 0.224) <= 0.05, "spoken r outside tolerance");
  o.check(no_ro.size() == 16, "expected 16 points after excluding ro");
  o.check(std::abs(r_no_ro - 0.585) <= 0.05, "spoken r without ro outside tolerance");
  return o;
}

Outcome footnote() {
  Outcome o;
  PairId pair{LangCode("es"), LangCode("pt")};
  auto c = relative_curve(pair, {{Fraction(1, 2), 24.0}, {Fraction(1, 1), 30.0}});
  o.detail << "relatives (" << c.points[0].relative << ", " << c.points[1].relative << "). ";
  o.check(c.points.size() == 2 && c.points[0].relative == 0.8 && c.points[1].relative == 1.0, "not exactly (0.8, 1.0)");
  return o;
}

Outcome auc_oracles() {
  Outcome o;
  PairId pair{LangCode("es"), LangCode("pt")};
  const auto grid = fraction_grid().fractions();
  LearningCurve constant{pair, {}}, linear{pair, {}};
  for (const auto& f : grid) {
    constant.points.push_back({f, 1.0, 1.0});
    linear.points.push_back({f, f.percent(), f.to_double()});
  }
  double a = auc_trapezoid(constant).auc, b = auc_trapezoid(linear).auc;
  o.check(a == 80.0, "constant curve != 80.0");
  o.check(b == 48.0, "linear curve != 48.0");

  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    LearningCurve c{pair, {}};
    std::vector<double> xs, ys;
    for (const auto& f : grid) {
      double y = f.is_one() ? 1.0 : u(rng);
      c.points.push_back({f, y, y});
      xs.push_back(f.percent());
      ys.push_back(y);
    }
    worst = std::max(worst, std::abs(auc_trapezoid(c).auc - testing::fine_integral(xs, ys)));
  }
  o.check(worst <= 1e-9, "random curve deviates from oracle");
  o.detail << "constant " << text::format_real(a) << ", linear " << text::format_real(b)
           << ", max |trapezoid - oracle| over 200 random curves " << worst << ". ";
  return o;
}

Outcome bleu_oracles() {
  Outcome o;
  std::vector<std::string> refs{"the cat sat on the mat", "there is a cat on the mat", "it is 3.14 , roughly"};
  auto identity = corpus_bleu(refs, refs);
  o.check(identity.score == 100.0, "identity != 100");

  // Independent hand count for "the cat sat on mat" vs "the cat sat on the mat".
  std::vector<std::string> h{"the", "cat", "sat", "on", "mat"}, r{"the", "cat", "sat", "on", "the", "mat"};
  const std::size_t hand_matches[] = {5, 3, 2, 1}, hand_totals[] = {5, 4, 3, 2};
  for (std::size_t n = 1; n <= 4; ++n) {
    auto c = testing::brute_force_ngrams(h, r, n);
    o.check(c.matches == hand_matches[n - 1] && c.total == hand_totals[n - 1],
            "hand count for order " + std::to_string(n));
  }
  auto hand = corpus_bleu(std::vector<std::string>{"the cat sat on mat"},
                          std::vector<std::string>{"the cat sat on the mat"});
  o.check(hand.precisions == std::array<double, 4>{1.0, 0.75, 2.0 / 3.0, 0.5}, "precisions");
  o.check(std::abs(hand.brevity_penalty - std::exp(-0.2)) < 1e-15, "brevity penalty");
  o.check(std::abs(hand.score - 57.89) <= 0.01, "hand example score");

  auto zero = corpus_bleu(std::vector<std::string>{"the the the"}, std::vector<std::string>{"the cat"});
  o.check(zero.score == 0.0, "zero p_n did not give 0");

  std::mt19937_64 rng(99);
  const char* words[] = {"a", "b", "the", "of"};
  std::vector<std::string> hyp, ref;
  std::size_t matches[4] = {}, totals[4] = {};
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> ht, rt;
    for (auto k = 2 + rng() % 12; k > 0; --k) ht.push_back(words[rng() % 4]);
    for (auto k = 2 + rng() % 12; k > 0; --k) rt.push_back(words[rng() % 4]);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto c = testing::brute_force_ngrams(ht, rt, n);
      matches[n - 1] += c.matches;
      totals[n - 1] += c.total;
    }
    hyp.push_back(text::join(ht, " "));
    ref.push_back(text::join(rt, " "));
  }
  auto random = corpus_bleu(hyp, ref);
  for (std::size_t n = 0; n < 4; ++n)
    o.check(random.precisions[n] == static_cast<double>(matches[n]) / static_cast<double>(totals[n]),
            "brute-force p_" + std::to_string(n + 1));
  o.detail << "identity " << text::format_real(identity.score) << ", hand example " << fixed(hand.score)
           << ", zero-p case " << text::format_real(zero.score) << ", 50-sentence corpus p = (";
  for (std::size_t n = 0; n < 4; ++n) o.detail << (n ? ", " : "") << matches[n] << "/" << totals[n];
  o.detail << "). ";
  return o;
}

Outcome em_properties() {
  Outcome o;
  double worst_drop = 0.0, worst_sum = 0.0;
  for (std::uint64_t seed : {11, 12, 13}) {
    std::mt19937_64 rng(seed);
    std::vector<SentencePair> corpus;
    for (int i = 0; i < 60; ++i) {
      std::string s, t;
      for (auto k = 1 + uniform_below(rng, 7); k > 0; --k) s += "s" + std::to_string(uniform_below(rng, 15)) + " ";
      for (auto k = 1 + uniform_below(rng, 7); k > 0; --k) t += "t" + std::to_string(uniform_below(rng, 15)) + " ";
      corpus.push_back({s, t});
    }
    auto result = train_model1(corpus, 20);
    for (std::size_t k = 1; k < result.log_likelihood.size(); ++k)
      worst_drop = std::max(worst_drop, result.log_likelihood[k - 1] - result.log_likelihood[k]);
    for (const auto& [src, dist] : result.table.entries()) {
      double sum = 0.0;
      for (const auto& [tgt, p] : dist) sum += p;
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
    o.check(result.log_likelihood.size() == 21, "expected 21 log-likelihood values");
  }
  o.check(worst_drop <= 1e-9, "log-likelihood decreased");
  o.check(worst_sum <= 1e-9, "distribution does not sum to 1");

  std::vector<SentencePair> toy{{"a b", "x y"}, {"a", "x"}};
  auto toy_model = train_model1(toy, 10);
  double tx = toy_model.table.probability("a", "x"), ty = toy_model.table.probability("a", "y");
  o.check(tx > ty, "t(x|a) <= t(y|a)");
  o.detail << "max LL drop " << worst_drop << ", max |sum - 1| " << worst_sum << ", t(x|a) = " << fixed(tx)
           << " vs t(y|a) = " << fixed(ty) << ". ";
  return o;
}

testing::CipherFamily desk_family() {
  testing::CipherFamilyOptions options;
  options.sentences = 2400;
  options.vocabulary = 1500;
  options.seed = 5;
  return testing::make_cipher_family(options);
}

Outcome desk_scale() {
  Outcome o;
  testing::TempDir dir("mtlearn-accept7");
  auto family = desk_family();
  auto manifest_path = testing::write_cipher_experiment(family, dir.path(), "out",
                                                        std::max(1u, std::thread::hardware_concurrency()));
  auto manifest = ExperimentManifest::load(manifest_path);

  auto t0 = std::chrono::steady_clock::now();
  auto ledger = run_experiment(manifest);
  auto summary = build_report(ledger, embedded_matrices(), manifest.output_dir);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  auto pairs = build_parallel(family.bitexts.begin()->second, std::next(family.bitexts.begin())->second).size();
  std::vector<double> auc, overlap;
  for (const auto& [pair, value] : summary.auc) {
    auc.push_back(value);
    overlap.push_back(family.overlap.at(pair));
  }
  o.check(ledger.count(CellStatus::done) == 180, "not all 180 cells done");
  o.check(seconds < 300.0, "slower than 5 minutes");
  double r = auc.size() >= 3 ? pearson(auc, overlap) : 0.0;
  o.check(r > 0.5, "r(AUC, overlap) <= 0.5");
  auto [lo, hi] = std::minmax_element(auc.begin(), auc.end());
  o.detail << "5 languages, ~" << pairs << " sentences per pair, " << ledger.count(CellStatus::done)
           << "/180 cells in " << fixed(seconds, 1) << " s; AUC range [" << fixed(*lo, 2) << ", " << fixed(*hi, 2)
           << "], r(AUC, overlap) = " << fixed(r) << ". ";
  return o;
}

std::map<std::string, std::string> bundle(const fs::path& root) {
  auto files = testing::snapshot_tree(root, {"ledger.json"});
  std::erase_if(files, [](const auto& kv) { return kv.first.ends_with(".tmp"); });
  return files;
}

std::string first_difference(const std::map<std::string, std::string>& a,
                             const std::map<std::string, std::string>& b) {
  for (const auto& [name, content] : a) {
    auto it = b.find(name);
    if (it == b.end()) return name + " missing";
    if (it->second != content) return name + " differs";
  }
  for (const auto& [name, content] : b)
    if (!a.count(name)) return name + " unexpected";
  return "";
}

std::size_t done_cells(const fs::path& ledger_path) {
  try {
    auto ledger = RunLedger::load(ledger_path);
    return ledger ? ledger->count(CellStatus::done) : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

pid_t spawn_cli(const std::vector<std::string>& args) {
  pid_t pid = fork();
  if (pid == 0) {
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(MTLEARN_CLI_PATH));
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    if (!freopen("/dev/null", "w", stdout)) _exit(126);
    execv(MTLEARN_CLI_PATH, argv.data());
    _exit(127);
  }
  return pid;
}

Outcome determinism() {
  Outcome o;
  testing::TempDir dir("mtlearn-accept8");
  auto family = desk_family();
  const auto jobs = std::max(1u, std::thread::hardware_concurrency());
  auto manifest_at = [&](const std::string& name, std::size_t j) {
    return testing::write_cipher_experiment(family, dir / name, "out", j);
  };

  // Two identical uninterrupted runs; the second with a different worker count.
  auto first = ExperimentManifest::load(manifest_at("first", jobs));
  auto second = ExperimentManifest::load(manifest_at("second", 1));
  build_report(run_experiment(first), embedded_matrices(), first.output_dir);
  build_report(run_experiment(second), embedded_matrices(), second.output_dir);
  auto reference = bundle(first.output_dir);
  auto diff = first_difference(reference, bundle(second.output_dir));
  o.check(diff.empty(), "identical runs differ: " + diff);

  // A CLI run killed with SIGKILL part-way through, then resumed.
  auto killed_manifest = manifest_at("killed", 1);
  auto killed_out = killed_manifest.parent_path() / "out";
  pid_t pid = spawn_cli({"run", "--manifest", killed_manifest.string()});
  std::size_t done_at_kill = 0;
  for (int i = 0; i < 6000; ++i) {
    done_at_kill = done_cells(killed_out / "ledger.json");
    if (done_at_kill >= 20) break;
    int status = 0;
    if (waitpid(pid, &status, WNOHANG) == pid) {
      pid = -1;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  if (pid > 0) {
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
  }
  done_at_kill = done_cells(killed_out / "ledger.json");
  o.check(pid > 0 && done_at_kill < 180, "run was not interrupted");
  auto resume = run_shell(shell_quote(MTLEARN_CLI_PATH) + " run --manifest " +
                                       shell_quote(killed_manifest.string()),
                                   dir.path(), std::chrono::seconds(600));
  o.check(resume.exit_status == 0, "resumed run exited with " + std::to_string(resume.exit_status));
  diff = first_difference(reference, bundle(killed_out));
  o.check(diff.empty(), "killed-and-resumed run differs: " + diff);

  // Library-level interruption after a fixed number of cells.
  auto stepped = ExperimentManifest::load(manifest_at("stepped", jobs));
  RunOptions stop;
  stop.max_new_cells = 37;
  auto partial = run_experiment(stepped, stop);
  o.check(partial.count(CellStatus::done) == 37, "max_new_cells not honoured");
  build_report(run_experiment(stepped), embedded_matrices(), stepped.output_dir);
  diff = first_difference(reference, bundle(stepped.output_dir));
  o.check(diff.empty(), "stepped run differs: " + diff);

  o.detail << reference.size() << " files compared; SIGKILL after " << done_at_kill
           << "/180 cells, resumed; second interruption after 37 cells. ";
  return o;
}

Outcome sampling_invariants() {
  Outcome o;
  std::mt19937_64 rng(31337);
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t n = 1 + uniform_below(rng, 5000);
    const std::uint64_t den = 1 + uniform_below(rng, 100);
    const Fraction f(1 + uniform_below(rng, den), den);
    const std::uint64_t seed = rng();

    auto m = subsample(n, f, seed);
    const auto k = m.indices.size();
    bool ok = (k - 1) * f.den() < f.num() * n && f.num() * n <= k * f.den();
    ok &= std::is_sorted(m.indices.begin(), m.indices.end());
    ok &= std::adjacent_find(m.indices.begin(), m.indices.end()) == m.indices.end();
    ok &= m.indices.empty() || m.indices.back() < n;

    const Fraction smaller(f.num() > 1 ? f.num() - 1 : f.num(), f.den());
    auto inner = subsample(n, smaller, seed);
    auto full = subsample(n, Fraction(1, 1), seed);
    ok &= std::includes(m.indices.begin(), m.indices.end(), inner.indices.begin(), inner.indices.end());
    ok &= std::includes(full.indices.begin(), full.indices.end(), m.indices.begin(), m.indices.end());
    ok &= full.indices.size() == n;

    ok &= to_json(subsample(n, f, seed)) == to_json(m);
    if (t % 10 == 0) {
      auto cli = run_shell(shell_quote(MTLEARN_CLI_PATH) + " subsample --n " + std::to_string(n) +
                                        " --fraction " + f.str() + " --seed " + std::to_string(seed),
                                    fs::current_path(), std::chrono::seconds(60));
      ok &= cli.exit_status == 0 && cli.output == to_json(m);
    }
    if (!ok) {
      ++failures;
      o.detail << "(n=" << n << ", f=" << f.str() << ", seed=" << seed << ") ";
    }
  }
  o.check(failures == 0, std::to_string(failures) + " triples violated an invariant");
  o.detail << "100 triples, " << failures << " failures, 10 re-run in a separate process. ";
  return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Outcome()>>> all{
      {"correlation reproduction (written)", correlation_written},
      {"correlation reproduction (spoken)", correlation_spoken},
      {"relative-BLEU footnote", footnote},
      {"AUC oracles", auc_oracles},
      {"BLEU oracles", bleu_oracles},
      {"EM properties", em_properties},
      {"desk-scale end-to-end", desk_scale},
      {"determinism and resumability", determinism},
      {"sampling invariants", sampling_invariants},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoul(argv[i]));
  if (selected.empty())
    for (std::size_t i = 1; i <= criteria().size(); ++i) selected.push_back(i);

  bool all_pass = true;
  for (auto n : selected) {
    if (n < 1 || n > criteria().size()) {
      std::cerr << "no criterion " << n << "\n";
      return 2;
    }
    const auto& [name, check] = criteria()[n - 1];
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail << "exception: " << e.what();
    }
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name
              << "): " << outcome.detail.str() << std::endl;
    all_pass &= outcome.pass;
  }
  return all_pass ? 0 : 1;
}
