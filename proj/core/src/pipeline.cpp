#include "mtlearn/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "mtlearn/bleu.hpp"
#include "mtlearn/csv.hpp"
#include "mtlearn/error.hpp"
#include "mtlearn/hash.hpp"
#include "mtlearn/text.hpp"

namespace mtlearn {

namespace fs = std::filesystem;

fs::path OutputLayout::corpus_dir(const PairId& pair) const { return root / "corpus" / pair.str(); }

fs::path OutputLayout::subset_path(const PairId& pair, const Fraction& fraction) const {
  return root / "subsets" / pair.str() / (fraction.str() + ".json");
}

fs::path OutputLayout::hypothesis_path(const PairId& pair, const Fraction& fraction) const {
  return root / "hyps" / pair.str() / (fraction.str() + ".txt");
}

fs::path OutputLayout::work_dir(const PairId& pair, const Fraction& fraction) const {
  return root / "work" / pair.str() / fraction.str();
}

namespace {

constexpr const char* kCorpusVersion = "corpus-v1";
constexpr const char* kCellVersion = "cell-v1";

std::string real_key(double v) { return text::format_real(v); }

std::string trainer_fingerprint(const TrainerSpec& spec) {
  if (spec.kind == TrainerKind::builtin_em) return "builtin-em:" + std::to_string(spec.em_iterations);
  return "external:" + spec.command_template;
}

// Everything a cell needs from its pair's corpus.
struct PairData {
  PairId id;
  std::string corpus_key;
  std::string error;  // non-empty when the corpus could not be built
  ParallelPair train;
  std::vector<std::string> test_src;
  std::vector<std::string> test_ref;
  fs::path test_src_path;
};

std::optional<std::string> read_corpus_key(const fs::path& dir) {
  auto meta = dir / "meta.json";
  if (!fs::exists(meta)) return std::nullopt;
  try {
    auto j = nlohmann::json::parse(text::read_file(meta));
    return j.at("key").get<std::string>();
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

class BitextCache {
 public:
  explicit BitextCache(const ExperimentManifest& m) : manifest_(m) {}

  const PivotBitext& get(const LangCode& lang) {
    auto it = loaded_.find(lang);
    if (it != loaded_.end()) return it->second;
    const auto& src = manifest_.data_sources.at(lang);
    return loaded_.emplace(lang, load_pivot_bitext(src.pivot, src.target, lang)).first->second;
  }

 private:
  const ExperimentManifest& manifest_;
  std::map<LangCode, PivotBitext> loaded_;
};

PairData prepare_pair(const ExperimentManifest& m, const OutputLayout& layout, const PairId& id,
                      const std::map<LangCode, std::string>& source_hash, BitextCache& bitexts) {
  PairData data{id, {}, {}, {id.src, id.tgt, {}, {}}, {}, {}, {}};
  Sha256 h;
  h.field(kCorpusVersion).field(source_hash.at(id.src)).field(source_hash.at(id.tgt));
  h.field(id.src.str()).field(id.tgt.str());
  h.field(real_key(m.split.train_ratio)).field(real_key(m.split.dev_ratio)).field(real_key(m.split.test_ratio));
  h.field(std::to_string(m.split.seed));
  data.corpus_key = h.hex_digest();

  const auto dir = layout.corpus_dir(id);
  data.test_src_path = dir / "test.src.txt";
  try {
    if (read_corpus_key(dir) != data.corpus_key || !fs::exists(dir / "train.tsv") ||
        !fs::exists(dir / "test.tsv") || !fs::exists(data.test_src_path)) {
      auto split = split_pair(build_parallel(bitexts.get(id.src), bitexts.get(id.tgt)), m.split);
      std::vector<std::string> src, ref;
      for (const auto& p : split.test.pairs) {
        src.push_back(p.src);
        ref.push_back(p.tgt);
      }
      text::write_lines(data.test_src_path, src);
      text::write_lines(dir / "test.ref.txt", ref);
      write_corpus_split(dir, split, m.split, data.corpus_key);
    }
    data.train = read_tsv(dir / "train.tsv", id.src, id.tgt);
    auto test = read_tsv(dir / "test.tsv", id.src, id.tgt);
    for (const auto& p : test.pairs) {
      data.test_src.push_back(p.src);
      data.test_ref.push_back(p.tgt);
    }
  } catch (const Error& e) {
    data.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return data;
}

std::string cell_key(const ExperimentManifest& m, const PairData& pair, const Fraction& fraction) {
  Sha256 h;
  h.field(kCellVersion).field(pair.corpus_key).field(fraction.str()).field(std::to_string(m.seed));
  h.field(trainer_fingerprint(m.trainer));
  return h.hex_digest();
}

double execute_cell(const ExperimentManifest& m, const OutputLayout& layout, const PairData& pair,
                    const Fraction& fraction) {
  auto subset = subsample(pair.train.size(), fraction, m.seed);
  subset.pair = pair.id;
  text::write_file_atomic(layout.subset_path(pair.id, fraction), to_json(subset));
  const auto rows = pair.train.select(subset.indices);
  const auto hyp_path = layout.hypothesis_path(pair.id, fraction);

  std::vector<std::string> hypotheses;
  if (m.trainer.kind == TrainerKind::builtin_em) {
    auto model = train_model1(rows.pairs, m.trainer.em_iterations);
    hypotheses = decode_all(model.table, pair.test_src);
    text::write_lines(hyp_path, hypotheses);
  } else {
    const auto work = layout.work_dir(pair.id, fraction);
    fs::create_directories(work);
    write_tsv(work / "train.tsv", rows);
    auto spec = m.trainer;
    if (spec.workdir.empty()) spec.workdir = work;
    hypotheses = run_external(spec, work / "train.tsv", pair.test_src_path, hyp_path).hypotheses;
  }
  return corpus_bleu(hypotheses, pair.test_ref).score;
}

void write_scores(const OutputLayout& layout, const RunLedger& ledger) {
  CsvTable t{{"src", "tgt", "fraction", "bleu"}, {}};
  for (const auto& c : ledger.cells()) {
    if (c.status != CellStatus::done || !c.bleu) continue;
    t.rows.push_back({c.pair.src.str(), c.pair.tgt.str(), c.fraction.str(), text::format_real(*c.bleu)});
  }
  text::write_file_atomic(layout.scores_path(), t.to_string());
}

std::map<PairId, PairData> prepare_pairs(const ExperimentManifest& manifest, const OutputLayout& layout) {
  std::map<LangCode, std::string> source_hash;
  for (const auto& lang : manifest.languages) {
    const auto& src = manifest.data_sources.at(lang);
    source_hash[lang] = Sha256().field(sha256_file_hex(src.pivot)).field(sha256_file_hex(src.target)).hex_digest();
  }
  BitextCache bitexts(manifest);
  std::map<PairId, PairData> pairs;
  for (const auto& id : manifest.pairs()) {
    pairs.emplace(id, prepare_pair(manifest, layout, id, source_hash, bitexts));
  }
  return pairs;
}

}  // namespace

std::vector<CorpusSummary> build_corpora(const ExperimentManifest& manifest) {
  manifest.validate();
  const OutputLayout layout{manifest.output_dir};
  fs::create_directories(layout.root);
  std::vector<CorpusSummary> out;
  for (const auto& [id, data] : prepare_pairs(manifest, layout)) {
    CorpusSummary summary{id, 0, 0, 0, data.error};
    if (data.error.empty()) {
      summary.train = data.train.size();
      summary.test = data.test_src.size();
      summary.dev = read_tsv(layout.corpus_dir(id) / "dev.tsv", id.src, id.tgt).size();
    }
    out.push_back(std::move(summary));
  }
  return out;
}

RunLedger run_experiment(const ExperimentManifest& manifest, const RunOptions& options) {
  manifest.validate();
  const OutputLayout layout{manifest.output_dir};
  fs::create_directories(layout.root);
  const auto pairs = prepare_pairs(manifest, layout);

  const auto previous = RunLedger::load(layout.ledger_path());
  std::vector<CellRecord> cells;
  for (const auto& [id, data] : pairs) {
    for (const auto& fraction : manifest.fractions.fractions()) {
      CellRecord cell{id, fraction};
      cell.hypothesis_path = fs::relative(layout.hypothesis_path(id, fraction), layout.root);
      cell.key = data.error.empty() ? cell_key(manifest, data, fraction) : std::string();
      if (previous) {
        const auto* old = previous->find(id, fraction);
        if (old && old->status == CellStatus::done && old->key == cell.key && !cell.key.empty() &&
            fs::exists(layout.root / old->hypothesis_path)) {
          cell = *old;
        }
      }
      if (!data.error.empty()) {
        cell.status = CellStatus::failed;
        cell.error = data.error;
      }
      cells.push_back(std::move(cell));
    }
  }
  RunLedger ledger(std::move(cells));
  ledger.save(layout.ledger_path());

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < ledger.cells().size(); ++i) {
    const auto& c = ledger.cells()[i];
    if (c.status != CellStatus::done && pairs.at(c.pair).error.empty()) todo.push_back(i);
  }

  std::mutex ledger_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> started{0};
  auto worker = [&] {
    while (true) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= todo.size()) return;
      if (options.max_new_cells && started.fetch_add(1) >= *options.max_new_cells) return;

      CellRecord cell = [&] {
        std::lock_guard lock(ledger_mutex);
        return ledger.cells()[todo[slot]];
      }();
      if (options.on_cell_start) options.on_cell_start(cell.pair, cell.fraction);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        cell.bleu = execute_cell(manifest, layout, pairs.at(cell.pair), cell.fraction);
        cell.status = CellStatus::done;
        cell.error.clear();
      } catch (const std::exception& e) {
        cell.status = CellStatus::failed;
        cell.bleu.reset();
        cell.error = e.what();
      }
      cell.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

      std::lock_guard lock(ledger_mutex);
      ledger.cells()[todo[slot]] = cell;
      ledger.save(layout.ledger_path());
    }
  };

  const std::size_t n_workers = std::min(manifest.max_parallel_jobs, std::max<std::size_t>(todo.size(), 1));
  std::vector<std::jthread> workers;
  workers.reserve(n_workers);
  for (std::size_t i = 0; i < n_workers; ++i) workers.emplace_back(worker);
  workers.clear();  // joins

  ledger.save(layout.ledger_path());
  write_scores(layout, ledger);
  return ledger;
}

}  // namespace mtlearn
