#include "mtlearn/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include <json.hpp>

#include "mtlearn/error.hpp"
#include "mtlearn/sampling.hpp"
#include "mtlearn/text.hpp"

namespace mtlearn {

ParallelPair ParallelPair::select(std::span<const std::size_t> indices) const {
  ParallelPair out{src, tgt, {}, {}};
  out.pairs.reserve(indices.size());
  out.provenance.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= pairs.size()) throw Error(Errc::invalid_argument, "pair index out of range");
    out.pairs.push_back(pairs[i]);
    if (i < provenance.size()) out.provenance.push_back(provenance[i]);
  }
  return out;
}

void SplitSpec::validate() const {
  for (double r : {train_ratio, dev_ratio, test_ratio}) {
    if (!(r > 0.0 && r < 1.0)) throw Error(Errc::config, "split ratios must each lie in (0,1)");
  }
  if (std::abs(train_ratio + dev_ratio + test_ratio - 1.0) > 1e-12) {
    throw Error(Errc::config, "split ratios must sum to 1");
  }
}

PivotBitext load_pivot_bitext(const std::filesystem::path& pivot_path,
                              const std::filesystem::path& target_path, const LangCode& lang) {
  PivotBitext bitext{lang, text::read_lines(pivot_path), text::read_lines(target_path)};
  if (bitext.pivot_lines.size() != bitext.target_lines.size()) {
    throw Error(Errc::line_count_mismatch,
                pivot_path.string() + " has " + std::to_string(bitext.pivot_lines.size()) +
                    " lines but " + target_path.string() + " has " +
                    std::to_string(bitext.target_lines.size()));
  }
  return bitext;
}

std::string normalize_pivot(std::string_view sentence) {
  return text::collapse_whitespace(text::to_nfc(sentence));
}

ParallelPair build_parallel(const PivotBitext& a, const PivotBitext& b) {
  if (a.lang == b.lang) {
    throw Error(Errc::duplicate_language, "cannot pair " + a.lang.str() + " with itself");
  }
  if (a.size() == 0 || b.size() == 0) {
    throw Error(Errc::empty_corpus, "empty bitext for " + (a.size() == 0 ? a.lang : b.lang).str());
  }

  // Occurrences of each pivot in b, in file order; consumed front to back.
  std::unordered_map<std::string, std::deque<std::size_t>> pending;
  for (std::size_t j = 0; j < b.size(); ++j) {
    auto key = normalize_pivot(b.pivot_lines[j]);
    if (!key.empty()) pending[std::move(key)].push_back(j);
  }

  ParallelPair out{a.lang, b.lang, {}, {}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto it = pending.find(normalize_pivot(a.pivot_lines[i]));
    if (it == pending.end() || it->second.empty()) continue;
    std::size_t j = it->second.front();
    it->second.pop_front();
    out.pairs.push_back({a.target_lines[i], b.target_lines[j]});
    out.provenance.push_back({i, j});
  }
  if (out.pairs.empty()) {
    throw Error(Errc::no_matched_pairs,
                "no shared pivot sentences between " + a.lang.str() + " and " + b.lang.str());
  }
  return out;
}

SplitIndices split_indices(std::size_t n, const SplitSpec& spec) {
  spec.validate();
  if (n < 10) {
    throw Error(Errc::too_few_pairs, "need at least 10 pairs to split, got " + std::to_string(n));
  }
  // The epsilon absorbs binary representation error (0.29 * 100 = 28.999...).
  auto floor_size = [n](double ratio) {
    return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
  };
  std::size_t n_test = floor_size(spec.test_ratio);
  std::size_t n_dev = floor_size(spec.dev_ratio);

  auto perm = seeded_permutation(n, spec.seed);
  SplitIndices out;
  out.test.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
  out.dev.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test),
                 perm.begin() + static_cast<std::ptrdiff_t>(n_test + n_dev));
  out.train.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_test + n_dev), perm.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.dev.begin(), out.dev.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

CorpusSplit split_pair(const ParallelPair& pair, const SplitSpec& spec) {
  auto indices = split_indices(pair.size(), spec);
  return CorpusSplit{pair.select(indices.train), pair.select(indices.dev), pair.select(indices.test),
                     std::move(indices)};
}

std::string to_tsv(const ParallelPair& pair) {
  std::string out;
  auto check = [](const std::string& s) {
    if (s.find_first_of("\t\n") != std::string::npos) {
      throw Error(Errc::format, "sentence contains a tab or newline and cannot be written as TSV");
    }
  };
  for (const auto& p : pair.pairs) {
    check(p.src);
    check(p.tgt);
    out += p.src;
    out.push_back('\t');
    out += p.tgt;
    out.push_back('\n');
  }
  return out;
}

void write_tsv(const std::filesystem::path& path, const ParallelPair& pair) {
  text::write_file_atomic(path, to_tsv(pair));
}

ParallelPair read_tsv(const std::filesystem::path& path, const LangCode& src, const LangCode& tgt) {
  ParallelPair out{src, tgt, {}, {}};
  auto lines = text::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw Error(Errc::format, path.string() + ":" + std::to_string(i + 1) + ": expected 2 tab-separated columns");
    }
    out.pairs.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return out;
}

std::string corpus_sidecar_json(const CorpusSplit& split, const SplitSpec& spec,
                                std::string_view cache_key) {
  nlohmann::ordered_json j;
  j["src"] = split.train.src.str();
  j["tgt"] = split.train.tgt.str();
  j["counts"] = {{"total", split.train.size() + split.dev.size() + split.test.size()},
                 {"train", split.train.size()},
                 {"dev", split.dev.size()},
                 {"test", split.test.size()}};
  j["seed"] = spec.seed;
  j["ratios"] = {{"train", spec.train_ratio}, {"dev", spec.dev_ratio}, {"test", spec.test_ratio}};
  j["key"] = cache_key;
  return j.dump(2) + "\n";
}

void write_corpus_split(const std::filesystem::path& dir, const CorpusSplit& split,
                        const SplitSpec& spec, std::string_view cache_key) {
  write_tsv(dir / "train.tsv", split.train);
  write_tsv(dir / "dev.tsv", split.dev);
  write_tsv(dir / "test.tsv", split.test);
  // meta.json goes last: its presence marks the directory complete.
  text::write_file_atomic(dir / "meta.json", corpus_sidecar_json(split, spec, cache_key));
}

}  // namespace mtlearn
