#include "mtlearn/trainer.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

#include <json.hpp>

#include "mtlearn/error.hpp"
#include "mtlearn/process.hpp"
#include "mtlearn/text.hpp"

namespace mtlearn {

LexicalTable::LexicalTable(Entries entries) : entries_(std::move(entries)) {
  for (const auto& [source, dist] : entries_) {
    if (dist.empty()) throw Error(Errc::invalid_argument, "empty distribution for source '" + source + "'");
    double sum = 0.0;
    const std::string* argmax = nullptr;
    double best_p = -1.0;
    for (const auto& [target, p] : dist) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(Errc::invalid_argument, "probability outside [0,1] for '" + source + "'");
      }
      sum += p;
      // Strict comparison over lexicographic iteration: smallest target wins ties.
      if (p > best_p) {
        best_p = p;
        argmax = &target;
      }
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw Error(Errc::invalid_argument, "distribution for '" + source + "' sums to " + text::format_real(sum));
    }
    best_.emplace(source, *argmax);
  }
}

const LexicalTable::Distribution* LexicalTable::find(std::string_view source) const {
  auto it = entries_.find(source);
  return it == entries_.end() ? nullptr : &it->second;
}

double LexicalTable::probability(std::string_view source, std::string_view target) const {
  const auto* dist = find(source);
  if (dist == nullptr) return 0.0;
  auto it = dist->find(target);
  return it == dist->end() ? 0.0 : it->second;
}

const std::string* LexicalTable::best(std::string_view source) const {
  auto it = best_.find(source);
  return it == best_.end() ? nullptr : &it->second;
}

std::string LexicalTable::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [source, dist] : entries_) {
    auto& row = j[source];
    for (const auto& [target, p] : dist) row[target] = p;
  }
  return j.dump(1) + "\n";
}

namespace {

class Vocabulary {
 public:
  std::uint32_t intern(const std::string& word) {
    auto [it, inserted] = ids_.try_emplace(word, static_cast<std::uint32_t>(words_.size()));
    if (inserted) words_.push_back(word);
    return it->second;
  }
  const std::string& word(std::uint32_t id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> words_;
};

// A training sentence with every (target position, source position) cell
// resolved to a parameter slot up front, so EM is pure array arithmetic.
struct Sentence {
  std::size_t source_len = 0;  // including NULL
  std::size_t target_len = 0;
  std::vector<std::uint32_t> slots;  // target-major: slots[j * source_len + i]
};

}  // namespace

Model1Result train_model1(std::span<const SentencePair> pairs, int iterations) {
  if (iterations < 1) throw Error(Errc::invalid_argument, "EM needs at least one iteration");

  Vocabulary source_vocab;
  Vocabulary target_vocab;
  source_vocab.intern(std::string(LexicalTable::kNull));

  std::unordered_map<std::uint64_t, std::uint32_t> slot_of;
  std::vector<std::uint32_t> slot_source;
  std::vector<std::uint32_t> slot_target;
  std::vector<Sentence> corpus;
  Model1Result result;

  for (const auto& pair : pairs) {
    auto src = text::split_ascii_whitespace(pair.src);
    auto tgt = text::split_ascii_whitespace(pair.tgt);
    if (src.empty() || tgt.empty()) {
      ++result.skipped_pairs;
      continue;
    }
    std::vector<std::uint32_t> src_ids{0};
    for (const auto& w : src) src_ids.push_back(source_vocab.intern(w));
    Sentence s;
    s.source_len = src_ids.size();
    s.target_len = tgt.size();
    s.slots.reserve(s.source_len * s.target_len);
    for (const auto& w : tgt) {
      std::uint32_t f = target_vocab.intern(w);
      for (std::uint32_t e : src_ids) {
        std::uint64_t key = (static_cast<std::uint64_t>(e) << 32) | f;
        auto [it, inserted] = slot_of.try_emplace(key, static_cast<std::uint32_t>(slot_source.size()));
        if (inserted) {
          slot_source.push_back(e);
          slot_target.push_back(f);
        }
        s.slots.push_back(it->second);
      }
    }
    corpus.push_back(std::move(s));
  }
  if (corpus.empty()) throw Error(Errc::empty_corpus, "no sentence pair with tokens on both sides");

  const std::size_t n_slots = slot_source.size();
  std::vector<double> prob(n_slots);
  {
    std::vector<std::uint32_t> candidates(source_vocab.size(), 0);
    for (std::uint32_t e : slot_source) ++candidates[e];
    for (std::size_t k = 0; k < n_slots; ++k) prob[k] = 1.0 / candidates[slot_source[k]];
  }

  std::vector<double> counts(n_slots);
  std::vector<double> totals(source_vocab.size());

  // One pass: log-likelihood under the current table, plus expected counts
  // when `accumulate` is set.
  auto e_step = [&](bool accumulate) {
    double log_likelihood = 0.0;
    for (const auto& s : corpus) {
      const double log_norm = std::log(static_cast<double>(s.source_len));
      for (std::size_t j = 0; j < s.target_len; ++j) {
        const std::uint32_t* row = s.slots.data() + j * s.source_len;
        double denom = 0.0;
        for (std::size_t i = 0; i < s.source_len; ++i) denom += prob[row[i]];
        log_likelihood += std::log(denom) - log_norm;
        if (accumulate) {
          for (std::size_t i = 0; i < s.source_len; ++i) counts[row[i]] += prob[row[i]] / denom;
        }
      }
    }
    return log_likelihood;
  };

  result.log_likelihood.reserve(static_cast<std::size_t>(iterations) + 1);
  for (int it = 0; it < iterations; ++it) {
    std::fill(counts.begin(), counts.end(), 0.0);
    std::fill(totals.begin(), totals.end(), 0.0);
    result.log_likelihood.push_back(e_step(true));
    for (std::size_t k = 0; k < n_slots; ++k) totals[slot_source[k]] += counts[k];
    for (std::size_t k = 0; k < n_slots; ++k) prob[k] = counts[k] / totals[slot_source[k]];
  }
  result.log_likelihood.push_back(e_step(false));

  LexicalTable::Entries entries;
  for (std::size_t k = 0; k < n_slots; ++k) {
    entries[source_vocab.word(slot_source[k])][target_vocab.word(slot_target[k])] = prob[k];
  }
  result.table = LexicalTable(std::move(entries));
  return result;
}

std::string decode(const LexicalTable& table, std::string_view source_sentence) {
  auto tokens = text::split_ascii_whitespace(source_sentence);
  for (auto& token : tokens) {
    if (const auto* best = table.best(token)) token = *best;
  }
  return text::join(tokens, " ");
}

std::vector<std::string> decode_all(const LexicalTable& table, std::span<const std::string> sources) {
  std::vector<std::string> out;
  out.reserve(sources.size());
  for (const auto& s : sources) out.push_back(decode(table, s));
  return out;
}

void TrainerSpec::validate() const {
  if (kind == TrainerKind::builtin_em) {
    if (em_iterations < 1) throw Error(Errc::config, "em_iterations must be >= 1");
    return;
  }
  for (const char* placeholder : {"{test_src}", "{hyp_out}"}) {
    if (command_template.find(placeholder) == std::string::npos) {
      throw Error(Errc::config, std::string("command_template lacks placeholder ") + placeholder);
    }
  }
  if (timeout.count() <= 0) throw Error(Errc::config, "timeout must be positive");
}

std::string expand_command(const std::string& command_template,
                           const std::filesystem::path& train_path,
                           const std::filesystem::path& test_src_path,
                           const std::filesystem::path& hyp_out_path,
                           const std::filesystem::path& workdir) {
  const std::pair<std::string_view, std::string> substitutions[] = {
      {"{train}", shell_quote(train_path.string())},
      {"{test_src}", shell_quote(test_src_path.string())},
      {"{hyp_out}", shell_quote(hyp_out_path.string())},
      {"{workdir}", shell_quote(workdir.string())},
  };
  std::string out;
  std::size_t pos = 0;
  while (pos < command_template.size()) {
    bool replaced = false;
    if (command_template[pos] == '{') {
      for (const auto& [name, value] : substitutions) {
        if (command_template.compare(pos, name.size(), name) == 0) {
          out += value;
          pos += name.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(command_template[pos++]);
  }
  return out;
}

HypothesisSet run_external(const TrainerSpec& spec, const std::filesystem::path& train_path,
                           const std::filesystem::path& test_src_path,
                           const std::filesystem::path& hyp_out_path) {
  if (spec.kind != TrainerKind::external) {
    throw Error(Errc::config, "run_external called with a builtin trainer spec");
  }
  spec.validate();
  for (const auto& p : {train_path, test_src_path}) {
    if (!std::filesystem::exists(p)) throw Error(Errc::io, "missing input " + p.string());
  }
  const std::size_t expected = text::read_lines(test_src_path).size();
  if (hyp_out_path.has_parent_path()) std::filesystem::create_directories(hyp_out_path.parent_path());

  const auto workdir = spec.workdir.empty() ? hyp_out_path.parent_path() : spec.workdir;
  const auto command = expand_command(spec.command_template, train_path, test_src_path, hyp_out_path, workdir);
  auto result = run_shell(command, workdir,
                          std::chrono::duration_cast<std::chrono::milliseconds>(spec.timeout));

  constexpr std::size_t kTail = 4096;
  auto diagnostics = result.output.size() > kTail ? result.output.substr(result.output.size() - kTail)
                                                  : result.output;
  if (result.timed_out) {
    throw Error(Errc::external_timeout,
                "external trainer timed out after " + std::to_string(spec.timeout.count()) + "s: " + command);
  }
  if (result.exit_status != 0) {
    throw Error(Errc::external_failure, "external trainer exited with status " +
                                            std::to_string(result.exit_status) + ": " + command +
                                            "\n" + diagnostics);
  }
  if (!std::filesystem::exists(hyp_out_path)) {
    throw Error(Errc::mis_sized_output, "external trainer produced no hypothesis file " + hyp_out_path.string());
  }
  HypothesisSet out;
  out.hypotheses = text::read_lines(hyp_out_path);
  if (out.hypotheses.size() != expected) {
    throw Error(Errc::mis_sized_output, "hypothesis file has " + std::to_string(out.hypotheses.size()) +
                                            " lines, test source has " + std::to_string(expected));
  }
  return out;
}

}  // namespace mtlearn
