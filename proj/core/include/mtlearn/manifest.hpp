#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mtlearn/corpus.hpp"
#include "mtlearn/lang.hpp"
#include "mtlearn/sampling.hpp"
#include "mtlearn/trainer.hpp"

namespace mtlearn {

struct DataSource {
  std::filesystem::path pivot;
  std::filesystem::path target;
};

/// JSON experiment description:
///
///   {
///     "languages": ["es", "pt"],
///     "data_sources": {"es": {"pivot": "es.en", "target": "es.es"}, ...},
///     "split": {"train": 0.8, "dev": 0.1, "test": 0.1, "seed": 7},
///     "fractions": [0.2, ..., 1.0],            // optional
///     "seed": 1,
///     "trainer": {"kind": "builtin-em", "em_iterations": 10}
///              | {"kind": "external", "command_template": "...",
///                 "workdir": "...", "timeout_seconds": 86400},
///     "max_parallel_jobs": 4,
///     "output_dir": "out"
///   }
///
/// Relative paths resolve against the manifest's directory.
struct ExperimentManifest {
  std::vector<LangCode> languages;
  std::map<LangCode, DataSource> data_sources;
  SplitSpec split;
  FractionGrid fractions = FractionGrid::standard();
  std::uint64_t seed = 0;
  TrainerSpec trainer;
  std::size_t max_parallel_jobs = 1;
  std::filesystem::path output_dir;

  /// Every Error raised here carries Errc::config.
  static ExperimentManifest parse(std::string_view json, const std::filesystem::path& base_dir);
  static ExperimentManifest load(const std::filesystem::path& path);

  void validate() const;

  /// All ordered pairs of distinct languages, in language-list order.
  std::vector<PairId> pairs() const;
};

}  // namespace mtlearn
