#include "mtlearn/manifest.hpp"

#include <set>

#include <json.hpp>

#include "mtlearn/error.hpp"
#include "mtlearn/text.hpp"

namespace mtlearn {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

Fraction fraction_from_json(const json& value) {
  if (value.is_string()) return Fraction::parse(value.get<std::string>());
  return Fraction::from_double(value.get<double>());
}

TrainerSpec trainer_from_json(const json& j, const std::filesystem::path& base_dir) {
  TrainerSpec spec;
  const auto kind = j.value("kind", std::string("builtin-em"));
  if (kind == "builtin-em") {
    spec.kind = TrainerKind::builtin_em;
    spec.em_iterations = j.value("em_iterations", 10);
  } else if (kind == "external") {
    spec.kind = TrainerKind::external;
    spec.command_template = j.at("command_template").get<std::string>();
    if (j.contains("workdir")) spec.workdir = resolve(base_dir, j.at("workdir").get<std::string>());
    spec.timeout = std::chrono::seconds(j.value("timeout_seconds", std::int64_t{24 * 3600}));
  } else {
    throw Error(Errc::config, "unknown trainer kind '" + kind + "' (want builtin-em or external)");
  }
  return spec;
}

}  // namespace

ExperimentManifest ExperimentManifest::parse(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentManifest m;
  try {
    auto j = json::parse(text);
    for (const auto& code : j.at("languages")) m.languages.emplace_back(code.get<std::string>());
    for (const auto& [code, source] : j.at("data_sources").items()) {
      m.data_sources.emplace(LangCode(code), DataSource{resolve(base_dir, source.at("pivot").get<std::string>()),
                                                        resolve(base_dir, source.at("target").get<std::string>())});
    }
    if (j.contains("split")) {
      const auto& s = j.at("split");
      m.split.train_ratio = s.value("train", m.split.train_ratio);
      m.split.dev_ratio = s.value("dev", m.split.dev_ratio);
      m.split.test_ratio = s.value("test", m.split.test_ratio);
      m.split.seed = s.value("seed", std::uint64_t{0});
    }
    if (j.contains("fractions")) {
      std::vector<Fraction> fractions;
      for (const auto& f : j.at("fractions")) fractions.push_back(fraction_from_json(f));
      m.fractions = FractionGrid::custom(std::move(fractions));
    }
    m.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("trainer")) m.trainer = trainer_from_json(j.at("trainer"), base_dir);
    const auto jobs = j.value("max_parallel_jobs", std::int64_t{1});
    if (jobs < 1) throw Error(Errc::config, "max_parallel_jobs must be >= 1");
    m.max_parallel_jobs = static_cast<std::size_t>(jobs);
    m.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
  } catch (const json::exception& e) {
    throw Error(Errc::config, std::string("manifest: ") + e.what());
  } catch (const Error& e) {
    throw Error(Errc::config, std::string("manifest: ") + e.what());
  }
  m.validate();
  return m;
}

ExperimentManifest ExperimentManifest::load(const std::filesystem::path& path) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const Error& e) {
    throw Error(Errc::config, e.what());
  }
  return parse(content, path.parent_path());
}

void ExperimentManifest::validate() const {
  if (languages.size() < 2) throw Error(Errc::config, "manifest needs at least 2 languages");
  std::set<LangCode> seen;
  for (const auto& lang : languages) {
    if (lang.is_pivot()) throw Error(Errc::config, "'en' is the pivot language and cannot be listed");
    if (!seen.insert(lang).second) throw Error(Errc::config, "language " + lang.str() + " listed twice");
    auto it = data_sources.find(lang);
    if (it == data_sources.end()) throw Error(Errc::config, "no data source for " + lang.str());
    for (const auto& p : {it->second.pivot, it->second.target}) {
      if (!std::filesystem::is_regular_file(p)) {
        throw Error(Errc::config, "data source for " + lang.str() + " not found: " + p.string());
      }
    }
  }
  split.validate();
  trainer.validate();
  if (max_parallel_jobs < 1) throw Error(Errc::config, "max_parallel_jobs must be >= 1");
  if (output_dir.empty()) throw Error(Errc::config, "output_dir is required");
}

std::vector<PairId> ExperimentManifest::pairs() const {
  std::vector<PairId> out;
  for (const auto& a : languages) {
    for (const auto& b : languages) {
      if (a != b) out.push_back({a, b});
    }
  }
  return out;
}

}  // namespace mtlearn
