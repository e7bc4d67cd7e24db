#include "mtlearn/ledger.hpp"

#include <algorithm>

#include <json.hpp>

#include "mtlearn/error.hpp"
#include "mtlearn/text.hpp"

namespace mtlearn {

const char* to_string(CellStatus status) noexcept {
  switch (status) {
    case CellStatus::pending: return "pending";
    case CellStatus::done: return "done";
    case CellStatus::failed: return "failed";
  }
  return "pending";
}

CellStatus cell_status_from_string(std::string_view text) {
  if (text == "pending") return CellStatus::pending;
  if (text == "done") return CellStatus::done;
  if (text == "failed") return CellStatus::failed;
  throw Error(Errc::format, "unknown cell status '" + std::string(text) + "'");
}

RunLedger::RunLedger(std::vector<CellRecord> cells) : cells_(std::move(cells)) { sort(); }

void RunLedger::sort() {
  std::sort(cells_.begin(), cells_.end(), [](const CellRecord& a, const CellRecord& b) {
    if (a.pair != b.pair) return a.pair < b.pair;
    return a.fraction < b.fraction;
  });
}

CellRecord* RunLedger::find(const PairId& pair, const Fraction& fraction) {
  for (auto& c : cells_) {
    if (c.pair == pair && c.fraction == fraction) return &c;
  }
  return nullptr;
}

const CellRecord* RunLedger::find(const PairId& pair, const Fraction& fraction) const {
  return const_cast<RunLedger*>(this)->find(pair, fraction);
}

std::size_t RunLedger::count(CellStatus status) const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [&](const CellRecord& c) { return c.status == status; }));
}

std::string RunLedger::to_json() const {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& c : cells_) {
    nlohmann::ordered_json j;
    j["pair"] = c.pair.str();
    j["fraction"] = c.fraction.str();
    j["status"] = to_string(c.status);
    j["bleu"] = c.bleu ? nlohmann::ordered_json(*c.bleu) : nlohmann::ordered_json(nullptr);
    j["hypothesis_path"] = c.hypothesis_path.generic_string();
    j["wall_time"] = c.wall_time;
    j["key"] = c.key;
    if (!c.error.empty()) j["error"] = c.error;
    cells.push_back(std::move(j));
  }
  nlohmann::ordered_json root;
  root["cells"] = std::move(cells);
  return root.dump(2) + "\n";
}

RunLedger RunLedger::from_json(std::string_view json) {
  try {
    auto root = nlohmann::json::parse(json);
    std::vector<CellRecord> cells;
    for (const auto& j : root.at("cells")) {
      CellRecord c{PairId::parse(j.at("pair").get<std::string>()), Fraction::parse(j.at("fraction").get<std::string>())};
      c.status = cell_status_from_string(j.at("status").get<std::string>());
      if (!j.at("bleu").is_null()) c.bleu = j.at("bleu").get<double>();
      c.hypothesis_path = j.value("hypothesis_path", std::string());
      c.wall_time = j.value("wall_time", 0.0);
      c.key = j.value("key", std::string());
      c.error = j.value("error", std::string());
      cells.push_back(std::move(c));
    }
    return RunLedger(std::move(cells));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format, std::string("malformed ledger: ") + e.what());
  }
}

std::optional<RunLedger> RunLedger::load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  return from_json(text::read_file(path));
}

void RunLedger::save(const std::filesystem::path& path) const {
  text::write_file_atomic(path, to_json());
}

}  // namespace mtlearn
