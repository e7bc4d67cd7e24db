#include <array>

#include "mtlearn/analysis.hpp"

namespace mtlearn {

namespace {

// Rows are source languages, columns target languages, both in
// romance_languages() order; the diagonal is unused.
using Grid = std::array<std::array<double, 5>, 5>;

constexpr Grid kWrittenLexical = {{
    {0.0, 86.40, 77.37, 68.86, 59.97},
    {84.56, 0.0, 75.33, 67.11, 64.54},
    {79.45, 75.65, 0.0, 68.82, 65.97},
    {69.98, 63.15, 72.93, 0.0, 65.12},
    {70.17, 65.57, 69.15, 62.27, 0.0},
}};

constexpr Grid kSpokenCloze = {{
    {0.0, 35.7, 38.2, 28.2, 13.7},
    {62.0, 0.0, 44.1, 34.3, 14.7},
    {56.0, 23.4, 0.0, 18.6, 8.7},
    {31.5, 23.5, 22.9, 0.0, 11.0},
    {46.6, 20.7, 47.2, 47.1, 0.0},
}};

constexpr Grid kReferenceAuc = {{
    {0.0, 74.71, 73.74, 73.63, 71.77},
    {75.12, 0.0, 72.32, 72.83, 70.05},
    {74.34, 73.32, 0.0, 72.69, 71.71},
    {72.89, 72.78, 72.54, 0.0, 69.94},
    {71.87, 70.67, 71.48, 70.48, 0.0},
}};

std::map<PairId, double> to_map(const Grid& grid) {
  const auto& langs = romance_languages();
  std::map<PairId, double> out;
  for (std::size_t i = 0; i < langs.size(); ++i) {
    for (std::size_t j = 0; j < langs.size(); ++j) {
      if (i != j) out.emplace(PairId{langs[i], langs[j]}, grid[i][j]);
    }
  }
  return out;
}

}  // namespace

const std::vector<LangCode>& romance_languages() {
  static const std::vector<LangCode> langs{LangCode("es"), LangCode("pt"), LangCode("it"),
                                           LangCode("fr"), LangCode("ro")};
  return langs;
}

const EmbeddedMatrices& embedded_matrices() {
  static const EmbeddedMatrices matrices{
      IntelligibilityMatrix{Medium::written, to_map(kWrittenLexical)},
      IntelligibilityMatrix{Medium::spoken, to_map(kSpokenCloze)},
  };
  return matrices;
}

const AucMap& embedded_reference_auc() {
  static const AucMap auc = to_map(kReferenceAuc);
  return auc;
}

}  // namespace mtlearn
