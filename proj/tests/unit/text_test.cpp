#include <gtest/gtest.h>

#include "mtlearn/corpus.hpp"
#include "mtlearn/error.hpp"
#include "mtlearn/text.hpp"
#include "temp_dir.hpp"

namespace mtlearn {
namespace {

std::vector<char32_t> decode_codepoints(const std::string& s) {
  std::vector<char32_t> out;
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    int len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    char32_t cp = len == 1 ? c : c & (0x7F >> len);
    for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

TEST(Text, NfcComposesCombiningAccent) {
  auto nfc = text::to_nfc("Cafe\xCC\x81");
  EXPECT_EQ(decode_codepoints(nfc), (std::vector<char32_t>{0x43, 0x61, 0x66, 0xE9}));
}

TEST(Text, NormalizePivotExamples) {
  EXPECT_EQ(normalize_pivot("  Hello   world \t"), "Hello world");
  EXPECT_EQ(normalize_pivot("Cafe\xCC\x81"), "Caf\xC3\xA9");
  EXPECT_EQ(normalize_pivot("Hello"), "Hello");
  EXPECT_NE(normalize_pivot("hello"), normalize_pivot("Hello"));
  EXPECT_EQ(normalize_pivot(""), "");
}

TEST(Text, NormalizePivotIsIdempotent) {
  for (std::string s : {"  a  b  ", "Cafe\xCC\x81 au   lait", "\tx\ny", "already clean"}) {
    auto once = normalize_pivot(s);
    EXPECT_EQ(normalize_pivot(once), once) << s;
  }
}

TEST(Text, Utf8Validation) {
  EXPECT_TRUE(text::is_valid_utf8("ok \xC3\xA9"));
  EXPECT_FALSE(text::is_valid_utf8("\xC3"));
  EXPECT_FALSE(text::is_valid_utf8("\xFF"));
  EXPECT_THROW(text::to_nfc("\xFF"), Error);
}

TEST(Text, ReadLinesHandlesCrlfAndMissingNewline) {
  testing::TempDir dir;
  testing::write_text(dir / "f.txt", "a\r\nb\nc");
  EXPECT_EQ(text::read_lines(dir / "f.txt"), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Text, FormatReal) {
  EXPECT_EQ(text::format_real(80.0), "80.0");
  EXPECT_EQ(text::format_real(0.8), "0.8");
  EXPECT_EQ(text::format_real(48.0), "48.0");
}

TEST(Text, AtomicWriteReplacesContent) {
  testing::TempDir dir;
  text::write_file_atomic(dir / "x", "first");
  text::write_file_atomic(dir / "x", "second");
  EXPECT_EQ(testing::read_text(dir / "x"), "second");
}

}  // namespace
}  // namespace mtlearn
