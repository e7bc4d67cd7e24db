#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mtlearn::text {

bool is_valid_utf8(std::string_view bytes) noexcept;

/// Unicode canonical composition. Throws Error{invalid_utf8}.
std::string to_nfc(std::string_view utf8);

/// Strips leading/trailing Unicode White_Space and collapses internal runs
/// to a single U+0020.
std::string collapse_whitespace(std::string_view utf8);

/// Splits on ASCII whitespace; no empty tokens.
std::vector<std::string> split_ascii_whitespace(std::string_view line);

std::string join(const std::vector<std::string>& tokens, std::string_view separator);

/// One entry per line; a trailing "\r" is dropped, a missing final newline
/// is tolerated. Throws Error{io} or Error{invalid_utf8} (with line number).
std::vector<std::string> read_lines(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temporary and renames it into place, so a
/// reader never observes a half-written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Newline-terminated lines, written atomically.
void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);

/// Shortest round-trip decimal form of a double; always contains a '.' or an
/// exponent so it reads back as a real ("80.0", "0.8", "57.89...").
std::string format_real(double value);

}  // namespace mtlearn::text
