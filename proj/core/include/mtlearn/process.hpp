#pragma once

#include <chrono>
#include <filesystem>
#include <string>

namespace mtlearn {

struct ProcessResult {
  int exit_status = 0;  // -1 when killed by a signal
  bool timed_out = false;
  std::string output;  // interleaved stdout and stderr
};

/// Runs `command` through /bin/sh -c in `working_dir` (current directory
/// when empty), in its own process group. The group is killed once
/// `timeout` elapses. The environment passes through unchanged.
ProcessResult run_shell(const std::string& command, const std::filesystem::path& working_dir,
                        std::chrono::milliseconds timeout);

/// Single-quotes `text` for /bin/sh.
std::string shell_quote(const std::string& text);

}  // namespace mtlearn
