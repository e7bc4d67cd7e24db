#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>

namespace mtlearn::testing {

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "mtlearn");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

/// Every regular file under `root`, keyed by its generic relative path.
/// Files whose name is in `skip_names` are left out.
std::map<std::string, std::string> snapshot_tree(const std::filesystem::path& root,
                                                 const std::set<std::string>& skip_names = {});

}  // namespace mtlearn::testing
