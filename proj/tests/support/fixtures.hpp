#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "shelfrec/core/layout.hpp"

namespace fixture {

/// Three shelves in a row, zones [0,2)x[0,1), [3,5)x[0,1), [6,8)x[0,1).
shelfrec::StoreLayout three_shelves();

/// Fresh empty directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fixture
