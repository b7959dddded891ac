#pragma once

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "narmkit/dataset.hpp"

namespace testsup {

// Writes content to a fresh temp file and removes it on destruction.
class TempFile {
public:
  explicit TempFile(const std::string& content, const std::string& suffix = ".csv") {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("narmkit_test_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++) + suffix))
                .string();
    std::ofstream out(path_, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path_, ec); }
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

inline narmkit::Dataset numeric_dataset(std::vector<std::vector<double>> columns) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < columns.size(); ++j) names.push_back("a" + std::to_string(j));
  return narmkit::Dataset::from_numeric_columns(std::move(names), std::move(columns));
}

}  // namespace testsup
