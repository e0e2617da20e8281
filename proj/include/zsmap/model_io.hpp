#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zsmap/matrix.hpp"

namespace zsmap {

/// On-disk model container: a method name, scalar hyperparameters, and named
/// CSV matrix blocks with a small dimension header per block.
struct ModelFile {
  std::string method;
  std::map<std::string, double> params;
  std::vector<std::pair<std::string, Matrix>> matrices;

  const Matrix& matrix(const std::string& name) const;
  bool has_matrix(const std::string& name) const;
};

void save_model(const std::filesystem::path& path, const ModelFile& model);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace zsmap
