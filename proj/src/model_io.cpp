#include "zsmap/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zsmap {

const Matrix& ModelFile::matrix(const std::string& name) const {
  for (const auto& [n, m] : matrices) {
    if (n == name) return m;
  }
  throw std::invalid_argument("model has no matrix block '" + name + "'");
}

bool ModelFile::has_matrix(const std::string& name) const {
  for (const auto& [n, m] : matrices) {
    if (n == name) return true;
  }
  return false;
}

void save_model(const std::filesystem::path& path, const ModelFile& model) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write model file: " + path.string());
  }
  out << "zsmap-model v1\n";
  out << "method " << model.method << '\n';
  char buf[64];
  for (const auto& [key, value] : model.params) {
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    out << "param " << key << ' ' << buf << '\n';
  }
  for (const auto& [name, m] : model.matrices) {
    out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
        out << buf << (c + 1 < m.cols() ? ',' : '\n');
      }
    }
  }
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open model file: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != "zsmap-model v1") {
    throw std::invalid_argument("bad model file header: " + path.string());
  }
  ModelFile model;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "method") {
      ss >> model.method;
    } else if (tag == "param") {
      std::string key;
      double value;
      ss >> key >> value;
      model.params[key] = value;
    } else if (tag == "matrix") {
      std::string name;
      Eigen::Index rows, cols;
      if (!(ss >> name >> rows >> cols)) {
        throw std::invalid_argument("bad matrix header in " + path.string());
      }
      Matrix m(rows, cols);
      for (Eigen::Index r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) {
          throw std::invalid_argument("truncated model file: " + path.string());
        }
        std::stringstream row(line);
        std::string cell;
        for (Eigen::Index c = 0; c < cols; ++c) {
          if (!std::getline(row, cell, ',')) {
            throw std::invalid_argument("truncated matrix row in " +
                                        path.string());
          }
          m(r, c) = std::stod(cell);
        }
      }
      model.matrices.emplace_back(name, std::move(m));
    } else {
      throw std::invalid_argument("unknown model file tag '" + tag + "'");
    }
  }
  if (model.method.empty()) {
    throw std::invalid_argument("model file missing method: " + path.string());
  }
  return model;
}

}  // namespace zsmap
