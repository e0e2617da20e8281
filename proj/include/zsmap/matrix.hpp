#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

namespace zsmap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Throws std::invalid_argument naming the first non-finite entry.
void require_finite(const Matrix& m, const std::string& name);

/// CSV matrix I/O: one matrix row per line, comma separated, dot decimal,
/// no header. Values are written with enough digits to round-trip exactly.
Matrix read_csv_matrix(const std::filesystem::path& path);
void write_csv_matrix(const std::filesystem::path& path, const Matrix& m);

}  // namespace zsmap
