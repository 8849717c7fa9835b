#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "wordtour/embedding.hpp"

namespace wordtour {

using WeightMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Scale applied to Euclidean distances before truncation to integers.
inline constexpr double kTsplibScale = 1000.0;

/// floor(kTsplibScale * d)
std::int64_t tsplib_weight(double distance);

/// Writes a symmetric EXPLICIT / UPPER_ROW instance. Requires n >= 3.
void export_tsplib(const EmbeddingMatrix& embeddings, const std::filesystem::path& path,
                   const std::string& name = "wordtour");
void write_tsplib(const EmbeddingMatrix& embeddings, std::ostream& out,
                  const std::string& name = "wordtour");

struct TsplibInstance {
  std::string name;
  int dimension = 0;
  WeightMatrix weights;
};

/// Parses explicit symmetric instances (FULL_MATRIX, UPPER_ROW, LOWER_ROW,
/// UPPER_DIAG_ROW, LOWER_DIAG_ROW).
TsplibInstance read_tsplib(std::istream& in);
TsplibInstance load_tsplib(const std::filesystem::path& path);

}  // namespace wordtour
