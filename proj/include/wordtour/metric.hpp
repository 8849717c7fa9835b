#pragma once

#include <Eigen/Core>

#include "wordtour/embedding.hpp"

namespace wordtour {

/// Instances at or below this size get a cached distance matrix.
inline constexpr int kDistanceCacheLimit = 2000;

/// Pairwise L2 distances over an embedding matrix, cached for small n and
/// evaluated on demand otherwise. Holds a reference; the matrix must outlive it.
class Metric {
 public:
  explicit Metric(const EmbeddingMatrix& embeddings, int cache_limit = kDistanceCacheLimit);

  int size() const { return embeddings_->size(); }
  const EmbeddingMatrix& embeddings() const { return *embeddings_; }
  bool cached() const { return cache_.size() > 0; }

  double operator()(int i, int j) const {
    return cached() ? cache_(i, j) : embeddings_->distance(i, j);
  }

 private:
  const EmbeddingMatrix* embeddings_;
  Eigen::MatrixXd cache_;
};

}  // namespace wordtour
