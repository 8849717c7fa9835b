#include "wordtour/metric.hpp"

namespace wordtour {

Metric::Metric(const EmbeddingMatrix& embeddings, int cache_limit) : embeddings_(&embeddings) {
  const int n = embeddings.size();
  if (n > cache_limit) return;
  cache_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    cache_(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double d = embeddings.distance(i, j);
      cache_(i, j) = d;
      cache_(j, i) = d;
    }
  }
}

}  // namespace wordtour
