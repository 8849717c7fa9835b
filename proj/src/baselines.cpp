#include "wordtour/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "wordtour/error.hpp"
#include "wordtour/power_iteration.hpp"

namespace wordtour {

Eigen::VectorXd random_direction(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd d(dim);
  for (int i = 0; i < dim; ++i) d(i) = normal(rng);
  return d;
}

std::vector<int> ranking_by_score(const Eigen::VectorXd& scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores(a) < scores(b); });
  return order;
}

std::vector<int> rand_proj_ranking(const EmbeddingMatrix& embeddings, std::uint64_t seed) {
  const Eigen::VectorXd direction = random_direction(embeddings.dim(), seed);
  return ranking_by_score(embeddings.vectors() * direction);
}

Tour rand_proj_order(const EmbeddingMatrix& embeddings, std::uint64_t seed) {
  return Tour::from_order(rand_proj_ranking(embeddings, seed));
}

void fix_score_sign(Eigen::VectorXd& scores) {
  Eigen::Index extreme = 0;
  scores.cwiseAbs().maxCoeff(&extreme);
  if (scores(extreme) < 0.0) scores = -scores;
}

Eigen::VectorXd pca_scores(const EmbeddingMatrix& embeddings, int component) {
  const int n = embeddings.size();
  const int d = embeddings.dim();
  if (component < 1 || component > d) {
    throw InvalidArgument("PCA component must be in 1.." + std::to_string(d));
  }
  if (n <= component) throw InvalidArgument("PCA component needs more words than its index");

  const auto& x = embeddings.vectors();
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd covariance = (centered.transpose() * centered) / double(n - 1);
  const auto pairs = leading_eigenpairs(covariance, component);

  Eigen::VectorXd scores = centered * pairs.vectors.col(component - 1);
  fix_score_sign(scores);
  return scores;
}

std::vector<int> pca_ranking(const EmbeddingMatrix& embeddings, int component) {
  return ranking_by_score(pca_scores(embeddings, component));
}

Tour pca_order(const EmbeddingMatrix& embeddings, int component) {
  return Tour::from_order(pca_ranking(embeddings, component));
}

}  // namespace wordtour
