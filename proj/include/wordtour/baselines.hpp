#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "wordtour/embedding.hpp"
#include "wordtour/tour.hpp"

namespace wordtour {

/// Direction drawn from the standard multivariate normal for `seed`.
Eigen::VectorXd random_direction(int dim, std::uint64_t seed);

/// Word indices sorted ascending by `scores`, ties to the smaller index.
std::vector<int> ranking_by_score(const Eigen::VectorXd& scores);

/// Linear order by projection onto random_direction(d, seed).
std::vector<int> rand_proj_ranking(const EmbeddingMatrix& embeddings, std::uint64_t seed);
Tour rand_proj_order(const EmbeddingMatrix& embeddings, std::uint64_t seed);

/// Scores of the mean-centred rows on the `component`-th principal axis
/// (1-based, descending variance). The axis sign is chosen so the word with
/// the largest absolute score scores positive.
Eigen::VectorXd pca_scores(const EmbeddingMatrix& embeddings, int component);
std::vector<int> pca_ranking(const EmbeddingMatrix& embeddings, int component);
Tour pca_order(const EmbeddingMatrix& embeddings, int component);

/// Flips `scores` in place according to the sign convention above.
void fix_score_sign(Eigen::VectorXd& scores);

}  // namespace wordtour
