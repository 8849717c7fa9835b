#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "wordtour/embedding.hpp"
#include "wordtour/metric.hpp"

namespace wordtour {

/// Per-node dual values added to both endpoints of every edge.
using NodePotentials = Eigen::VectorXd;

struct OneTree {
  /// Spanning-tree edges over nodes 1..n-1 followed by the two edges at node 0.
  std::vector<std::pair<int, int>> edges;
  Eigen::VectorXi degrees;
  /// Total modified edge weight minus 2 * sum(potentials).
  double weight = 0.0;
};

/// Minimum one-tree with node 0 as the special node under the modified
/// distances d(i, j) + pi_i + pi_j. Requires n >= 3 and pi.size() == n.
OneTree min_one_tree(const Metric& metric, const NodePotentials& potentials);
OneTree min_one_tree(const EmbeddingMatrix& embeddings, const NodePotentials& potentials);

struct AscentResult {
  /// Best one-tree weight seen; a valid lower bound on the optimal tour.
  double bound = 0.0;
  /// Potentials that produced `bound`.
  NodePotentials potentials;
  /// Ascent steps actually taken.
  int iterations = 0;
  /// The best one-tree was a tour, so `bound` is the optimum.
  bool tour_found = false;
  /// Best bound after each evaluation, starting with w(0).
  std::vector<double> history;
};

inline constexpr double kAscentDecay = 0.95;

/// Subgradient ascent pi <- pi + t_m (deg - 2) with
/// t_m = t_0 * 0.95^m and t_0 = (upper_bound - w(0)) / max(1, |deg(0) - 2|^2).
/// `upper_bound` should be the cost of any tour.
AscentResult held_karp_ascent(const Metric& metric, int iterations, double upper_bound);
AscentResult held_karp_ascent(const EmbeddingMatrix& embeddings, int iterations,
                              double upper_bound);

}  // namespace wordtour
