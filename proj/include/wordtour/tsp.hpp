#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "wordtour/embedding.hpp"
#include "wordtour/metric.hpp"
#include "wordtour/tour.hpp"

namespace wordtour {

/// Sum of Euclidean distances between consecutive rows of `points` visited in
/// `order`, including the closing edge back to the first row.
template <typename Derived>
typename Derived::Scalar cyclic_cost(const Eigen::MatrixBase<Derived>& points,
                                     std::span<const int> order) {
  using Scalar = typename Derived::Scalar;
  const std::size_t n = order.size();
  Scalar total(0);
  for (std::size_t i = 0; i < n; ++i) {
    total += l2_distance(points.row(order[i]), points.row(order[(i + 1) % n]));
  }
  return total;
}

double tour_cost(const EmbeddingMatrix& embeddings, const Tour& tour);
double tour_cost(const Metric& metric, std::span<const int> order);

/// Exact k-nearest-neighbour lists. neighbors(i) is sorted by distance,
/// ties broken by the smaller index, and never contains i.
class CandidateGraph {
 public:
  CandidateGraph(int n, int k, std::vector<int> flat);

  int size() const { return n_; }
  /// Requested k; each list holds min(k, n - 1) entries.
  int k() const { return k_; }
  int degree() const { return width_; }
  std::span<const int> neighbors(int i) const {
    return {flat_.data() + static_cast<std::size_t>(i) * width_, static_cast<std::size_t>(width_)};
  }

 private:
  int n_;
  int k_;
  int width_;
  std::vector<int> flat_;
};

inline constexpr int kDefaultCandidates = 8;

/// Requires k >= 1. Rows are independent and may be built on `threads` workers.
CandidateGraph build_candidates(const EmbeddingMatrix& embeddings, int k, int threads = 1);

/// Nearest-neighbour construction from `start`; ties go to the smaller index.
Tour greedy_tour(const EmbeddingMatrix& embeddings, int start = 0);
/// Same tour, using the candidate lists to skip most full scans.
Tour greedy_tour(const Metric& metric, const CandidateGraph& candidates, int start = 0);

struct BruteForceResult {
  Tour tour;
  double cost;
};

inline constexpr int kBruteForceMinNodes = 3;
inline constexpr int kBruteForceMaxNodes = 10;

/// Exhaustive optimum over all (n-1)!/2 cycles for 3 <= n <= 10. Among equal
/// costs the lexicographically smallest canonical order wins.
BruteForceResult brute_force_tour(const EmbeddingMatrix& embeddings);

struct SearchBudget {
  /// Maximum number of applied improving moves; 0 means unlimited.
  std::size_t max_moves = 0;
  /// Wall-clock limit in seconds; 0 means unlimited. Makes runs timing dependent.
  double max_seconds = 0.0;
};

/// A move counts as improving only above this gain.
inline constexpr double kImprovementEpsilon = 1e-9;

struct LocalSearchResult {
  Tour tour;
  double cost;
  std::size_t moves = 0;
  std::size_t two_opt_moves = 0;
  std::size_t or_opt_moves = 0;
  bool budget_exhausted = false;
};

/// 2-opt and Or-opt (segments of 1-3 nodes) restricted to candidate edges,
/// first improvement with a don't-look queue. Unless the budget runs out, the
/// result admits no improving move that creates an edge between a node and one
/// of its candidates.
LocalSearchResult local_search(const Metric& metric, const Tour& start,
                               const CandidateGraph& candidates, SearchBudget budget = {});
LocalSearchResult local_search(const EmbeddingMatrix& embeddings, const Tour& start,
                               const CandidateGraph& candidates, SearchBudget budget = {});

}  // namespace wordtour
