#include "wordtour/tsp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "wordtour/error.hpp"
#include "wordtour/parallel.hpp"

namespace wordtour {

double tour_cost(const Metric& metric, std::span<const int> order) {
  const std::size_t n = order.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += metric(order[i], order[(i + 1) % n]);
  return total;
}

double tour_cost(const EmbeddingMatrix& embeddings, const Tour& tour) {
  if (tour.size() != embeddings.size()) throw InvalidArgument("tour does not match embeddings");
  return cyclic_cost(embeddings.vectors(), tour.order());
}

CandidateGraph::CandidateGraph(int n, int k, std::vector<int> flat)
    : n_(n), k_(k), width_(std::min(k, n - 1)), flat_(std::move(flat)) {
  if (k < 1) throw InvalidArgument("candidate count must be at least 1");
  if (flat_.size() != static_cast<std::size_t>(n_) * width_) {
    throw InvalidArgument("candidate table has the wrong size");
  }
}

CandidateGraph build_candidates(const EmbeddingMatrix& embeddings, int k, int threads) {
  if (k < 1) throw InvalidArgument("candidate count must be at least 1");
  const int n = embeddings.size();
  const int width = std::min(k, n - 1);
  std::vector<int> flat(static_cast<std::size_t>(n) * width);

  parallel_for(n, threads, [&](int i) {
    std::vector<std::pair<double, int>> row;
    row.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j != i) row.emplace_back(embeddings.distance(i, j), j);
    }
    std::partial_sort(row.begin(), row.begin() + width, row.end());
    for (int r = 0; r < width; ++r) flat[static_cast<std::size_t>(i) * width + r] = row[r].second;
  });
  return CandidateGraph(n, k, std::move(flat));
}

namespace {

/// Nearest unvisited node to `from` by full scan; ties to the smaller index.
int nearest_unvisited(const Metric& metric, int from, const std::vector<char>& visited) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int j = 0; j < metric.size(); ++j) {
    if (visited[j]) continue;
    const double d = metric(from, j);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

Tour greedy_impl(const Metric& metric, const CandidateGraph* candidates, int start) {
  const int n = metric.size();
  if (start < 0 || start >= n) throw InvalidArgument("greedy start node out of range");
  std::vector<char> visited(n, 0);
  std::vector<int> order;
  order.reserve(n);
  int current = start;
  visited[current] = 1;
  order.push_back(current);
  while (static_cast<int>(order.size()) < n) {
    int next = -1;
    if (candidates) {
      // lists are exact and share the tie-break, so the first unvisited
      // entry is the global answer
      for (int c : candidates->neighbors(current)) {
        if (!visited[c]) {
          next = c;
          break;
        }
      }
    }
    if (next < 0) next = nearest_unvisited(metric, current, visited);
    visited[next] = 1;
    order.push_back(next);
    current = next;
  }
  return Tour::from_order(order);
}

}  // namespace

Tour greedy_tour(const EmbeddingMatrix& embeddings, int start) {
  return greedy_impl(Metric(embeddings), nullptr, start);
}

Tour greedy_tour(const Metric& metric, const CandidateGraph& candidates, int start) {
  return greedy_impl(metric, &candidates, start);
}

BruteForceResult brute_force_tour(const EmbeddingMatrix& embeddings) {
  const int n = embeddings.size();
  if (n < kBruteForceMinNodes || n > kBruteForceMaxNodes) {
    throw InvalidArgument("brute force supports 3 to 10 nodes, got " + std::to_string(n));
  }
  const Metric metric(embeddings);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> best = order;
  double best_cost = std::numeric_limits<double>::infinity();
  // node 0 fixed first; next_permutation walks the rest lexicographically
  do {
    if (order[1] > order[n - 1]) continue;
    const double c = tour_cost(metric, order);
    if (c < best_cost) {
      best_cost = c;
      best = order;
    }
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return {Tour::from_order(best), best_cost};
}

}  // namespace wordtour
