#include "wordtour/lower_bound.hpp"

#include <algorithm>
#include <limits>

#include "wordtour/error.hpp"

namespace wordtour {

OneTree min_one_tree(const Metric& metric, const NodePotentials& potentials) {
  const int n = metric.size();
  if (n < 3) throw InvalidArgument("a one-tree needs at least 3 nodes");
  if (potentials.size() != n) throw InvalidArgument("potential vector has the wrong size");

  auto cost = [&](int i, int j) { return metric(i, j) + potentials(i) + potentials(j); };
  constexpr double kInf = std::numeric_limits<double>::infinity();

  OneTree tree;
  tree.edges.reserve(n);
  tree.degrees = Eigen::VectorXi::Zero(n);
  double total = 0.0;

  // dense Prim over nodes 1..n-1
  std::vector<double> key(n, kInf);
  std::vector<int> parent(n, -1);
  std::vector<char> in_tree(n, 0);
  in_tree[0] = 1;
  int current = 1;
  in_tree[current] = 1;
  for (int added = 1; added < n - 1; ++added) {
    int next = -1;
    double next_key = kInf;
    for (int v = 1; v < n; ++v) {
      if (in_tree[v]) continue;
      const double c = cost(current, v);
      if (c < key[v]) {
        key[v] = c;
        parent[v] = current;
      }
      if (key[v] < next_key) {
        next_key = key[v];
        next = v;
      }
    }
    in_tree[next] = 1;
    tree.edges.emplace_back(parent[next], next);
    ++tree.degrees(parent[next]);
    ++tree.degrees(next);
    total += next_key;
    current = next;
  }

  // two cheapest edges at the special node
  int first = -1;
  int second = -1;
  for (int v = 1; v < n; ++v) {
    const double c = cost(0, v);
    if (first < 0 || c < cost(0, first)) {
      second = first;
      first = v;
    } else if (second < 0 || c < cost(0, second)) {
      second = v;
    }
  }
  for (int v : {first, second}) {
    tree.edges.emplace_back(0, v);
    ++tree.degrees(0);
    ++tree.degrees(v);
    total += cost(0, v);
  }

  tree.weight = total - 2.0 * potentials.sum();
  return tree;
}

OneTree min_one_tree(const EmbeddingMatrix& embeddings, const NodePotentials& potentials) {
  const Metric metric(embeddings);
  return min_one_tree(metric, potentials);
}

namespace {

bool is_tour(const OneTree& tree) { return (tree.degrees.array() == 2).all(); }

}  // namespace

AscentResult held_karp_ascent(const Metric& metric, int iterations, double upper_bound) {
  if (iterations < 0) throw InvalidArgument("iteration count must be non-negative");
  const int n = metric.size();

  NodePotentials pi = NodePotentials::Zero(n);
  OneTree tree = min_one_tree(metric, pi);

  AscentResult out;
  out.bound = tree.weight;
  out.potentials = pi;
  out.tour_found = is_tour(tree);
  out.history.push_back(out.bound);
  if (out.tour_found) return out;

  Eigen::VectorXd subgradient = (tree.degrees.array() - 2).cast<double>().matrix();
  double step = std::max(0.0, (upper_bound - tree.weight) /
                                  std::max(1.0, subgradient.squaredNorm()));

  for (int m = 0; m < iterations && step > 0.0; ++m) {
    pi += step * subgradient;
    tree = min_one_tree(metric, pi);
    ++out.iterations;
    if (tree.weight > out.bound) {
      out.bound = tree.weight;
      out.potentials = pi;
      out.tour_found = is_tour(tree);
    }
    out.history.push_back(out.bound);
    if (is_tour(tree)) break;
    subgradient = (tree.degrees.array() - 2).cast<double>().matrix();
    step *= kAscentDecay;
  }
  return out;
}

AscentResult held_karp_ascent(const EmbeddingMatrix& embeddings, int iterations,
                              double upper_bound) {
  const Metric metric(embeddings);
  return held_karp_ascent(metric, iterations, upper_bound);
}

}  // namespace wordtour
