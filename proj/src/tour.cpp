#include "wordtour/tour.hpp"

#include <algorithm>

#include "wordtour/error.hpp"

namespace wordtour {

bool is_permutation_of_range(std::span<const int> order) {
  const std::size_t n = order.size();
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::vector<int> canonical_cycle(std::span<const int> order) {
  const std::size_t n = order.size();
  if (n == 0) return {};
  const std::size_t start = std::min_element(order.begin(), order.end()) - order.begin();
  std::vector<int> out(n);
  const bool forward = n < 3 || order[(start + 1) % n] < order[(start + n - 1) % n];
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = forward ? order[(start + i) % n] : order[(start + n - i) % n];
  }
  return out;
}

std::uint64_t fingerprint(std::span<const int> order) {
  std::uint64_t h = 14695981039346656037ull;
  for (int v : order) {
    auto x = static_cast<std::uint32_t>(v);
    for (int b = 0; b < 4; ++b) {
      h ^= (x >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

Tour Tour::from_order(std::span<const int> order) {
  if (order.size() < 2) throw InvalidArgument("a tour needs at least 2 nodes");
  if (!is_permutation_of_range(order)) {
    throw InvalidArgument("tour is not a permutation of 0.." + std::to_string(order.size() - 1));
  }
  return Tour(canonical_cycle(order));
}

std::vector<int> Tour::positions() const {
  std::vector<int> pos(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = static_cast<int>(i);
  return pos;
}

}  // namespace wordtour
