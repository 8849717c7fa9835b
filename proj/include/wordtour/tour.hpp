#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wordtour {

/// A cyclic visiting order over word indices {0, ..., n-1}.
///
/// Always stored in canonical form: order[0] == 0 and order[1] < order[n-1].
/// Two tours describing the same cycle therefore compare equal.
class Tour {
 public:
  /// Validates that `order` is a permutation and canonicalizes it.
  /// Throws InvalidArgument otherwise.
  static Tour from_order(std::span<const int> order);

  int size() const { return static_cast<int>(order_.size()); }
  std::span<const int> order() const { return order_; }
  int operator[](int i) const { return order_[i]; }

  /// position[v] is the index of word v in order().
  std::vector<int> positions() const;

  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  explicit Tour(std::vector<int> order) : order_(std::move(order)) {}
  std::vector<int> order_;
};

/// Rotation/reflection normal form of a permutation; no validation.
std::vector<int> canonical_cycle(std::span<const int> order);

/// True iff `order` holds every index in [0, n) exactly once.
bool is_permutation_of_range(std::span<const int> order);

/// Order-sensitive FNV-1a hash of an index sequence.
std::uint64_t fingerprint(std::span<const int> order);

}  // namespace wordtour
