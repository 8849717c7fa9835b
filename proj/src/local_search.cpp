#include <algorithm>
#include <chrono>
#include <deque>
#include <vector>

#include "wordtour/error.hpp"
#include "wordtour/tsp.hpp"

namespace wordtour {

namespace {

/// Array-backed cyclic tour with an inverse position table.
class TourArray {
 public:
  explicit TourArray(std::span<const int> order)
      : order_(order.begin(), order.end()), pos_(order.size()), n_(static_cast<int>(order.size())) {
    for (int i = 0; i < n_; ++i) pos_[order_[i]] = i;
  }

  int size() const { return n_; }
  int pos(int v) const { return pos_[v]; }
  int at(int i) const { return order_[wrap(i)]; }
  int succ(int v) const { return order_[wrap(pos_[v] + 1)]; }
  int pred(int v) const { return order_[wrap(pos_[v] - 1)]; }
  /// Number of nodes on the forward path from a to b, both included.
  int span_length(int a, int b) const { return wrap(pos_[b] - pos_[a]) + 1; }
  std::span<const int> order() const { return order_; }

  /// Reverses the forward path a..b. Reversing the complementary path yields
  /// the same cycle, so the shorter of the two is touched.
  void reverse_path(int a, int b) {
    int i = pos_[a];
    int j = pos_[b];
    int len = wrap(j - i) + 1;
    if (2 * len > n_) {
      const int ni = wrap(j + 1);
      j = wrap(i - 1);
      i = ni;
      len = n_ - len;
    }
    for (int s = 0; s < len / 2; ++s) {
      std::swap(order_[i], order_[j]);
      pos_[order_[i]] = i;
      pos_[order_[j]] = j;
      i = wrap(i + 1);
      j = wrap(j - 1);
    }
  }

  /// Moves the forward segment first..last (length len) between c and
  /// e = succ(c), reversed if requested. c and e must lie outside the segment.
  void move_segment(int first, int last, int len, int c, bool reversed) {
    const int p = pred(first);
    const int q = succ(last);
    const int e = succ(c);
    std::vector<int> seg;
    seg.reserve(len);
    for (int i = 0; i < len; ++i) seg.push_back(at(pos_[first] + i));
    if (reversed) std::reverse(seg.begin(), seg.end());

    const int between_after = span_length(q, c);   // q..c, rotated in front of the segment
    const int between_before = span_length(e, p);  // e..p, rotated behind it
    std::vector<int> block;
    int start = 0;
    if (between_after <= between_before) {
      start = pos_[first];
      block.reserve(between_after + len);
      for (int i = 0; i < between_after; ++i) block.push_back(at(pos_[q] + i));
      block.insert(block.end(), seg.begin(), seg.end());
    } else {
      start = pos_[e];
      block.reserve(between_before + len);
      block.insert(block.end(), seg.begin(), seg.end());
      for (int i = 0; i < between_before; ++i) block.push_back(at(pos_[e] + i));
    }
    for (std::size_t i = 0; i < block.size(); ++i) {
      const int idx = wrap(start + static_cast<int>(i));
      order_[idx] = block[i];
      pos_[block[i]] = idx;
    }
  }

 private:
  int wrap(int i) const {
    i %= n_;
    return i < 0 ? i + n_ : i;
  }

  std::vector<int> order_;
  std::vector<int> pos_;
  int n_;
};

constexpr int kMaxSegment = 3;

class Search {
 public:
  Search(const Metric& metric, const Tour& start, const CandidateGraph& candidates)
      : d_(metric), tour_(start.order()), cand_(candidates), queued_(start.size(), 0) {}

  /// Tries every move anchored at `a`; applies the first improving one.
  bool improve(int a) { return try_two_opt(a) || try_or_opt(a); }

  void enqueue(int v) {
    if (!queued_[v]) {
      queued_[v] = 1;
      queue_.push_back(v);
    }
  }

  int pop() {
    const int v = queue_.front();
    queue_.pop_front();
    queued_[v] = 0;
    return v;
  }

  bool queue_empty() const { return queue_.empty(); }
  const TourArray& tour() const { return tour_; }

  std::size_t two_opt_moves = 0;
  std::size_t or_opt_moves = 0;

 private:
  void touch(std::initializer_list<int> nodes) {
    for (int v : nodes) enqueue(v);
  }

  bool try_two_opt(int a) {
    if (tour_.size() < 4) return false;
    for (int c : cand_.neighbors(a)) {
      // new edges (a, c) and (succ a, succ c)
      {
        const int b = tour_.succ(a);
        const int dn = tour_.succ(c);
        if (c != b && dn != a) {
          const double gain = d_(a, b) + d_(c, dn) - d_(a, c) - d_(b, dn);
          if (gain > kImprovementEpsilon) {
            tour_.reverse_path(b, c);
            ++two_opt_moves;
            touch({a, b, c, dn});
            return true;
          }
        }
      }
      // new edges (a, c) and (pred a, pred c)
      {
        const int b = tour_.pred(a);
        const int dn = tour_.pred(c);
        if (c != b && dn != a) {
          const double gain = d_(b, a) + d_(dn, c) - d_(a, c) - d_(b, dn);
          if (gain > kImprovementEpsilon) {
            tour_.reverse_path(a, dn);
            ++two_opt_moves;
            touch({a, b, c, dn});
            return true;
          }
        }
      }
    }
    return false;
  }

  bool inside(int v, int first, int len) const {
    return tour_.span_length(first, v) <= len;
  }

  /// Segments of 1..3 nodes with `a` at either end, reinserted so that `a`
  /// becomes adjacent to one of its candidates.
  bool try_or_opt(int a) {
    const int n = tour_.size();
    for (int len = 1; len <= kMaxSegment && len <= n - 3; ++len) {
      for (int end = 0; end < (len == 1 ? 1 : 2); ++end) {
        const bool a_first = end == 0;
        const int first = a_first ? a : tour_.at(tour_.pos(a) - (len - 1));
        const int last = a_first ? tour_.at(tour_.pos(a) + (len - 1)) : a;
        const int p = tour_.pred(first);
        const int q = tour_.succ(last);
        const double removed = d_(p, first) + d_(last, q) - d_(p, q);

        for (int c : cand_.neighbors(a)) {
          if (inside(c, first, len)) continue;
          // between c and succ(c): a leads into the segment
          {
            const int e = tour_.succ(c);
            if (!inside(e, first, len)) {
              const bool reversed = !a_first;
              const int head = reversed ? last : first;
              const int tail = reversed ? first : last;
              const double gain = removed + d_(c, e) - d_(c, head) - d_(tail, e);
              if (gain > kImprovementEpsilon) {
                tour_.move_segment(first, last, len, c, reversed);
                ++or_opt_moves;
                touch({p, q, first, last, c, e});
                return true;
              }
            }
          }
          // between pred(c) and c: the segment ends at a
          {
            const int b = tour_.pred(c);
            if (!inside(b, first, len)) {
              const bool reversed = a_first;
              const int head = reversed ? last : first;
              const int tail = reversed ? first : last;
              const double gain = removed + d_(b, c) - d_(b, head) - d_(tail, c);
              if (gain > kImprovementEpsilon) {
                tour_.move_segment(first, last, len, b, reversed);
                ++or_opt_moves;
                touch({p, q, first, last, b, c});
                return true;
              }
            }
          }
        }
      }
    }
    return false;
  }

  const Metric& d_;
  TourArray tour_;
  const CandidateGraph& cand_;
  std::deque<int> queue_;
  std::vector<char> queued_;
};

}  // namespace

LocalSearchResult local_search(const Metric& metric, const Tour& start,
                               const CandidateGraph& candidates, SearchBudget budget) {
  if (start.size() != metric.size() || candidates.size() != metric.size()) {
    throw InvalidArgument("local_search: tour, candidates and metric sizes differ");
  }
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto out_of_time = [&] {
    return budget.max_seconds > 0.0 &&
           std::chrono::duration<double>(Clock::now() - t0).count() >= budget.max_seconds;
  };

  Search search(metric, start, candidates);
  std::size_t moves = 0;
  bool exhausted = false;
  auto spend = [&] {
    ++moves;
    if ((budget.max_moves != 0 && moves >= budget.max_moves) ||
        ((moves & 255u) == 0 && out_of_time())) {
      exhausted = true;
    }
  };

  for (int v : start.order()) search.enqueue(v);
  while (!exhausted) {
    while (!exhausted && !search.queue_empty()) {
      const int a = search.pop();
      if (search.improve(a)) {
        spend();
        search.enqueue(a);
      }
    }
    if (exhausted) break;
    // don't-look bits can hide moves whose far endpoint changed; sweep all
    // nodes once and stop only when a full sweep finds nothing
    bool clean = true;
    const std::vector<int> snapshot(search.tour().order().begin(), search.tour().order().end());
    for (int a : snapshot) {
      if (exhausted) break;
      if (search.improve(a)) {
        clean = false;
        spend();
        search.enqueue(a);
      }
    }
    if (clean) break;
    if (out_of_time()) exhausted = true;
  }

  LocalSearchResult result{Tour::from_order(search.tour().order()), 0.0};
  result.cost = tour_cost(metric, result.tour.order());
  result.moves = moves;
  result.two_opt_moves = search.two_opt_moves;
  result.or_opt_moves = search.or_opt_moves;
  result.budget_exhausted = exhausted;
  return result;
}

LocalSearchResult local_search(const EmbeddingMatrix& embeddings, const Tour& start,
                               const CandidateGraph& candidates, SearchBudget budget) {
  const Metric metric(embeddings);
  return local_search(metric, start, candidates, budget);
}

}  // namespace wordtour
