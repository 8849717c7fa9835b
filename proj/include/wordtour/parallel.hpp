#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace wordtour {

/// Runs fn(i) for i in [0, count) over `threads` workers using a static
/// contiguous partition. Each index is visited exactly once, so results
/// written per index are identical for any thread count.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const int chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int begin = t * chunk;
    const int end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([begin, end, &fn] {
      for (int i = begin; i < end; ++i) fn(i);
    });
  }
}

}  // namespace wordtour
