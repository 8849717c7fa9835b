#pragma once

// Independent reference computations used by the test suites. Nothing here
// calls into the code paths it is used to check.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wordtour/docsim.hpp"
#include "wordtour/embedding.hpp"
#include "wordtour/tsp.hpp"

namespace wordtour::testing {

inline double naive_distance(const EmbeddingMatrix& e, int i, int j) {
  double s = 0.0;
  for (int c = 0; c < e.dim(); ++c) {
    const double diff = e.vectors()(i, c) - e.vectors()(j, c);
    s += diff * diff;
  }
  return std::sqrt(s);
}

inline double naive_cycle_cost(const EmbeddingMatrix& e, const std::vector<int>& order) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) total += naive_distance(e, order[i], order[i + 1]);
  return total + naive_distance(e, order.back(), order.front());
}

inline EmbeddingMatrix make_embeddings(const std::vector<std::vector<double>>& rows) {
  RowMatrixXd x(rows.size(), rows.front().size());
  std::vector<std::string> vocab;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    vocab.push_back("w" + std::to_string(i));
    for (std::size_t j = 0; j < rows[i].size(); ++j) x(i, j) = rows[i][j];
  }
  return EmbeddingMatrix(std::move(vocab), std::move(x));
}

inline EmbeddingMatrix unit_square() { return make_embeddings({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline EmbeddingMatrix equilateral_triangle() {
  return make_embeddings({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
}

/// Exhaustive optimum by plain recursion over all orders starting at node 0.
inline double exhaustive_optimum(const EmbeddingMatrix& e) {
  const int n = e.size();
  std::vector<int> order{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  double best = INFINITY;
  auto rec = [&](auto&& self, double partial) -> void {
    if (partial >= best) return;
    if (static_cast<int>(order.size()) == n) {
      best = std::min(best, partial + naive_distance(e, order.back(), 0));
      return;
    }
    for (int v = 1; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      const double step = naive_distance(e, order.back(), v);
      order.push_back(v);
      self(self, partial + step);
      order.pop_back();
      used[v] = 0;
    }
  };
  rec(rec, 0.0);
  return best;
}

/// Largest gain of any 2-opt move that creates an edge (a, c) with c a
/// candidate of a, or any relocation of a 1-3 node segment that puts a segment
/// end next to one of its candidates. Computed on the plain order vector.
inline double best_candidate_move_gain(const EmbeddingMatrix& e, const std::vector<int>& order,
                                       const CandidateGraph& g) {
  const int n = static_cast<int>(order.size());
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  auto at = [&](int i) { return order[((i % n) + n) % n]; };
  auto d = [&](int a, int b) { return naive_distance(e, a, b); };
  double best = -INFINITY;

  for (int a = 0; a < n; ++a) {
    for (int c : g.neighbors(a)) {
      // 2-opt: both orientations
      for (int dir : {1, -1}) {
        const int b = at(pos[a] + dir);
        const int dn = at(pos[c] + dir);
        if (c == b || dn == a || c == a) continue;
        best = std::max(best, d(a, b) + d(c, dn) - d(a, c) - d(b, dn));
      }
    }
  }
  for (int len = 1; len <= 3 && len <= n - 3; ++len) {
    for (int s = 0; s < n; ++s) {
      std::vector<int> seg;
      for (int i = 0; i < len; ++i) seg.push_back(at(s + i));
      const int p = at(s - 1);
      const int q = at(s + len);
      const double removed = d(p, seg.front()) + d(seg.back(), q) - d(p, q);
      // remaining cycle q ... p, try every edge in it
      std::vector<int> rest;
      for (int i = 0; i < n - len; ++i) rest.push_back(at(s + len + i));
      for (std::size_t r = 0; r + 1 < rest.size(); ++r) {
        const int x = rest[r];
        const int y = rest[r + 1];
        for (bool flip : {false, true}) {
          const int head = flip ? seg.back() : seg.front();
          const int tail = flip ? seg.front() : seg.back();
          auto is_cand = [&](int u, int v) {
            for (int w : g.neighbors(u)) {
              if (w == v) return true;
            }
            return false;
          };
          // the end adjacent to x or y must have that node as a candidate
          if (!is_cand(head, x) && !is_cand(tail, y)) continue;
          best = std::max(best, removed + d(x, y) - d(x, head) - d(tail, y));
        }
      }
    }
  }
  return best;
}

/// Dense L1 distance between two sparse vectors over n positions.
inline double dense_l1(const BlurredBow& a, const BlurredBow& b, int n) {
  std::vector<double> da(n, 0.0);
  std::vector<double> db(n, 0.0);
  for (const auto& [p, m] : a.mass) da[p] += m;
  for (const auto& [p, m] : b.mass) db[p] += m;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::abs(da[i] - db[i]);
  return s;
}

/// Random documents over a vocabulary of `vocab` words.
inline std::vector<Document> random_documents(int count, int vocab, int max_len, int classes,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> word(0, vocab - 1);
  std::uniform_int_distribution<int> length(1, max_len);
  std::vector<Document> docs(count);
  for (int i = 0; i < count; ++i) {
    docs[i].id = "d" + std::to_string(i);
    docs[i].label = "c" + std::to_string(i % classes);
    const int len = length(rng);
    for (int t = 0; t < len; ++t) docs[i].tokens.push_back(word(rng));
  }
  return docs;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("wordtour_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace wordtour::testing
