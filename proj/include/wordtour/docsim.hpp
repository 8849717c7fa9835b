#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wordtour/tour.hpp"

namespace wordtour {

struct Document {
  /// Word indices into the ordering's vocabulary; repeated tokens repeat.
  std::vector<int> tokens;
  std::string label;
  std::string id;
};

struct IngestStats {
  std::size_t documents = 0;
  std::size_t rejected_documents = 0;
  std::size_t tokens = 0;
  std::size_t oov_tokens = 0;
  double oov_rate() const { return tokens == 0 ? 0.0 : double(oov_tokens) / double(tokens); }
};

struct Corpus {
  std::vector<Document> documents;
  IngestStats stats;
};

/// Reads `label<TAB>tok tok ...` lines. Tokens missing from `vocab` are
/// dropped; documents left empty are skipped and counted as rejected.
Corpus read_corpus(std::istream& in, std::span<const std::string> vocab);
Corpus load_corpus(const std::filesystem::path& path, std::span<const std::string> vocab);

/// Word -> position lookup for an ordering, treated as a cycle.
class PositionIndex {
 public:
  explicit PositionIndex(const Tour& tour);
  /// Any permutation, used as given (no canonicalization).
  static PositionIndex from_order(std::span<const int> order);

  int size() const { return static_cast<int>(position_.size()); }
  int position(int word) const { return position_[word]; }
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  PositionIndex(std::vector<int> position, std::uint64_t fingerprint)
      : position_(std::move(position)), fingerprint_(fingerprint) {}
  std::vector<int> position_;
  std::uint64_t fingerprint_;
};

struct BlurParams {
  /// Kernel half-width in positions.
  int width = 10;
  /// Gaussian variance in squared positions.
  double variance = 1.0;
  friend bool operator==(const BlurParams&, const BlurParams&) = default;
};

inline constexpr int kDefaultBlurWidth = 10;

/// L1-normalized mass over tour positions, stored sparsely and sorted by position.
struct BlurredBow {
  std::vector<std::pair<int, double>> mass;
  BlurParams params;
  std::uint64_t ordering = 0;

  double total() const;
};

/// Each token at position p adds exp(-delta^2 / (2 variance)) at p + delta
/// (cyclic) for |delta| <= width; the sum is normalized to 1.
/// Requires variance > 0 and width >= 0.
BlurredBow blurred_bow(const Document& doc, const PositionIndex& index, BlurParams params);

/// Token counts over positions normalized to 1 (no kernel).
BlurredBow bag_of_words(const Document& doc, const PositionIndex& index);

/// Sum of absolute differences over the union of supports. Throws
/// InvalidArgument if the vectors were built with different parameters.
double l1_distance(const BlurredBow& a, const BlurredBow& b);

/// (distance, training index) pairs sorted ascending, ties to the smaller index.
using NeighborList = std::vector<std::pair<double, int>>;

NeighborList rank_neighbors(std::span<const BlurredBow> train, const BlurredBow& query);

/// Majority label among the first k entries of `neighbors`; a tie between
/// labels goes to the label of the nearest member among the tied ones.
int vote(const NeighborList& neighbors, std::span<const int> labels, int k);

/// Requires 1 <= k <= train.size(); throws on an empty training set.
int knn_classify(std::span<const BlurredBow> train, std::span<const int> labels,
                 const BlurredBow& query, int k);

/// Maps string labels to dense ids in order of first appearance.
struct LabelEncoding {
  std::vector<std::string> names;
  std::vector<int> ids;
};
LabelEncoding encode_labels(std::span<const Document> docs);

inline constexpr int kCvFolds = 5;
inline constexpr int kMaxNeighbors = 19;
/// 0.01, 0.1, ..., 1000
std::vector<double> default_variance_grid();

struct CvOptions {
  int width = kDefaultBlurWidth;
  std::vector<double> variances = default_variance_grid();
  int max_k = kMaxNeighbors;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct CvResult {
  int k = 1;
  double variance = 0.0;
  double error = 0.0;
  /// Mean fold error, indexed [variance][k - 1]; untested k hold NaN.
  std::vector<std::vector<double>> grid;
};

/// Seeded 5-fold grid search over k in 1..max_k and the variance grid. The
/// lowest mean fold error wins; ties go to the smaller variance, then smaller k.
/// k beyond the smallest fold's training size is not tried.
CvResult cross_validate(std::span<const Document> train, const PositionIndex& index,
                        const CvOptions& options = {});

/// Fold id in [0, folds) for each of `count` items from a seeded shuffle.
std::vector<int> assign_folds(std::size_t count, int folds, std::uint64_t seed);

/// A training set vectorized with fixed parameters, ready for queries.
class KnnModel {
 public:
  KnnModel(std::span<const Document> train, const PositionIndex& index, BlurParams params, int k,
           std::vector<std::string> label_names);

  BlurredBow vectorize(const Document& doc) const;
  /// Returns a label name.
  const std::string& predict(const Document& doc) const;
  int predict_id(const BlurredBow& query) const;

  int k() const { return k_; }
  BlurParams params() const { return params_; }
  std::span<const BlurredBow> vectors() const { return vectors_; }
  std::span<const int> labels() const { return labels_; }
  const std::vector<std::string>& label_names() const { return names_; }

 private:
  const PositionIndex* index_;
  BlurParams params_;
  int k_;
  std::vector<BlurredBow> vectors_;
  std::vector<int> labels_;
  std::vector<std::string> names_;
};

}  // namespace wordtour
