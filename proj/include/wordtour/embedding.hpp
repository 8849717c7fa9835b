#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace wordtour {

/// Row-major so that each word vector is contiguous.
template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using RowMatrixXd = RowMatrix<double>;

/// Euclidean distance between two vector expressions.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar l2_distance(const Eigen::MatrixBase<DerivedA>& a,
                                      const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).norm();
}

/// Dense word vectors together with their vocabulary.
///
/// Invariants (checked on construction): at least two words, every word
/// non-empty, whitespace-free and unique, every entry finite.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix(std::vector<std::string> vocab, RowMatrixXd vectors);

  int size() const { return static_cast<int>(vocab_.size()); }
  int dim() const { return static_cast<int>(vectors_.cols()); }

  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::string& word(int i) const { return vocab_[i]; }
  const RowMatrixXd& vectors() const { return vectors_; }
  auto row(int i) const { return vectors_.row(i); }

  std::optional<int> find(std::string_view word) const;

  double distance(int i, int j) const { return l2_distance(vectors_.row(i), vectors_.row(j)); }

 private:
  std::vector<std::string> vocab_;
  RowMatrixXd vectors_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace wordtour
