#include "wordtour/embedding.hpp"

#include <algorithm>
#include <cctype>

#include "wordtour/error.hpp"

namespace wordtour {

namespace {

bool has_whitespace(const std::string& word) {
  return std::any_of(word.begin(), word.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> vocab, RowMatrixXd vectors)
    : vocab_(std::move(vocab)), vectors_(std::move(vectors)) {
  if (vocab_.size() < 2) throw InvalidArgument("embedding matrix needs at least 2 words");
  if (static_cast<std::size_t>(vectors_.rows()) != vocab_.size()) {
    throw InvalidArgument("embedding matrix has " + std::to_string(vectors_.rows()) +
                          " rows for " + std::to_string(vocab_.size()) + " words");
  }
  if (vectors_.cols() < 1) throw InvalidArgument("embedding dimension must be positive");
  if (!vectors_.allFinite()) throw InvalidArgument("embedding matrix has non-finite entries");

  index_.reserve(vocab_.size());
  for (int i = 0; i < size(); ++i) {
    const std::string& w = vocab_[i];
    if (w.empty() || has_whitespace(w)) throw InvalidArgument("invalid word '" + w + "'");
    if (!index_.emplace(w, i).second) throw InvalidArgument("duplicate word '" + w + "'");
  }
}

std::optional<int> EmbeddingMatrix::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace wordtour
