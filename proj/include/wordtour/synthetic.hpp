#pragma once

#include <cstdint>
#include <vector>

#include "wordtour/docsim.hpp"
#include "wordtour/embedding.hpp"
#include "wordtour/tour.hpp"

namespace wordtour::synthetic {

/// n points uniform in [0, 1]^d, words named w0, w1, ...
EmbeddingMatrix uniform_points(int n, int dim, std::uint64_t seed);

struct LabeledLayout {
  EmbeddingMatrix embeddings;
  /// Canonical tour visiting the points in their generating order.
  Tour truth;
};

/// n points evenly spaced on the unit circle with Gaussian radial noise of
/// standard deviation noise_fraction * spacing. Word ids are shuffled so the
/// ground-truth order is not the index order.
LabeledLayout noisy_circle(int n, double noise_fraction, std::uint64_t seed);

struct CorpusOptions {
  int classes = 4;
  int vocabulary = 500;
  int dim = 16;
  int documents = 400;
  /// Fraction of documents used for training; the rest are test documents.
  double train_fraction = 0.5;
  int class_tokens = 6;
  int noise_tokens = 6;
  int harmonics = 4;
  double point_noise = 0.002;
};

struct SyntheticCorpus {
  LabeledLayout layout;
  std::vector<Document> train;
  std::vector<Document> test;
};

/// Words lie along a smooth random closed curve; class c owns the c-th
/// contiguous arc. Each document mixes tokens from its class arc with tokens
/// drawn uniformly from the whole vocabulary.
SyntheticCorpus clustered_corpus(const CorpusOptions& options, std::uint64_t seed);

}  // namespace wordtour::synthetic
