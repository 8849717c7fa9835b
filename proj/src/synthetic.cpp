#include "wordtour/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "wordtour/error.hpp"

namespace wordtour::synthetic {

namespace {

std::vector<std::string> numbered_words(int n) {
  std::vector<std::string> vocab(n);
  for (int i = 0; i < n; ++i) vocab[i] = "w" + std::to_string(i);
  return vocab;
}

std::vector<int> shuffled_ids(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace

EmbeddingMatrix uniform_points(int n, int dim, std::uint64_t seed) {
  if (n < 2 || dim < 1) throw InvalidArgument("uniform_points: need n >= 2 and dim >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  RowMatrixXd x(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) x(i, j) = uniform(rng);
  }
  return EmbeddingMatrix(numbered_words(n), std::move(x));
}

LabeledLayout noisy_circle(int n, double noise_fraction, std::uint64_t seed) {
  if (n < 3) throw InvalidArgument("noisy_circle: need n >= 3");
  std::mt19937_64 rng(seed);
  const std::vector<int> ids = shuffled_ids(n, rng);
  const double spacing = 2.0 * std::numbers::pi / n;
  std::normal_distribution<double> radial(0.0, noise_fraction * spacing);

  RowMatrixXd x(n, 2);
  for (int i = 0; i < n; ++i) {
    const double angle = spacing * i;
    const double r = 1.0 + radial(rng);
    x(ids[i], 0) = r * std::cos(angle);
    x(ids[i], 1) = r * std::sin(angle);
  }
  return {EmbeddingMatrix(numbered_words(n), std::move(x)), Tour::from_order(ids)};
}

SyntheticCorpus clustered_corpus(const CorpusOptions& options, std::uint64_t seed) {
  const int vocab_size = options.vocabulary;
  if (options.classes < 2 || vocab_size < options.classes * 2 || options.documents < 2) {
    throw InvalidArgument("clustered_corpus: inconsistent options");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  // random closed curve: a truncated Fourier series with 1/h amplitude decay
  Eigen::MatrixXd cos_coef(options.harmonics, options.dim);
  Eigen::MatrixXd sin_coef(options.harmonics, options.dim);
  for (int h = 0; h < options.harmonics; ++h) {
    for (int j = 0; j < options.dim; ++j) {
      cos_coef(h, j) = normal(rng) / (h + 1);
      sin_coef(h, j) = normal(rng) / (h + 1);
    }
  }
  const std::vector<int> ids = shuffled_ids(vocab_size, rng);
  RowMatrixXd x = RowMatrixXd::Zero(vocab_size, options.dim);
  for (int i = 0; i < vocab_size; ++i) {
    const double t = 2.0 * std::numbers::pi * i / vocab_size;
    for (int h = 0; h < options.harmonics; ++h) {
      x.row(ids[i]) += std::cos((h + 1) * t) * cos_coef.row(h) + std::sin((h + 1) * t) * sin_coef.row(h);
    }
    for (int j = 0; j < options.dim; ++j) x(ids[i], j) += options.point_noise * normal(rng);
  }

  SyntheticCorpus out{{EmbeddingMatrix(numbered_words(vocab_size), std::move(x)),
                       Tour::from_order(ids)},
                      {},
                      {}};

  const int arc = vocab_size / options.classes;
  std::uniform_int_distribution<int> within_arc(0, arc - 1);
  std::uniform_int_distribution<int> anywhere(0, vocab_size - 1);
  std::vector<Document> docs(options.documents);
  for (int d = 0; d < options.documents; ++d) {
    const int label = d % options.classes;
    Document& doc = docs[d];
    doc.label = "c" + std::to_string(label);
    doc.id = "doc" + std::to_string(d);
    for (int t = 0; t < options.class_tokens; ++t) {
      doc.tokens.push_back(ids[label * arc + within_arc(rng)]);
    }
    for (int t = 0; t < options.noise_tokens; ++t) doc.tokens.push_back(ids[anywhere(rng)]);
  }
  std::shuffle(docs.begin(), docs.end(), rng);
  const auto n_train = static_cast<std::size_t>(std::lround(options.train_fraction * docs.size()));
  out.train.assign(docs.begin(), docs.begin() + n_train);
  out.test.assign(docs.begin() + n_train, docs.end());
  return out;
}

}  // namespace wordtour::synthetic
