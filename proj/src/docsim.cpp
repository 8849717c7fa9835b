#include "wordtour/docsim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "wordtour/error.hpp"
#include "wordtour/parallel.hpp"

namespace wordtour {

Corpus read_corpus(std::istream& in, std::span<const std::string> vocab) {
  std::unordered_map<std::string, int> index;
  index.reserve(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) index.emplace(vocab[i], static_cast<int>(i));

  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected 'label<TAB>tokens'", line_no);
    Document doc;
    doc.label = line.substr(0, tab);
    if (doc.label.empty()) throw ParseError("empty label", line_no);
    doc.id = std::to_string(line_no);

    std::istringstream tokens(line.substr(tab + 1));
    std::string token;
    while (tokens >> token) {
      ++corpus.stats.tokens;
      auto it = index.find(token);
      if (it == index.end()) {
        ++corpus.stats.oov_tokens;
      } else {
        doc.tokens.push_back(it->second);
      }
    }
    ++corpus.stats.documents;
    if (doc.tokens.empty()) {
      ++corpus.stats.rejected_documents;
      continue;
    }
    corpus.documents.push_back(std::move(doc));
  }
  if (in.bad()) throw IoError("read error");
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, std::span<const std::string> vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return read_corpus(in, vocab);
  } catch (const ParseError& e) {
    throw e.in(path.string());
  }
}

PositionIndex::PositionIndex(const Tour& tour)
    : position_(tour.positions()), fingerprint_(wordtour::fingerprint(tour.order())) {}

PositionIndex PositionIndex::from_order(std::span<const int> order) {
  if (!is_permutation_of_range(order)) throw InvalidArgument("ordering is not a permutation");
  std::vector<int> position(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
  return PositionIndex(std::move(position), wordtour::fingerprint(order));
}

double BlurredBow::total() const {
  double s = 0.0;
  for (const auto& [pos, m] : mass) s += m;
  return s;
}

namespace {

/// Sorts (position, mass) entries, merges equal positions, drops zeros and
/// divides by the total.
void normalize(std::vector<std::pair<int, double>>& entries) {
  // full-pair order makes the summation order a function of the token multiset
  std::sort(entries.begin(), entries.end());
  std::size_t out = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < entries.size();) {
    const int pos = entries[i].first;
    double m = 0.0;
    for (; i < entries.size() && entries[i].first == pos; ++i) m += entries[i].second;
    if (m > 0.0) {
      entries[out++] = {pos, m};
      total += m;
    }
  }
  entries.resize(out);
  for (auto& e : entries) e.second /= total;
}

}  // namespace

BlurredBow blurred_bow(const Document& doc, const PositionIndex& index, BlurParams params) {
  if (params.width < 0) throw InvalidArgument("blur width must be non-negative");
  if (!(params.variance > 0.0)) throw InvalidArgument("blur variance must be positive");
  if (doc.tokens.empty()) throw InvalidArgument("document '" + doc.id + "' has no tokens");

  const int n = index.size();
  std::vector<double> kernel(params.width + 1);
  for (int delta = 0; delta <= params.width; ++delta) {
    kernel[delta] = std::exp(-double(delta) * double(delta) / (2.0 * params.variance));
  }

  BlurredBow out;
  out.params = params;
  out.ordering = index.fingerprint();
  out.mass.reserve(doc.tokens.size() * (2 * params.width + 1));
  for (int token : doc.tokens) {
    const int p = index.position(token);
    for (int delta = -params.width; delta <= params.width; ++delta) {
      int pos = (p + delta) % n;
      if (pos < 0) pos += n;
      out.mass.emplace_back(pos, kernel[std::abs(delta)]);
    }
  }
  normalize(out.mass);
  return out;
}

BlurredBow bag_of_words(const Document& doc, const PositionIndex& index) {
  if (doc.tokens.empty()) throw InvalidArgument("document '" + doc.id + "' has no tokens");
  BlurredBow out;
  out.params = {0, 1.0};
  out.ordering = index.fingerprint();
  out.mass.reserve(doc.tokens.size());
  for (int token : doc.tokens) out.mass.emplace_back(index.position(token), 1.0);
  normalize(out.mass);
  return out;
}

double l1_distance(const BlurredBow& a, const BlurredBow& b) {
  if (!(a.params == b.params) || a.ordering != b.ordering) {
    throw InvalidArgument("l1_distance: vectors built with different orderings or parameters");
  }
  double sum = 0.0;
  auto i = a.mass.begin();
  auto j = b.mass.begin();
  while (i != a.mass.end() && j != b.mass.end()) {
    if (i->first == j->first) {
      sum += std::abs(i->second - j->second);
      ++i;
      ++j;
    } else if (i->first < j->first) {
      sum += i->second;
      ++i;
    } else {
      sum += j->second;
      ++j;
    }
  }
  for (; i != a.mass.end(); ++i) sum += i->second;
  for (; j != b.mass.end(); ++j) sum += j->second;
  return sum;
}

NeighborList rank_neighbors(std::span<const BlurredBow> train, const BlurredBow& query) {
  NeighborList out;
  out.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    out.emplace_back(l1_distance(train[i], query), static_cast<int>(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int vote(const NeighborList& neighbors, std::span<const int> labels, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > neighbors.size()) {
    throw InvalidArgument("k must be in 1.." + std::to_string(neighbors.size()));
  }
  std::unordered_map<int, int> counts;
  int best = 0;
  for (int r = 0; r < k; ++r) best = std::max(best, ++counts[labels[neighbors[r].second]]);
  for (int r = 0; r < k; ++r) {
    const int label = labels[neighbors[r].second];
    if (counts[label] == best) return label;
  }
  return labels[neighbors[0].second];
}

int knn_classify(std::span<const BlurredBow> train, std::span<const int> labels,
                 const BlurredBow& query, int k) {
  if (train.empty()) throw InvalidArgument("knn_classify: empty training set");
  if (labels.size() != train.size()) throw InvalidArgument("knn_classify: label count mismatch");
  return vote(rank_neighbors(train, query), labels, k);
}

LabelEncoding encode_labels(std::span<const Document> docs) {
  LabelEncoding enc;
  std::unordered_map<std::string, int> ids;
  for (const auto& doc : docs) {
    auto [it, inserted] = ids.emplace(doc.label, static_cast<int>(enc.names.size()));
    if (inserted) enc.names.push_back(doc.label);
    enc.ids.push_back(it->second);
  }
  return enc;
}

std::vector<double> default_variance_grid() { return {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}; }

std::vector<int> assign_folds(std::size_t count, int folds, std::uint64_t seed) {
  std::vector<int> perm(count);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> fold(count);
  for (std::size_t i = 0; i < count; ++i) fold[perm[i]] = static_cast<int>(i % folds);
  return fold;
}

CvResult cross_validate(std::span<const Document> train, const PositionIndex& index,
                        const CvOptions& options) {
  const std::size_t n = train.size();
  if (n < static_cast<std::size_t>(kCvFolds)) {
    throw InvalidArgument("cross-validation needs at least 5 training documents");
  }
  if (options.variances.empty()) throw InvalidArgument("empty variance grid");
  if (options.max_k < 1) throw InvalidArgument("max_k must be positive");
  const LabelEncoding labels = encode_labels(train);
  if (labels.names.size() < 2) throw InvalidArgument("cross-validation needs at least 2 classes");

  const std::vector<int> fold = assign_folds(n, kCvFolds, options.seed);
  std::vector<std::size_t> fold_size(kCvFolds, 0);
  for (int f : fold) ++fold_size[f];
  const std::size_t smallest_train = n - *std::max_element(fold_size.begin(), fold_size.end());
  const int max_k = static_cast<int>(std::min<std::size_t>(options.max_k, smallest_train));

  CvResult result;
  result.grid.assign(options.variances.size(),
                     std::vector<double>(options.max_k, std::numeric_limits<double>::quiet_NaN()));

  for (std::size_t v = 0; v < options.variances.size(); ++v) {
    const BlurParams params{options.width, options.variances[v]};
    std::vector<BlurredBow> vectors(n);
    parallel_for(static_cast<int>(n), options.threads,
                 [&](int i) { vectors[i] = blurred_bow(train[i], index, params); });

    // wrong[q][k-1]: document q is misclassified by its fold's model at k
    std::vector<std::vector<int>> wrong(n, std::vector<int>(max_k, 0));
    parallel_for(static_cast<int>(n), options.threads, [&](int q) {
      NeighborList neighbors;
      for (std::size_t t = 0; t < n; ++t) {
        if (fold[t] == fold[q]) continue;
        neighbors.emplace_back(l1_distance(vectors[t], vectors[q]), static_cast<int>(t));
      }
      std::sort(neighbors.begin(), neighbors.end());
      for (int k = 1; k <= max_k; ++k) {
        wrong[q][k - 1] = vote(neighbors, labels.ids, k) != labels.ids[q] ? 1 : 0;
      }
    });

    for (int k = 1; k <= max_k; ++k) {
      std::vector<int> fold_wrong(kCvFolds, 0);
      for (std::size_t q = 0; q < n; ++q) fold_wrong[fold[q]] += wrong[q][k - 1];
      double mean = 0.0;
      for (int f = 0; f < kCvFolds; ++f) mean += double(fold_wrong[f]) / double(fold_size[f]);
      result.grid[v][k - 1] = mean / kCvFolds;
    }
  }

  // lowest error; ties to the smaller variance, then the smaller k
  std::vector<std::size_t> by_variance(options.variances.size());
  std::iota(by_variance.begin(), by_variance.end(), 0);
  std::stable_sort(by_variance.begin(), by_variance.end(), [&](std::size_t a, std::size_t b) {
    return options.variances[a] < options.variances[b];
  });
  bool found = false;
  for (std::size_t v : by_variance) {
    for (int k = 1; k <= max_k; ++k) {
      const double e = result.grid[v][k - 1];
      if (!found || e < result.error) {
        found = true;
        result.error = e;
        result.k = k;
        result.variance = options.variances[v];
      }
    }
  }
  return result;
}

KnnModel::KnnModel(std::span<const Document> train, const PositionIndex& index, BlurParams params,
                   int k, std::vector<std::string> label_names)
    : index_(&index), params_(params), k_(k), names_(std::move(label_names)) {
  if (train.empty()) throw InvalidArgument("KnnModel: empty training set");
  if (k < 1 || static_cast<std::size_t>(k) > train.size()) {
    throw InvalidArgument("KnnModel: k must be in 1.." + std::to_string(train.size()));
  }
  std::unordered_map<std::string, int> ids;
  for (std::size_t i = 0; i < names_.size(); ++i) ids.emplace(names_[i], static_cast<int>(i));
  vectors_.reserve(train.size());
  for (const auto& doc : train) {
    auto [it, inserted] = ids.emplace(doc.label, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(doc.label);
    labels_.push_back(it->second);
    vectors_.push_back(vectorize(doc));
  }
}

BlurredBow KnnModel::vectorize(const Document& doc) const {
  return blurred_bow(doc, *index_, params_);
}

int KnnModel::predict_id(const BlurredBow& query) const {
  return knn_classify(vectors_, labels_, query, k_);
}

const std::string& KnnModel::predict(const Document& doc) const {
  return names_[predict_id(vectorize(doc))];
}

}  // namespace wordtour
