#include "wordtour/embedding_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include "wordtour/error.hpp"

namespace wordtour {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

double parse_real(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("not a number: '" + std::string(field) + "'", line_no);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite value '" + std::string(field) + "'", line_no);
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

EmbeddingMatrix read_embeddings(std::istream& in, std::optional<std::size_t> max_vocab) {
  if (max_vocab && *max_vocab == 0) throw InvalidArgument("max_vocab must be positive");

  std::vector<std::string> vocab;
  std::vector<double> values;
  std::unordered_set<std::string> seen;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::string line;
  while ((!max_vocab || vocab.size() < *max_vocab) && std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(strip_cr(line));
    if (fields.empty()) continue;
    if (fields.size() < 2) throw ParseError("expected a word followed by numbers", line_no);
    if (dim == 0) {
      dim = fields.size() - 1;
    } else if (fields.size() - 1 != dim) {
      throw ParseError("expected " + std::to_string(dim) + " values, found " +
                           std::to_string(fields.size() - 1),
                       line_no);
    }
    std::string word(fields[0]);
    if (!seen.insert(word).second) throw ParseError("duplicate word '" + word + "'", line_no);
    for (std::size_t j = 1; j < fields.size(); ++j) values.push_back(parse_real(fields[j], line_no));
    vocab.push_back(std::move(word));
  }
  if (in.bad()) throw IoError("read error");
  if (vocab.size() < 2) {
    throw InvalidArgument("need at least 2 words, got " + std::to_string(vocab.size()));
  }

  RowMatrixXd vectors = Eigen::Map<const RowMatrixXd>(
      values.data(), static_cast<Eigen::Index>(vocab.size()), static_cast<Eigen::Index>(dim));
  return EmbeddingMatrix(std::move(vocab), std::move(vectors));
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path,
                                std::optional<std::size_t> max_vocab) {
  auto in = open_input(path);
  try {
    return read_embeddings(in, max_vocab);
  } catch (const ParseError& e) {
    throw e.in(path.string());
  }
}

void write_embeddings(const EmbeddingMatrix& embeddings, std::ostream& out) {
  char buf[64];
  const auto& x = embeddings.vectors();
  for (int i = 0; i < embeddings.size(); ++i) {
    out << embeddings.word(i);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x(i, j));
      out << ' ' << std::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
}

void save_embeddings(const EmbeddingMatrix& embeddings, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_embeddings(embeddings, out);
  finish(out, path);
}

void write_tour(const Tour& tour, const EmbeddingMatrix& embeddings, std::ostream& out) {
  if (tour.size() != embeddings.size()) {
    throw InvalidArgument("tour has " + std::to_string(tour.size()) + " nodes but vocabulary has " +
                          std::to_string(embeddings.size()) + " words");
  }
  for (int v : tour.order()) out << embeddings.word(v) << '\n';
}

void save_tour(const Tour& tour, const EmbeddingMatrix& embeddings,
               const std::filesystem::path& path) {
  auto out = open_output(path);
  write_tour(tour, embeddings, out);
  finish(out, path);
}

Tour read_tour(std::istream& in, const EmbeddingMatrix& embeddings) {
  std::vector<int> order;
  std::vector<char> seen(embeddings.size(), 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view word = strip_cr(line);
    const auto id = embeddings.find(word);
    if (!id) throw ParseError("unknown word '" + std::string(word) + "'", line_no);
    if (seen[*id]) throw ParseError("duplicate word '" + std::string(word) + "'", line_no);
    seen[*id] = 1;
    order.push_back(*id);
  }
  if (in.bad()) throw IoError("read error");
  for (int i = 0; i < embeddings.size(); ++i) {
    if (!seen[i]) throw ParseError("missing word '" + embeddings.word(i) + "'", 0);
  }
  return Tour::from_order(order);
}

Tour load_tour(const std::filesystem::path& path, const EmbeddingMatrix& embeddings) {
  auto in = open_input(path);
  try {
    return read_tour(in, embeddings);
  } catch (const ParseError& e) {
    throw e.in(path.string());
  }
}

std::vector<std::string> load_word_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string word(strip_cr(line));
    if (word.empty()) throw ParseError(path.string() + ": empty word", line_no);
    if (!seen.insert(word).second) {
      throw ParseError(path.string() + ": duplicate word '" + word + "'", line_no);
    }
    words.push_back(std::move(word));
  }
  return words;
}

}  // namespace wordtour
