#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "wordtour/embedding.hpp"
#include "wordtour/tour.hpp"

namespace wordtour {

/// Reads whitespace-separated text embeddings, one `word v1 ... vd` per line.
/// The dimension is taken from the first line. When `max_vocab` is set only
/// that many leading lines are kept.
EmbeddingMatrix load_embeddings(const std::filesystem::path& path,
                                std::optional<std::size_t> max_vocab = std::nullopt);
EmbeddingMatrix read_embeddings(std::istream& in,
                                std::optional<std::size_t> max_vocab = std::nullopt);

/// Writes the same text format using shortest round-trip decimal output.
void save_embeddings(const EmbeddingMatrix& embeddings, const std::filesystem::path& path);
void write_embeddings(const EmbeddingMatrix& embeddings, std::ostream& out);

/// Word-per-line tour files, in canonical order.
void save_tour(const Tour& tour, const EmbeddingMatrix& embeddings,
               const std::filesystem::path& path);
void write_tour(const Tour& tour, const EmbeddingMatrix& embeddings, std::ostream& out);
Tour load_tour(const std::filesystem::path& path, const EmbeddingMatrix& embeddings);
Tour read_tour(std::istream& in, const EmbeddingMatrix& embeddings);

/// Reads a tour file without an embedding matrix; returns the words in file order.
std::vector<std::string> load_word_list(const std::filesystem::path& path);

}  // namespace wordtour
