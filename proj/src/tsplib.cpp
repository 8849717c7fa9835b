#include "wordtour/tsplib.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "wordtour/error.hpp"

namespace wordtour {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::int64_t tsplib_weight(double distance) {
  return static_cast<std::int64_t>(std::floor(kTsplibScale * distance));
}

void write_tsplib(const EmbeddingMatrix& embeddings, std::ostream& out, const std::string& name) {
  const int n = embeddings.size();
  if (n < 3) throw InvalidArgument("TSPLIB export needs at least 3 nodes");
  out << "NAME : " << name << '\n'
      << "TYPE : TSP\n"
      << "COMMENT : " << n << " words, weights floor(1000 * L2 distance)\n"
      << "DIMENSION : " << n << '\n'
      << "EDGE_WEIGHT_TYPE : EXPLICIT\n"
      << "EDGE_WEIGHT_FORMAT : UPPER_ROW\n"
      << "EDGE_WEIGHT_SECTION\n";
  std::string row;
  char buf[32];
  for (int i = 0; i + 1 < n; ++i) {
    row.clear();
    for (int j = i + 1; j < n; ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), tsplib_weight(embeddings.distance(i, j)));
      if (j > i + 1) row += ' ';
      row.append(buf, ptr);
    }
    row += '\n';
    out << row;
  }
  out << "EOF\n";
}

void export_tsplib(const EmbeddingMatrix& embeddings, const std::filesystem::path& path,
                   const std::string& name) {
  if (embeddings.size() < 3) throw InvalidArgument("TSPLIB export needs at least 3 nodes");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_tsplib(embeddings, out, name);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

TsplibInstance read_tsplib(std::istream& in) {
  TsplibInstance inst;
  std::string type;
  std::string weight_type;
  std::string format;
  std::string line;
  std::size_t line_no = 0;
  bool in_section = false;
  while (!in_section && std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text == "EDGE_WEIGHT_SECTION") {
      in_section = true;
      break;
    }
    if (text == "EOF") break;
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'KEY : VALUE'", line_no);
    const std::string key = trim(std::string_view(text).substr(0, colon));
    const std::string value = trim(std::string_view(text).substr(colon + 1));
    if (key == "NAME") {
      inst.name = value;
    } else if (key == "TYPE") {
      type = value;
    } else if (key == "DIMENSION") {
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), inst.dimension);
      if (ec != std::errc() || ptr != value.data() + value.size() || inst.dimension < 1) {
        throw ParseError("bad DIMENSION '" + value + "'", line_no);
      }
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = value;
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      format = value;
    }
  }
  if (!in_section) throw ParseError("missing EDGE_WEIGHT_SECTION", 0);
  if (type != "TSP") throw ParseError("unsupported TYPE '" + type + "'", 0);
  if (weight_type != "EXPLICIT") throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + weight_type + "'", 0);
  if (inst.dimension < 1) throw ParseError("missing DIMENSION", 0);

  const int n = inst.dimension;
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i) {
    int lo = 0;
    int hi = n;
    if (format == "FULL_MATRIX") {
    } else if (format == "UPPER_ROW") {
      lo = i + 1;
    } else if (format == "UPPER_DIAG_ROW") {
      lo = i;
    } else if (format == "LOWER_ROW") {
      hi = i;
    } else if (format == "LOWER_DIAG_ROW") {
      hi = i + 1;
    } else {
      throw ParseError("unsupported EDGE_WEIGHT_FORMAT '" + format + "'", 0);
    }
    for (int j = lo; j < hi; ++j) cells.emplace_back(i, j);
  }

  inst.weights = WeightMatrix::Zero(n, n);
  std::size_t next = 0;
  while (next < cells.size() && std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      if (next == cells.size()) throw ParseError("too many weights", line_no);
      std::int64_t w = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), w);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("bad weight '" + token + "'", line_no);
      }
      const auto [i, j] = cells[next++];
      inst.weights(i, j) = w;
      inst.weights(j, i) = w;
    }
  }
  if (next != cells.size()) {
    throw ParseError("expected " + std::to_string(cells.size()) + " weights, found " +
                         std::to_string(next),
                     line_no);
  }
  return inst;
}

TsplibInstance load_tsplib(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return read_tsplib(in);
  } catch (const ParseError& e) {
    throw e.in(path.string());
  }
}

}  // namespace wordtour
