#include "wordtour/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "wordtour/baselines.hpp"
#include "wordtour/docsim.hpp"
#include "wordtour/embedding_io.hpp"
#include "wordtour/error.hpp"
#include "wordtour/lower_bound.hpp"
#include "wordtour/parallel.hpp"
#include "wordtour/synthetic.hpp"
#include "wordtour/tsp.hpp"
#include "wordtour/tsplib.hpp"

namespace wordtour::cli {

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;
/// Minimum comparisons timed for the per-comparison figure.
constexpr std::size_t kMinTimedComparisons = 10000;

using Clock = std::chrono::steady_clock;

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::optional<std::size_t> vocab_limit(std::size_t max_vocab) {
  if (max_vocab == 0) return std::nullopt;
  return max_vocab;
}

/// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------

struct TourArgs {
  std::string embeddings;
  std::size_t max_vocab = 0;
  int candidates = kDefaultCandidates;
  std::size_t budget = 0;
  double time_limit = 0.0;
  int start = 0;
  int threads = 1;
  std::string output;
};

int cmd_tour(const TourArgs& a, std::ostream& out) {
  const auto t0 = Clock::now();
  const EmbeddingMatrix e = load_embeddings(a.embeddings, vocab_limit(a.max_vocab));
  const Metric metric(e);
  const CandidateGraph candidates = build_candidates(e, a.candidates, a.threads);
  const Tour initial = greedy_tour(metric, candidates, a.start);
  const LocalSearchResult result =
      local_search(metric, initial, candidates, SearchBudget{a.budget, a.time_limit});
  save_tour(result.tour, e, a.output);

  out << "n " << e.size() << '\n'
      << "d " << e.dim() << '\n'
      << "greedy_cost " << shortest(tour_cost(metric, initial.order())) << '\n'
      << "cost " << shortest(result.cost) << '\n'
      << "moves " << result.moves << " (2-opt " << result.two_opt_moves << ", or-opt "
      << result.or_opt_moves << ")\n"
      << "budget_exhausted " << (result.budget_exhausted ? "yes" : "no") << '\n'
      << "time_s " << fixed(seconds_since(t0), 3) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct BoundArgs {
  std::string embeddings;
  std::string tour;
  std::size_t max_vocab = 0;
  int iterations = 200;
  std::string format = "table";
  std::string output;
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const EmbeddingMatrix e = load_embeddings(a.embeddings, vocab_limit(a.max_vocab));
  if (e.size() < 3) throw InvalidArgument("the bound needs at least 3 words");
  const Tour tour = load_tour(a.tour, e);
  const Metric metric(e);
  const double cost = tour_cost(metric, tour.order());
  const AscentResult bound = held_karp_ascent(metric, a.iterations, cost);
  const double ratio = cost / bound.bound;

  emit(a.output, out, [&](std::ostream& o) {
    if (a.format == "csv") {
      o << "n,cost,bound,ratio,iterations\n"
        << e.size() << ',' << shortest(cost) << ',' << shortest(bound.bound) << ','
        << shortest(ratio) << ',' << bound.iterations << '\n';
    } else {
      o << std::left << std::setw(12) << "n" << e.size() << '\n'
        << std::setw(12) << "cost" << fixed(cost, 6) << '\n'
        << std::setw(12) << "bound" << fixed(bound.bound, 6) << '\n'
        << std::setw(12) << "ratio" << fixed(ratio, 6) << '\n'
        << std::setw(12) << "iterations" << bound.iterations << '\n';
    }
  });
  return 0;
}

// ---------------------------------------------------------------------------

struct NeighborsArgs {
  std::string tour;
  std::string word;
  int radius = 5;
};

int cmd_neighbors(const NeighborsArgs& a, std::ostream& out) {
  if (a.radius < 0) throw InvalidArgument("radius must be non-negative");
  const std::vector<std::string> words = load_word_list(a.tour);
  const auto it = std::find(words.begin(), words.end(), a.word);
  if (it == words.end()) throw InvalidArgument("unknown word '" + a.word + "'");
  const long n = static_cast<long>(words.size());
  const long center = it - words.begin();
  for (long delta = -a.radius; delta <= a.radius; ++delta) {
    const long idx = ((center + delta) % n + n) % n;
    if (delta != -a.radius) out << ' ';
    out << words[idx];
  }
  out << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string embeddings;
  std::string tour;
  std::string train;
  std::string test;
  std::vector<std::string> methods;
  std::size_t max_vocab = 0;
  int width = kDefaultBlurWidth;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string format = "table";
  std::string output;
  bool timing = false;
};

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> methods = {"bow", "blurred:wordtour", "blurred:randproj",
                                                   "blurred:pca1", "blurred:pca4"};
  return methods;
}

struct MethodResult {
  std::string method;
  double error_pct = 0.0;
  int k = 0;
  double variance = 0.0;
  bool blurred = false;
  double ns_per_comparison = 0.0;
};

std::vector<int> identity_order(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

/// Mean wall time of one l1_distance over the test x train pairs.
double time_comparisons(std::span<const BlurredBow> train, std::span<const BlurredBow> test) {
  const std::size_t per_pass = train.size() * test.size();
  const std::size_t passes = std::max<std::size_t>(1, (kMinTimedComparisons + per_pass - 1) / per_pass);
  volatile double sink = 0.0;
  const auto t0 = Clock::now();
  for (std::size_t p = 0; p < passes; ++p) {
    for (const auto& q : test) {
      for (const auto& t : train) sink = sink + l1_distance(t, q);
    }
  }
  const double ns = std::chrono::duration<double, std::nano>(Clock::now() - t0).count();
  return ns / double(passes * per_pass);
}

MethodResult run_method(const std::string& method, const EmbeddingMatrix& e, const Tour* tour,
                        const Corpus& train, const Corpus& test, const ClassifyArgs& a) {
  MethodResult r;
  r.method = method;
  std::vector<int> order;
  CvOptions cv;
  cv.width = a.width;
  cv.seed = a.seed;
  cv.threads = a.threads;
  if (method == "bow") {
    order = identity_order(e.size());
    cv.width = 0;
    cv.variances = {1.0};
  } else if (method == "blurred:wordtour") {
    if (!tour) throw InvalidArgument("blurred:wordtour needs --tour");
    order.assign(tour->order().begin(), tour->order().end());
  } else if (method == "blurred:randproj") {
    order = rand_proj_ranking(e, a.seed);
  } else if (method == "blurred:pca1") {
    order = pca_ranking(e, 1);
  } else if (method == "blurred:pca4") {
    order = pca_ranking(e, 4);
  } else {
    throw InvalidArgument("unknown method '" + method + "'");
  }
  r.blurred = method != "bow";

  const PositionIndex index(Tour::from_order(order));
  const CvResult chosen = cross_validate(train.documents, index, cv);
  r.k = chosen.k;
  r.variance = chosen.variance;

  const KnnModel model(train.documents, index, BlurParams{cv.width, chosen.variance}, chosen.k, {});
  std::vector<BlurredBow> queries(test.documents.size());
  std::vector<char> wrong(test.documents.size(), 0);
  for (std::size_t i = 0; i < queries.size(); ++i) queries[i] = model.vectorize(test.documents[i]);
  parallel_for(static_cast<int>(queries.size()), a.threads, [&](int i) {
    wrong[i] = model.label_names()[model.predict_id(queries[i])] != test.documents[i].label;
  });
  const auto errors = std::count(wrong.begin(), wrong.end(), 1);
  r.error_pct = 100.0 * double(errors) / double(std::max<std::size_t>(1, queries.size()));
  if (a.timing) r.ns_per_comparison = time_comparisons(model.vectors(), queries);
  return r;
}

void print_results(const std::vector<MethodResult>& results, const ClassifyArgs& a,
                   std::ostream& o) {
  if (a.format == "csv") {
    o << "method,error_pct,k,variance";
    if (a.timing) o << ",ns_per_comparison";
    o << '\n';
    for (const auto& r : results) {
      o << r.method << ',' << fixed(r.error_pct, 2) << ',' << r.k << ','
        << (r.blurred ? shortest(r.variance) : "") ;
      if (a.timing) o << ',' << fixed(r.ns_per_comparison, 1);
      o << '\n';
    }
    return;
  }
  o << std::left << std::setw(20) << "method" << std::right << std::setw(10) << "error(%)"
    << std::setw(5) << "k" << std::setw(10) << "variance";
  if (a.timing) o << std::setw(12) << "time(ns)";
  o << '\n';
  for (const auto& r : results) {
    o << std::left << std::setw(20) << r.method << std::right << std::setw(10)
      << fixed(r.error_pct, 2) << std::setw(5) << r.k << std::setw(10)
      << (r.blurred ? shortest(r.variance) : "-");
    if (a.timing) o << std::setw(12) << fixed(r.ns_per_comparison, 1);
    o << '\n';
  }
}

void report_ingest(const std::string& name, const Corpus& c, std::ostream& err) {
  err << name << ": " << c.documents.size() << " documents, " << c.stats.rejected_documents
      << " rejected, " << c.stats.oov_tokens << "/" << c.stats.tokens << " tokens dropped ("
      << fixed(100.0 * c.stats.oov_rate(), 2) << "% OOV)\n";
}

int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::string> methods = a.methods.empty() ? known_methods() : a.methods;
  for (const auto& m : methods) {
    if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end()) {
      err << "error: unknown method '" << m << "' (expected one of: bow, blurred:wordtour, "
          << "blurred:randproj, blurred:pca1, blurred:pca4)\n";
      return kUsageError;
    }
  }
  const EmbeddingMatrix e = load_embeddings(a.embeddings, vocab_limit(a.max_vocab));
  std::optional<Tour> tour;
  if (!a.tour.empty()) tour = load_tour(a.tour, e);
  const Corpus train = load_corpus(a.train, e.vocab());
  const Corpus test = load_corpus(a.test, e.vocab());
  report_ingest("train", train, err);
  report_ingest("test", test, err);

  std::vector<MethodResult> results;
  for (const auto& m : methods) {
    results.push_back(run_method(m, e, tour ? &*tour : nullptr, train, test, a));
  }
  emit(a.output, out, [&](std::ostream& o) { print_results(results, a, o); });
  return 0;
}

// ---------------------------------------------------------------------------

struct ExportArgs {
  std::string embeddings;
  std::size_t max_vocab = 0;
  std::string name = "wordtour";
  std::string output;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
  const EmbeddingMatrix e = load_embeddings(a.embeddings, vocab_limit(a.max_vocab));
  export_tsplib(e, a.output, a.name);
  out << "wrote " << e.size() << "-node instance to " << a.output << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct BaselineArgs {
  std::string embeddings;
  std::size_t max_vocab = 0;
  std::string method;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_baseline(const BaselineArgs& a, std::ostream& out) {
  const EmbeddingMatrix e = load_embeddings(a.embeddings, vocab_limit(a.max_vocab));
  Tour tour = a.method == "randproj" ? rand_proj_order(e, a.seed)
                                     : pca_order(e, std::stoi(a.method.substr(3)));
  save_tour(tour, e, a.output);
  out << a.method << " cost " << shortest(tour_cost(e, tour)) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string kind = "uniform";
  int n = 1000;
  int dim = 16;
  std::uint64_t seed = 0;
  std::string output;
};

void write_corpus(const std::vector<Document>& docs, const EmbeddingMatrix& e,
                  const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  for (const auto& d : docs) {
    file << d.label << '\t';
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      if (i) file << ' ';
      file << e.word(d.tokens[i]);
    }
    file << '\n';
  }
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  if (a.kind == "uniform") {
    save_embeddings(synthetic::uniform_points(a.n, a.dim, a.seed), a.output);
  } else if (a.kind == "circle") {
    save_embeddings(synthetic::noisy_circle(a.n, 0.01, a.seed).embeddings, a.output);
  } else {
    synthetic::CorpusOptions options;
    options.vocabulary = a.n;
    options.dim = a.dim;
    const auto corpus = synthetic::clustered_corpus(options, a.seed);
    const std::filesystem::path dir(a.output);
    std::filesystem::create_directories(dir);
    const auto& e = corpus.layout.embeddings;
    save_embeddings(e, dir / "embeddings.txt");
    save_tour(corpus.layout.truth, e, dir / "truth_tour.txt");
    write_corpus(corpus.train, e, dir / "train.tsv");
    write_corpus(corpus.test, e, dir / "test.tsv");
  }
  out << "wrote " << a.kind << " fixture to " << a.output << '\n';
  return 0;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-dimensional word embeddings from traveling-salesman tours", "wordtour"};
  app.require_subcommand(1);

  TourArgs tour;
  auto* tour_cmd = app.add_subcommand("tour", "Order a vocabulary along a short tour");
  tour_cmd->add_option("--embeddings", tour.embeddings, "Text embedding file")->required();
  tour_cmd->add_option("--max-vocab", tour.max_vocab, "Keep the first N words (0 = all)");
  tour_cmd->add_option("--candidates", tour.candidates, "Nearest neighbours per word")
      ->check(CLI::PositiveNumber);
  tour_cmd->add_option("--budget", tour.budget, "Maximum improving moves (0 = unlimited)");
  tour_cmd->add_option("--time-limit", tour.time_limit, "Search time limit in seconds (0 = none)")
      ->check(CLI::NonNegativeNumber);
  tour_cmd->add_option("--start", tour.start, "Start word index of the greedy tour")
      ->check(CLI::NonNegativeNumber);
  tour_cmd->add_option("--threads", tour.threads, "Worker threads")->check(CLI::PositiveNumber);
  tour_cmd->add_option("--output", tour.output, "Tour file to write")->required();

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Lower-bound the optimal tour and rate a tour");
  bound_cmd->add_option("--embeddings", bound.embeddings, "Text embedding file")->required();
  bound_cmd->add_option("--tour", bound.tour, "Tour file")->required();
  bound_cmd->add_option("--max-vocab", bound.max_vocab, "Keep the first N words (0 = all)");
  bound_cmd->add_option("--iterations", bound.iterations, "Subgradient ascent steps")
      ->check(CLI::NonNegativeNumber);
  bound_cmd->add_option("--format", bound.format, "Output format")
      ->check(CLI::IsMember({"table", "csv"}));
  bound_cmd->add_option("--output", bound.output, "Report file (default stdout)");

  NeighborsArgs neighbors;
  auto* neighbors_cmd = app.add_subcommand("neighbors", "List the words around a word");
  neighbors_cmd->add_option("--tour", neighbors.tour, "Tour file")->required();
  neighbors_cmd->add_option("--word", neighbors.word, "Query word")->required();
  neighbors_cmd->add_option("--radius", neighbors.radius, "Words on each side")
      ->check(CLI::NonNegativeNumber);

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "kNN document classification error");
  classify_cmd->add_option("--embeddings", classify.embeddings, "Text embedding file")->required();
  classify_cmd->add_option("--tour", classify.tour, "Tour file (for blurred:wordtour)");
  classify_cmd->add_option("--train", classify.train, "Training corpus")->required();
  classify_cmd->add_option("--test", classify.test, "Test corpus")->required();
  classify_cmd->add_option("--method", classify.methods, "Methods to evaluate (default all)");
  classify_cmd->add_option("--max-vocab", classify.max_vocab, "Keep the first N words (0 = all)");
  classify_cmd->add_option("--width", classify.width, "Blur half-width")
      ->check(CLI::NonNegativeNumber);
  classify_cmd->add_option("--seed", classify.seed, "Seed for folds and random projection");
  classify_cmd->add_option("--threads", classify.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--format", classify.format, "Output format")
      ->check(CLI::IsMember({"table", "csv"}));
  classify_cmd->add_option("--output", classify.output, "Results file (default stdout)");
  classify_cmd->add_flag("--timing", classify.timing, "Add mean time per document comparison");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "Write a TSPLIB instance");
  export_cmd->add_option("--embeddings", exp.embeddings, "Text embedding file")->required();
  export_cmd->add_option("--max-vocab", exp.max_vocab, "Keep the first N words (0 = all)");
  export_cmd->add_option("--name", exp.name, "Instance name");
  export_cmd->add_option("--output", exp.output, "TSPLIB file to write")->required();

  BaselineArgs baseline;
  auto* baseline_cmd = app.add_subcommand("baseline", "Write a projection-based ordering");
  baseline_cmd->add_option("--embeddings", baseline.embeddings, "Text embedding file")->required();
  baseline_cmd->add_option("--max-vocab", baseline.max_vocab, "Keep the first N words (0 = all)");
  baseline_cmd->add_option("--method", baseline.method, "randproj, pca1, pca4, ...")
      ->required()
      ->check([](const std::string& m) -> std::string {
        if (m == "randproj") return {};
        if (m.size() > 3 && m.rfind("pca", 0) == 0 &&
            std::all_of(m.begin() + 3, m.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          return {};
        }
        return "expected randproj or pcaN";
      });
  baseline_cmd->add_option("--seed", baseline.seed, "Seed for the random direction");
  baseline_cmd->add_option("--output", baseline.output, "Tour file to write")->required();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic fixtures");
  synth_cmd->add_option("--kind", synth.kind, "uniform, circle or corpus")
      ->check(CLI::IsMember({"uniform", "circle", "corpus"}));
  synth_cmd->add_option("--n", synth.n, "Points (vocabulary size for corpus)")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--dim", synth.dim, "Dimension")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--output", synth.output, "Output file (directory for corpus)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (tour_cmd->parsed()) return cmd_tour(tour, out);
    if (bound_cmd->parsed()) return cmd_bound(bound, out);
    if (neighbors_cmd->parsed()) return cmd_neighbors(neighbors, out);
    if (classify_cmd->parsed()) return cmd_classify(classify, out, err);
    if (export_cmd->parsed()) return cmd_export(exp, out);
    if (baseline_cmd->parsed()) return cmd_baseline(baseline, out);
    if (synth_cmd->parsed()) return cmd_synth(synth, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::span<const std::string>(args), out, err);
}

}  // namespace wordtour::cli
