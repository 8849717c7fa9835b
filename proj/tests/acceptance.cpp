// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "wordtour/baselines.hpp"
#include "wordtour/docsim.hpp"
#include "wordtour/embedding_io.hpp"
#include "wordtour/lower_bound.hpp"
#include "wordtour/synthetic.hpp"
#include "wordtour/tsp.hpp"
#include "wordtour/tsplib.hpp"

using namespace wordtour;
using wordtour::testing::TempDir;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

struct TinyInstance {
  EmbeddingMatrix e;
  double optimum;
};

// 100 seeded instances: n cycles through 6..9, d alternates 2 / 8 in blocks of 4
std::vector<TinyInstance> tiny_instances() {
  std::vector<TinyInstance> out;
  for (int i = 0; i < 100; ++i) {
    const int n = 6 + i % 4;
    const int d = (i / 4) % 2 == 0 ? 2 : 8;
    auto e = synthetic::uniform_points(n, d, 1000 + i);
    const double opt = brute_force_tour(e).cost;
    out.push_back({std::move(e), opt});
  }
  return out;
}

LocalSearchResult solve(const EmbeddingMatrix& e, int k) {
  const Metric metric(e);
  const auto g = build_candidates(e, k);
  return local_search(metric, greedy_tour(metric, g, 0), g);
}

Outcome criterion_1(const std::vector<TinyInstance>& tiny) {
  const auto t0 = Clock::now();
  int optimal = 0;
  int close = 0;
  for (const auto& inst : tiny) {
    const auto r = solve(inst.e, inst.e.size() - 1);
    const double ratio = r.cost / inst.optimum;
    if (ratio <= 1.0 + 1e-9) ++optimal;
    if (ratio <= 1.05) ++close;
  }
  const double secs = elapsed(t0);
  std::ostringstream s;
  s << "optimal " << optimal << "/100 (need >= 80), within 1.05x " << close
    << "/100 (need >= 95), " << secs << " s (need < 10)";
  return {optimal >= 80 && close >= 95 && secs < 10.0, s.str()};
}

Outcome criterion_2(const std::vector<TinyInstance>& tiny) {
  const auto t0 = Clock::now();
  int valid = 0;
  int tight = 0;
  for (const auto& inst : tiny) {
    const auto r = solve(inst.e, inst.e.size() - 1);
    const auto b = held_karp_ascent(inst.e, 200, r.cost);
    if (b.bound <= inst.optimum * (1.0 + 1e-12)) ++valid;
    if (b.bound / inst.optimum >= 0.95) ++tight;
  }

  const auto big = synthetic::uniform_points(1000, 16, 2024);
  const auto r = solve(big, kDefaultCandidates);
  const auto b = held_karp_ascent(big, 1000, r.cost);
  const double ratio = r.cost / b.bound;
  const double secs = elapsed(t0);

  std::ostringstream s;
  s << "bound <= optimum " << valid << "/100 (need 100), bound/opt >= 0.95 " << tight
    << "/100 (need >= 90); n=1000 d=16 cost " << r.cost << " bound " << b.bound << " ratio "
    << ratio << " (need <= 1.15), " << secs << " s (need < 300)";
  return {valid == 100 && tight >= 90 && b.bound <= r.cost && ratio <= 1.15 && secs < 300.0,
          s.str()};
}

Outcome criterion_3() {
  int recovered = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto layout = synthetic::noisy_circle(200, 0.01, seed);
    const auto r = solve(layout.embeddings, kDefaultCandidates);
    if (r.tour == layout.truth) ++recovered;
  }
  return {recovered == 10, "recovered angular order on " + std::to_string(recovered) + "/10 seeds"};
}

Outcome criterion_4() {
  synthetic::CorpusOptions options;
  const auto corpus = synthetic::clustered_corpus(options, 7);
  const PositionIndex index(corpus.layout.truth);
  const auto names = encode_labels(corpus.train).names;

  int mismatches = 0;
  for (int k = 1; k <= kMaxNeighbors; ++k) {
    const KnnModel blurred(corpus.train, index, BlurParams{kDefaultBlurWidth, 1e-6}, k, names);
    const KnnModel plain(corpus.train, index, BlurParams{0, 1.0}, k, names);
    for (const auto& doc : corpus.test) {
      if (blurred.predict(doc) != plain.predict(doc)) ++mismatches;
    }
  }

  double worst = 0.0;
  for (const auto& doc : corpus.train) {
    const auto w0 = blurred_bow(doc, index, BlurParams{0, 3.0});
    const auto bow = bag_of_words(doc, index);
    if (w0.mass.size() != bow.mass.size()) worst = INFINITY;
    for (std::size_t i = 0; i < w0.mass.size() && i < bow.mass.size(); ++i) {
      if (w0.mass[i].first != bow.mass[i].first) worst = INFINITY;
      worst = std::max(worst, std::abs(w0.mass[i].second - bow.mass[i].second));
    }
  }
  std::ostringstream s;
  s << "prediction mismatches at variance 1e-6: " << mismatches
    << " over k=1..19; max |w=0 - BoW| = " << worst << " (need <= 1e-12)";
  return {mismatches == 0 && worst <= 1e-12, s.str()};
}

double test_error(const synthetic::SyntheticCorpus& corpus, const PositionIndex& index) {
  CvOptions cv;
  cv.seed = 11;
  const auto chosen = cross_validate(corpus.train, index, cv);
  const KnnModel model(corpus.train, index, BlurParams{cv.width, chosen.variance}, chosen.k,
                       encode_labels(corpus.train).names);
  int wrong = 0;
  for (const auto& doc : corpus.test) wrong += model.predict(doc) != doc.label;
  return double(wrong) / double(corpus.test.size());
}

Outcome criterion_5() {
  std::ostringstream s;
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto corpus = synthetic::clustered_corpus(synthetic::CorpusOptions{}, seed);
    const auto& e = corpus.layout.embeddings;
    const auto tour = solve(e, kDefaultCandidates).tour;
    const double tour_err = test_error(corpus, PositionIndex(tour));
    const double proj_err = test_error(corpus, PositionIndex(rand_proj_order(e, seed)));
    if (tour_err < proj_err) ++wins;
    s << " seed" << seed << ": tour " << tour_err << " vs randproj " << proj_err << ";";
  }
  return {wins == 5, std::to_string(wins) + "/5 strict wins;" + s.str()};
}

Outcome criterion_6() {
  const int vocab = 300;
  const auto docs = wordtour::testing::random_documents(20, vocab, 30, 2, 99);
  std::vector<int> order(vocab);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(5));
  const auto forward = PositionIndex::from_order(order);
  std::vector<int> rev(order.rbegin(), order.rend());
  const auto backward = PositionIndex::from_order(rev);

  int failures = 0;
  for (double variance : {0.01, 1.0, 100.0}) {
    const BlurParams params{kDefaultBlurWidth, variance};
    std::vector<BlurredBow> a;
    std::vector<BlurredBow> b;
    for (const auto& d : docs) {
      a.push_back(blurred_bow(d, forward, params));
      b.push_back(blurred_bow(d, backward, params));
    }
    for (const auto& v : a) {
      if (std::abs(v.total() - 1.0) > 1e-9) ++failures;
      for (const auto& [p, m] : v.mass) failures += m < 0.0;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (l1_distance(a[i], a[i]) != 0.0) ++failures;
      for (std::size_t j = 0; j < a.size(); ++j) {
        const double dij = l1_distance(a[i], a[j]);
        if (dij < 0.0 || dij != l1_distance(a[j], a[i])) ++failures;
        if (std::abs(dij - l1_distance(b[i], b[j])) > 1e-12) ++failures;
        for (std::size_t k = 0; k < a.size(); ++k) {
          if (dij > l1_distance(a[i], a[k]) + l1_distance(a[k], a[j]) + 1e-12) ++failures;
        }
      }
    }
  }
  return {failures == 0, std::to_string(failures) + " invariant violations over 3 variances"};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(WORDTOUR_CLI) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

Outcome criterion_7() {
  TempDir dir("accept7");
  int failures = 0;

  // tour file round trip
  const auto e = synthetic::uniform_points(60, 4, 3);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> order(e.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const Tour t = Tour::from_order(order);
    save_tour(t, e, dir / "t.txt");
    if (!(load_tour(dir / "t.txt", e) == t)) ++failures;
  }

  // every seeded subcommand twice, compare primary outputs byte for byte
  const std::string d = dir.path().string();
  auto twice = [&](const std::string& args_template, const std::string& output) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      std::string args = args_template;
      const std::string file = d + "/" + output + std::to_string(run);
      for (std::size_t at; (at = args.find("{out}")) != std::string::npos;) args.replace(at, 5, file);
      if (run_cli(args) != 0) {
        ++failures;
        return;
      }
      outputs[run] = wordtour::testing::read_file(file);
    }
    if (outputs[0].empty() || outputs[0] != outputs[1]) ++failures;
  };
  run_cli("synth --kind corpus --n 200 --dim 8 --seed 4 --output " + d + "/corpus");
  const std::string emb = d + "/corpus/embeddings.txt";
  twice("synth --kind uniform --n 50 --dim 3 --seed 8 --output {out}", "synth");
  twice("tour --embeddings " + emb + " --threads 1 --output {out}", "tour");
  run_cli("tour --embeddings " + emb + " --threads 1 --output " + d + "/tour.txt");
  twice("bound --embeddings " + emb + " --tour " + d + "/tour.txt --iterations 50 --output {out}",
        "bound");
  twice("baseline --embeddings " + emb + " --method randproj --seed 3 --output {out}", "proj");
  twice("classify --embeddings " + emb + " --tour " + d + "/tour.txt --train " + d +
            "/corpus/train.tsv --test " + d + "/corpus/test.tsv --seed 2 --threads 1 --format csv "
            "--output {out}",
        "classify");
  twice("export --embeddings " + emb + " --output {out}", "export");
  return {failures == 0, std::to_string(failures) + " round-trip/determinism failures"};
}

Outcome criterion_8() {
  TempDir dir("accept8");
  const auto e = synthetic::uniform_points(50, 5, 77);
  export_tsplib(e, dir / "x.tsp");
  const auto inst = load_tsplib(dir / "x.tsp");
  int mismatches = inst.dimension == 50 ? 0 : 1;
  for (int i = 0; i < 50 && mismatches == 0; ++i) {
    for (int j = 0; j < 50; ++j) {
      const auto expected =
          static_cast<std::int64_t>(std::floor(1000.0 * wordtour::testing::naive_distance(e, i, j)));
      if (inst.weights(i, j) != expected) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " weight mismatches over 50x50 pairs"};
}

}  // namespace

int main() {
  const auto tiny = tiny_instances();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 exact-oracle optimality", [&] { return criterion_1(tiny); }},
      {"2 bound validity and gap", [&] { return criterion_2(tiny); }},
      {"3 circle order recovery", criterion_3},
      {"4 blurred BoW degeneracy", criterion_4},
      {"5 classification ordering", criterion_5},
      {"6 metric and normalization", criterion_6},
      {"7 round trip and determinism", criterion_7},
      {"8 TSPLIB export", criterion_8},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << name << "]  " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
