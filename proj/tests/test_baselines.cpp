#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

#include "test_support.hpp"
#include "wordtour/baselines.hpp"
#include "wordtour/error.hpp"
#include "wordtour/power_iteration.hpp"
#include "wordtour/synthetic.hpp"

using namespace wordtour;
using namespace wordtour::testing;

namespace {

std::uint64_t seed_with_sign(int dim, bool positive) {
  for (std::uint64_t s = 0;; ++s) {
    if ((random_direction(dim, s)[0] > 0.0) == positive) return s;
  }
}

RowMatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  RowMatrixXd x(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) x(i, j) = z(rng) * (j + 1);
  }
  return x;
}

EmbeddingMatrix named(RowMatrixXd x) {
  std::vector<std::string> vocab;
  for (int i = 0; i < x.rows(); ++i) vocab.push_back("w" + std::to_string(i));
  return EmbeddingMatrix(std::move(vocab), std::move(x));
}

}  // namespace

TEST_CASE("one-dimensional random projection sorts the values") {
  const auto e = make_embeddings({{3.0}, {1.0}, {2.0}});
  CHECK(rand_proj_ranking(e, seed_with_sign(1, true)) == std::vector<int>{1, 2, 0});
  CHECK(rand_proj_ranking(e, seed_with_sign(1, false)) == std::vector<int>{0, 2, 1});
}

TEST_CASE("identical vectors keep index order") {
  const auto e = make_embeddings({{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}});
  CHECK(rand_proj_ranking(e, 5) == std::vector<int>{0, 1, 2, 3});
  CHECK(ranking_by_score(Eigen::VectorXd::Zero(4)) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("random projection is deterministic per seed") {
  const auto e = synthetic::uniform_points(100, 8, 3);
  CHECK(rand_proj_ranking(e, 42) == rand_proj_ranking(e, 42));
  CHECK(rand_proj_order(e, 42) == rand_proj_order(e, 42));
  CHECK(random_direction(8, 1) != random_direction(8, 2));
}

TEST_CASE("random projection is equivariant to row permutations") {
  const auto e = synthetic::uniform_points(50, 6, 11);
  std::vector<int> perm(50);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(2));
  RowMatrixXd x(50, 6);
  std::vector<std::string> vocab(50);
  for (int i = 0; i < 50; ++i) {
    x.row(i) = e.vectors().row(perm[i]);
    vocab[i] = e.word(perm[i]);
  }
  const EmbeddingMatrix shuffled(vocab, x);
  std::vector<std::string> a;
  std::vector<std::string> b;
  for (int i : rand_proj_ranking(e, 7)) a.push_back(e.word(i));
  for (int i : rand_proj_ranking(shuffled, 7)) b.push_back(shuffled.word(i));
  CHECK(a == b);
}

TEST_CASE("pca on axis-aligned data") {
  const auto e = make_embeddings({{3.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
  CHECK(pca_ranking(e, 1) == std::vector<int>{1, 2, 0});
  CHECK_THROWS_AS(pca_scores(e, 2), DegenerateComponent);
  CHECK_THROWS_AS(pca_scores(e, 3), InvalidArgument);
  CHECK_THROWS_AS(pca_scores(e, 0), InvalidArgument);
}

TEST_CASE("sign convention on a symmetric pair") {
  const auto e = make_embeddings({{1.0, 1.0}, {-1.0, -1.0}});
  const auto s = pca_scores(e, 1);
  // equal magnitudes: the first word with the largest |score| decides
  CHECK(s[0] > 0.0);
  CHECK(pca_ranking(e, 1) == std::vector<int>{1, 0});

  Eigen::VectorXd v(3);
  v << 0.5, -2.0, 1.0;
  fix_score_sign(v);
  CHECK(v[1] == 2.0);
  CHECK(v[0] == -0.5);
}

TEST_CASE("power iteration matches a dense eigensolver") {
  const RowMatrixXd x = random_matrix(50, 5, 17);
  const auto e = named(x);
  const RowMatrixXd centered = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / 49.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  for (int j = 1; j <= 4; ++j) {
    const Eigen::VectorXd axis = solver.eigenvectors().col(5 - j);
    Eigen::VectorXd expected = centered * axis;
    Eigen::Index big = 0;
    expected.cwiseAbs().maxCoeff(&big);
    if (expected[big] < 0.0) expected = -expected;
    const auto got = pca_scores(e, j);
    CHECK((got - expected).cwiseAbs().maxCoeff() <= 1e-6);
  }

  const auto pairs = leading_eigenpairs(cov, 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(pairs.values[j] == doctest::Approx(solver.eigenvalues()[4 - j]).epsilon(1e-9));
  }
}

TEST_CASE("pca is translation invariant") {
  const RowMatrixXd x = random_matrix(40, 4, 5);
  RowMatrixXd shifted = x;
  shifted.rowwise() += Eigen::RowVector4d(10.0, -3.0, 0.5, 100.0);
  for (int j = 1; j <= 4; ++j) CHECK(pca_ranking(named(x), j) == pca_ranking(named(shifted), j));
}

TEST_CASE("baseline orders are valid permutations") {
  const auto e = synthetic::uniform_points(64, 10, 9);
  for (const auto& t : {rand_proj_order(e, 1), pca_order(e, 1), pca_order(e, 4)}) {
    CHECK(t.size() == 64);
    CHECK(is_permutation_of_range(t.order()));
  }
}
