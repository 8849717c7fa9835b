#pragma once

#include <cmath>
#include <random>

#include <Eigen/Core>

#include "wordtour/error.hpp"

namespace wordtour {

template <typename Scalar>
struct EigenPairs {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;
  /// One eigenvector per column, unit norm.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
  int iterations = 0;
};

struct PowerIterationOptions {
  double tolerance = 1e-9;
  int max_iterations = 10000;
  /// Eigenvalues at or below this are treated as zero.
  double zero_eigenvalue = 1e-12;
  unsigned seed = 0x5eed;
};

/// Leading `count` eigenpairs of a symmetric positive semi-definite matrix by
/// power iteration with Hotelling deflation. Throws DegenerateComponent when a
/// requested eigenvalue is zero.
template <typename Derived>
EigenPairs<typename Derived::Scalar> leading_eigenpairs(const Eigen::MatrixBase<Derived>& symmetric,
                                                        int count,
                                                        const PowerIterationOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const Eigen::Index dim = symmetric.rows();
  if (symmetric.cols() != dim) throw InvalidArgument("leading_eigenpairs: matrix is not square");
  if (count < 1 || count > dim) throw InvalidArgument("leading_eigenpairs: count out of range");

  Matrix deflated = symmetric;
  EigenPairs<Scalar> out;
  out.values.resize(count);
  out.vectors.resize(dim, count);

  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.5, 1.5);

  for (int c = 0; c < count; ++c) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Scalar(uniform(rng));
    v.normalize();

    Scalar lambda(0);
    bool degenerate = false;
    for (int it = 0; it < options.max_iterations; ++it) {
      ++out.iterations;
      Vector next = deflated * v;
      // keep the iterate orthogonal to components already removed
      for (int p = 0; p < c; ++p) next -= out.vectors.col(p).dot(next) * out.vectors.col(p);
      const Scalar norm = next.norm();
      if (!(norm > Scalar(options.zero_eigenvalue))) {
        degenerate = true;
        break;
      }
      next /= norm;
      lambda = norm;
      const Scalar change = (next - v).norm();
      v = next;
      if (change < Scalar(options.tolerance)) break;
    }
    lambda = v.dot(deflated * v);
    if (degenerate || !(lambda > Scalar(options.zero_eigenvalue))) {
      throw DegenerateComponent("principal component " + std::to_string(c + 1) +
                                " has zero variance");
    }
    out.values(c) = lambda;
    out.vectors.col(c) = v;
    deflated -= lambda * v * v.transpose();
  }
  return out;
}

}  // namespace wordtour
