#include "amplitude_lab/random.hpp"

#include <cmath>

namespace amplitude_lab {

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Sampler::normal() { return normal_(engine_); }

Index Sampler::integer(Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(engine_);
}

Matrix Sampler::ginibre(Index rows, Index cols) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = Complex(normal(), normal());
  return g;
}

Matrix Sampler::unitary(Index n) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

Matrix Sampler::density(Index n, Index rank) {
  if (rank <= 0 || rank > n) rank = n;
  const Matrix x = ginibre(n, rank);
  Matrix d = x * x.adjoint();
  d /= d.trace().real();
  return hermitize(d);
}

Matrix Sampler::gibbs(Index n, double beta) {
  const Matrix g = ginibre(n, n);
  const Matrix h = hermitize(g) / std::sqrt(static_cast<double>(2 * n));
  const HermitianEig eig = eigh(h);
  Matrix d = eig.apply([beta](double v) { return std::exp(-beta * v); });
  d /= d.trace().real();
  return hermitize(d);
}

Matrix Sampler::psd(Index n, double lo, double hi) {
  const Matrix u = unitary(n);
  RealVector ev(n);
  for (Index i = 0; i < n; ++i) ev(i) = uniform(lo, hi);
  return hermitize(u * ev.cast<Complex>().asDiagonal() * u.adjoint());
}

Functional Sampler::state(const BlockAlgebra& algebra, bool rank_deficient) {
  const std::size_t m = algebra.num_blocks();
  std::vector<double> weights(m);
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(uniform(1e-12, 1.0));
    total += w;
  }
  std::vector<Matrix> densities;
  for (std::size_t k = 0; k < m; ++k) {
    const Index n = algebra.dim(k);
    const Index rank = rank_deficient ? integer(1, n) : n;
    densities.push_back((weights[k] / total) * density(n, rank));
  }
  return {algebra, std::move(densities)};
}

BlockOperator Sampler::element(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (Index n : algebra.dims()) blocks.push_back(ginibre(n, n));
  return {algebra, std::move(blocks)};
}

}  // namespace amplitude_lab
