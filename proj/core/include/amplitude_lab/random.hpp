#pragma once

#include <cstdint>
#include <random>

#include "amplitude_lab/algebra.hpp"

namespace amplitude_lab {

/// Seeded generator of random matrices, states and operators. Output is a
/// pure function of the seed and the call sequence.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  Index integer(Index lo, Index hi);  // inclusive

  /// Entries i.i.d. complex Gaussian.
  Matrix ginibre(Index rows, Index cols);
  /// Haar unitary via QR of a Ginibre matrix with phase correction.
  Matrix unitary(Index n);
  /// X X* / Tr for X of shape n × rank; rank ≤ 0 means full rank.
  Matrix density(Index n, Index rank = 0);
  /// exp(−βH)/Z for a GUE-like Hermitian H.
  Matrix gibbs(Index n, double beta = 1.0);
  /// Random PSD matrix with eigenvalues in [lo, hi].
  Matrix psd(Index n, double lo, double hi);

  /// Random state with central weights drawn uniformly from the simplex.
  /// With `rank_deficient`, each block independently gets a random rank.
  Functional state(const BlockAlgebra& algebra, bool rank_deficient = false);
  BlockOperator element(const BlockAlgebra& algebra);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace amplitude_lab
