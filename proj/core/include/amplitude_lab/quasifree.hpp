#pragma once

#include "amplitude_lab/linalg.hpp"

namespace amplitude_lab {

/// Real vector space ℝ^d with an antisymmetric (possibly degenerate) form σ.
class PresymplecticSpace {
 public:
  PresymplecticSpace() = default;
  explicit PresymplecticSpace(RealMatrix sigma, const Tolerances& tol = {});

  /// Canonical form on ℝ^{2n}: σ(e_{2i}, e_{2i+1}) = 1.
  static PresymplecticSpace standard(Index pairs);

  Index dim() const noexcept { return sigma_.rows(); }
  const RealMatrix& sigma() const noexcept { return sigma_; }

 private:
  RealMatrix sigma_;
};

/// Sesquilinear S(x, y) = x̄ᵀ S y on the complexification. Only the shape and
/// Hermiticity are checked here; validate_covariance ties it to σ.
class CovarianceForm {
 public:
  CovarianceForm() = default;
  explicit CovarianceForm(Matrix s, const Tolerances& tol = {});

  /// (G + iσ)/2 for a real symmetric G.
  static CovarianceForm from_parts(const RealMatrix& g, const RealMatrix& sigma);

  Index dim() const noexcept { return s_.rows(); }
  const Matrix& matrix() const noexcept { return s_; }
  /// S(x, x) for real x.
  double quadratic(const RealVector& x) const;

 private:
  Matrix s_;
};

/// S ≥ 0 on ℂ^d and S(x, y) − conj S(x, y) = iσ(x, y) on real vectors.
bool validate_covariance(const CovarianceForm& s, const PresymplecticSpace& space,
                         const Tolerances& tol = {});

/// (x|y) = S(x, y) + conj S(x, y) + T(x, y) + conj T(x, y) = 2 Re(S + T).
RealMatrix majorizing_inner_product(const CovarianceForm& s, const CovarianceForm& t,
                                    const PresymplecticSpace& space, const Tolerances& tol = {});

/// Quotient of (V, σ, S, T) by the kernel of the majorizing inner product.
struct QuasifreeReduction {
  PresymplecticSpace space;
  CovarianceForm s;
  CovarianceForm t;
  RealMatrix quotient;  // d′ × d, rows orthonormal
  RealMatrix section;   // d × d′, quotient · section = 1
  Index kernel_dim = 0;
};

/// Throws InvalidCovariance if S or T fail validation.
QuasifreeReduction reduce(const PresymplecticSpace& space, const CovarianceForm& s,
                          const CovarianceForm& t, const Tolerances& tol = {});

/// φ_S(e^{ix}) = exp(−S(x, x)/2).
Complex quasifree_character(const CovarianceForm& s, const RealVector& x);

/// Σ_n √(p_n q_n) for geometric p_n = (1−λ)λⁿ, q_n = (1−μ)μⁿ:
/// √((1−λ)(1−μ)) / (1 − √(λμ)).
double thermal_amplitude(double lambda, double mu);

}  // namespace amplitude_lab
