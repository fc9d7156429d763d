#pragma once

#include "amplitude_lab/algebra.hpp"

namespace amplitude_lab {

/// γ(x, y) = x̄ᵀ G y on ℂ^d, conjugate-linear in the first slot.
class HermitianForm {
 public:
  HermitianForm() = default;
  explicit HermitianForm(Matrix gram, const Tolerances& tol = {});

  Index dim() const noexcept { return gram_.rows(); }
  const Matrix& gram() const noexcept { return gram_; }

  Complex operator()(const Vector& x, const Vector& y) const;
  double quadratic(const Vector& x) const;

 protected:
  Matrix gram_;
};

class PositiveForm : public HermitianForm {
 public:
  PositiveForm() = default;
  /// Throws NotPositive when the Gram matrix has an eigenvalue below -τ_psd.
  explicit PositiveForm(Matrix gram, const Tolerances& tol = {});

  static PositiveForm zero(Index dim);
  static PositiveForm identity(Index dim);
};

/// Pusz–Woronowicz representation of a pair {α, β}: a dense embedding
/// x ↦ j(x) = E x into ℂ^r together with commuting 0 ≤ A, B ≤ 1, A + B = 1,
/// such that α(x, y) = (j(x)|A j(y)) and β(x, y) = (j(x)|B j(y)).
struct PWRepresentation {
  Index rank = 0;
  Matrix embedding;  // r × d
  Matrix a;          // r × r
  Matrix b;          // r × r
};

/// With S = G_α + G_β = V Σ² V* on its range, E = Σ V*. A and B are read off
/// a CS decomposition of the stacked square roots [G_α^{1/2}; G_β^{1/2}],
/// so their spectra lie in [0, 1] by construction.
PWRepresentation pw_representation(const PositiveForm& alpha, const PositiveForm& beta,
                                   const Tolerances& tol = {});

/// √(αβ)(x, y) = (A^{1/2} j(x) | B^{1/2} j(y)), the largest Hermitian form
/// dominated by {α, β}.
PositiveForm geometric_mean(const PositiveForm& alpha, const PositiveForm& beta,
                            const Tolerances& tol = {});

/// |γ(x, y)|² ≤ α(x, x) β(y, y) for all x, y; decided exactly by positivity of
/// the block matrix [[G_α, G_γ], [G_γ*, G_β]].
bool is_dominated(const HermitianForm& gamma, const PositiveForm& alpha,
                  const PositiveForm& beta, const Tolerances& tol = {});

/// Smallest eigenvalue of the domination certificate matrix (≥ −τ iff
/// dominated). Exposed for diagnostics and property tests.
double domination_margin(const HermitianForm& gamma, const PositiveForm& alpha,
                         const PositiveForm& beta);

/// ω_L(x, y) = ω(x* y) on the matrix-unit basis.
PositiveForm left_form(const Functional& phi, const Tolerances& tol = {});
/// ω_R(x, y) = ω(y x*) on the matrix-unit basis.
PositiveForm right_form(const Functional& phi, const Tolerances& tol = {});

/// (x, y) ↦ Σ_k Tr(D_φ^{1−t} x* D_ψ^{t} y). t = 0 and t = 1 reproduce
/// left_form(φ) and right_form(ψ); t = 1/2 is the geometric mean of those.
HermitianForm interpolated_form(const Functional& phi, const Functional& psi, double t,
                                const Tolerances& tol = {});

/// Gram matrix of (x, y) ↦ Σ_k Tr(P_k x* Q_k y) over the matrix-unit basis.
Matrix sandwich_gram(const BlockAlgebra& algebra, std::span<const Matrix> left,
                     std::span<const Matrix> right);

PositiveForm operator+(const PositiveForm& a, const PositiveForm& b);
PositiveForm operator*(double s, const PositiveForm& a);

}  // namespace amplitude_lab
