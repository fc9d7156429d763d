#pragma once

#include <optional>
#include <span>
#include <vector>

#include "amplitude_lab/algebra.hpp"

namespace amplitude_lab {

/// φ^{1/2} as the blockwise PSD root of the density.
L2Vector sqrt_vector(const Functional& phi, const Tolerances& tol = {});

/// (φ^{1/2}|ψ^{1/2}) = Σ_k Tr(D_φ^{1/2} D_ψ^{1/2}). Roundoff below zero is
/// reported as 0.
double transition_amplitude(const Functional& phi, const Functional& psi,
                            const Tolerances& tol = {});

/// ⟨φ^{1/2} x* ψ^{1/2} y⟩ = Σ_k Tr(D_φ^{1/2} x_k* D_ψ^{1/2} y_k).
Complex amplitude_kernel(const Functional& phi, const Functional& psi,
                         const BlockOperator& x, const BlockOperator& y,
                         const Tolerances& tol = {});

/// P(φ, ψ) = (Σ_k ‖D_φ^{1/2} D_ψ^{1/2}‖_1)², singular values of the product.
double uhlmann_fidelity(const Functional& phi, const Functional& psi,
                        const Tolerances& tol = {});

/// Signed slack of each inequality; every *_defect is ≥ −τ when it holds.
struct InequalityReport {
  double root_distance_sq = 0.0;   // ‖φ^{1/2} − ψ^{1/2}‖²
  double norm_distance = 0.0;      // ‖φ − ψ‖
  double root_product_bound = 0.0; // ‖φ^{1/2} − ψ^{1/2}‖ ‖φ^{1/2} + ψ^{1/2}‖
  double amplitude = 0.0;
  double fidelity = 0.0;

  double powers_stormer_lower = 0.0;  // norm_distance − root_distance_sq
  double powers_stormer_upper = 0.0;  // root_product_bound − norm_distance
  /// Only for states (φ(1) = ψ(1) = 1).
  std::optional<double> sandwich_lower;  // fidelity − amplitude²
  std::optional<double> sandwich_upper;  // amplitude − fidelity
  /// min over sampled t of λ_min((tφ + (1−t)ψ)^{1/2} − tφ^{1/2} − (1−t)ψ^{1/2}).
  double concavity = 0.0;

  double worst_defect() const;
};

InequalityReport inequality_suite(const Functional& phi, const Functional& psi,
                                  std::span<const double> ts = {},
                                  const Tolerances& tol = {});

/// Purification Φ(a ⊗ b°) = ⟨φ^{1/2} a φ^{1/2} b⟩ of a state on a single
/// block M_n, as the rank-one density |v⟩⟨v| on M_{n²} with
/// v = vec(D_φ^{1/2}) (column stacking). Throws NotFactor on multi-block
/// algebras.
Functional purify(const Functional& phi, const Tolerances& tol = {});

/// Operator on ℂ^{n²} representing a ⊗ b°: b° acts through the transpose,
/// so a ⊗ b° ↦ bᵀ ⊗ a (Kronecker), which sends vec(ξ) to vec(a ξ b).
Matrix purification_operator(const Matrix& a, const Matrix& b);

/// Purification over a multi-block algebra: A ⊗ A° = ⊕_{k,l} M_{n_k n_l},
/// with Φ carried by the diagonal blocks (k, k) as |vec D_k^{1/2}⟩⟨·|.
/// Blocks are ordered (k, l) lexicographically.
Functional purify_blockwise(const Functional& phi, const Tolerances& tol = {});

/// Surjective unital *-homomorphism π: source → image selecting blocks:
/// π(x)_j = x_{assignment[j]}. Assigned blocks must be distinct and of equal
/// size, otherwise NotQuotient.
class BlockQuotient {
 public:
  BlockQuotient(BlockAlgebra source, std::vector<std::size_t> assignment);

  const BlockAlgebra& source() const noexcept { return source_; }
  const BlockAlgebra& image() const noexcept { return image_; }
  std::span<const std::size_t> assignment() const noexcept { return assignment_; }

  BlockOperator apply(const BlockOperator& x) const;

 private:
  BlockAlgebra source_;
  BlockAlgebra image_;
  std::vector<std::size_t> assignment_;
};

/// φ ∘ π: densities placed on the selected source blocks, zero elsewhere.
Functional pullback_along_quotient(const BlockQuotient& pi, const Functional& phi);

}  // namespace amplitude_lab
