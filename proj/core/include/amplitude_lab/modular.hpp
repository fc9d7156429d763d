#pragma once

#include <vector>

#include "amplitude_lab/algebra.hpp"

namespace amplitude_lab {

/// Block-diagonal (optionally antilinear) map on L²(M).
///
/// Block k is an n_k² × n_k² matrix acting on the column-stacked vec of the
/// k-th block. A linear map sends ξ to unvec(M vec ξ); an antilinear one sends
/// ξ to unvec(M conj(vec ξ)).
class Superoperator {
 public:
  Superoperator() = default;
  Superoperator(BlockAlgebra algebra, std::vector<Matrix> blocks, bool antilinear = false);

  /// ξ ↦ L ξ R, blockwise.
  static Superoperator sandwich(const BlockAlgebra& algebra, std::span<const Matrix> left,
                                std::span<const Matrix> right);
  static Superoperator identity(const BlockAlgebra& algebra);

  const BlockAlgebra& algebra() const noexcept { return algebra_; }
  const Matrix& block(std::size_t k) const { return blocks_.at(k); }
  bool is_antilinear() const noexcept { return antilinear_; }

  L2Vector apply(const L2Vector& xi) const;

  /// (this ∘ other). Two antilinear factors give a linear map.
  Superoperator compose(const Superoperator& other) const;

  /// T^z for a linear map with Hermitian PSD blocks (eigenvalues under the
  /// rank cut contribute 0). Throws DomainError on antilinear input.
  Superoperator power(Complex z, const Tolerances& tol = {}) const;

  /// max over blocks of the entrywise distance.
  double distance(const Superoperator& other) const;

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> blocks_;
  bool antilinear_ = false;
};

/// Δ_{ψ,φ}: ξ ↦ D_ψ ξ D_φ^{-1}. Requires φ faithful (NotFaithful otherwise).
Superoperator relative_modular(const Functional& psi, const Functional& phi,
                               const Tolerances& tol = {});

/// Δ_{ψ,φ}^z: ξ ↦ D_ψ^z ξ D_φ^{-z}, built from the spectral decompositions.
Superoperator relative_modular_power(const Functional& psi, const Functional& phi, Complex z,
                                     const Tolerances& tol = {});

/// J_φ: ξ ↦ ξ*, antilinear. Requires φ faithful.
Superoperator modular_conjugation(const Functional& phi, const Tolerances& tol = {});

/// σ_t(x) = D^{it} x D^{-it}.
BlockOperator modular_flow(const Functional& phi, double t, const BlockOperator& x,
                           const Tolerances& tol = {});

/// D^{iz} x D^{-iz} for complex z; σ at t − i is the KMS boundary value.
BlockOperator analytic_flow(const Functional& phi, Complex z, const BlockOperator& x,
                            const Tolerances& tol = {});

/// |φ(x σ_{t−i}(y)) − φ(σ_t(y) x)| with the flow of φ itself.
double kms_defect(const Functional& phi, const BlockOperator& x, const BlockOperator& y,
                  double t, const Tolerances& tol = {});

/// Same identity for the state ω under the flow generated by `flow_state`.
/// Vanishes when ω is the flow state; generally positive when D_ω and the
/// flow generator do not commute.
double kms_defect(const Functional& omega, const Functional& flow_state,
                  const BlockOperator& x, const BlockOperator& y, double t,
                  const Tolerances& tol = {});

/// Compression of M to eMe with e the support of φ.
struct SupportReduction {
  BlockAlgebra algebra;
  Functional state;
  /// Source block of each reduced block.
  std::vector<std::size_t> source_blocks;
  /// n_k × r_k isometries onto the support of each kept block.
  std::vector<Matrix> isometries;
  BlockAlgebra source;

  /// V* x V on every kept block.
  BlockOperator compress(const BlockOperator& x) const;
  /// Functional on eMe given by ψ restricted to the corner.
  Functional compress(const Functional& psi) const;
  /// V y V* placed back in M (zero on dropped blocks).
  BlockOperator expand(const BlockOperator& y) const;
};

/// Throws EmptyReduction for the zero functional.
SupportReduction support_reduce(const Functional& phi, const Tolerances& tol = {});

}  // namespace amplitude_lab
