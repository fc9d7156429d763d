#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "amplitude_lab/algebra.hpp"

namespace amplitude_lab {

/// Atomic central decomposition φ = Σ_k μ_k (dφ/dμ)_k φ_k over the blocks.
struct StateDecomposition {
  BlockAlgebra algebra;
  std::vector<double> weights;            // μ_k
  std::vector<double> derivative;         // (dφ/dμ)_k = Tr(D_k) / μ_k
  std::vector<std::optional<Matrix>> components;  // normalized D_k where D_k ≠ 0

  /// Σ_k μ_k (dφ/dμ)_k φ_k.
  Functional reassemble() const;
};

/// Central mass vector (Tr D_k)_k of a positive functional, normalized.
std::vector<double> central_weights(const Functional& phi, const Tolerances& tol = {});

/// Central mass of (φ + ψ)/2; admissible for both states.
std::vector<double> default_measure(const Functional& phi, const Functional& psi,
                                    const Tolerances& tol = {});

/// Decomposes a state along the center. Without μ the central mass of φ is
/// used. Throws SingularMeasure if μ vanishes on a block where φ lives and
/// DomainError if μ is not a probability vector.
StateDecomposition decompose(const Functional& phi,
                             std::optional<std::span<const double>> weights = std::nullopt,
                             const Tolerances& tol = {});

struct AmplitudeSumCheck {
  double lhs = 0.0;  // (φ^{1/2}|ψ^{1/2})
  double rhs = 0.0;  // Σ_k μ_k √((dφ/dμ)_k (dψ/dμ)_k) (φ_k^{1/2}|ψ_k^{1/2})
  double defect = 0.0;
  std::vector<double> component_amplitudes;
};

AmplitudeSumCheck amplitude_sum_check(const Functional& phi, const Functional& psi,
                                      std::optional<std::span<const double>> weights = std::nullopt,
                                      const Tolerances& tol = {});

struct IntegratedFamily {
  BlockAlgebra algebra;
  Functional state;
  /// Block range [first, last) of each component inside `algebra`.
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
};

/// Direct sum of the component algebras carrying Σ μ_k φ_k.
IntegratedFamily integrate_disjoint_family(std::span<const Functional> components,
                                           std::span<const double> weights,
                                           const Tolerances& tol = {});

/// ⟨a φ^{1/2} b ψ^{1/2}⟩ = Σ_k Tr(a_k D_φ^{1/2} b_k D_ψ^{1/2}).
Complex bimodule_pairing(const Functional& phi, const Functional& psi,
                         const BlockOperator& a, const BlockOperator& b,
                         const Tolerances& tol = {});

}  // namespace amplitude_lab
