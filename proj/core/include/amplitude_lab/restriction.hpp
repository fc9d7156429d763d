#pragma once

#include <optional>
#include <span>
#include <vector>

#include "amplitude_lab/algebra.hpp"

namespace amplitude_lab {

/// Unital *-embedding ι: A → B of multi-matrix algebras in standard form.
///
/// Target block k receives U_k (⊕_l a_l ⊗ 1_{c[k][l]}) U_k*, the summands
/// ordered by source block l, and a_l ⊗ 1_c laid out as the Kronecker
/// product kron(a_l, I_c). Unitality requires Σ_l c[k][l] m_l = N_k.
class UnitalEmbedding {
 public:
  UnitalEmbedding(BlockAlgebra source, BlockAlgebra target,
                  std::vector<std::vector<Index>> multiplicity,
                  std::vector<std::optional<Matrix>> unitaries = {},
                  const Tolerances& tol = {});

  static UnitalEmbedding identity(const BlockAlgebra& algebra);
  /// M_n → M_{n·c}, a ↦ a ⊗ 1_c.
  static UnitalEmbedding ampliation(Index n, Index copies);

  const BlockAlgebra& source() const noexcept { return source_; }
  const BlockAlgebra& target() const noexcept { return target_; }
  Index multiplicity(std::size_t k, std::size_t l) const { return multiplicity_.at(k).at(l); }
  const std::vector<std::vector<Index>>& multiplicities() const noexcept { return multiplicity_; }
  const std::optional<Matrix>& unitary(std::size_t k) const { return unitaries_.at(k); }

  BlockOperator apply(const BlockOperator& a) const;

  /// Offset of the summand for source block l inside target block k.
  Index summand_offset(std::size_t k, std::size_t l) const;

 private:
  BlockAlgebra source_;
  BlockAlgebra target_;
  std::vector<std::vector<Index>> multiplicity_;
  std::vector<std::optional<Matrix>> unitaries_;
};

/// outer ∘ inner; multiplicity matrices multiply and the unitaries absorb the
/// regrouping permutation.
UnitalEmbedding compose(const UnitalEmbedding& outer, const UnitalEmbedding& inner);

/// φ ∘ ι: partial trace of the diagonal sections of U_k* D_k U_k over the
/// multiplicity indices.
Functional restrict(const Functional& phi, const UnitalEmbedding& iota,
                    const Tolerances& tol = {});

/// One Kraus operator of a block-structured CP map. `op` is n_l × m_k and
/// contributes op* a_l op to target block k.
struct KrausTerm {
  std::size_t source_block;
  std::size_t target_block;
  Matrix op;
};

/// Unital completely positive map Φ: A → B, Φ(a)_k = Σ K* a_l K over the
/// terms landing in block k. Unitality: Σ K* K = 1_{m_k} for every target
/// block.
class UcpMap {
 public:
  UcpMap(BlockAlgebra source, BlockAlgebra target, std::vector<KrausTerm> terms,
         const Tolerances& tol = {});

  static UcpMap from_embedding(const UnitalEmbedding& iota);
  /// a ↦ U* a U on a single algebra.
  static UcpMap unitary_conjugation(const BlockAlgebra& algebra, std::span<const Matrix> unitaries,
                                    const Tolerances& tol = {});
  /// Diagonal part in the computational basis, on M_n.
  static UcpMap dephasing(Index n);

  const BlockAlgebra& source() const noexcept { return source_; }
  const BlockAlgebra& target() const noexcept { return target_; }
  std::span<const KrausTerm> terms() const noexcept { return terms_; }

  BlockOperator apply(const BlockOperator& a) const;

 private:
  BlockAlgebra source_;
  BlockAlgebra target_;
  std::vector<KrausTerm> terms_;
};

/// ψ ∘ Φ on the source algebra, density Σ K D_ψ K*.
Functional ucp_pullback(const UcpMap& map, const Functional& psi, const Tolerances& tol = {});

/// A_1 ⊂ A_2 ⊂ … ⊂ A_T ⊂ A with every composite to A built and checked at
/// construction.
class SubalgebraChain {
 public:
  SubalgebraChain(std::vector<BlockAlgebra> algebras, std::vector<UnitalEmbedding> connecting,
                  UnitalEmbedding final_embedding);

  std::size_t size() const noexcept { return algebras_.size(); }
  const BlockAlgebra& algebra(std::size_t n) const { return algebras_.at(n); }
  const BlockAlgebra& ambient() const noexcept { return to_ambient_.back().target(); }
  const UnitalEmbedding& connecting(std::size_t n) const { return connecting_.at(n); }
  /// ι_T ∘ κ_{T−1} ∘ … ∘ κ_n.
  const UnitalEmbedding& to_ambient(std::size_t n) const { return to_ambient_.at(n); }

 private:
  std::vector<BlockAlgebra> algebras_;
  std::vector<UnitalEmbedding> connecting_;
  std::vector<UnitalEmbedding> to_ambient_;
};

/// a_n = (φ_n^{1/2}|ψ_n^{1/2}) for φ_n = φ|_{A_n}. Entries are independent;
/// `threads` > 1 evaluates them concurrently with the same output.
std::vector<double> chain_amplitudes(const Functional& phi, const Functional& psi,
                                     const SubalgebraChain& chain, unsigned threads = 1,
                                     const Tolerances& tol = {});

struct ProductChain {
  BlockAlgebra ambient;
  SubalgebraChain chain;
};

/// A_n = M_{2^n} ⊗ 1 inside M_{2^N}, n = 1..N. TooLarge above `cap` sites.
ProductChain build_product_chain(Index sites, Index cap = 10);

/// ρ_1 ⊗ ρ_2 ⊗ … on a single block, first factor outermost.
Functional product_state(std::span<const Matrix> site_densities, const Tolerances& tol = {});

struct LumpedChain {
  SubalgebraChain chain;
  Functional phi;
  Functional psi;
};

/// On ℂ^N: A_n = span{e_1, …, e_{n−1}, e_n + … + e_N}, n = 1..N. Restriction
/// lumps the tail mass into one atom. DomainError unless p, q are
/// probability vectors of the same length.
LumpedChain build_lumped_diagonal_chain(std::span<const double> p, std::span<const double> q,
                                        const Tolerances& tol = {});

}  // namespace amplitude_lab
