#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "amplitude_lab/linalg.hpp"

namespace amplitude_lab {

/// Finite direct sum M_{n_1} ⊕ … ⊕ M_{n_m} of full complex matrix blocks.
///
/// The matrix-unit basis used by forms and Gram matrices enumerates units
/// block by block and row-major inside a block: unit e_ij of block k sits at
/// `unit_offset(k) + i * n_k + j`.
class BlockAlgebra {
 public:
  BlockAlgebra() = default;
  explicit BlockAlgebra(std::vector<Index> dims);

  std::span<const Index> dims() const noexcept { return dims_; }
  std::size_t num_blocks() const noexcept { return dims_.size(); }
  Index dim(std::size_t block) const { return dims_.at(block); }

  /// Σ n_k², the complex dimension of the algebra.
  Index element_dimension() const noexcept { return unit_offsets_.back(); }
  /// Σ n_k, the side length of the block-diagonal representation.
  Index hilbert_dimension() const noexcept;

  Index unit_offset(std::size_t block) const { return unit_offsets_.at(block); }
  bool is_commutative() const noexcept;

  friend bool operator==(const BlockAlgebra& a, const BlockAlgebra& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::vector<Index> dims_;
  std::vector<Index> unit_offsets_{0};
};

BlockAlgebra make_algebra(std::vector<Index> dims);

/// Location of a matrix unit in the algebra basis.
struct UnitIndex {
  std::size_t block;
  Index row;
  Index col;
};

UnitIndex unit_at(const BlockAlgebra& algebra, Index basis_index);

namespace detail {

/// Shared storage for anything that is "one n_k × n_k matrix per block".
class BlockStorage {
 public:
  BlockStorage() = default;
  BlockStorage(BlockAlgebra algebra, std::vector<Matrix> blocks);

  const BlockAlgebra& algebra() const noexcept { return algebra_; }
  std::span<const Matrix> blocks() const noexcept { return blocks_; }
  const Matrix& block(std::size_t k) const { return blocks_.at(k); }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }

  /// Block-diagonal matrix of side hilbert_dimension().
  Matrix to_dense() const;

 protected:
  BlockAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

void require_same_algebra(const BlockAlgebra& a, const BlockAlgebra& b,
                          const char* where);

}  // namespace detail

class BlockOperator : public detail::BlockStorage {
 public:
  BlockOperator() = default;
  BlockOperator(BlockAlgebra algebra, std::vector<Matrix> blocks);

  static BlockOperator identity(const BlockAlgebra& algebra);
  static BlockOperator zero(const BlockAlgebra& algebra);
  /// The matrix unit at a basis position (see BlockAlgebra).
  static BlockOperator unit(const BlockAlgebra& algebra, Index basis_index);

  BlockOperator adjoint() const;
  bool is_projection(const Tolerances& tol = {}) const;

  friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b);
  friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b);
  friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b);
  friend BlockOperator operator*(Complex s, const BlockOperator& a);
};

/// φ(x) = Σ_k Tr(D_k x_k). Densities must be Hermitian; positivity is only
/// enforced by the operations that need it, so differences φ − ψ are valid
/// values of this type.
class Functional : public detail::BlockStorage {
 public:
  Functional() = default;
  Functional(BlockAlgebra algebra, std::vector<Matrix> densities,
             const Tolerances& tol = {});

  static Functional zero(const BlockAlgebra& algebra);
  /// Normalized trace.
  static Functional tracial(const BlockAlgebra& algebra);

  /// φ(1).
  double mass() const;
  bool is_positive(const Tolerances& tol = {}) const;
  /// Throws NotPositive otherwise.
  void require_positive(const Tolerances& tol = {}) const;
  bool is_faithful(const Tolerances& tol = {}) const;

  const Matrix& density(std::size_t k) const { return block(k); }

  friend Functional operator+(const Functional& a, const Functional& b);
  friend Functional operator-(const Functional& a, const Functional& b);
  friend Functional operator*(double s, const Functional& a);
};

/// Element of the Hilbert–Schmidt space L²(M) with ⟨ξ|η⟩ = Σ_k Tr(ξ_k* η_k).
class L2Vector : public detail::BlockStorage {
 public:
  L2Vector() = default;
  L2Vector(BlockAlgebra algebra, std::vector<Matrix> blocks);

  Complex inner(const L2Vector& other) const;
  double norm() const;

  /// x·ξ·y.
  L2Vector sandwich(const BlockOperator& left, const BlockOperator& right) const;
  L2Vector left_multiply(const BlockOperator& x) const;
  L2Vector right_multiply(const BlockOperator& y) const;
  L2Vector adjoint() const;

  friend L2Vector operator+(const L2Vector& a, const L2Vector& b);
  friend L2Vector operator-(const L2Vector& a, const L2Vector& b);
};

Complex evaluate(const Functional& phi, const BlockOperator& x);

/// Dual norm on M_*: Σ_k ‖D_k‖_1.
double functional_norm(const Functional& phi);

BlockOperator support_projection(const Functional& phi, const Tolerances& tol = {});
BlockOperator central_support(const Functional& phi, const Tolerances& tol = {});

enum class PairRelation { Disjoint, QuasiEquivalent, Neither };

PairRelation classify_pair(const Functional& phi, const Functional& psi,
                           const Tolerances& tol = {});
bool is_pure(const Functional& phi, const Tolerances& tol = {});

/// Per-block indicator of the central support (true where D_k ≠ 0).
std::vector<bool> central_support_mask(const Functional& phi,
                                       const Tolerances& tol = {});

}  // namespace amplitude_lab
