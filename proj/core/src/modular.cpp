#include "amplitude_lab/modular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "amplitude_lab/errors.hpp"

namespace amplitude_lab {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// vec(ξ*) = P conj(vec ξ) for the column-stacking vec.
Matrix transpose_permutation(Index n) {
  Matrix p = Matrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) p(j + i * n, i + j * n) = 1.0;
  return p;
}

void require_faithful(const Functional& phi, const Tolerances& tol) {
  phi.require_positive(tol);
  if (!phi.is_faithful(tol)) {
    fail(ErrorCode::NotFaithful, "functional is not faithful; reduce to its support first");
  }
}

/// D^z for faithful D via the unitary eigenbasis: exp(z log λ).
Matrix faithful_power(const Matrix& d, Complex z) {
  const HermitianEig eig = eigh(d);
  return eig.apply_complex([z](double v) { return std::exp(z * std::log(v)); });
}

}  // namespace

// ---------------------------------------------------------------------------

Superoperator::Superoperator(BlockAlgebra algebra, std::vector<Matrix> blocks, bool antilinear)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)), antilinear_(antilinear) {
  if (blocks_.size() != algebra_.num_blocks()) fail(ErrorCode::ShapeError, "superoperator block count");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Index n2 = algebra_.dim(k) * algebra_.dim(k);
    if (blocks_[k].rows() != n2 || blocks_[k].cols() != n2) {
      fail(ErrorCode::ShapeError, "superoperator block shape");
    }
  }
}

Superoperator Superoperator::sandwich(const BlockAlgebra& algebra, std::span<const Matrix> left,
                                      std::span<const Matrix> right) {
  if (left.size() != algebra.num_blocks() || right.size() != algebra.num_blocks()) {
    fail(ErrorCode::ShapeError, "sandwich: block count");
  }
  std::vector<Matrix> blocks;
  // vec(L ξ R) = (Rᵀ ⊗ L) vec ξ.
  for (std::size_t k = 0; k < left.size(); ++k) blocks.push_back(kron(right[k].transpose(), left[k]));
  return {algebra, std::move(blocks)};
}

Superoperator Superoperator::identity(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (Index n : algebra.dims()) blocks.push_back(Matrix::Identity(n * n, n * n));
  return {algebra, std::move(blocks)};
}

L2Vector Superoperator::apply(const L2Vector& xi) const {
  detail::require_same_algebra(algebra_, xi.algebra(), "Superoperator::apply");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Index n = algebra_.dim(k);
    Vector v = vec(xi.block(k));
    if (antilinear_) v = v.conjugate();
    out.push_back(unvec(blocks_[k] * v, n, n));
  }
  return {algebra_, std::move(out)};
}

Superoperator Superoperator::compose(const Superoperator& other) const {
  detail::require_same_algebra(algebra_, other.algebra_, "Superoperator::compose");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    // T(S ξ): an antilinear outer map conjugates the inner matrix.
    out.push_back(antilinear_ ? Matrix(blocks_[k] * other.blocks_[k].conjugate())
                              : Matrix(blocks_[k] * other.blocks_[k]));
  }
  return {algebra_, std::move(out), antilinear_ != other.antilinear_};
}

Superoperator Superoperator::power(Complex z, const Tolerances& tol) const {
  if (antilinear_) fail(ErrorCode::DomainError, "power of an antilinear map");
  std::vector<Matrix> out;
  for (const Matrix& b : blocks_) {
    const HermitianEig eig = checked_psd_eig(b, tol);
    out.push_back(eig.apply_complex([z](double v) {
      return v > 0.0 ? std::exp(z * std::log(v)) : Complex(0.0);
    }));
  }
  return {algebra_, std::move(out)};
}

double Superoperator::distance(const Superoperator& other) const {
  detail::require_same_algebra(algebra_, other.algebra_, "Superoperator::distance");
  if (antilinear_ != other.antilinear_) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k].size() == 0) continue;
    worst = std::max(worst, (blocks_[k] - other.blocks_[k]).cwiseAbs().maxCoeff());
  }
  return worst;
}

// ---------------------------------------------------------------------------

Superoperator relative_modular(const Functional& psi, const Functional& phi,
                               const Tolerances& tol) {
  return relative_modular_power(psi, phi, Complex(1.0), tol);
}

Superoperator relative_modular_power(const Functional& psi, const Functional& phi, Complex z,
                                     const Tolerances& tol) {
  detail::require_same_algebra(psi.algebra(), phi.algebra(), "relative_modular");
  require_faithful(phi, tol);
  psi.require_positive(tol);
  std::vector<Matrix> left, right;
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    const HermitianEig psi_eig = checked_psd_eig(psi.density(k), tol);
    left.push_back(psi_eig.apply_complex([z](double v) {
      return v > 0.0 ? std::exp(z * std::log(v)) : Complex(0.0);
    }));
    right.push_back(faithful_power(phi.density(k), -z));
  }
  return Superoperator::sandwich(phi.algebra(), left, right);
}

Superoperator modular_conjugation(const Functional& phi, const Tolerances& tol) {
  require_faithful(phi, tol);
  std::vector<Matrix> blocks;
  for (Index n : phi.algebra().dims()) blocks.push_back(transpose_permutation(n));
  return {phi.algebra(), std::move(blocks), true};
}

BlockOperator analytic_flow(const Functional& phi, Complex z, const BlockOperator& x,
                            const Tolerances& tol) {
  detail::require_same_algebra(phi.algebra(), x.algebra(), "modular_flow");
  require_faithful(phi, tol);
  const Complex i(0.0, 1.0);
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    const HermitianEig eig = eigh(phi.density(k));
    const Matrix forward = eig.apply_complex([&](double v) { return std::exp(i * z * std::log(v)); });
    const Matrix backward = eig.apply_complex([&](double v) { return std::exp(-i * z * std::log(v)); });
    out.push_back(forward * x.block(k) * backward);
  }
  return {x.algebra(), std::move(out)};
}

BlockOperator modular_flow(const Functional& phi, double t, const BlockOperator& x,
                           const Tolerances& tol) {
  return analytic_flow(phi, Complex(t, 0.0), x, tol);
}

double kms_defect(const Functional& omega, const Functional& flow_state,
                  const BlockOperator& x, const BlockOperator& y, double t,
                  const Tolerances& tol) {
  detail::require_same_algebra(omega.algebra(), flow_state.algebra(), "kms_defect");
  const BlockOperator boundary = analytic_flow(flow_state, Complex(t, -1.0), y, tol);
  const BlockOperator real_time = analytic_flow(flow_state, Complex(t, 0.0), y, tol);
  return std::abs(evaluate(omega, x * boundary) - evaluate(omega, real_time * x));
}

double kms_defect(const Functional& phi, const BlockOperator& x, const BlockOperator& y,
                  double t, const Tolerances& tol) {
  return kms_defect(phi, phi, x, y, t, tol);
}

// ---------------------------------------------------------------------------

SupportReduction support_reduce(const Functional& phi, const Tolerances& tol) {
  phi.require_positive(tol);
  SupportReduction red;
  red.source = phi.algebra();
  std::vector<Index> dims;
  std::vector<Matrix> densities;
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    Matrix basis = range_basis(phi.density(k), tol);
    if (basis.cols() == 0) continue;
    densities.push_back(basis.adjoint() * phi.density(k) * basis);
    dims.push_back(basis.cols());
    red.source_blocks.push_back(k);
    red.isometries.push_back(std::move(basis));
  }
  if (dims.empty()) fail(ErrorCode::EmptyReduction, "support of the zero functional is empty");
  red.algebra = BlockAlgebra(dims);
  red.state = Functional(red.algebra, std::move(densities), tol);
  return red;
}

BlockOperator SupportReduction::compress(const BlockOperator& x) const {
  detail::require_same_algebra(source, x.algebra(), "SupportReduction::compress");
  std::vector<Matrix> out;
  for (std::size_t r = 0; r < source_blocks.size(); ++r) {
    out.push_back(isometries[r].adjoint() * x.block(source_blocks[r]) * isometries[r]);
  }
  return {algebra, std::move(out)};
}

Functional SupportReduction::compress(const Functional& psi) const {
  detail::require_same_algebra(source, psi.algebra(), "SupportReduction::compress");
  std::vector<Matrix> out;
  for (std::size_t r = 0; r < source_blocks.size(); ++r) {
    out.push_back(isometries[r].adjoint() * psi.density(source_blocks[r]) * isometries[r]);
  }
  return {algebra, std::move(out)};
}

BlockOperator SupportReduction::expand(const BlockOperator& y) const {
  detail::require_same_algebra(algebra, y.algebra(), "SupportReduction::expand");
  BlockOperator out = BlockOperator::zero(source);
  std::vector<Matrix> blocks(out.blocks().begin(), out.blocks().end());
  for (std::size_t r = 0; r < source_blocks.size(); ++r) {
    blocks[source_blocks[r]] = isometries[r] * y.block(r) * isometries[r].adjoint();
  }
  return {source, std::move(blocks)};
}

}  // namespace amplitude_lab
