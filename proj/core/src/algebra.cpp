#include "amplitude_lab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "amplitude_lab/errors.hpp"

namespace amplitude_lab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::EmptyReduction: return "EmptyReduction";
    case ErrorCode::NotFactor: return "NotFactor";
    case ErrorCode::NotQuotient: return "NotQuotient";
    case ErrorCode::InvalidEmbedding: return "InvalidEmbedding";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SingularMeasure: return "SingularMeasure";
    case ErrorCode::InvalidCovariance: return "InvalidCovariance";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// BlockAlgebra

BlockAlgebra::BlockAlgebra(std::vector<Index> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) fail(ErrorCode::InvalidAlgebra, "algebra needs at least one block");
  for (Index n : dims_) {
    if (n < 1) fail(ErrorCode::InvalidAlgebra, "block dimensions must be >= 1");
    unit_offsets_.push_back(unit_offsets_.back() + n * n);
  }
}

Index BlockAlgebra::hilbert_dimension() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), Index{0});
}

bool BlockAlgebra::is_commutative() const noexcept {
  return std::all_of(dims_.begin(), dims_.end(), [](Index n) { return n == 1; });
}

BlockAlgebra make_algebra(std::vector<Index> dims) { return BlockAlgebra(std::move(dims)); }

UnitIndex unit_at(const BlockAlgebra& algebra, Index basis_index) {
  if (basis_index < 0 || basis_index >= algebra.element_dimension()) {
    fail(ErrorCode::ShapeError, "matrix unit index out of range");
  }
  std::size_t k = 0;
  while (algebra.unit_offset(k + 1) <= basis_index) ++k;
  const Index local = basis_index - algebra.unit_offset(k);
  const Index n = algebra.dim(k);
  return {k, local / n, local % n};
}

// ---------------------------------------------------------------------------
// storage

namespace detail {

BlockStorage::BlockStorage(BlockAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != algebra_.num_blocks()) {
    fail(ErrorCode::ShapeError, "block count does not match algebra");
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Index n = algebra_.dim(k);
    if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
      std::ostringstream msg;
      msg << "block " << k << " has shape " << blocks_[k].rows() << "x"
          << blocks_[k].cols() << ", expected " << n << "x" << n;
      fail(ErrorCode::ShapeError, msg.str());
    }
  }
}

Matrix BlockStorage::to_dense() const {
  const Index total = algebra_.hilbert_dimension();
  Matrix dense = Matrix::Zero(total, total);
  Index offset = 0;
  for (const Matrix& b : blocks_) {
    dense.block(offset, offset, b.rows(), b.cols()) = b;
    offset += b.rows();
  }
  return dense;
}

void require_same_algebra(const BlockAlgebra& a, const BlockAlgebra& b,
                          const char* where) {
  if (!(a == b)) {
    fail(ErrorCode::ShapeError, std::string(where) + ": algebras differ");
  }
}

template <class T, class Op>
std::vector<Matrix> zip_blocks(const T& a, const T& b, Op op, const char* where) {
  require_same_algebra(a.algebra(), b.algebra(), where);
  std::vector<Matrix> out;
  out.reserve(a.num_blocks());
  for (std::size_t k = 0; k < a.num_blocks(); ++k) out.push_back(op(a.block(k), b.block(k)));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// BlockOperator

BlockOperator::BlockOperator(BlockAlgebra algebra, std::vector<Matrix> blocks)
    : BlockStorage(std::move(algebra), std::move(blocks)) {}

BlockOperator BlockOperator::identity(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (Index n : algebra.dims()) blocks.push_back(Matrix::Identity(n, n));
  return {algebra, std::move(blocks)};
}

BlockOperator BlockOperator::zero(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (Index n : algebra.dims()) blocks.push_back(Matrix::Zero(n, n));
  return {algebra, std::move(blocks)};
}

BlockOperator BlockOperator::unit(const BlockAlgebra& algebra, Index basis_index) {
  const UnitIndex u = unit_at(algebra, basis_index);
  BlockOperator e = zero(algebra);
  e.blocks_[u.block](u.row, u.col) = 1.0;
  return e;
}

BlockOperator BlockOperator::adjoint() const {
  std::vector<Matrix> out;
  for (const Matrix& b : blocks_) out.push_back(b.adjoint());
  return {algebra_, std::move(out)};
}

bool BlockOperator::is_projection(const Tolerances& tol) const {
  for (const Matrix& b : blocks_) {
    if (b.size() == 0) continue;
    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > tol.num * scale) return false;
    if ((b * b - b).cwiseAbs().maxCoeff() > tol.num * scale) return false;
  }
  return true;
}

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
  return {a.algebra(), detail::zip_blocks(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; }, "operator+")};
}

BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
  return {a.algebra(), detail::zip_blocks(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; }, "operator-")};
}

BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
  return {a.algebra(), detail::zip_blocks(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x * y; }, "operator*")};
}

BlockOperator operator*(Complex s, const BlockOperator& a) {
  std::vector<Matrix> out;
  for (const Matrix& b : a.blocks()) out.push_back(s * b);
  return {a.algebra(), std::move(out)};
}

// ---------------------------------------------------------------------------
// Functional

Functional::Functional(BlockAlgebra algebra, std::vector<Matrix> densities,
                       const Tolerances& tol)
    : BlockStorage(std::move(algebra), std::move(densities)) {
  for (Matrix& d : blocks_) {
    if (!d.allFinite()) fail(ErrorCode::DomainError, "density has non-finite entries");
    if (!is_hermitian(d, tol)) fail(ErrorCode::NotPositive, "density is not Hermitian");
    d = hermitize(d);
  }
}

Functional Functional::zero(const BlockAlgebra& algebra) {
  std::vector<Matrix> blocks;
  for (Index n : algebra.dims()) blocks.push_back(Matrix::Zero(n, n));
  return {algebra, std::move(blocks)};
}

Functional Functional::tracial(const BlockAlgebra& algebra) {
  const double total = static_cast<double>(algebra.hilbert_dimension());
  std::vector<Matrix> blocks;
  for (Index n : algebra.dims()) blocks.push_back(Matrix::Identity(n, n) / total);
  return {algebra, std::move(blocks)};
}

double Functional::mass() const {
  double m = 0.0;
  for (const Matrix& d : blocks_) m += d.trace().real();
  return m;
}

bool Functional::is_positive(const Tolerances& tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [&](const Matrix& d) { return is_psd(d, tol); });
}

void Functional::require_positive(const Tolerances& tol) const {
  if (!is_positive(tol)) fail(ErrorCode::NotPositive, "functional is not positive");
}

bool Functional::is_faithful(const Tolerances& tol) const {
  for (const Matrix& d : blocks_) {
    if (numerical_rank(d, tol) != d.rows()) return false;
  }
  return true;
}

Functional operator+(const Functional& a, const Functional& b) {
  return {a.algebra(), detail::zip_blocks(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; }, "operator+")};
}

Functional operator-(const Functional& a, const Functional& b) {
  return {a.algebra(), detail::zip_blocks(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; }, "operator-")};
}

Functional operator*(double s, const Functional& a) {
  std::vector<Matrix> out;
  for (const Matrix& d : a.blocks()) out.push_back(s * d);
  return {a.algebra(), std::move(out)};
}

// ---------------------------------------------------------------------------
// L2Vector

L2Vector::L2Vector(BlockAlgebra algebra, std::vector<Matrix> blocks)
    : BlockStorage(std::move(algebra), std::move(blocks)) {}

Complex L2Vector::inner(const L2Vector& other) const {
  detail::require_same_algebra(algebra_, other.algebra(), "inner");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    sum += (blocks_[k].adjoint() * other.block(k)).trace();
  }
  return sum;
}

double L2Vector::norm() const {
  double sum = 0.0;
  for (const Matrix& b : blocks_) sum += b.squaredNorm();
  return std::sqrt(sum);
}

L2Vector L2Vector::sandwich(const BlockOperator& left, const BlockOperator& right) const {
  detail::require_same_algebra(algebra_, left.algebra(), "sandwich");
  detail::require_same_algebra(algebra_, right.algebra(), "sandwich");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    out.push_back(left.block(k) * blocks_[k] * right.block(k));
  }
  return {algebra_, std::move(out)};
}

L2Vector L2Vector::left_multiply(const BlockOperator& x) const {
  return sandwich(x, BlockOperator::identity(algebra_));
}

L2Vector L2Vector::right_multiply(const BlockOperator& y) const {
  return sandwich(BlockOperator::identity(algebra_), y);
}

L2Vector L2Vector::adjoint() const {
  std::vector<Matrix> out;
  for (const Matrix& b : blocks_) out.push_back(b.adjoint());
  return {algebra_, std::move(out)};
}

L2Vector operator+(const L2Vector& a, const L2Vector& b) {
  return {a.algebra(), detail::zip_blocks(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; }, "operator+")};
}

L2Vector operator-(const L2Vector& a, const L2Vector& b) {
  return {a.algebra(), detail::zip_blocks(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; }, "operator-")};
}

// ---------------------------------------------------------------------------
// operations

Complex evaluate(const Functional& phi, const BlockOperator& x) {
  detail::require_same_algebra(phi.algebra(), x.algebra(), "evaluate");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    // Tr(D x) without forming the product.
    sum += (phi.density(k).transpose().cwiseProduct(x.block(k))).sum();
  }
  return sum;
}

double functional_norm(const Functional& phi) {
  double sum = 0.0;
  for (const Matrix& d : phi.blocks()) sum += hermitian_trace_norm(d);
  return sum;
}

BlockOperator support_projection(const Functional& phi, const Tolerances& tol) {
  std::vector<Matrix> out;
  for (const Matrix& d : phi.blocks()) out.push_back(range_projector(d, tol));
  return {phi.algebra(), std::move(out)};
}

std::vector<bool> central_support_mask(const Functional& phi, const Tolerances& tol) {
  phi.require_positive(tol);
  std::vector<bool> mask;
  for (const Matrix& d : phi.blocks()) {
    // For PSD D the trace equals the trace norm.
    const double mass = d.trace().real();
    mask.push_back(mass > tol.psd_cut(0.0));
  }
  return mask;
}

BlockOperator central_support(const Functional& phi, const Tolerances& tol) {
  const std::vector<bool> mask = central_support_mask(phi, tol);
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const Index n = phi.algebra().dim(k);
    out.push_back(mask[k] ? Matrix(Matrix::Identity(n, n)) : Matrix(Matrix::Zero(n, n)));
  }
  return {phi.algebra(), std::move(out)};
}

PairRelation classify_pair(const Functional& phi, const Functional& psi,
                           const Tolerances& tol) {
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "classify_pair");
  const std::vector<bool> zp = central_support_mask(phi, tol);
  const std::vector<bool> zq = central_support_mask(psi, tol);
  bool overlap = false;
  for (std::size_t k = 0; k < zp.size(); ++k) overlap = overlap || (zp[k] && zq[k]);
  if (!overlap) return PairRelation::Disjoint;
  if (zp == zq) return PairRelation::QuasiEquivalent;
  return PairRelation::Neither;
}

bool is_pure(const Functional& phi, const Tolerances& tol) {
  phi.require_positive(tol);
  Index rank = 0;
  for (const Matrix& d : phi.blocks()) rank += numerical_rank(d, tol);
  return rank == 1;
}

}  // namespace amplitude_lab
