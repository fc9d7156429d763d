#include "amplitude_lab/forms.hpp"

#include <algorithm>
#include <cmath>

#include "amplitude_lab/errors.hpp"

namespace amplitude_lab {

HermitianForm::HermitianForm(Matrix gram, const Tolerances& tol) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) fail(ErrorCode::ShapeError, "Gram matrix is not square");
  if (!gram_.allFinite()) fail(ErrorCode::DomainError, "Gram matrix has non-finite entries");
  if (!is_hermitian(gram_, tol)) fail(ErrorCode::NotPositive, "Gram matrix is not Hermitian");
  gram_ = hermitize(gram_);
}

Complex HermitianForm::operator()(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) fail(ErrorCode::ShapeError, "form argument size");
  return x.dot(gram_ * y);  // Eigen's dot conjugates the left factor.
}

double HermitianForm::quadratic(const Vector& x) const { return (*this)(x, x).real(); }

PositiveForm::PositiveForm(Matrix gram, const Tolerances& tol)
    : HermitianForm(std::move(gram), tol) {
  if (!is_psd(gram_, tol)) fail(ErrorCode::NotPositive, "Gram matrix is not positive semidefinite");
}

PositiveForm PositiveForm::zero(Index dim) { return PositiveForm(Matrix::Zero(dim, dim)); }
PositiveForm PositiveForm::identity(Index dim) { return PositiveForm(Matrix::Identity(dim, dim)); }

PositiveForm operator+(const PositiveForm& a, const PositiveForm& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::ShapeError, "form dimensions differ");
  return PositiveForm(a.gram() + b.gram());
}

PositiveForm operator*(double s, const PositiveForm& a) {
  if (s < 0.0) fail(ErrorCode::DomainError, "negative multiple of a positive form");
  return PositiveForm(s * a.gram());
}

namespace {

void require_same_dim(const HermitianForm& a, const HermitianForm& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::ShapeError, "form dimensions differ");
}

}  // namespace

namespace {

// Joint factorization of a pair. With F = [G_α^{1/2}; G_β^{1/2}] = U Σ V*,
// the embedding is j = Σ V* and the two halves U_α, U_β of U satisfy
// U_α*U_α + U_β*U_β = 1. A common right singular basis Z of the halves
// (a CS decomposition) gives A = Z C² Z*, B = Z S² Z*. Cosines and sines
// come out of SVDs with absolute accuracy, so √(AB) = Z CS Z* avoids the
// square root of noisy eigenvalues near 0 and 1.
struct CsSplit {
  Matrix embedding;  // r × d
  Matrix basis;      // r × r, unitary
  RealVector cos;
  RealVector sin;
};

CsSplit cs_split(const PositiveForm& alpha, const PositiveForm& beta, const Tolerances& tol) {
  const Index d = alpha.dim();
  Matrix f(2 * d, d);
  f.topRows(d) = psd_sqrt(alpha.gram(), tol);
  f.bottomRows(d) = psd_sqrt(beta.gram(), tol);
  Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double cut = tol.rank_cut(2 * d, sv.size() > 0 ? sv(0) : 0.0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;

  CsSplit out;
  out.embedding = sv.head(r).cast<Complex>().asDiagonal() * svd.matrixV().leftCols(r).adjoint();
  if (r == 0) return out;
  const Matrix u_alpha = svd.matrixU().topLeftCorner(d, r);
  const Matrix u_beta = svd.matrixU().bottomLeftCorner(d, r);

  Eigen::JacobiSVD<Matrix> first(u_alpha, Eigen::ComputeThinV);
  const RealVector c = first.singularValues();
  std::vector<Index> small_cos, large_cos;
  for (Index i = 0; i < r; ++i) (c(i) * c(i) <= 0.5 ? small_cos : large_cos).push_back(i);

  out.basis.resize(r, r);
  out.cos.resize(r);
  out.sin.resize(r);
  Index col = 0;
  for (Index i : small_cos) {
    out.basis.col(col) = first.matrixV().col(i);
    out.cos(col) = c(i);
    out.sin(col) = std::sqrt(std::max(0.0, 1.0 - c(i) * c(i)));
    ++col;
  }
  if (!large_cos.empty()) {
    // Where the cosine is near 1 the sine is resolved from U_β instead.
    Matrix z(r, static_cast<Index>(large_cos.size()));
    for (Index j = 0; j < z.cols(); ++j) z.col(j) = first.matrixV().col(large_cos[static_cast<std::size_t>(j)]);
    Eigen::JacobiSVD<Matrix> second(u_beta * z, Eigen::ComputeThinV);
    const Matrix rotated = z * second.matrixV();
    for (Index j = 0; j < z.cols(); ++j) {
      const double s = std::min(1.0, second.singularValues()(j));
      out.basis.col(col) = rotated.col(j);
      out.sin(col) = s;
      out.cos(col) = std::sqrt(std::max(0.0, 1.0 - s * s));
      ++col;
    }
  }
  return out;
}

}  // namespace

PWRepresentation pw_representation(const PositiveForm& alpha, const PositiveForm& beta,
                                   const Tolerances& tol) {
  require_same_dim(alpha, beta);
  const Index d = alpha.dim();
  PWRepresentation rep;
  if (d == 0) return rep;
  const CsSplit cs = cs_split(alpha, beta, tol);
  rep.rank = cs.embedding.rows();
  rep.embedding = cs.embedding;
  const RealVector c2 = cs.cos.cwiseAbs2(), s2 = cs.sin.cwiseAbs2();
  rep.a = hermitize(cs.basis * c2.cast<Complex>().asDiagonal() * cs.basis.adjoint());
  rep.b = hermitize(cs.basis * s2.cast<Complex>().asDiagonal() * cs.basis.adjoint());
  if (rep.rank == 0) {
    rep.a = rep.b = Matrix::Zero(0, 0);
  }
  return rep;
}

PositiveForm geometric_mean(const PositiveForm& alpha, const PositiveForm& beta,
                            const Tolerances& tol) {
  require_same_dim(alpha, beta);
  const Index d = alpha.dim();
  if (d == 0) return PositiveForm::zero(0);
  const CsSplit cs = cs_split(alpha, beta, tol);
  if (cs.embedding.rows() == 0) return PositiveForm::zero(d);
  const RealVector cs_prod = cs.cos.cwiseProduct(cs.sin);
  const Matrix j = cs.basis.adjoint() * cs.embedding;
  return PositiveForm(j.adjoint() * cs_prod.cast<Complex>().asDiagonal() * j, tol);
}

namespace {

Matrix certificate(const HermitianForm& gamma, const PositiveForm& alpha, const PositiveForm& beta) {
  require_same_dim(gamma, alpha);
  require_same_dim(alpha, beta);
  const Index d = alpha.dim();
  Matrix c(2 * d, 2 * d);
  c.topLeftCorner(d, d) = alpha.gram();
  c.topRightCorner(d, d) = gamma.gram();
  c.bottomLeftCorner(d, d) = gamma.gram().adjoint();
  c.bottomRightCorner(d, d) = beta.gram();
  return c;
}

}  // namespace

double domination_margin(const HermitianForm& gamma, const PositiveForm& alpha,
                         const PositiveForm& beta) {
  const Matrix c = certificate(gamma, alpha, beta);
  return c.size() == 0 ? 0.0 : min_eigenvalue(c);
}

bool is_dominated(const HermitianForm& gamma, const PositiveForm& alpha,
                  const PositiveForm& beta, const Tolerances& tol) {
  const Matrix c = certificate(gamma, alpha, beta);
  if (c.size() == 0) return true;
  const HermitianEig eig = eigh(c);
  return eig.values(0) >= -tol.psd_cut(eig.max_abs());
}

Matrix sandwich_gram(const BlockAlgebra& algebra, std::span<const Matrix> left,
                     std::span<const Matrix> right) {
  if (left.size() != algebra.num_blocks() || right.size() != algebra.num_blocks()) {
    fail(ErrorCode::ShapeError, "sandwich_gram: block count");
  }
  const Index d = algebra.element_dimension();
  Matrix gram = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
    const Index n = algebra.dim(k);
    const Index off = algebra.unit_offset(k);
    const Matrix& p = left[k];
    const Matrix& q = right[k];
    // x = e_ij, y = e_ab:  Tr(P e_ji Q e_ab) = P_bj Q_ia.
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index a = 0; a < n; ++a)
          for (Index b = 0; b < n; ++b)
            gram(off + i * n + j, off + a * n + b) = p(b, j) * q(i, a);
  }
  return gram;
}

namespace {

std::vector<Matrix> identities(const BlockAlgebra& algebra) {
  std::vector<Matrix> out;
  for (Index n : algebra.dims()) out.push_back(Matrix::Identity(n, n));
  return out;
}

}  // namespace

PositiveForm left_form(const Functional& phi, const Tolerances& tol) {
  phi.require_positive(tol);
  const std::vector<Matrix> ones = identities(phi.algebra());
  return PositiveForm(sandwich_gram(phi.algebra(), phi.blocks(), ones), tol);
}

PositiveForm right_form(const Functional& phi, const Tolerances& tol) {
  phi.require_positive(tol);
  const std::vector<Matrix> ones = identities(phi.algebra());
  return PositiveForm(sandwich_gram(phi.algebra(), ones, phi.blocks()), tol);
}

HermitianForm interpolated_form(const Functional& phi, const Functional& psi, double t,
                                const Tolerances& tol) {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::DomainError, "interpolation parameter outside [0, 1]");
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "interpolated_form");
  phi.require_positive(tol);
  psi.require_positive(tol);
  std::vector<Matrix> left, right;
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    left.push_back(psd_power(phi.density(k), 1.0 - t, tol));
    right.push_back(psd_power(psi.density(k), t, tol));
  }
  return HermitianForm(sandwich_gram(phi.algebra(), left, right), tol);
}

}  // namespace amplitude_lab
