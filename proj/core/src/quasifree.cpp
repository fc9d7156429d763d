#include "amplitude_lab/quasifree.hpp"

#include <cmath>

#include "amplitude_lab/errors.hpp"

namespace amplitude_lab {

PresymplecticSpace::PresymplecticSpace(RealMatrix sigma, const Tolerances& tol)
    : sigma_(std::move(sigma)) {
  if (sigma_.rows() != sigma_.cols()) fail(ErrorCode::ShapeError, "sigma must be square");
  if (!sigma_.allFinite()) fail(ErrorCode::DomainError, "sigma has non-finite entries");
  if (sigma_.size() > 0) {
    const double scale = 1.0 + sigma_.cwiseAbs().maxCoeff();
    if ((sigma_ + sigma_.transpose()).cwiseAbs().maxCoeff() > tol.herm * scale) {
      fail(ErrorCode::DomainError, "sigma is not antisymmetric");
    }
    sigma_ = 0.5 * (sigma_ - sigma_.transpose());
  }
}

PresymplecticSpace PresymplecticSpace::standard(Index pairs) {
  RealMatrix sigma = RealMatrix::Zero(2 * pairs, 2 * pairs);
  for (Index i = 0; i < pairs; ++i) {
    sigma(2 * i, 2 * i + 1) = 1.0;
    sigma(2 * i + 1, 2 * i) = -1.0;
  }
  return PresymplecticSpace(std::move(sigma));
}

CovarianceForm::CovarianceForm(Matrix s, const Tolerances& tol) : s_(std::move(s)) {
  if (s_.rows() != s_.cols()) fail(ErrorCode::ShapeError, "covariance must be square");
  if (!s_.allFinite()) fail(ErrorCode::DomainError, "covariance has non-finite entries");
  if (!is_hermitian(s_, tol)) fail(ErrorCode::InvalidCovariance, "covariance is not Hermitian");
  s_ = hermitize(s_);
}

CovarianceForm CovarianceForm::from_parts(const RealMatrix& g, const RealMatrix& sigma) {
  Matrix s(g.rows(), g.cols());
  s.real() = 0.5 * g;
  s.imag() = 0.5 * sigma;
  return CovarianceForm(std::move(s));
}

double CovarianceForm::quadratic(const RealVector& x) const {
  if (x.size() != dim()) fail(ErrorCode::ShapeError, "vector size does not match covariance");
  return x.dot(s_.real() * x);
}

bool validate_covariance(const CovarianceForm& s, const PresymplecticSpace& space,
                         const Tolerances& tol) {
  if (s.dim() != space.dim()) fail(ErrorCode::ShapeError, "covariance and sigma differ in size");
  if (!is_psd(s.matrix(), tol)) return false;
  // On real x, y: S(x,y) − conj S(x,y) = 2i xᵀ Im(S) y, so Im(S) = σ/2.
  const RealMatrix defect = 2.0 * s.matrix().imag() - space.sigma();
  if (defect.size() == 0) return true;
  const double scale = 1.0 + space.sigma().cwiseAbs().maxCoeff();
  return defect.cwiseAbs().maxCoeff() <= tol.num * scale;
}

namespace {

void require_valid(const CovarianceForm& s, const PresymplecticSpace& space, const Tolerances& tol) {
  if (!validate_covariance(s, space, tol)) {
    fail(ErrorCode::InvalidCovariance, "covariance is not positive or does not match sigma");
  }
}

}  // namespace

RealMatrix majorizing_inner_product(const CovarianceForm& s, const CovarianceForm& t,
                                    const PresymplecticSpace& space, const Tolerances& tol) {
  require_valid(s, space, tol);
  require_valid(t, space, tol);
  const RealMatrix g = 2.0 * (s.matrix().real() + t.matrix().real());
  return 0.5 * (g + g.transpose());
}

QuasifreeReduction reduce(const PresymplecticSpace& space, const CovarianceForm& s,
                          const CovarianceForm& t, const Tolerances& tol) {
  const RealMatrix inner = majorizing_inner_product(s, t, space, tol);
  const Index d = inner.rows();
  QuasifreeReduction out;
  if (d == 0) {
    out.space = space;
    out.s = s;
    out.t = t;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(inner);
  const double lmax = eig.eigenvalues().cwiseAbs().maxCoeff();
  const double cut = tol.rank_cut(d, lmax);
  std::vector<Index> kept;
  for (Index i = 0; i < d; ++i) {
    if (eig.eigenvalues()(i) > cut) kept.push_back(i);
  }
  const Index r = static_cast<Index>(kept.size());
  RealMatrix section(d, r);
  for (Index c = 0; c < r; ++c) section.col(c) = eig.eigenvectors().col(kept[static_cast<std::size_t>(c)]);
  out.section = section;
  out.quotient = section.transpose();
  out.kernel_dim = d - r;
  const Matrix sec = section.cast<Complex>();
  out.space = PresymplecticSpace(section.transpose() * space.sigma() * section, tol);
  out.s = CovarianceForm(sec.adjoint() * s.matrix() * sec, tol);
  out.t = CovarianceForm(sec.adjoint() * t.matrix() * sec, tol);
  return out;
}

Complex quasifree_character(const CovarianceForm& s, const RealVector& x) {
  return std::exp(Complex(-0.5 * s.quadratic(x), 0.0));
}

double thermal_amplitude(double lambda, double mu) {
  if (!(lambda >= 0.0 && lambda < 1.0) || !(mu >= 0.0 && mu < 1.0)) {
    fail(ErrorCode::DomainError, "thermal parameters must lie in [0, 1)");
  }
  return std::sqrt((1.0 - lambda) * (1.0 - mu)) / (1.0 - std::sqrt(lambda * mu));
}

}  // namespace amplitude_lab
