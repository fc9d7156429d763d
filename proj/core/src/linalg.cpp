#include "amplitude_lab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "amplitude_lab/errors.hpp"

namespace amplitude_lab {

Matrix hermitize(const Matrix& x) {
  Matrix h = (x + x.adjoint()) * 0.5;
  return h;
}

double HermitianEig::max_abs() const {
  return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
}

Matrix HermitianEig::apply(const std::function<double(double)>& f) const {
  RealVector mapped = values.unaryExpr(f);
  return vectors * mapped.cast<Complex>().asDiagonal() * vectors.adjoint();
}

Matrix HermitianEig::apply_complex(
    const std::function<Complex(double)>& f) const {
  Vector mapped(values.size());
  for (Index i = 0; i < values.size(); ++i) mapped(i) = f(values(i));
  return vectors * mapped.asDiagonal() * vectors.adjoint();
}

HermitianEig eigh(const Matrix& h) {
  if (h.rows() != h.cols()) {
    fail(ErrorCode::ShapeError, "eigh: matrix is not square");
  }
  if (h.rows() == 0) return {RealVector(0), Matrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(h));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

double entry_scale(const Matrix& h) {
  return h.size() == 0 ? 0.0 : h.cwiseAbs().maxCoeff() * static_cast<double>(h.rows());
}

}  // namespace

bool is_hermitian(const Matrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols()) return false;
  if (h.size() == 0) return true;
  if (!h.allFinite()) return false;
  const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
  return defect <= tol.herm_cut(entry_scale(h));
}

bool is_psd(const Matrix& h, const Tolerances& tol) {
  if (!is_hermitian(h, tol)) return false;
  if (h.size() == 0) return true;
  const HermitianEig eig = eigh(h);
  return eig.values.minCoeff() >= -tol.psd_cut(eig.max_abs());
}

HermitianEig checked_psd_eig(const Matrix& h, const Tolerances& tol) {
  if (!is_hermitian(h, tol)) {
    fail(ErrorCode::NotPositive, "matrix is not Hermitian within tolerance");
  }
  HermitianEig eig = eigh(h);
  if (eig.values.size() == 0) return eig;
  const double lmax = eig.max_abs();
  const double lmin = eig.values.minCoeff();
  if (lmin < -tol.psd_cut(lmax)) {
    std::ostringstream msg;
    msg << "matrix is not positive semidefinite (min eigenvalue " << lmin << ")";
    fail(ErrorCode::NotPositive, msg.str());
  }
  const double cut = tol.rank_cut(h.rows(), lmax);
  for (Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) <= cut) eig.values(i) = 0.0;
  }
  return eig;
}

Matrix psd_sqrt(const Matrix& h, const Tolerances& tol) {
  return checked_psd_eig(h, tol).apply([](double v) { return std::sqrt(v); });
}

Matrix psd_power(const Matrix& h, double s, const Tolerances& tol) {
  if (s == 0.0) return Matrix::Identity(h.rows(), h.cols());
  const HermitianEig eig = checked_psd_eig(h, tol);
  return eig.apply([s](double v) { return v > 0.0 ? std::pow(v, s) : 0.0; });
}

Matrix range_basis(const Matrix& h, const Tolerances& tol) {
  const HermitianEig eig = checked_psd_eig(h, tol);
  std::vector<Index> kept;
  for (Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > 0.0) kept.push_back(i);
  }
  Matrix basis(h.rows(), static_cast<Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    basis.col(static_cast<Index>(c)) = eig.vectors.col(kept[c]);
  }
  return basis;
}

Matrix range_projector(const Matrix& h, const Tolerances& tol) {
  const Matrix basis = range_basis(h, tol);
  return basis * basis.adjoint();
}

Index numerical_rank(const Matrix& h, const Tolerances& tol) {
  return range_basis(h, tol).cols();
}

double trace_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double hermitian_trace_norm(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  return eigh(h).values.cwiseAbs().sum();
}

double min_eigenvalue(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  return eigh(h).values.minCoeff();
}

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    fail(ErrorCode::ShapeError, "unvec: length does not match shape");
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

}  // namespace amplitude_lab
