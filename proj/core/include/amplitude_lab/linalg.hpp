#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "amplitude_lab/tolerance.hpp"

namespace amplitude_lab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Eigen::Index;

/// (X + X*) / 2.
Matrix hermitize(const Matrix& x);

/// Eigendecomposition of the Hermitian part of a square matrix; eigenvalues
/// ascending.
struct HermitianEig {
  RealVector values;
  Matrix vectors;

  double max_abs() const;
  /// V f(Λ) V*.
  Matrix apply(const std::function<double(double)>& f) const;
  Matrix apply_complex(const std::function<Complex(double)>& f) const;
};

HermitianEig eigh(const Matrix& h);

bool is_hermitian(const Matrix& h, const Tolerances& tol = {});

/// True when the Hermitian part has no eigenvalue below -psd_cut.
bool is_psd(const Matrix& h, const Tolerances& tol = {});

/// Throws NotPositive unless `h` is Hermitian and PSD within tolerance.
/// Returns the eigendecomposition with values below the rank cut set to zero.
HermitianEig checked_psd_eig(const Matrix& h, const Tolerances& tol = {});

/// Unique PSD square root. Negative roundoff and eigenvalues under the rank
/// cut are clamped to zero first.
Matrix psd_sqrt(const Matrix& h, const Tolerances& tol = {});

/// H^s for PSD H with 0^s = 0 when s > 0; H^0 is the identity.
Matrix psd_power(const Matrix& h, double s, const Tolerances& tol = {});

/// Orthogonal projection onto the numerical range of a PSD matrix.
Matrix range_projector(const Matrix& h, const Tolerances& tol = {});

/// Orthonormal basis (columns) for the numerical range of a PSD matrix.
Matrix range_basis(const Matrix& h, const Tolerances& tol = {});

Index numerical_rank(const Matrix& h, const Tolerances& tol = {});

/// Sum of singular values.
double trace_norm(const Matrix& x);

/// Sum of |eigenvalues| of the Hermitian part.
double hermitian_trace_norm(const Matrix& h);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const Matrix& h);

/// Column-stacking vectorization and its inverse.
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Index rows, Index cols);

}  // namespace amplitude_lab
