#pragma once

#include <doctest.h>

#include <amplitude_lab/amplitude_lab.hpp>
#include <cmath>
#include <initializer_list>
#include <vector>

namespace testutil {

using namespace amplitude_lab;

inline Matrix diag(std::initializer_list<double> v) {
  RealVector d(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Functional state1(const Matrix& d) {
  return Functional(make_algebra({d.rows()}), {d});
}

/// Commutative algebra ℂⁿ carrying a probability vector.
inline Functional diagonal_state(const std::vector<double>& p) {
  std::vector<Index> dims(p.size(), 1);
  std::vector<Matrix> d;
  for (double x : p) d.push_back(Matrix::Constant(1, 1, x));
  return Functional(make_algebra(dims), d);
}

inline Matrix ket_plus() {
  const double h = 0.5;
  return mat2(h, h, h, h);
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline void check_close(const Matrix& a, const Matrix& b, double tol) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  CHECK(max_abs(a - b) <= tol);
}

inline void check_close(double a, double b, double tol) { CHECK(std::abs(a - b) <= tol); }

inline std::vector<Matrix> blocks_of(const Functional& f) {
  return {f.blocks().begin(), f.blocks().end()};
}

inline std::vector<Index> dims_of(const BlockAlgebra& a) {
  return {a.dims().begin(), a.dims().end()};
}

}  // namespace testutil
