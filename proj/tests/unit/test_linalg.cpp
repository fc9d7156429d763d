#include "oracles.hpp"
#include "test_util.hpp"

using namespace amplitude_lab;
using namespace testutil;

TEST_CASE("psd_sqrt on small inputs") {
  check_close(psd_sqrt(diag({4, 1})), diag({2, 1}), 1e-12);
  check_close(psd_sqrt(Matrix::Zero(3, 3)), Matrix::Zero(3, 3), 0.0);

  const Matrix h = mat2(2, 1, 1, 1);
  Matrix expected = mat2(3, 1, 1, 2) / std::sqrt(5.0);
  check_close(psd_sqrt(h), expected, 1e-12);
  check_close(oracle::sqrt2x2(h), expected, 1e-12);
}

TEST_CASE("psd_sqrt squares back for random PSD up to 64x64") {
  Sampler rng(11);
  for (Index n : {1, 2, 5, 17, 64}) {
    const Matrix x = rng.ginibre(n, n);
    const Matrix h = x * x.adjoint();
    const Matrix r = psd_sqrt(h);
    CHECK(max_abs(r * r - h) <= 1e-9 * (1.0 + max_abs(h)));
    CHECK(is_psd(r));
  }
}

TEST_CASE("psd_sqrt of a rank-deficient matrix keeps the kernel") {
  Sampler rng(3);
  const Matrix x = rng.ginibre(6, 2);
  const Matrix h = x * x.adjoint();
  const Matrix r = psd_sqrt(h);
  CHECK(numerical_rank(r) == 2);
  CHECK(max_abs(r * r - h) <= 1e-10);
}

TEST_CASE("checked_psd_eig rejects indefinite and non-Hermitian input") {
  CHECK_THROWS_AS(checked_psd_eig(diag({1, -0.1})), Error);
  try {
    checked_psd_eig(mat2(1, 1, 0, 1));
    FAIL("expected NotPositive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositive);
  }
  // Roundoff below zero is accepted.
  CHECK_NOTHROW(checked_psd_eig(diag({1, -1e-14})));
}

TEST_CASE("psd_power conventions") {
  const Matrix d = diag({0.25, 0});
  check_close(psd_power(d, 0.0), Matrix::Identity(2, 2), 0.0);
  check_close(psd_power(d, 0.5), diag({0.5, 0}), 1e-14);
  check_close(psd_power(d, 2.0), diag({0.0625, 0}), 1e-14);
}

TEST_CASE("trace norms") {
  CHECK(hermitian_trace_norm(diag({0.4, -0.4})) == doctest::Approx(0.8));
  CHECK(trace_norm(diag({0.4, -0.4})) == doctest::Approx(0.8));
  const Matrix x = mat2(0, 1, 0, 0);
  CHECK(trace_norm(x) == doctest::Approx(1.0));
}

TEST_CASE("range projector and rank") {
  check_close(range_projector(diag({0.5, 0.5, 0})), diag({1, 1, 0}), 1e-12);
  Vector v(3);
  v << Complex(1, 1), 2, Complex(0, -1);
  v.normalize();
  const Matrix p = v * v.adjoint();
  check_close(range_projector(p), p, 1e-12);
  CHECK(numerical_rank(p) == 1);
  CHECK(range_basis(Matrix::Zero(2, 2)).cols() == 0);
}

TEST_CASE("vec stacks columns") {
  const Matrix x = mat2(1, 2, 3, 4);
  const Vector v = vec(x);
  CHECK(v(1) == Complex(3));
  CHECK(v(2) == Complex(2));
  check_close(unvec(v, 2, 2), x, 0.0);
}

TEST_CASE("hermitian checks are scale-relative") {
  Matrix h = 1e6 * mat2(1, 1, 1, 1);
  h(0, 1) += 1e-6;
  CHECK(is_hermitian(h));
  CHECK_FALSE(is_hermitian(mat2(1, 1, 0.5, 1)));
}
