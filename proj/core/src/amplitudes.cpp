#include "amplitude_lab/amplitudes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

#include "amplitude_lab/errors.hpp"

namespace amplitude_lab {

namespace {

std::vector<Matrix> block_roots(const Functional& phi, const Tolerances& tol) {
  std::vector<Matrix> roots;
  for (const Matrix& d : phi.blocks()) roots.push_back(psd_sqrt(d, tol));
  return roots;
}

double clamp_nonnegative(double v) { return v < 0.0 ? 0.0 : v; }

}  // namespace

L2Vector sqrt_vector(const Functional& phi, const Tolerances& tol) {
  return {phi.algebra(), block_roots(phi, tol)};
}

double transition_amplitude(const Functional& phi, const Functional& psi,
                            const Tolerances& tol) {
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "transition_amplitude");
  const L2Vector a = sqrt_vector(phi, tol);
  const L2Vector b = sqrt_vector(psi, tol);
  return clamp_nonnegative(a.inner(b).real());
}

Complex amplitude_kernel(const Functional& phi, const Functional& psi,
                         const BlockOperator& x, const BlockOperator& y,
                         const Tolerances& tol) {
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "amplitude_kernel");
  detail::require_same_algebra(phi.algebra(), x.algebra(), "amplitude_kernel");
  detail::require_same_algebra(phi.algebra(), y.algebra(), "amplitude_kernel");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    const Matrix rp = psd_sqrt(phi.density(k), tol);
    const Matrix rq = psd_sqrt(psi.density(k), tol);
    sum += (rp * x.block(k).adjoint() * rq * y.block(k)).trace();
  }
  return sum;
}

double uhlmann_fidelity(const Functional& phi, const Functional& psi, const Tolerances& tol) {
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "uhlmann_fidelity");
  double sum = 0.0;
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    sum += trace_norm(psd_sqrt(phi.density(k), tol) * psd_sqrt(psi.density(k), tol));
  }
  return sum * sum;
}

double InequalityReport::worst_defect() const {
  double worst = std::min({powers_stormer_lower, powers_stormer_upper, concavity});
  if (sandwich_lower) worst = std::min(worst, *sandwich_lower);
  if (sandwich_upper) worst = std::min(worst, *sandwich_upper);
  return worst;
}

InequalityReport inequality_suite(const Functional& phi, const Functional& psi,
                                  std::span<const double> ts, const Tolerances& tol) {
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "inequality_suite");
  phi.require_positive(tol);
  psi.require_positive(tol);
  static constexpr std::array<double, 5> kDefaultTs{0.1, 0.25, 0.5, 0.75, 0.9};
  if (ts.empty()) ts = kDefaultTs;

  const L2Vector rp = sqrt_vector(phi, tol);
  const L2Vector rq = sqrt_vector(psi, tol);

  InequalityReport r;
  const double diff = (rp - rq).norm();
  r.root_distance_sq = diff * diff;
  r.norm_distance = functional_norm(phi - psi);
  r.root_product_bound = diff * (rp + rq).norm();
  r.amplitude = clamp_nonnegative(rp.inner(rq).real());
  r.fidelity = uhlmann_fidelity(phi, psi, tol);
  r.powers_stormer_lower = r.norm_distance - r.root_distance_sq;
  r.powers_stormer_upper = r.root_product_bound - r.norm_distance;

  const bool states = std::abs(phi.mass() - 1.0) <= tol.num && std::abs(psi.mass() - 1.0) <= tol.num;
  if (states) {
    r.sandwich_lower = r.fidelity - r.amplitude * r.amplitude;
    r.sandwich_upper = r.amplitude - r.fidelity;
  }

  r.concavity = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::DomainError, "concavity parameter outside [0, 1]");
    const Functional mix = t * phi + (1.0 - t) * psi;
    for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
      const Matrix gap = psd_sqrt(mix.density(k), tol) - t * rp.block(k) - (1.0 - t) * rq.block(k);
      r.concavity = std::min(r.concavity, min_eigenvalue(gap));
    }
  }
  return r;
}

Matrix purification_operator(const Matrix& a, const Matrix& b) {
  const Matrix bt = b.transpose();
  Matrix out(bt.rows() * a.rows(), bt.cols() * a.cols());
  for (Index i = 0; i < bt.rows(); ++i)
    for (Index j = 0; j < bt.cols(); ++j)
      out.block(i * a.rows(), j * a.cols(), a.rows(), a.cols()) = bt(i, j) * a;
  return out;
}

Functional purify(const Functional& phi, const Tolerances& tol) {
  if (phi.num_blocks() != 1) {
    fail(ErrorCode::NotFactor, "purify expects a state on a single matrix block");
  }
  phi.require_positive(tol);
  const Index n = phi.algebra().dim(0);
  const Vector v = vec(psd_sqrt(phi.density(0), tol));
  std::vector<Matrix> density{v * v.adjoint()};
  return {BlockAlgebra({n * n}), std::move(density), tol};
}

Functional purify_blockwise(const Functional& phi, const Tolerances& tol) {
  phi.require_positive(tol);
  const std::size_t m = phi.num_blocks();
  std::vector<Index> dims;
  std::vector<Matrix> densities;
  for (std::size_t k = 0; k < m; ++k) {
    const Vector v = vec(psd_sqrt(phi.density(k), tol));
    for (std::size_t l = 0; l < m; ++l) {
      const Index side = phi.algebra().dim(k) * phi.algebra().dim(l);
      dims.push_back(side);
      densities.push_back(k == l ? Matrix(v * v.adjoint()) : Matrix(Matrix::Zero(side, side)));
    }
  }
  return {BlockAlgebra(std::move(dims)), std::move(densities), tol};
}

// ---------------------------------------------------------------------------

BlockQuotient::BlockQuotient(BlockAlgebra source, std::vector<std::size_t> assignment)
    : source_(std::move(source)), assignment_(std::move(assignment)) {
  if (assignment_.empty()) fail(ErrorCode::NotQuotient, "quotient needs at least one image block");
  std::set<std::size_t> seen;
  std::vector<Index> dims;
  for (std::size_t j : assignment_) {
    if (j >= source_.num_blocks()) fail(ErrorCode::NotQuotient, "assignment refers to a missing block");
    if (!seen.insert(j).second) {
      fail(ErrorCode::NotQuotient, "a source block is assigned twice; the map is not onto");
    }
    dims.push_back(source_.dim(j));
  }
  image_ = BlockAlgebra(std::move(dims));
}

BlockOperator BlockQuotient::apply(const BlockOperator& x) const {
  detail::require_same_algebra(source_, x.algebra(), "BlockQuotient::apply");
  std::vector<Matrix> out;
  for (std::size_t j : assignment_) out.push_back(x.block(j));
  return {image_, std::move(out)};
}

Functional pullback_along_quotient(const BlockQuotient& pi, const Functional& phi) {
  detail::require_same_algebra(pi.image(), phi.algebra(), "pullback_along_quotient");
  std::vector<Matrix> out;
  for (Index n : pi.source().dims()) out.push_back(Matrix::Zero(n, n));
  for (std::size_t j = 0; j < pi.assignment().size(); ++j) out[pi.assignment()[j]] = phi.density(j);
  return {pi.source(), std::move(out)};
}

}  // namespace amplitude_lab
