#include "amplitude_lab/central.hpp"

#include <cmath>
#include <numeric>

#include "amplitude_lab/amplitudes.hpp"
#include "amplitude_lab/errors.hpp"

namespace amplitude_lab {

namespace {

std::vector<double> block_masses(const Functional& phi) {
  std::vector<double> m;
  for (const Matrix& d : phi.blocks()) m.push_back(std::max(0.0, d.trace().real()));
  return m;
}

void require_measure(std::span<const double> mu, std::size_t blocks, const Tolerances& tol) {
  if (mu.size() != blocks) fail(ErrorCode::ShapeError, "measure needs one weight per block");
  double total = 0.0;
  for (double w : mu) {
    if (!std::isfinite(w) || w < 0.0) fail(ErrorCode::DomainError, "weights must be finite and >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > tol.num * static_cast<double>(blocks + 1)) {
    fail(ErrorCode::DomainError, "weights must sum to 1");
  }
}

double mass_cut(const Tolerances& tol) { return tol.psd_cut(0.0); }

}  // namespace

Functional StateDecomposition::reassemble() const {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const Index n = algebra.dim(k);
    if (components[k]) {
      out.push_back(weights[k] * derivative[k] * (*components[k]));
    } else {
      out.push_back(Matrix::Zero(n, n));
    }
  }
  return {algebra, std::move(out)};
}

std::vector<double> central_weights(const Functional& phi, const Tolerances& tol) {
  phi.require_positive(tol);
  std::vector<double> m = block_masses(phi);
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  if (total <= mass_cut(tol)) fail(ErrorCode::SingularMeasure, "functional has no mass");
  for (double& v : m) v /= total;
  return m;
}

std::vector<double> default_measure(const Functional& phi, const Functional& psi,
                                    const Tolerances& tol) {
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "default_measure");
  return central_weights(0.5 * (phi + psi), tol);
}

StateDecomposition decompose(const Functional& phi, std::optional<std::span<const double>> weights,
                             const Tolerances& tol) {
  phi.require_positive(tol);
  StateDecomposition dec;
  dec.algebra = phi.algebra();
  if (weights) {
    require_measure(*weights, phi.num_blocks(), tol);
    dec.weights.assign(weights->begin(), weights->end());
  } else {
    dec.weights = central_weights(phi, tol);
  }
  const std::vector<double> masses = block_masses(phi);
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    const bool lives = masses[k] > mass_cut(tol);
    if (!lives) {
      dec.derivative.push_back(0.0);
      dec.components.emplace_back(std::nullopt);
      continue;
    }
    if (dec.weights[k] <= 0.0) {
      fail(ErrorCode::SingularMeasure, "measure vanishes on a block carrying the state");
    }
    dec.derivative.push_back(masses[k] / dec.weights[k]);
    dec.components.emplace_back(phi.density(k) / masses[k]);
  }
  return dec;
}

AmplitudeSumCheck amplitude_sum_check(const Functional& phi, const Functional& psi,
                                      std::optional<std::span<const double>> weights,
                                      const Tolerances& tol) {
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "amplitude_sum_check");
  std::vector<double> mu;
  if (weights) {
    mu.assign(weights->begin(), weights->end());
  } else {
    mu = default_measure(phi, psi, tol);
  }
  const StateDecomposition dp = decompose(phi, mu, tol);
  const StateDecomposition dq = decompose(psi, mu, tol);

  AmplitudeSumCheck check;
  check.lhs = transition_amplitude(phi, psi, tol);
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    double component = 0.0;
    if (dp.components[k] && dq.components[k]) {
      const BlockAlgebra block({phi.algebra().dim(k)});
      component = transition_amplitude(Functional(block, {*dp.components[k]}, tol),
                                       Functional(block, {*dq.components[k]}, tol), tol);
      check.rhs += mu[k] * std::sqrt(dp.derivative[k] * dq.derivative[k]) * component;
    }
    check.component_amplitudes.push_back(component);
  }
  check.defect = std::abs(check.lhs - check.rhs);
  return check;
}

IntegratedFamily integrate_disjoint_family(std::span<const Functional> components,
                                           std::span<const double> weights,
                                           const Tolerances& tol) {
  if (components.empty()) fail(ErrorCode::DomainError, "family needs at least one component");
  require_measure(weights, components.size(), tol);
  std::vector<Index> dims;
  std::vector<Matrix> densities;
  IntegratedFamily fam;
  for (std::size_t c = 0; c < components.size(); ++c) {
    components[c].require_positive(tol);
    const std::size_t first = dims.size();
    for (std::size_t k = 0; k < components[c].num_blocks(); ++k) {
      dims.push_back(components[c].algebra().dim(k));
      densities.push_back(weights[c] * components[c].density(k));
    }
    fam.ranges.emplace_back(first, dims.size());
  }
  fam.algebra = BlockAlgebra(std::move(dims));
  fam.state = Functional(fam.algebra, std::move(densities), tol);
  return fam;
}

Complex bimodule_pairing(const Functional& phi, const Functional& psi, const BlockOperator& a,
                         const BlockOperator& b, const Tolerances& tol) {
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "bimodule_pairing");
  detail::require_same_algebra(phi.algebra(), a.algebra(), "bimodule_pairing");
  detail::require_same_algebra(phi.algebra(), b.algebra(), "bimodule_pairing");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < phi.num_blocks(); ++k) {
    sum += (a.block(k) * psd_sqrt(phi.density(k), tol) * b.block(k) * psd_sqrt(psi.density(k), tol)).trace();
  }
  return sum;
}

}  // namespace amplitude_lab
