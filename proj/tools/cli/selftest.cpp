// Randomized invariant suite behind `amplitude-lab selftest`. Every case
// draws from its own generator seeded by (seed, check, case), so the report
// is identical for any thread count.

#include <algorithm>
#include <amplitude_lab/amplitude_lab.hpp>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/cli.hpp"

namespace amplitude_lab::cli {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t check, std::size_t index) {
  return splitmix(splitmix(splitmix(seed) ^ check) ^ index);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

struct Context {
  Sampler& rng;
  Index max_dim;
  const Tolerances& tol;

  Index dim(Index cap = 8) { return rng.integer(1, std::min(max_dim, cap)); }

  BlockAlgebra algebra(std::size_t max_blocks = 2, Index cap = 3) {
    std::vector<Index> dims;
    const Index blocks = rng.integer(1, static_cast<Index>(max_blocks));
    for (Index k = 0; k < blocks; ++k) dims.push_back(dim(cap));
    return make_algebra(std::move(dims));
  }

  std::vector<double> simplex(std::size_t n) {
    std::vector<double> w(n);
    double total = 0.0;
    for (double& x : w) total += (x = rng.uniform(0.05, 1.0));
    for (double& x : w) x /= total;
    return w;
  }
};

struct Check {
  const char* name;
  std::size_t cases;
  double tolerance;
  std::function<double(Context&)> run;
};

double psd_sqrt_square(Context& c) {
  const Index n = c.dim();
  const Matrix h = c.rng.density(n, c.rng.integer(1, n));
  const Matrix r = psd_sqrt(h, c.tol);
  return max_abs(r * r - h);
}

double kernel_mean_bridge(Context& c) {
  const BlockAlgebra a = c.algebra();
  const Functional phi = c.rng.state(a, true);
  const Functional psi = c.rng.state(a, true);
  const Matrix mean = geometric_mean(left_form(phi, c.tol), right_form(psi, c.tol), c.tol).gram();
  return max_abs(mean - interpolated_form(phi, psi, 0.5, c.tol).gram());
}

double mean_domination(Context& c) {
  const Index n = c.dim();
  const PositiveForm alpha(c.rng.density(n, c.rng.integer(1, n)), c.tol);
  const PositiveForm beta(c.rng.density(n, c.rng.integer(1, n)), c.tol);
  const PositiveForm ab = geometric_mean(alpha, beta, c.tol);
  const PositiveForm ba = geometric_mean(beta, alpha, c.tol);
  return std::max(-domination_margin(ab, alpha, beta), max_abs(ab.gram() - ba.gram()));
}

double purification_square_law(Context& c) {
  const BlockAlgebra a = make_algebra({c.dim(3)});
  const Functional phi = c.rng.state(a, true);
  const Functional psi = c.rng.state(a, true);
  const double amp = transition_amplitude(phi, psi, c.tol);
  return std::abs(transition_amplitude(purify(phi, c.tol), purify(psi, c.tol), c.tol) - amp * amp);
}

double inequalities(Context& c) {
  const BlockAlgebra a = c.algebra(2, 4);
  const InequalityReport r =
      inequality_suite(c.rng.state(a, true), c.rng.state(a, true), {}, c.tol);
  return std::max(0.0, -r.worst_defect());
}

double kms_gibbs(Context& c) {
  const Index n = std::max<Index>(2, c.dim());
  const BlockAlgebra a = make_algebra({n});
  const Functional phi(a, {c.rng.gibbs(n)}, c.tol);
  const BlockOperator x = c.rng.element(a);
  const BlockOperator y = c.rng.element(a);
  double worst = 0.0;
  for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) worst = std::max(worst, kms_defect(phi, x, y, t, c.tol));
  return worst;
}

double flow_invariance(Context& c) {
  const BlockAlgebra a = c.algebra();
  std::vector<Matrix> d;
  for (Index n : a.dims()) d.push_back(c.rng.psd(n, 0.1, 1.0));
  const Functional phi(a, std::move(d), c.tol);
  const BlockOperator x = c.rng.element(a);
  const double t = c.rng.uniform(-3.0, 3.0);
  return std::abs(evaluate(phi, modular_flow(phi, t, x, c.tol)) - evaluate(phi, x));
}

double restriction_tower(Context& c) {
  const Index n = c.dim(2);
  const UnitalEmbedding inner(make_algebra({n}), make_algebra({2 * n}), {{2}}, {c.rng.unitary(2 * n)}, c.tol);
  const UnitalEmbedding outer(make_algebra({2 * n}), make_algebra({2 * n, 4 * n}), {{1}, {2}},
                              {c.rng.unitary(2 * n), c.rng.unitary(4 * n)}, c.tol);
  const Functional phi = c.rng.state(outer.target(), true);
  const Functional direct = restrict(phi, compose(outer, inner), c.tol);
  const Functional stepwise = restrict(restrict(phi, outer, c.tol), inner, c.tol);
  return max_abs(direct.density(0) - stepwise.density(0));
}

double ucp_monotonicity(Context& c) {
  const Index n = c.dim(3);
  const Index m = n + c.rng.integer(0, 2);
  const Matrix k = c.rng.unitary(m).leftCols(n);
  const UcpMap isometry(make_algebra({m}), make_algebra({n}), {KrausTerm{0, 0, k}}, c.tol);
  const BlockAlgebra target = make_algebra({n});
  const Functional phi = c.rng.state(target, true);
  const Functional psi = c.rng.state(target, true);
  const double before = transition_amplitude(phi, psi, c.tol);
  const double after = transition_amplitude(ucp_pullback(isometry, phi, c.tol), ucp_pullback(isometry, psi, c.tol), c.tol);
  const UcpMap dephase = UcpMap::dephasing(n);
  const double dephased =
      transition_amplitude(ucp_pullback(dephase, phi, c.tol), ucp_pullback(dephase, psi, c.tol), c.tol);
  return std::max({0.0, before - after, before - dephased});
}

double quotient_pullback(Context& c) {
  const Index n = c.dim(3);
  const BlockQuotient pi(make_algebra({2, n, 1}), {1});
  const Functional phi = c.rng.state(pi.image(), true);
  const Functional psi = c.rng.state(pi.image(), true);
  return std::abs(transition_amplitude(pullback_along_quotient(pi, phi), pullback_along_quotient(pi, psi), c.tol) -
                  transition_amplitude(phi, psi, c.tol));
}

double central_invariance(Context& c) {
  const BlockAlgebra a = c.algebra(3, 3);
  const Functional phi = c.rng.state(a, true);
  const Functional psi = c.rng.state(a, true);
  const std::vector<double> mu1 = c.simplex(a.num_blocks());
  const std::vector<double> mu2 = c.simplex(a.num_blocks());
  const AmplitudeSumCheck s1 = amplitude_sum_check(phi, psi, std::span<const double>(mu1), c.tol);
  const AmplitudeSumCheck s2 = amplitude_sum_check(phi, psi, std::span<const double>(mu2), c.tol);
  return std::max({s1.defect, s2.defect, std::abs(s1.rhs - s2.rhs)});
}

double product_chain_monotone(Context& c) {
  const ProductChain pc = build_product_chain(3);
  const Functional phi = c.rng.state(pc.ambient, true);
  const Functional psi = c.rng.state(pc.ambient, true);
  std::vector<double> a = chain_amplitudes(phi, psi, pc.chain, 1, c.tol);
  a.push_back(transition_amplitude(phi, psi, c.tol));
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) worst = std::max(worst, a[i + 1] - a[i]);
  return worst;
}

double quasifree_reduction(Context& c) {
  const Index pairs = c.rng.integer(1, 2);
  const Index extra = c.rng.integer(1, 2);
  const Index d = 2 * pairs + extra;
  RealMatrix sigma = RealMatrix::Zero(d, d);
  sigma.topLeftCorner(2 * pairs, 2 * pairs) = PresymplecticSpace::standard(pairs).sigma();
  auto covariance = [&](bool null_tail) {
    RealMatrix g = RealMatrix::Zero(d, d);
    for (Index i = 0; i < 2 * pairs; ++i) g(i, i) = c.rng.uniform(1.0, 3.0);
    for (Index i = 2 * pairs; i < d; ++i) g(i, i) = (null_tail && i + 1 == d) ? 0.0 : c.rng.uniform(0.0, 1.0);
    return g;
  };
  RealMatrix o(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) o(i, j) = c.rng.normal();
  o = Eigen::HouseholderQR<RealMatrix>(o).householderQ();
  const RealMatrix rs = o.transpose() * sigma * o;
  const PresymplecticSpace space(0.5 * (rs - rs.transpose()), c.tol);
  const CovarianceForm s = CovarianceForm::from_parts(o.transpose() * covariance(true) * o, space.sigma());
  const CovarianceForm t = CovarianceForm::from_parts(o.transpose() * covariance(true) * o, space.sigma());
  const QuasifreeReduction red = reduce(space, s, t, c.tol);
  double worst = (validate_covariance(red.s, red.space, c.tol) && validate_covariance(red.t, red.space, c.tol)) ? 0.0 : 1.0;
  if (red.kernel_dim < 1) worst = 1.0;
  worst = std::max(worst, (red.quotient * red.section - RealMatrix::Identity(red.space.dim(), red.space.dim()))
                              .cwiseAbs()
                              .maxCoeff());
  RealVector x(d);
  for (Index i = 0; i < d; ++i) x(i) = c.rng.normal();
  worst = std::max(worst, std::abs(quasifree_character(s, x) - quasifree_character(red.s, red.quotient * x)));
  return worst;
}

double json_round_trip(Context& c) {
  const BlockAlgebra a = c.algebra(3, 4);
  const Functional phi = c.rng.state(a, true);
  const std::string text = interchange::to_json(phi).dump();
  const Functional back = interchange::functional_from_json(interchange::parse(text), c.tol);
  if (interchange::to_json(back).dump() != text) return 1.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < a.num_blocks(); ++k) worst = std::max(worst, max_abs(back.density(k) - phi.density(k)));
  return worst;
}

std::vector<Check> checks() {
  return {
      {"psd_sqrt_square", 200, 1e-10, psd_sqrt_square},
      {"kernel_mean_bridge", 150, 1e-8, kernel_mean_bridge},
      {"mean_domination_symmetry", 150, 1e-8, mean_domination},
      {"purification_square_law", 150, 1e-9, purification_square_law},
      {"inequality_suite", 150, 1e-9, inequalities},
      {"kms_gibbs", 100, 1e-9, kms_gibbs},
      {"flow_invariance", 150, 1e-9, flow_invariance},
      {"restriction_tower", 100, 1e-12, restriction_tower},
      {"ucp_monotonicity", 150, 1e-9, ucp_monotonicity},
      {"quotient_pullback", 150, 1e-9, quotient_pullback},
      {"central_mu_invariance", 150, 1e-9, central_invariance},
      {"product_chain_monotone", 100, 1e-9, product_chain_monotone},
      {"quasifree_reduction", 100, 1e-10, quasifree_reduction},
      {"json_round_trip", 100, 1e-8, json_round_trip},
  };
}

}  // namespace

int selftest(const RunConfig& config, std::ostream& out) {
  const Index max_dim = config.max_dim.value_or(4);
  const std::vector<Check> suite = checks();
  bool ok = true;
  out << "check,cases,worst_defect,tolerance,status\n";
  for (std::size_t ci = 0; ci < suite.size(); ++ci) {
    const Check& check = suite[ci];
    std::vector<double> defects(check.cases, 0.0);
    parallel_for(check.cases, config.threads, [&](std::size_t i) {
      Sampler rng(case_seed(config.seed, ci, i));
      Context ctx{rng, max_dim, config.tol};
      defects[i] = check.run(ctx);
    });
    double worst = 0.0;
    bool finite = true;
    for (double d : defects) {
      if (!std::isfinite(d)) finite = false;
      worst = std::max(worst, d);
    }
    const bool pass = finite && worst <= check.tolerance;
    ok = ok && pass;
    out << check.name << ',' << check.cases << ',' << format_number(finite ? worst : NAN) << ','
        << format_number(check.tolerance) << ',' << (pass ? "PASS" : "FAIL") << '\n';
  }
  return ok ? 0 : kExitCheckFailed;
}

}  // namespace amplitude_lab::cli
