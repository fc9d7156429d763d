// Acceptance run: one line per criterion, PASS or FAIL with the measured
// worst case next to its bound. Exit status is the number of failures.

#include <amplitude_lab/amplitude_lab.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

#if AMPLITUDE_LAB_HAVE_CLI
#include "cli/cli.hpp"
#endif

using namespace amplitude_lab;

namespace {

/// Collects "label worst<=bound" clauses; the criterion passes when all do.
class Verdict {
 public:
  // Records a quantity that must stay at or below `bound`.
  void at_most(const std::string& label, double worst, double bound) {
    const bool ok = std::isfinite(worst) && worst <= bound;
    pass_ = pass_ && ok;
    note(label, worst, "<=", bound, ok);
  }
  // Records a quantity that must stay at or above `bound`.
  void at_least(const std::string& label, double worst, double bound) {
    const bool ok = std::isfinite(worst) && worst >= bound;
    pass_ = pass_ && ok;
    note(label, worst, ">=", bound, ok);
  }
  void require(const std::string& label, bool ok) {
    pass_ = pass_ && ok;
    parts_.push_back(label + (ok ? " ok" : " FAILED"));
  }

  bool pass() const { return pass_; }
  std::string summary() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "; " : "") + parts_[i];
    return s;
  }

 private:
  void note(const std::string& label, double v, const char* rel, double bound, bool ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3g %s %.0e%s", label.c_str(), v, rel, bound, ok ? "" : " (violated)");
    parts_.emplace_back(buf);
  }

  bool pass_ = true;
  std::vector<std::string> parts_;
};

std::vector<oracle::Matrix> densities(const Functional& phi) {
  std::vector<oracle::Matrix> out;
  for (std::size_t k = 0; k < phi.algebra().num_blocks(); ++k) out.push_back(phi.density(k));
  return out;
}

Functional single(const Matrix& d) { return Functional(make_algebra({d.rows()}), {d}); }

Matrix diagonal(std::initializer_list<double> v) {
  RealVector d(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

PositiveForm random_form(Sampler& rng, Index d, Index rank) {
  const Matrix x = rng.ginibre(d, rank);
  const Matrix g = x * x.adjoint();
  return PositiveForm(g / g.trace().real());
}

// 1. Gram of the amplitude kernel against the geometric mean of the left and
// right forms.
Verdict bridge() {
  Verdict v;
  Sampler rng(1001);
  const std::vector<BlockAlgebra> algebras{make_algebra({2}), make_algebra({3}), make_algebra({2, 2})};
  double worst = 0.0;
  int pairs = 0;
  for (const BlockAlgebra& a : algebras) {
    const Index d = a.element_dimension();
    for (int i = 0; i < 80; ++i, ++pairs) {
      const bool deficient = i % 2 == 1;
      const Functional phi = rng.state(a, deficient), psi = rng.state(a, deficient);
      Matrix kernel(d, d);
      for (Index x = 0; x < d; ++x)
        for (Index y = 0; y < d; ++y)
          kernel(x, y) = amplitude_kernel(phi, psi, BlockOperator::unit(a, x), BlockOperator::unit(a, y));
      const Matrix mean = geometric_mean(left_form(phi), right_form(psi)).gram();
      worst = std::max(worst, oracle::max_abs(kernel - mean));
    }
  }
  v.require(std::to_string(pairs) + " pairs", pairs >= 200);
  v.at_most("max|kernel - mean|", worst, 1e-8);
  return v;
}

// 2. Kubo–Ando oracle, commuting pairs and the domination bound.
Verdict mean_oracle() {
  Verdict v;
  Sampler rng(1002);
  double sharp = 0.0, commuting = 0.0;
  for (int i = 0; i < 240; ++i) {
    const Index d = rng.integer(1, 8);
    const Matrix a = rng.psd(d, 0.05, 2.0), b = rng.psd(d, 0.05, 2.0);
    const Matrix m = geometric_mean(PositiveForm(a), PositiveForm(b)).gram();
    sharp = std::max(sharp, oracle::max_abs(m - oracle::sharp(a, b)));
  }
  for (int i = 0; i < 100; ++i) {
    const Index d = rng.integer(1, 8);
    RealVector p(d), q(d);
    for (Index j = 0; j < d; ++j) {
      p(j) = rng.uniform(0.0, 3.0);
      q(j) = j % 3 == 0 ? 0.0 : rng.uniform(0.0, 3.0);
    }
    const Matrix m = geometric_mean(PositiveForm(Matrix(p.cast<Complex>().asDiagonal())),
                                    PositiveForm(Matrix(q.cast<Complex>().asDiagonal())))
                         .gram();
    const Matrix root = p.cwiseProduct(q).cwiseSqrt().cast<Complex>().asDiagonal();
    commuting = std::max(commuting, oracle::max_abs(m - root));
  }
  double lowest = 0.0;
  int certified = 0;
  // Candidates whose certificate never reaches exactly ≥ 0 are discarded
  // (rank-deficient pairs can keep a −1e-17 eigenvalue); sampling continues
  // until enough pass.
  for (int i = 0; certified < 1000 && i < 20000; ++i) {
    const Index d = rng.integer(1, 6);
    const PositiveForm a = random_form(rng, d, i % 2 ? d : rng.integer(1, d));
    const PositiveForm b = random_form(rng, d, i % 2 ? d : rng.integer(1, d));
    Matrix k = rng.ginibre(d, d);
    k /= Eigen::JacobiSVD<Matrix>(k).singularValues()(0);
    Matrix g = oracle::herm(oracle::sqrtm(a.gram()) * k * oracle::sqrtm(b.gram()));
    for (int h = 0; h < 60 && domination_margin(HermitianForm(g), a, b) < 0.0; ++h) g *= 0.5;
    if (domination_margin(HermitianForm(g), a, b) < 0.0) continue;
    ++certified;
    const Matrix gap = geometric_mean(a, b).gram() - g;
    lowest = std::min(lowest, Eigen::SelfAdjointEigenSolver<Matrix>(oracle::herm(gap)).eigenvalues().minCoeff());
  }
  v.at_most("max|mean - A#B| (240 pairs)", sharp, 1e-8);
  v.at_most("commuting max|mean - sqrt(pq)|", commuting, 1e-8);
  v.require(std::to_string(certified) + " certified forms", certified >= 1000);
  v.at_least("min eig(mean - gamma)", lowest, -1e-9);
  return v;
}

// 3. Purification square law.
Verdict square_law() {
  Verdict v;
  Sampler rng(1003);
  double worst = 0.0;
  for (int i = 0; i < 120; ++i) {
    const Index n = 2 + i % 2;
    const BlockAlgebra a = make_algebra({n});
    const Functional phi = rng.state(a, i % 3 == 0), psi = rng.state(a, i % 4 == 0);
    const double amp = oracle::amplitude(densities(phi), densities(psi));
    worst = std::max(worst, std::abs(transition_amplitude(purify(phi), purify(psi)) - amp * amp));
  }
  const double worked = transition_amplitude(purify(single(diagonal({0.75, 0.25}))), purify(single(diagonal({0.5, 0.5}))));
  v.at_most("120 pairs max|amp(P,Q) - amp^2|", worst, 1e-9);
  v.at_most("|worked - (2+sqrt3)/4|", std::abs(worked - (2.0 + std::sqrt(3.0)) / 4.0), 1e-7);
  return v;
}

// 4. Powers–Størmer chain, fidelity sandwich and concavity.
Verdict inequalities() {
  Verdict v;
  Sampler rng(1004);
  double library = 0.0, sandwich = 0.0;
  for (int i = 0; i < 1000; ++i) {
    BlockAlgebra a = make_algebra({rng.integer(1, 16)});
    if (i % 4 == 3) a = make_algebra({rng.integer(1, 4), rng.integer(1, 4)});
    const Functional phi = rng.state(a, i % 2 == 0), psi = rng.state(a, i % 3 == 0);
    library = std::max(library, -inequality_suite(phi, psi).worst_defect());
    const double amp = oracle::amplitude(densities(phi), densities(psi));
    const double fid = oracle::fidelity(densities(phi), densities(psi));
    sandwich = std::max({sandwich, amp * amp - fid, fid - amp});
  }
  const InequalityReport r = inequality_suite(single(diagonal({0.9, 0.1})), single(diagonal({0.5, 0.5})));
  const double worked = std::max({std::abs(r.root_distance_sq - 0.21115), std::abs(r.norm_distance - 0.8),
                                  std::abs(r.root_product_bound - 0.89443)});
  v.at_most("1000 pairs worst violation", std::max(library, 0.0), 1e-9);
  v.at_most("oracle sandwich violation", std::max(sandwich, 0.0), 1e-9);
  v.at_most("worked chain deviation", worked, 1e-5);
  v.require("worked chain ordered", r.root_distance_sq <= r.norm_distance && r.norm_distance <= r.root_product_bound);
  return v;
}

// 5. Monotone chains.
Verdict chains() {
  Verdict v;
  const ProductChain pc = build_product_chain(8);
  Matrix zero = Matrix::Zero(2, 2), mixed = 0.5 * Matrix::Identity(2, 2);
  zero(0, 0) = 1.0;
  const std::vector<Matrix> za(8, zero), mb(8, mixed);
  const std::vector<double> a = chain_amplitudes(product_state(za), product_state(mb), pc.chain);
  double product = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n)
    product = std::max(product, std::abs(a[n] - std::pow(2.0, -static_cast<double>(n + 1) / 2.0)));
  v.at_most("N=8 max|a_n - 2^(-n/2)|", product, 1e-9);

  // Random entangled states on four qubits (the ambient M_16).
  Sampler rng(1005);
  const ProductChain small = build_product_chain(4);
  double rise = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Functional phi = rng.state(small.ambient, i % 2 == 0), psi = rng.state(small.ambient, i % 3 == 0);
    std::vector<double> s = chain_amplitudes(phi, psi, small.chain);
    s.push_back(oracle::amplitude(densities(phi), densities(psi)));
    for (std::size_t n = 0; n + 1 < s.size(); ++n) rise = std::max(rise, s[n + 1] - s[n]);
  }
  v.at_most("100 entangled max(a_{n+1} - a_n)", std::max(rise, 0.0), 1e-9);

  const double lambda = 0.5, mu = 0.25;
  const int atoms = 200;
  std::vector<double> p(atoms), q(atoms);
  for (int k = 0; k < atoms; ++k) {
    const bool last = k + 1 == atoms;
    p[k] = last ? std::pow(lambda, k) : (1 - lambda) * std::pow(lambda, k);
    q[k] = last ? std::pow(mu, k) : (1 - mu) * std::pow(mu, k);
  }
  const LumpedChain lc = build_lumped_diagonal_chain(p, q);
  const std::vector<double> l = chain_amplitudes(lc.phi, lc.psi, lc.chain);
  v.at_most("N=200 |a_N - thermal|", std::abs(l.back() - thermal_amplitude(lambda, mu)), 1e-6);
  v.at_most("thermal closed form vs series",
            std::abs(thermal_amplitude(lambda, mu) - oracle::thermal_series(lambda, mu, 400)), 1e-12);
  return v;
}

// Independent KMS boundary value: Tr(D x D^{it} D y D^{-1} D^{-it}) against
// Tr(D D^{it} y D^{-it} x), through Eigen's eigensolver.
double oracle_kms(const Matrix& d, const Matrix& x, const Matrix& y, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(oracle::herm(d));
  const Matrix& u = es.eigenvectors();
  const RealVector& e = es.eigenvalues();
  auto fn = [&](auto f) {
    Eigen::VectorXcd v(e.size());
    for (Index i = 0; i < e.size(); ++i) v(i) = f(e(i));
    return Matrix(u * v.asDiagonal() * u.adjoint());
  };
  const Matrix dit = fn([t](double l) { return std::exp(Complex(0, t * std::log(l))); });
  const Matrix dmit = dit.adjoint();
  const Matrix dinv = fn([](double l) { return Complex(1.0 / l); });
  const Complex lhs = (d * x * dit * d * y * dinv * dmit).trace();
  const Complex rhs = (d * dit * y * dmit * x).trace();
  return std::abs(lhs - rhs);
}

// 6. KMS exactness for Gibbs states and a rotated counterexample.
Verdict kms() {
  Verdict v;
  Sampler rng(1006);
  double worst = 0.0, oracle_worst = 0.0;
  for (Index n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const Matrix g = rng.gibbs(n);
      const Functional phi = single(g);
      const BlockOperator x = rng.element(phi.algebra()), y = rng.element(phi.algebra());
      for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        worst = std::max(worst, kms_defect(phi, x, y, t));
        oracle_worst = std::max(oracle_worst, oracle_kms(g, x.block(0), y.block(0), t));
      }
    }
  }
  v.at_most("Gibbs M2..M8 defect", worst, 1e-9);
  v.at_most("oracle defect", oracle_worst, 1e-9);

  const Functional flow = single(diagonal({0.8, 0.2}));
  const Matrix u = (Matrix(2, 2) << 1.0, 1.0, -1.0, 1.0).finished() / std::sqrt(2.0);
  const Functional omega = single(u * diagonal({0.8, 0.2}) * u.adjoint());
  const BlockOperator x(flow.algebra(), {(Matrix(2, 2) << 0.0, 1.0, 0.0, 0.0).finished()});
  const BlockOperator y(flow.algebra(), {(Matrix(2, 2) << 0.0, 0.0, 1.0, 0.0).finished()});
  v.at_least("rotated counterexample", kms_defect(omega, flow, x, y, 0.0), 1e-3);
  return v;
}

// 7. Central decomposition sum formula and μ-invariance.
Verdict central() {
  Verdict v;
  Sampler rng(1007);
  double defect = 0.0, spread = 0.0, against_oracle = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<Index> dims;
    for (Index k = 0, b = rng.integer(2, 4); k < b; ++k) dims.push_back(rng.integer(1, 3));
    const BlockAlgebra a = make_algebra(dims);
    const Functional phi = rng.state(a, i % 2 == 0), psi = rng.state(a, i % 3 == 0);
    const double exact = oracle::amplitude(densities(phi), densities(psi));
    double lo = INFINITY, hi = -INFINITY;
    for (int m = 0; m < 5; ++m) {
      std::vector<double> mu(a.num_blocks());
      double total = 0.0;
      for (double& w : mu) total += (w = rng.uniform(0.05, 1.0));
      for (double& w : mu) w /= total;
      const AmplitudeSumCheck c = amplitude_sum_check(phi, psi, std::span<const double>(mu));
      defect = std::max(defect, c.defect);
      against_oracle = std::max(against_oracle, std::abs(c.rhs - exact));
      lo = std::min(lo, c.rhs);
      hi = std::max(hi, c.rhs);
    }
    spread = std::max(spread, hi - lo);
  }
  v.at_most("sum-formula defect", defect, 1e-9);
  v.at_most("rhs spread over 5 measures", spread, 1e-9);
  v.at_most("rhs vs oracle amplitude", against_oracle, 1e-9);
  return v;
}

// 8. Quotient pullback and UCP monotonicity.
Verdict quotient_and_ucp() {
  Verdict v;
  Sampler rng(1008);
  double pullback = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Index n = rng.integer(1, 4);
    const BlockQuotient pi(make_algebra({rng.integer(1, 3), n, rng.integer(1, 3), n}),
                           i % 2 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{3, 1});
    const Functional phi = rng.state(pi.image(), i % 2 == 0), psi = rng.state(pi.image(), i % 3 == 0);
    const double up = transition_amplitude(pullback_along_quotient(pi, phi), pullback_along_quotient(pi, psi));
    pullback = std::max(pullback, std::abs(up - oracle::amplitude(densities(phi), densities(psi))));
  }
  v.at_most("200 quotients max|defect|", pullback, 1e-9);

  double drop = 0.0;
  for (int i = 0; i < 200; ++i) {
    // Kraus operators K_j (n × m) stacked into an isometry, so Σ K_j* K_j = 1_m.
    const Index m = rng.integer(1, 3);
    const Index n = rng.integer(1, 3);
    const Index r = (m + n - 1) / n + rng.integer(0, 1);
    const Matrix iso = rng.unitary(n * r).leftCols(m);
    std::vector<KrausTerm> terms;
    for (Index j = 0; j < r; ++j) terms.push_back({0, 0, iso.middleRows(j * n, n)});
    const UcpMap map(make_algebra({n}), make_algebra({m}), terms);
    const Functional phi = rng.state(map.target(), i % 2 == 0), psi = rng.state(map.target(), i % 3 == 0);
    const Functional pphi = ucp_pullback(map, phi), ppsi = ucp_pullback(map, psi);
    const double before = oracle::amplitude(densities(phi), densities(psi));
    const double after = oracle::amplitude(densities(pphi), densities(ppsi));
    drop = std::max(drop, before - after);
  }
  v.at_most("200 UCP maps max(before - after)", std::max(drop, 0.0), 1e-9);
  return v;
}

// 9. Self-test reproducibility.
Verdict determinism() {
  Verdict v;
#if AMPLITUDE_LAB_HAVE_CLI
  std::string runs[3];
  const unsigned threads[3] = {1, 1, 4};
  for (int i = 0; i < 3; ++i) {
    cli::RunConfig cfg;
    cfg.seed = 7;
    cfg.threads = threads[i];
    std::ostringstream out;
    cli::selftest(cfg, out);
    runs[i] = out.str();
  }
  v.require("two runs byte-identical", !runs[0].empty() && runs[0] == runs[1]);
  v.require("identical across thread counts", runs[0] == runs[2]);
#else
  v.require("CLI not built", false);
#endif
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"1 kernel/mean bridge", bridge},
      {"2 geometric-mean oracle", mean_oracle},
      {"3 purification square law", square_law},
      {"4 inequality suites", inequalities},
      {"5 monotone chains", chains},
      {"6 KMS exactness", kms},
      {"7 central decomposition", central},
      {"8 quotient pullback and UCP monotonicity", quotient_and_ucp},
      {"9 selftest determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.require(std::string("threw: ") + e.what(), false);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += v.pass() ? 0 : 1;
    std::printf("%s criterion %s: %s [%.2fs]\n", v.pass() ? "PASS" : "FAIL", name, v.summary().c_str(), secs);
  }
  std::fflush(stdout);
  return failures;
}
