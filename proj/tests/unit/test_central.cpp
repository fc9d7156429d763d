#include "test_util.hpp"

using namespace amplitude_lab;
using namespace testutil;

namespace {

std::vector<double> random_measure(Sampler& rng, std::size_t m) {
  std::vector<double> w(m);
  double s = 0.0;
  for (double& x : w) s += (x = rng.uniform(0.05, 1.0));
  for (double& x : w) x /= s;
  return w;
}

}  // namespace

TEST_CASE("decompose commutative and single-block states") {
  const Functional phi = diagonal_state({0.3, 0.7});
  const std::vector<double> mu{0.5, 0.5};
  const StateDecomposition d = decompose(phi, mu);
  CHECK(d.derivative[0] == doctest::Approx(0.6));
  CHECK(d.derivative[1] == doctest::Approx(1.4));
  CHECK((*d.components[0])(0, 0).real() == doctest::Approx(1.0));

  const Functional single = state1(diag({0.2, 0.8}));
  const StateDecomposition s = decompose(single);
  REQUIRE(s.weights.size() == 1);
  CHECK(s.weights[0] == doctest::Approx(1.0));
  check_close(*s.components[0], single.density(0), 1e-15);
}

TEST_CASE("decompose two qubit blocks") {
  const BlockAlgebra a = make_algebra({2, 2});
  const Matrix r1 = diag({0.4, 0.6}), r2 = ket_plus();
  const Functional phi(a, {0.7 * r1, 0.3 * r2});
  const StateDecomposition d = decompose(phi);
  CHECK(d.weights[0] == doctest::Approx(0.7));
  CHECK(d.weights[1] == doctest::Approx(0.3));
  check_close(*d.components[0], r1, 1e-14);
  check_close(*d.components[1], r2, 1e-14);
  const Functional back = d.reassemble();
  for (std::size_t k = 0; k < 2; ++k) check_close(back.density(k), phi.density(k), 1e-14);
}

TEST_CASE("decompose rejects bad measures") {
  const Functional phi = diagonal_state({0.3, 0.7});
  const std::vector<double> singular{1.0, 0.0}, not_prob{0.5, 0.6}, short_mu{1.0};
  auto code_of = [&](const std::vector<double>& mu) {
    try {
      decompose(phi, mu);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code_of(singular) == ErrorCode::SingularMeasure);
  CHECK(code_of(not_prob) == ErrorCode::DomainError);
  CHECK(code_of(short_mu) != ErrorCode::ParseError);

  // μ may vanish where φ does not live.
  const Functional lopsided = diagonal_state({1.0, 0.0});
  CHECK_NOTHROW(decompose(lopsided, singular));
}

TEST_CASE("amplitude sum formula") {
  const AmplitudeSumCheck c = amplitude_sum_check(diagonal_state({0.9, 0.1}), diagonal_state({0.5, 0.5}));
  CHECK(c.lhs == doctest::Approx(0.894427191));
  CHECK(c.rhs == doctest::Approx(0.894427191));

  const Functional p = state1(diag({0.9, 0.1})), q = state1(ket_plus());
  const AmplitudeSumCheck one = amplitude_sum_check(p, q);
  CHECK(one.rhs == doctest::Approx(transition_amplitude(p, q)));

  const BlockAlgebra a = make_algebra({2, 2});
  const Functional left(a, {diag({0.5, 0.5}), Matrix::Zero(2, 2)});
  const Functional right(a, {Matrix::Zero(2, 2), diag({0.5, 0.5})});
  const AmplitudeSumCheck dis = amplitude_sum_check(left, right);
  CHECK(dis.lhs == 0.0);
  CHECK(dis.rhs == 0.0);
}

TEST_CASE("sum formula is independent of the representing measure") {
  Sampler rng(61);
  const BlockAlgebra a = make_algebra({2, 1, 3});
  for (int i = 0; i < 20; ++i) {
    const Functional phi = rng.state(a, true), psi = rng.state(a, true);
    const AmplitudeSumCheck base = amplitude_sum_check(phi, psi);
    CHECK(base.defect <= 1e-10);
    for (int j = 0; j < 3; ++j) {
      const std::vector<double> mu = random_measure(rng, a.num_blocks());
      const AmplitudeSumCheck c = amplitude_sum_check(phi, psi, mu);
      CHECK(std::abs(c.rhs - base.rhs) <= 1e-10);
    }
  }
}

TEST_CASE("integrating a disjoint family") {
  const Functional q = state1(diag({0.25, 0.75}));
  const std::vector<Functional> one{q};
  const std::vector<double> w1{1.0};
  const IntegratedFamily single = integrate_disjoint_family(one, w1);
  check_close(single.state.density(0), q.density(0), 0.0);

  const std::vector<Functional> two{q, q};
  const std::vector<double> half{0.5, 0.5};
  const IntegratedFamily fam = integrate_disjoint_family(two, half);
  CHECK(fam.algebra == make_algebra({2, 2}));
  check_close(fam.state.density(0), 0.5 * q.density(0), 0.0);
  check_close(fam.state.density(1), 0.5 * q.density(0), 0.0);
}

TEST_CASE("decompose inverts integrate and pieces are disjoint") {
  Sampler rng(62);
  for (int i = 0; i < 10; ++i) {
    const std::vector<Functional> comps{state1(rng.density(2)), state1(rng.density(3)),
                                        state1(rng.density(1))};
    const std::vector<double> w = random_measure(rng, 3);
    const IntegratedFamily fam = integrate_disjoint_family(comps, w);
    const StateDecomposition d = decompose(fam.state, w);
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t k = fam.ranges[c].first;
      check_close(*d.components[k], comps[c].density(0), 1e-12);
      CHECK(d.derivative[k] == doctest::Approx(1.0));
    }
    // Partial integrations over disjoint index sets.
    std::vector<Matrix> head = blocks_of(fam.state), tail = head;
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<Matrix>& drop = k == 0 ? tail : head;
      drop[k].setZero();
    }
    CHECK(classify_pair(Functional(fam.algebra, head), Functional(fam.algebra, tail)) ==
          PairRelation::Disjoint);
  }
}

TEST_CASE("bimodule pairing") {
  Sampler rng(63);
  const BlockAlgebra a = make_algebra({2, 2});
  const Functional phi = rng.state(a), psi = rng.state(a, true);
  const BlockOperator one = BlockOperator::identity(a);
  CHECK(std::abs(bimodule_pairing(phi, psi, one, one) - transition_amplitude(phi, psi)) <= 1e-13);
  // ⟨a φ^{1/2} b ψ^{1/2}⟩ is the amplitude kernel with x = a*.
  const BlockOperator x = rng.element(a), y = rng.element(a);
  CHECK(std::abs(bimodule_pairing(phi, psi, x.adjoint(), y) - amplitude_kernel(psi, phi, x, y)) <= 1e-12);
}
