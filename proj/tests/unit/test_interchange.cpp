#include "test_util.hpp"

using namespace amplitude_lab;
using namespace testutil;
namespace ix = amplitude_lab::interchange;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    ix::functional_from_json(ix::parse(text));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidAlgebra;
}

}  // namespace

TEST_CASE("functional parsing is row-major") {
  const Functional phi = ix::functional_from_json(ix::parse(
      R"({"algebra":{"blocks":[2]},"densities":[[[0.5,0],[0,0.25],[0,-0.25],[0.5,0]]]})"));
  CHECK(phi.density(0)(0, 1) == Complex(0, 0.25));
  CHECK(phi.density(0)(1, 0) == Complex(0, -0.25));

  const Functional bare = ix::functional_from_json(ix::parse(
      R"({"algebra":{"blocks":[1,1]},"densities":[[0.3],[0.7]]})"));
  CHECK(bare.density(1)(0, 0).real() == 0.7);
}

TEST_CASE("malformed input raises ParseError") {
  CHECK(parse_code("{") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"algebra":{"blocks":[2]}})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"algebra":{"blocks":[2]},"densities":[[1,0,0]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"algebra":{"blocks":[2]},"densities":[[1,0,0,"x"]]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"algebra":{"blocks":[-1]},"densities":[]})") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"algebra":{"blocks":[2]},"densities":[[1,2,0,0]]})") == ErrorCode::NotPositive);
  CHECK_THROWS_AS(ix::load_file("/nonexistent/file.json"), Error);
}

TEST_CASE("round trips") {
  Sampler rng(81);
  const BlockAlgebra a = make_algebra({2, 3});
  const Functional phi = rng.state(a);
  const ix::Json j = ix::to_json(phi);
  const Functional back = ix::functional_from_json(ix::parse(j.dump()));
  for (std::size_t k = 0; k < 2; ++k) check_close(back.density(k), phi.density(k), 1e-8);
  CHECK(ix::to_json(back) == j);

  const BlockOperator x = rng.element(a);
  const BlockOperator xb = ix::operator_from_json(ix::to_json(x));
  check_close(xb.block(1), x.block(1), 1e-8);

  const PositiveForm f(diag({1, 2}));
  CHECK(ix::to_json(ix::positive_form_from_json(ix::to_json(f))) == ix::to_json(f));

  const UnitalEmbedding iota(make_algebra({1, 2}), make_algebra({2, 5}), {{2, 0}, {1, 2}},
                             {std::nullopt, rng.unitary(5)});
  const ix::Json ej = ix::to_json(iota);
  const UnitalEmbedding ib = ix::embedding_from_json(ix::parse(ej.dump()));
  CHECK(ib.multiplicities() == iota.multiplicities());
  CHECK_FALSE(ib.unitary(0).has_value());
  CHECK(ix::to_json(ib) == ej);
}

TEST_CASE("significant digit rounding") {
  CHECK(ix::round_significant(0.70710678118654757) == 0.707106781);
  CHECK(ix::round_significant(123456789012.0) == 123456789000.0);
  CHECK(ix::round_significant(0.0) == 0.0);
  CHECK(ix::round_significant(-0.0) == 0.0);
}

TEST_CASE("chain and quasifree inputs") {
  const ix::Json chain = ix::parse(R"({
    "algebras": [{"blocks":[1]}, {"blocks":[2]}],
    "connecting": [{"source":{"blocks":[1]},"target":{"blocks":[2]},"multiplicity":[[2]]}],
    "final": {"source":{"blocks":[2]},"target":{"blocks":[4]},"multiplicity":[[2]]}
  })");
  const SubalgebraChain c = ix::chain_from_json(chain);
  CHECK(c.size() == 2);
  CHECK(c.ambient() == make_algebra({4}));

  const ix::QuasifreeTriple q = ix::quasifree_from_json(ix::parse(R"({
    "dim": 2, "sigma": [0, 1, -1, 0],
    "S": [[0.5,0],[0,0.5],[0,-0.5],[0.5,0]], "T": [[0.5,0],[0,0.5],[0,-0.5],[0.5,0]]
  })"));
  CHECK(validate_covariance(q.s, q.space));
  const ix::Json out = ix::to_json(reduce(q.space, q.s, q.t));
  CHECK(out["kernel_dim"] == 0);
}
