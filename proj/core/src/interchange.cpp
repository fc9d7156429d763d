#include "amplitude_lab/interchange.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "amplitude_lab/errors.hpp"

namespace amplitude_lab::interchange {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_fail(std::string("expected an object with key '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing key '") + key + "'");
  return *it;
}

double finite_number(const Json& j) {
  if (!j.is_number()) parse_fail("expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail("non-finite number");
  return v;
}

Index positive_index(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    parse_fail(std::string(what) + " must be an integer");
  }
  const auto v = j.get<long long>();
  if (v < 0) parse_fail(std::string(what) + " must be nonnegative");
  return static_cast<Index>(v);
}

Json number(double v) { return Json(round_significant(v)); }

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
  char text[64];
  std::snprintf(text, sizeof text, "%.*g", digits, value);
  return std::strtod(text, nullptr);
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {finite_number(j), 0.0};
  if (j.is_array() && j.size() == 2) return {finite_number(j[0]), finite_number(j[1])};
  parse_fail("complex numbers are [re, im] pairs");
}

Json to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Matrix matrix_from_json(const Json& j, Index rows, Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows * cols) {
    std::ostringstream msg;
    msg << "expected a flat row-major list of " << rows * cols << " entries";
    parse_fail(msg.str());
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[static_cast<std::size_t>(i * cols + c)]);
  return m;
}

RealMatrix real_matrix_from_json(const Json& j, Index rows, Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows * cols) {
    parse_fail("expected a flat row-major list of reals");
  }
  RealMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index c = 0; c < cols; ++c) m(i, c) = finite_number(j[static_cast<std::size_t>(i * cols + c)]);
  return m;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index c = 0; c < m.cols(); ++c) out.push_back(to_json(m(i, c)));
  return out;
}

BlockAlgebra algebra_from_json(const Json& j) {
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array()) parse_fail("'blocks' must be a list");
  std::vector<Index> dims;
  for (const Json& b : blocks) dims.push_back(positive_index(b, "block size"));
  return BlockAlgebra(std::move(dims));
}

Json to_json(const BlockAlgebra& a) {
  Json blocks = Json::array();
  for (Index n : a.dims()) blocks.push_back(n);
  return Json{{"blocks", blocks}};
}

namespace {

std::vector<Matrix> blocks_from_json(const Json& list, const BlockAlgebra& algebra) {
  if (!list.is_array() || list.size() != algebra.num_blocks()) {
    parse_fail("need one matrix per block");
  }
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
    out.push_back(matrix_from_json(list[k], algebra.dim(k), algebra.dim(k)));
  }
  return out;
}

Json blocks_to_json(std::span<const Matrix> blocks) {
  Json out = Json::array();
  for (const Matrix& b : blocks) out.push_back(to_json(b));
  return out;
}

}  // namespace

Functional functional_from_json(const Json& j, const Tolerances& tol) {
  const BlockAlgebra algebra = algebra_from_json(field(j, "algebra"));
  return {algebra, blocks_from_json(field(j, "densities"), algebra), tol};
}

Json to_json(const Functional& phi) {
  return Json{{"algebra", to_json(phi.algebra())}, {"densities", blocks_to_json(phi.blocks())}};
}

BlockOperator operator_from_json(const Json& j) {
  const BlockAlgebra algebra = algebra_from_json(field(j, "algebra"));
  return {algebra, blocks_from_json(field(j, "blocks"), algebra)};
}

Json to_json(const BlockOperator& x) {
  return Json{{"algebra", to_json(x.algebra())}, {"blocks", blocks_to_json(x.blocks())}};
}

HermitianForm hermitian_form_from_json(const Json& j, const Tolerances& tol) {
  const Index d = positive_index(field(j, "dim"), "dim");
  return HermitianForm(matrix_from_json(field(j, "gram"), d, d), tol);
}

PositiveForm positive_form_from_json(const Json& j, const Tolerances& tol) {
  const Index d = positive_index(field(j, "dim"), "dim");
  return PositiveForm(matrix_from_json(field(j, "gram"), d, d), tol);
}

Json to_json(const HermitianForm& form) {
  return Json{{"dim", form.dim()}, {"gram", to_json(form.gram())}};
}

UnitalEmbedding embedding_from_json(const Json& j, const Tolerances& tol) {
  BlockAlgebra source = algebra_from_json(field(j, "source"));
  BlockAlgebra target = algebra_from_json(field(j, "target"));
  const Json& mult = field(j, "multiplicity");
  if (!mult.is_array()) parse_fail("'multiplicity' must be a list of rows");
  std::vector<std::vector<Index>> c;
  for (const Json& row : mult) {
    if (!row.is_array()) parse_fail("'multiplicity' rows must be lists");
    std::vector<Index> r;
    for (const Json& v : row) r.push_back(positive_index(v, "multiplicity"));
    c.push_back(std::move(r));
  }
  std::vector<std::optional<Matrix>> unitaries(target.num_blocks());
  if (j.contains("unitaries")) {
    const Json& us = j["unitaries"];
    if (!us.is_array() || us.size() != target.num_blocks()) {
      parse_fail("'unitaries' needs one entry (matrix or null) per target block");
    }
    for (std::size_t k = 0; k < us.size(); ++k) {
      if (!us[k].is_null()) unitaries[k] = matrix_from_json(us[k], target.dim(k), target.dim(k));
    }
  }
  return {std::move(source), std::move(target), std::move(c), std::move(unitaries), tol};
}

Json to_json(const UnitalEmbedding& iota) {
  Json unitaries = Json::array();
  for (std::size_t k = 0; k < iota.target().num_blocks(); ++k) {
    unitaries.push_back(iota.unitary(k) ? to_json(*iota.unitary(k)) : Json(nullptr));
  }
  return Json{{"source", to_json(iota.source())},
              {"target", to_json(iota.target())},
              {"multiplicity", iota.multiplicities()},
              {"unitaries", unitaries}};
}

SubalgebraChain chain_from_json(const Json& j, const Tolerances& tol) {
  const Json& algebras = field(j, "algebras");
  if (!algebras.is_array()) parse_fail("'algebras' must be a list");
  std::vector<BlockAlgebra> as;
  for (const Json& a : algebras) as.push_back(algebra_from_json(a));
  std::vector<UnitalEmbedding> connecting;
  if (j.contains("connecting")) {
    for (const Json& e : j["connecting"]) connecting.push_back(embedding_from_json(e, tol));
  }
  return {std::move(as), std::move(connecting), embedding_from_json(field(j, "final"), tol)};
}

QuasifreeTriple quasifree_from_json(const Json& j, const Tolerances& tol) {
  const Index d = positive_index(field(j, "dim"), "dim");
  PresymplecticSpace space(real_matrix_from_json(field(j, "sigma"), d, d), tol);
  CovarianceForm s(matrix_from_json(field(j, "S"), d, d), tol);
  CovarianceForm t(matrix_from_json(field(j, "T"), d, d), tol);
  return {std::move(space), std::move(s), std::move(t)};
}

Json to_json(const QuasifreeReduction& red) {
  const Index d = red.space.dim();
  Json sigma = Json::array();
  for (Index i = 0; i < d; ++i)
    for (Index c = 0; c < d; ++c) sigma.push_back(number(red.space.sigma()(i, c)));
  Json quotient = Json::array();
  for (Index i = 0; i < red.quotient.rows(); ++i)
    for (Index c = 0; c < red.quotient.cols(); ++c) quotient.push_back(number(red.quotient(i, c)));
  return Json{{"dim", d},
              {"kernel_dim", red.kernel_dim},
              {"sigma", sigma},
              {"S", to_json(red.s.matrix())},
              {"T", to_json(red.t.matrix())},
              {"quotient", Json{{"rows", red.quotient.rows()}, {"cols", red.quotient.cols()}, {"entries", quotient}}}};
}

}  // namespace amplitude_lab::interchange
