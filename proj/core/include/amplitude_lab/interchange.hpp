#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "amplitude_lab/algebra.hpp"
#include "amplitude_lab/forms.hpp"
#include "amplitude_lab/quasifree.hpp"
#include "amplitude_lab/restriction.hpp"

// JSON dialect shared by every front end. See docs/interchange.md.
//
//   complex     [re, im]  (a bare number is read as a real value)
//   matrix      flat list of complex entries, row-major
//   algebra     {"blocks": [n_1, ...]}
//   functional  {"algebra": <algebra>, "densities": [<matrix>, ...]}
//   operator    {"algebra": <algebra>, "blocks": [<matrix>, ...]}
//   form        {"dim": d, "gram": <matrix>}
//   embedding   {"source": <algebra>, "target": <algebra>,
//                "multiplicity": [[c_kl, ...], ...],
//                "unitaries": [<matrix> | null, ...]}        (optional)
//   chain       {"algebras": [<algebra>, ...],
//                "connecting": [<embedding>, ...], "final": <embedding>}
//   quasifree   {"dim": d, "sigma": [reals, row-major], "S": <matrix>, "T": <matrix>}
//
// Parsers reject NaN and infinities with ParseError.

namespace amplitude_lab::interchange {

using Json = nlohmann::json;

Json parse(const std::string& text);
Json load_file(const std::string& path);

/// Rounds to `digits` significant digits (%.{digits}g round trip).
double round_significant(double value, int digits = 9);

Complex complex_from_json(const Json& j);
Json to_json(Complex z);

Matrix matrix_from_json(const Json& j, Index rows, Index cols);
RealMatrix real_matrix_from_json(const Json& j, Index rows, Index cols);
Json to_json(const Matrix& m);

BlockAlgebra algebra_from_json(const Json& j);
Json to_json(const BlockAlgebra& a);

Functional functional_from_json(const Json& j, const Tolerances& tol = {});
Json to_json(const Functional& phi);

BlockOperator operator_from_json(const Json& j);
Json to_json(const BlockOperator& x);

HermitianForm hermitian_form_from_json(const Json& j, const Tolerances& tol = {});
PositiveForm positive_form_from_json(const Json& j, const Tolerances& tol = {});
Json to_json(const HermitianForm& form);

UnitalEmbedding embedding_from_json(const Json& j, const Tolerances& tol = {});
Json to_json(const UnitalEmbedding& iota);

SubalgebraChain chain_from_json(const Json& j, const Tolerances& tol = {});

struct QuasifreeTriple {
  PresymplecticSpace space;
  CovarianceForm s;
  CovarianceForm t;
};

QuasifreeTriple quasifree_from_json(const Json& j, const Tolerances& tol = {});
Json to_json(const QuasifreeReduction& red);

}  // namespace amplitude_lab::interchange
