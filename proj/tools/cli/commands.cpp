#include "cli/commands.hpp"

#include <amplitude_lab/amplitude_lab.hpp>
#include <cmath>
#include <ostream>

namespace amplitude_lab::cli {

namespace ix = interchange;
using Json = ix::Json;

namespace {

void check_size(const RunConfig& cfg, const BlockAlgebra& a) {
  if (!cfg.max_dim) return;
  for (Index n : a.dims()) {
    if (n > *cfg.max_dim) {
      fail(ErrorCode::TooLarge, "block of size " + std::to_string(n) + " exceeds --max-dim " +
                                    std::to_string(*cfg.max_dim));
    }
  }
}

Functional load_state(const RunConfig& cfg, const std::string& path) {
  Functional phi = ix::functional_from_json(ix::load_file(path), cfg.tol);
  check_size(cfg, phi.algebra());
  phi.require_positive(cfg.tol);
  return phi;
}

void require_pair(const Functional& phi, const Functional& psi) {
  detail::require_same_algebra(phi.algebra(), psi.algebra(), "input pair");
}

Json num(double v) { return Json(ix::round_significant(v)); }

void print_json(const Json& j, std::ostream& out) { out << j.dump() << '\n'; }

/// Scalar results: a JSON object, or a header row plus one value row.
void emit_scalars(const RunConfig& cfg, const std::vector<std::pair<std::string, double>>& fields,
                  std::ostream& out) {
  if (cfg.csv) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << format_number(fields[i].second);
    out << '\n';
    return;
  }
  Json j = Json::object();
  for (const auto& [k, v] : fields) j[k] = num(v);
  print_json(j, out);
}

void emit_matrix_rows(const std::string& name, const Matrix& m, std::ostream& out) {
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      out << name << ',' << r << ',' << c << ',' << format_number(m(r, c).real()) << ','
          << format_number(m(r, c).imag()) << '\n';
    }
}

Matrix site_density(const std::string& name) {
  Matrix d = Matrix::Zero(2, 2);
  if (name == "pure0") {
    d(0, 0) = 1.0;
  } else if (name == "pure1") {
    d(1, 1) = 1.0;
  } else if (name == "plus") {
    d.setConstant(0.5);
  } else if (name == "mixed") {
    d(0, 0) = d(1, 1) = 0.5;
  } else {
    fail(ErrorCode::ParseError, "unknown site state '" + name + "' (pure0, pure1, plus, mixed)");
  }
  return d;
}

/// Geometric law (1−λ)λᵏ on k = 0..N−2 with the remaining mass on the last
/// atom, so each lumped value equals that of the untruncated distribution.
std::vector<double> folded_geometric(double lambda, Index atoms) {
  if (!(lambda >= 0.0 && lambda < 1.0)) fail(ErrorCode::DomainError, "geometric parameter must lie in [0, 1)");
  std::vector<double> p(static_cast<std::size_t>(atoms));
  for (Index k = 0; k + 1 < atoms; ++k) {
    p[static_cast<std::size_t>(k)] = (1.0 - lambda) * std::pow(lambda, static_cast<double>(k));
  }
  p.back() = std::pow(lambda, static_cast<double>(atoms - 1));
  return p;
}

void emit_chain(const std::vector<double>& a, double ambient, std::ostream& out) {
  out << "n,a_n,defect\n";
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double next = n + 1 < a.size() ? a[n + 1] : ambient;
    out << n + 1 << ',' << format_number(a[n]) << ',' << format_number(a[n] - next) << '\n';
  }
}

}  // namespace

void cmd_amp(const RunConfig& cfg, const std::string& phi_path, const std::string& psi_path,
             std::ostream& out) {
  const Functional phi = load_state(cfg, phi_path), psi = load_state(cfg, psi_path);
  require_pair(phi, psi);
  emit_scalars(cfg, {{"amplitude", transition_amplitude(phi, psi, cfg.tol)}}, out);
}

void cmd_fidelity(const RunConfig& cfg, const std::string& phi_path, const std::string& psi_path,
                  std::ostream& out) {
  const Functional phi = load_state(cfg, phi_path), psi = load_state(cfg, psi_path);
  require_pair(phi, psi);
  emit_scalars(cfg, {{"fidelity", uhlmann_fidelity(phi, psi, cfg.tol)}}, out);
}

void cmd_gmean(const RunConfig& cfg, const std::string& alpha_path, const std::string& beta_path,
               std::ostream& out) {
  const PositiveForm alpha = ix::positive_form_from_json(ix::load_file(alpha_path), cfg.tol);
  const PositiveForm beta = ix::positive_form_from_json(ix::load_file(beta_path), cfg.tol);
  if (cfg.max_dim && alpha.dim() > *cfg.max_dim) fail(ErrorCode::TooLarge, "form dimension exceeds --max-dim");
  const PWRepresentation pw = pw_representation(alpha, beta, cfg.tol);
  const PositiveForm mean = geometric_mean(alpha, beta, cfg.tol);
  if (cfg.csv) {
    out << "matrix,row,col,re,im\n";
    emit_matrix_rows("gram", mean.gram(), out);
    return;
  }
  Json j = ix::to_json(mean);
  j["rank"] = pw.rank;
  print_json(j, out);
}

void cmd_ineq(const RunConfig& cfg, const std::string& phi_path, const std::string& psi_path,
              std::ostream& out) {
  const Functional phi = load_state(cfg, phi_path), psi = load_state(cfg, psi_path);
  require_pair(phi, psi);
  const InequalityReport r = inequality_suite(phi, psi, {}, cfg.tol);
  std::vector<std::pair<std::string, double>> fields{
      {"root_distance_sq", r.root_distance_sq},
      {"norm_distance", r.norm_distance},
      {"root_product_bound", r.root_product_bound},
      {"amplitude", r.amplitude},
      {"fidelity", r.fidelity},
      {"powers_stormer_lower", r.powers_stormer_lower},
      {"powers_stormer_upper", r.powers_stormer_upper},
      {"concavity", r.concavity},
  };
  if (r.sandwich_lower) fields.emplace_back("sandwich_lower", *r.sandwich_lower);
  if (r.sandwich_upper) fields.emplace_back("sandwich_upper", *r.sandwich_upper);
  fields.emplace_back("worst_defect", r.worst_defect());
  emit_scalars(cfg, fields, out);
}

void cmd_purify(const RunConfig& cfg, const std::string& phi_path, const std::optional<std::string>& psi_path,
                std::ostream& out) {
  const Functional phi = load_state(cfg, phi_path);
  const Functional big = purify(phi, cfg.tol);
  std::optional<Functional> psi;
  if (psi_path) {
    psi = load_state(cfg, *psi_path);
    require_pair(phi, *psi);
  }
  if (cfg.csv) {
    std::vector<std::pair<std::string, double>> fields{{"pure", is_pure(big, cfg.tol) ? 1.0 : 0.0}};
    if (psi) {
      const double a = transition_amplitude(phi, *psi, cfg.tol);
      const double pa = transition_amplitude(big, purify(*psi, cfg.tol), cfg.tol);
      fields.insert(fields.end(), {{"amplitude", a}, {"purified_amplitude", pa}, {"square_law_defect", pa - a * a}});
    }
    emit_scalars(cfg, fields, out);
    return;
  }
  Json j{{"purification", ix::to_json(big)}, {"pure", is_pure(big, cfg.tol)}};
  if (psi) {
    const double a = transition_amplitude(phi, *psi, cfg.tol);
    const double pa = transition_amplitude(big, purify(*psi, cfg.tol), cfg.tol);
    j["amplitude"] = num(a);
    j["purified_amplitude"] = num(pa);
    j["square_law_defect"] = num(pa - a * a);
  }
  print_json(j, out);
}

void cmd_chain(const RunConfig& cfg, const ChainRequest& req, std::ostream& out) {
  const int modes = int(req.spec_file.has_value()) + int(req.product_sites.has_value()) +
                    int(req.lumped_atoms.has_value());
  if (modes != 1) {
    fail(ErrorCode::ParseError, "chain needs exactly one of a spec file, --product-chain or --lumped");
  }
  if (req.product_sites) {
    const ProductChain pc = build_product_chain(*req.product_sites);
    check_size(cfg, pc.ambient);
    const std::vector<Matrix> a(static_cast<std::size_t>(*req.product_sites), site_density(req.site_a));
    const std::vector<Matrix> b(static_cast<std::size_t>(*req.product_sites), site_density(req.site_b));
    const Functional phi = product_state(a, cfg.tol), psi = product_state(b, cfg.tol);
    emit_chain(chain_amplitudes(phi, psi, pc.chain, cfg.threads, cfg.tol),
               transition_amplitude(phi, psi, cfg.tol), out);
    return;
  }
  if (req.lumped_atoms) {
    if (*req.lumped_atoms < 1) fail(ErrorCode::DomainError, "--lumped needs at least one atom");
    const std::vector<double> p = folded_geometric(req.lambda, *req.lumped_atoms);
    const std::vector<double> q = folded_geometric(req.mu, *req.lumped_atoms);
    const LumpedChain lc = build_lumped_diagonal_chain(p, q, cfg.tol);
    emit_chain(chain_amplitudes(lc.phi, lc.psi, lc.chain, cfg.threads, cfg.tol),
               transition_amplitude(lc.phi, lc.psi, cfg.tol), out);
    return;
  }
  const Json spec = ix::load_file(*req.spec_file);
  if (!spec.is_object() || !spec.contains("chain") || !spec.contains("phi") || !spec.contains("psi")) {
    fail(ErrorCode::ParseError, "chain spec needs 'chain', 'phi' and 'psi'");
  }
  const SubalgebraChain chain = ix::chain_from_json(spec["chain"], cfg.tol);
  check_size(cfg, chain.ambient());
  const Functional phi = ix::functional_from_json(spec["phi"], cfg.tol);
  const Functional psi = ix::functional_from_json(spec["psi"], cfg.tol);
  detail::require_same_algebra(phi.algebra(), chain.ambient(), "chain spec");
  require_pair(phi, psi);
  emit_chain(chain_amplitudes(phi, psi, chain, cfg.threads, cfg.tol),
             transition_amplitude(phi, psi, cfg.tol), out);
}

void cmd_decompose(const RunConfig& cfg, const std::string& phi_path, const std::string& psi_path,
                   const std::vector<double>& measure, std::ostream& out) {
  const Functional phi = load_state(cfg, phi_path), psi = load_state(cfg, psi_path);
  require_pair(phi, psi);
  const std::vector<double> mu = measure.empty() ? default_measure(phi, psi, cfg.tol) : measure;
  const StateDecomposition dp = decompose(phi, mu, cfg.tol);
  const StateDecomposition dq = decompose(psi, mu, cfg.tol);
  const AmplitudeSumCheck check = amplitude_sum_check(phi, psi, mu, cfg.tol);

  out << "block,mu,dphi_dmu,dpsi_dmu,component_amplitude,contribution,defect\n";
  double total = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double contribution =
        mu[k] * std::sqrt(dp.derivative[k] * dq.derivative[k]) * check.component_amplitudes[k];
    total += mu[k];
    out << k << ',' << format_number(mu[k]) << ',' << format_number(dp.derivative[k]) << ','
        << format_number(dq.derivative[k]) << ',' << format_number(check.component_amplitudes[k]) << ','
        << format_number(contribution) << ",\n";
  }
  out << "sum," << format_number(total) << ",,," << format_number(check.lhs) << ','
      << format_number(check.rhs) << ',' << format_number(check.defect) << '\n';
}

void cmd_kms(const RunConfig& cfg, const KmsRequest& req, std::ostream& out) {
  const Functional flow = load_state(cfg, req.state);
  const Functional omega = req.omega ? load_state(cfg, *req.omega) : flow;
  require_pair(flow, omega);
  if (req.samples < 1) fail(ErrorCode::DomainError, "--samples must be positive");
  Sampler rng(cfg.seed);
  std::vector<std::pair<BlockOperator, BlockOperator>> pairs;
  for (int s = 0; s < req.samples; ++s) {
    BlockOperator x = rng.element(flow.algebra());
    BlockOperator y = rng.element(flow.algebra());
    pairs.emplace_back(std::move(x), std::move(y));
  }
  std::vector<double> defects;
  for (double t : req.times) {
    double worst = 0.0;
    for (const auto& [x, y] : pairs) worst = std::max(worst, kms_defect(omega, flow, x, y, t, cfg.tol));
    defects.push_back(worst);
  }
  if (cfg.csv) {
    out << "t,defect\n";
    for (std::size_t i = 0; i < defects.size(); ++i) {
      out << format_number(req.times[i]) << ',' << format_number(defects[i]) << '\n';
    }
    return;
  }
  Json ts = Json::array(), ds = Json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < defects.size(); ++i) {
    ts.push_back(num(req.times[i]));
    ds.push_back(num(defects[i]));
    worst = std::max(worst, defects[i]);
  }
  print_json(Json{{"t", ts}, {"defect", ds}, {"max_defect", num(worst)}}, out);
}

void cmd_qf_reduce(const RunConfig& cfg, const std::string& file, std::ostream& out) {
  const ix::QuasifreeTriple q = ix::quasifree_from_json(ix::load_file(file), cfg.tol);
  if (cfg.max_dim && q.space.dim() > *cfg.max_dim) fail(ErrorCode::TooLarge, "dimension exceeds --max-dim");
  const QuasifreeReduction red = reduce(q.space, q.s, q.t, cfg.tol);
  if (cfg.csv) {
    out << "matrix,row,col,re,im\n";
    emit_matrix_rows("sigma", red.space.sigma().cast<Complex>(), out);
    emit_matrix_rows("S", red.s.matrix(), out);
    emit_matrix_rows("T", red.t.matrix(), out);
    emit_matrix_rows("quotient", red.quotient.cast<Complex>(), out);
    return;
  }
  print_json(ix::to_json(red), out);
}

}  // namespace amplitude_lab::cli
