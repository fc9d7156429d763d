#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <amplitude_lab/interchange.hpp>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <thread>

#include "cli/commands.hpp"

namespace amplitude_lab::cli {

int exit_code(ErrorCode code) noexcept { return 10 + static_cast<int>(code); }

unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("AMPLITUDE_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drops the sign of -0
  char text[32];
  std::snprintf(text, sizeof text, "%.9g", value);
  if (text[0] == '-' && std::string_view(text) == "-0") return "0";
  return text;
}

namespace {

void print_error(std::ostream& err, const std::string& code, int status, const std::string& message) {
  const interchange::Json j{{"error", {{"code", code}, {"exit_code", status}, {"message", message}}}};
  err << j.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transition amplitudes, geometric means and modular data on multi-matrix algebras",
               "amplitude-lab"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  double tol_override = 0.0;
  Index max_dim = 0;
  app.add_option("--tol", tol_override, "Numerical tolerance for identity checks (default 1e-9)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "RNG seed for sampled inputs");
  app.add_flag("--csv", cfg.csv, "Emit CSV instead of JSON");
  app.add_option("--max-dim", max_dim, "Largest block size accepted (selftest: sampled up to this)")
      ->check(CLI::PositiveNumber);

  std::function<void()> action;

  std::string first, second;
  std::optional<std::string> maybe_second;

  auto* amp = app.add_subcommand("amp", "Transition amplitude (φ^{1/2}|ψ^{1/2})");
  amp->add_option("phi", first, "State file")->required();
  amp->add_option("psi", second, "State file")->required();
  amp->callback([&] { action = [&] { cmd_amp(cfg, first, second, out); }; });

  auto* fid = app.add_subcommand("fidelity", "Uhlmann transition probability P(φ, ψ)");
  fid->add_option("phi", first, "State file")->required();
  fid->add_option("psi", second, "State file")->required();
  fid->callback([&] { action = [&] { cmd_fidelity(cfg, first, second, out); }; });

  auto* gm = app.add_subcommand("gmean", "Geometric mean of two positive forms");
  gm->add_option("alpha", first, "Form file")->required();
  gm->add_option("beta", second, "Form file")->required();
  gm->callback([&] { action = [&] { cmd_gmean(cfg, first, second, out); }; });

  auto* ineq = app.add_subcommand("ineq", "Powers–Størmer, fidelity sandwich and concavity slacks");
  ineq->add_option("phi", first, "State file")->required();
  ineq->add_option("psi", second, "State file")->required();
  ineq->callback([&] { action = [&] { cmd_ineq(cfg, first, second, out); }; });

  auto* pur = app.add_subcommand("purify", "Purification on M_n ⊗ M_n°");
  pur->add_option("phi", first, "State file on a single block")->required();
  pur->add_option("psi", maybe_second, "Optional second state for the square law");
  pur->callback([&] { action = [&] { cmd_purify(cfg, first, maybe_second, out); }; });

  ChainRequest chain_req;
  auto* chain = app.add_subcommand("chain", "Amplitudes along an increasing chain of subalgebras (CSV)");
  chain->add_option("spec", chain_req.spec_file, "Chain spec file {chain, phi, psi}");
  chain->add_option("--product-chain", chain_req.product_sites, "Qubit product chain with N sites");
  chain->add_option("--site-a", chain_req.site_a, "Site state of φ: pure0, pure1, plus, mixed");
  chain->add_option("--site-b", chain_req.site_b, "Site state of ψ: pure0, pure1, plus, mixed");
  chain->add_option("--lumped", chain_req.lumped_atoms, "Lumped-tail chain on ℂ^N with geometric weights");
  chain->add_option("--lambda", chain_req.lambda, "Geometric ratio of φ");
  chain->add_option("--mu", chain_req.mu, "Geometric ratio of ψ");
  chain->callback([&] { action = [&] { cmd_chain(cfg, chain_req, out); }; });

  std::vector<double> measure;
  auto* dec = app.add_subcommand("decompose", "Central decomposition and the amplitude sum formula (CSV)");
  dec->add_option("phi", first, "State file")->required();
  dec->add_option("psi", second, "State file")->required();
  dec->add_option("--measure", measure, "Central weights μ_k, comma separated")->delimiter(',');
  dec->callback([&] { action = [&] { cmd_decompose(cfg, first, second, measure, out); }; });

  KmsRequest kms_req;
  auto* kms = app.add_subcommand("kms", "KMS boundary defect of the modular flow");
  kms->add_option("state", kms_req.state, "Faithful state generating the flow")->required();
  kms->add_option("--omega", kms_req.omega, "State tested against the flow (default: the flow state)");
  kms->add_option("--t", kms_req.times, "Times, comma separated")->delimiter(',');
  kms->add_option("--samples", kms_req.samples, "Random (x, y) pairs per time");
  kms->callback([&] { action = [&] { cmd_kms(cfg, kms_req, out); }; });

  auto* qf = app.add_subcommand("qf-reduce", "Quotient of a quasifree pair by the null space");
  qf->add_option("file", first, "Input {dim, sigma, S, T}")->required();
  qf->callback([&] { action = [&] { cmd_qf_reduce(cfg, first, out); }; });

  auto* self = app.add_subcommand("selftest", "Run the invariant suite on random instances");
  int selftest_status = 0;
  self->callback([&] { action = [&] { selftest_status = selftest(cfg, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    print_error(err, "UsageError", kExitUsage, e.what());
    return kExitUsage;
  }

  if (tol_override > 0.0) cfg.tol.num = tol_override;
  if (max_dim > 0) cfg.max_dim = max_dim;
  cfg.threads = thread_budget();

  try {
    action();
  } catch (const Error& e) {
    const int status = exit_code(e.code());
    print_error(err, std::string(to_string(e.code())), status, e.what());
    return status;
  } catch (const std::exception& e) {
    print_error(err, "InternalError", kExitInternal, e.what());
    return kExitInternal;
  }
  out.flush();
  return selftest_status;
}

}  // namespace amplitude_lab::cli
