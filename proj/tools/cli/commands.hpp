#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/cli.hpp"

namespace amplitude_lab::cli {

void cmd_amp(const RunConfig& cfg, const std::string& phi, const std::string& psi, std::ostream& out);
void cmd_fidelity(const RunConfig& cfg, const std::string& phi, const std::string& psi, std::ostream& out);
void cmd_gmean(const RunConfig& cfg, const std::string& alpha, const std::string& beta, std::ostream& out);
void cmd_ineq(const RunConfig& cfg, const std::string& phi, const std::string& psi, std::ostream& out);
void cmd_purify(const RunConfig& cfg, const std::string& phi, const std::optional<std::string>& psi,
                std::ostream& out);

struct ChainRequest {
  std::optional<std::string> spec_file;
  std::optional<Index> product_sites;
  std::string site_a = "pure0";
  std::string site_b = "mixed";
  std::optional<Index> lumped_atoms;
  double lambda = 0.5;
  double mu = 0.25;
};
void cmd_chain(const RunConfig& cfg, const ChainRequest& req, std::ostream& out);

void cmd_decompose(const RunConfig& cfg, const std::string& phi, const std::string& psi,
                   const std::vector<double>& measure, std::ostream& out);

struct KmsRequest {
  std::string state;
  std::optional<std::string> omega;
  std::vector<double> times{-2.0, -1.0, 0.0, 1.0, 2.0};
  int samples = 4;
};
void cmd_kms(const RunConfig& cfg, const KmsRequest& req, std::ostream& out);

void cmd_qf_reduce(const RunConfig& cfg, const std::string& file, std::ostream& out);

}  // namespace amplitude_lab::cli
