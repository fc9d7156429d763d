#include <doctest.h>

#include <amplitude_lab/interchange.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli/cli.hpp"

using namespace amplitude_lab;
namespace fs = std::filesystem;
namespace ix = amplitude_lab::interchange;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> store{"amplitude-lab"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : store) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("amplitude_lab_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path dir_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

constexpr const char* kPure = R"({"algebra":{"blocks":[2]},"densities":[[1,0,0,0]]})";
constexpr const char* kMixed = R"({"algebra":{"blocks":[2]},"densities":[[0.5,0,0,0.5]]})";

}  // namespace

TEST_CASE("cli amp on a pure and the tracial qubit state") {
  Scratch s;
  const Outcome r = invoke({"amp", s.write("a.json", kPure), s.write("b.json", kMixed)});
  REQUIRE(r.status == 0);
  const ix::Json j = ix::parse(r.out);
  CHECK(std::abs(j.at("amplitude").get<double>() - std::sqrt(0.5)) <= 1e-9);
  CHECK(r.out.find("0.707106781") != std::string::npos);

  const Outcome csv = invoke({"--csv", "amp", s.write("a.json", kPure), s.write("b.json", kMixed)});
  REQUIRE(csv.status == 0);
  CHECK(csv.out == "amplitude\n0.707106781\n");
}

TEST_CASE("cli fidelity and ineq emit parseable JSON") {
  Scratch s;
  const std::string a = s.write("a.json", kPure), b = s.write("b.json", kMixed);
  const Outcome f = invoke({"fidelity", a, b});
  REQUIRE(f.status == 0);
  CHECK(std::abs(ix::parse(f.out).at("fidelity").get<double>() - 0.5) <= 1e-9);

  const Outcome q = invoke({"ineq", a, b});
  REQUIRE(q.status == 0);
  CHECK(ix::parse(q.out).at("worst_defect").get<double>() >= -1e-9);
}

TEST_CASE("cli product chain halves the square amplitude per site") {
  const Outcome r = invoke({"chain", "--product-chain", "6", "--site-a", "pure0", "--site-b", "mixed"});
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"n", "a_n", "defect"});
  for (int n = 1; n <= 6; ++n) {
    CHECK(std::stoi(rows[n][0]) == n);
    CHECK(std::abs(std::stod(rows[n][1]) - std::pow(2.0, -n / 2.0)) <= 1e-9);
  }
}

TEST_CASE("cli lumped chain approaches the thermal amplitude") {
  const Outcome r = invoke({"chain", "--lumped", "60", "--lambda", "0.5", "--mu", "0.25"});
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 61);
  const double exact = std::sqrt(0.5 * 0.75) / (1.0 - std::sqrt(0.125));
  CHECK(std::abs(std::stod(rows.back()[1]) - exact) <= 1e-8);
}

TEST_CASE("cli chain needs exactly one mode") {
  CHECK(invoke({"chain"}).status != 0);
  CHECK(invoke({"chain", "--product-chain", "3", "--lumped", "4"}).status != 0);
}

TEST_CASE("cli decompose reports the sum formula") {
  Scratch s;
  const std::string a = s.write("a.json", R"({"algebra":{"blocks":[1,2]},"densities":[[0.5],[0.25,0,0,0.25]]})");
  const std::string b = s.write("b.json", R"({"algebra":{"blocks":[1,2]},"densities":[[0.2],[0.8,0,0,0]]})");
  const Outcome r = invoke({"decompose", a, b, "--measure", "0.3,0.7"});
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[3][0] == "sum");
  CHECK(std::abs(std::stod(rows[3].back())) <= 1e-9);
}

TEST_CASE("cli kms of a faithful state vanishes") {
  Scratch s;
  const std::string a = s.write("a.json", R"({"algebra":{"blocks":[2]},"densities":[[0.7,0,0,0.3]]})");
  const Outcome r = invoke({"--seed", "3", "kms", a});
  REQUIRE(r.status == 0);
  CHECK(ix::parse(r.out).at("max_defect").get<double>() <= 1e-9);
}

TEST_CASE("cli purify and gmean") {
  Scratch s;
  const Outcome p = invoke({"purify", s.write("a.json", kPure), s.write("b.json", kMixed)});
  REQUIRE(p.status == 0);
  const ix::Json pj = ix::parse(p.out);
  CHECK(std::abs(pj.at("square_law_defect").get<double>()) <= 1e-9);

  const std::string fa = s.write("fa.json", R"({"dim":2,"gram":[1,0,0,0]})");
  const std::string fb = s.write("fb.json", R"({"dim":2,"gram":[4,0,0,1]})");
  const Outcome g = invoke({"gmean", fa, fb});
  REQUIRE(g.status == 0);
  const ix::Json gj = ix::parse(g.out);
  const HermitianForm mean = ix::hermitian_form_from_json(gj);
  CHECK(std::abs(mean.gram()(0, 0).real() - 2.0) <= 1e-9);
  CHECK(std::abs(mean.gram()(1, 1)) <= 1e-9);
}

TEST_CASE("cli qf-reduce drops the null direction") {
  Scratch s;
  const std::string f = s.write(
      "q.json",
      R"({"dim":3,"sigma":[0,1,0,-1,0,0,0,0,0],"S":[0.5,[0,0.5],0,[0,-0.5],0.5,0,0,0,0],)"
      R"("T":[0.5,[0,0.5],0,[0,-0.5],0.5,0,0,0,0]})");
  const Outcome r = invoke({"qf-reduce", f});
  REQUIRE(r.status == 0);
  const ix::Json j = ix::parse(r.out);
  CHECK(j.at("dim").get<int>() == 2);
  CHECK(j.at("kernel_dim").get<int>() == 1);
}

TEST_CASE("cli selftest passes and is reproducible") {
  const Outcome a = invoke({"selftest", "--seed", "7", "--max-dim", "4"});
  INFO(a.out);
  CHECK(a.status == 0);
  CHECK(a.out.find("FAIL") == std::string::npos);
  const Outcome b = invoke({"--seed", "7", "--max-dim", "4", "selftest"});
  CHECK(a.out == b.out);
}

TEST_CASE("cli errors map to exit codes with a JSON error object") {
  Scratch s;
  const Outcome missing = invoke({"amp", "/nonexistent/a.json", "/nonexistent/b.json"});
  CHECK(missing.status == cli::exit_code(ErrorCode::ParseError));
  const ix::Json e = ix::parse(missing.err);
  CHECK(e.at("error").at("code") == "ParseError");
  CHECK(e.at("error").at("exit_code") == missing.status);

  const std::string bad = s.write("bad.json", R"({"algebra":{"blocks":[2]},"densities":[[1,0,0,-1]]})");
  CHECK(invoke({"amp", bad, bad}).status == cli::exit_code(ErrorCode::NotPositive));

  const std::string other = s.write("c.json", R"({"algebra":{"blocks":[3]},"densities":[[1,0,0,0,0,0,0,0,0]]})");
  CHECK(invoke({"amp", s.write("a.json", kPure), other}).status == cli::exit_code(ErrorCode::ShapeError));
  CHECK(invoke({"--max-dim", "2", "amp", other, other}).status == cli::exit_code(ErrorCode::TooLarge));

  CHECK(invoke({"chain", "--product-chain", "11"}).status == cli::exit_code(ErrorCode::TooLarge));
  CHECK(invoke({"nonsense"}).status == cli::kExitUsage);
  CHECK(invoke({}).status == cli::kExitUsage);
  CHECK(invoke({"--help"}).status == 0);
}

TEST_CASE("cli exit codes are distinct and start at 10") {
  CHECK(cli::exit_code(ErrorCode::InvalidAlgebra) == 10);
  CHECK(cli::exit_code(ErrorCode::ParseError) == 23);
  CHECK(cli::format_number(-0.0) == "0");
  CHECK(cli::format_number(0.1 + 0.2) == "0.3");
}
