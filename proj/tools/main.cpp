// Copyright 2026 The qfddf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include "qfddf/fcidump.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace qfddf;
using namespace qfddf::cli;

namespace {

void add_cdf_options(CLI::App* app, CdfOptions& cdf) {
  app->add_option("--max-epochs", cdf.max_epochs, "Stage-2 epoch limit")->check(CLI::PositiveNumber);
  app->add_option("--grad-tol", cdf.grad_tol, "Stage-2 gradient tolerance")->check(CLI::PositiveNumber);
  app->add_option("--patience", cdf.patience, "Epochs without improvement before stopping")
      ->check(CLI::PositiveNumber);
  app->add_option("--cdf-seed", cdf.seed, "Seed for Stage-2 restarts");
  app->add_option("--restarts", cdf.random_restarts, "Extra Stage-2 runs from perturbed generators")
      ->check(CLI::NonNegativeNumber);
  app->add_flag("--one-step", cdf.one_step, "Optimize leaves and cores jointly");
}

int report(const std::string& kind, const std::exception& e, int code) {
  std::cerr << "qfddf: " << kind << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed double factorization and quantum filter diagonalization"};
  app.require_subcommand(1);
  int threads = default_threads();
  std::string out = ".";
  app.add_option("--threads", threads, "Worker threads (default QFDDF_THREADS or 1)")->check(CLI::PositiveNumber);

  FactorizeOptions fo;
  auto* factorize = app.add_subcommand("factorize", "X-DF or C-DF factorization of an FCIDUMP");
  factorize->add_option("fcidump", fo.fcidump, "FCIDUMP file")->required();
  factorize->add_option("--ndf", fo.ndf, "Layer count k or range a..b")->capture_default_str();
  factorize->add_option("--method", fo.method, "xdf or cdf")->check(CLI::IsMember({"xdf", "cdf"}))->capture_default_str();
  factorize->add_option("--solver", fo.solver, "Core solver: auto, pinv or cg")
      ->check(CLI::IsMember({"auto", "pinv", "cg"}))
      ->capture_default_str();
  factorize->add_flag("--strict", fo.strict, "Exit with code 3 when Stage 2 does not converge");
  add_cdf_options(factorize, fo.cdf);

  QfdOptions qo;
  auto* qfd = app.add_subcommand("qfd", "Quantum filter diagonalization on a factorized Hamiltonian");
  qfd->add_option("fcidump", qo.fcidump, "FCIDUMP file")->required();
  qfd->add_option("--decomposition", qo.decomposition, "decomposition.json from factorize");
  qfd->add_option("--method", qo.method, "xdf or cdf")->check(CLI::IsMember({"xdf", "cdf"}))->capture_default_str();
  qfd->add_option("--nqfd", qo.config.n_qfd, "Krylov dimension")->capture_default_str();
  qfd->add_option("--dt", qo.config.dt, "Time step")->capture_default_str();
  qfd->add_option("--ndf", qo.config.n_df, "Layer count when factorizing here")->capture_default_str();
  qfd->add_option("--mode", qo.mode, "exact or hadamard-shots")
      ->check(CLI::IsMember({"exact", "hadamard-shots"}))
      ->capture_default_str();
  qfd->add_option("--shots", qo.config.shots, "Shots per circuit")->capture_default_str();
  qfd->add_option("--echo", qo.config.n_echo, "Echo samples per circuit (0 disables)")->capture_default_str();
  qfd->add_flag("--post-select", qo.config.post_select, "Discard shots with wrong particle numbers");
  qfd->add_option("--eps-s", qo.config.eps_s, "Relative overlap threshold");
  qfd->add_option("--noise", qo.noise, "Noise model JSON {p1, p2, readout}");
  qfd->add_option("--reference", qo.references, "Reference occupations, e.g. 0/0 or 0,1/0,2");
  qfd->add_flag("--exact-propagator", qo.config.exact_propagator, "Use exp(-iH dt) instead of a Trotter step");
  qfd->add_option("--seed", qo.config.seed, "Shot and echo seed")->capture_default_str();
  qfd->add_option("--sweep", qo.sweep, "nqfd=a..b or ndf=a..b");
  add_cdf_options(qfd, qo.cdf);

  OracleOptions oo;
  auto* oracle = app.add_subcommand("oracle", "Exact sector eigenvalues by dense diagonalization");
  oracle->add_option("fcidump", oo.fcidump, "FCIDUMP file")->required();
  oracle->add_option("--nalpha", oo.n_alpha, "Alpha electrons (default from the file)");
  oracle->add_option("--nbeta", oo.n_beta, "Beta electrons (default from the file)");
  oracle->add_option("--cap", oo.cap, "Largest sector dimension")->capture_default_str();

  GatecountOptions go;
  auto* gatecount = app.add_subcommand("gatecount", "Gate and CNOT accounting of the compiled circuits");
  gatecount->add_option("fcidump", go.fcidump, "FCIDUMP file");
  gatecount->add_option("--decomposition", go.decomposition, "decomposition.json from factorize");
  gatecount->add_option("--ndf", go.n_df, "Layer count when factorizing here")->capture_default_str();
  gatecount->add_option("--method", go.method, "xdf or cdf")->check(CLI::IsMember({"xdf", "cdf"}));
  gatecount->add_option("--dt", go.dt, "Time step")->capture_default_str();
  gatecount->add_option("--nqfd", go.n_qfd, "Krylov dimension for Hadamard-test counts")->capture_default_str();
  gatecount->add_flag("--linear", go.linear_topology, "Route two-qubit gates on a line");
  add_cdf_options(gatecount, go.cdf);

  SynthOptions so;
  auto* synth = app.add_subcommand("synth", "Write a synthetic FCIDUMP");
  synth->add_option("output", so.output, "Output FCIDUMP path")->required();
  synth->add_option("--model", so.model, "homo-lumo, hubbard, random or ppp")
      ->check(CLI::IsMember({"homo-lumo", "hubbard", "random", "ppp"}))
      ->capture_default_str();
  synth->add_option("--norb", so.n_orbitals, "Orbital count")->capture_default_str();
  synth->add_option("--nalpha", so.n_alpha, "Alpha electrons");
  synth->add_option("--nbeta", so.n_beta, "Beta electrons");
  synth->add_option("--seed", so.seed, "Model seed")->capture_default_str();
  synth->add_option("--hopping", so.hopping, "Hubbard hopping t")->capture_default_str();
  synth->add_option("--onsite", so.onsite, "Hubbard U")->capture_default_str();

  for (CLI::App* sub : {factorize, qfd, oracle, gatecount})
    sub->add_option("--out", out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  fo.out = qo.out = oo.out = go.out = out;
  qo.config.threads = threads;
  std::vector<std::string> args(argv, argv + argc);
  CLI::App* chosen = app.get_subcommands().front();
  RunManifest manifest(chosen->get_name(), args);

  try {
    int code = kOk;
    std::string failure;
    try {
      if (chosen == factorize) code = cmd_factorize(fo, manifest);
      if (chosen == qfd) code = cmd_qfd(qo, manifest);
      if (chosen == oracle) code = cmd_oracle(oo, manifest);
      if (chosen == gatecount) code = cmd_gatecount(go, manifest);
      if (chosen == synth) code = cmd_synth(so, manifest);
    } catch (const OptimizerFailure& e) {
      code = kOptimizer;
      failure = e.what();
    }
    if (chosen != synth) write_text_file((std::filesystem::path(out) / "manifest.json").string(), dump(manifest.to_json()));
    if (code == kOptimizer) std::cerr << "qfddf: optimizer failure: " << failure << "\n";
    return code;
  } catch (const FcidumpError& e) {
    return report("invalid FCIDUMP", e, kParse);
  } catch (const Json::exception& e) {
    return report("invalid JSON document", e, kParse);
  } catch (const UsageError& e) {
    return report("invalid arguments", e, kParse);
  } catch (const std::invalid_argument& e) {
    return report("invalid arguments", e, kParse);
  } catch (const EngineAbort& e) {
    return report("engine aborted", e, kEngineAbort);
  } catch (const SectorTooLarge& e) {
    return report("sector too large", e, kEngineAbort);
  } catch (const std::ios_base::failure& e) {
    return report("I/O error", e, kIo);
  } catch (const std::exception& e) {
    return report("error", e, 1);
  }
}
