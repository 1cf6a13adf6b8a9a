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
#include "qfddf/rng.hpp"
#include "qfddf/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#ifndef QFDDF_VERSION
#define QFDDF_VERSION "0.0.0"
#endif

namespace qfddf::cli {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

std::string out_path(const std::string& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create output directory " + dir);
  return (std::filesystem::path(dir) / name).string();
}

void write_output(RunManifest& manifest, const std::string& dir, const std::string& name, const std::string& text) {
  const std::string path = out_path(dir, name);
  write_text_file(path, text);
  manifest.add_output(path);
}

ActiveSpaceHamiltonian load_hamiltonian(const std::string& path, RunManifest& manifest) {
  const std::string text = read_text_file(path);
  manifest.add_input(path, text);
  return parse_fcidump(text);
}

DFDecomposition load_decomposition(const std::string& path, RunManifest& manifest) {
  const std::string text = read_text_file(path);
  manifest.add_input(path, text);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  return decomposition_from_json(j);
}

CdfOptions with_solver(CdfOptions cdf, const std::string& solver) {
  if (solver == "auto") {
    cdf.auto_solver = true;
  } else if (solver == "pinv") {
    cdf.auto_solver = false;
    cdf.solver = CoreSolver::kPseudoinverse;
  } else if (solver == "cg") {
    cdf.auto_solver = false;
    cdf.solver = CoreSolver::kConjugateGradient;
  } else {
    throw UsageError("unknown solver " + solver);
  }
  return cdf;
}

struct Factorized {
  DFDecomposition decomposition;
  Json summary;
  std::vector<StageRecord> stages;
  bool converged = true;
};

Factorized factorize(const ActiveSpaceHamiltonian& ham, int n_df, const std::string& method, const CdfOptions& cdf) {
  Factorized f;
  if (n_df == 0) {
    if (method != "xdf" && method != "cdf") throw UsageError("unknown method " + method);
    const auto d = factorization_diagnostics(ham.eri, {});
    f.stages.push_back({"stage0", d.objective, d.mad});
    f.decomposition = make_decomposition(ham, {});
    f.summary = {{"method", method}, {"n_df", 0}, {"objective", d.objective}, {"mad", d.mad}};
  } else if (method == "xdf") {
    auto layers = xdf_factorize(ham.eri, n_df);
    const auto d = factorization_diagnostics(ham.eri, layers);
    f.stages.push_back({"stage0", d.objective, d.mad});
    f.decomposition = make_decomposition(ham, std::move(layers));
    f.summary = {{"method", "xdf"}, {"n_df", n_df}, {"objective", d.objective}, {"mad", d.mad}};
  } else if (method == "cdf") {
    CdfResult r = cdf_two_step(ham.eri, n_df, cdf);
    f.stages = r.stages;
    f.converged = r.converged;
    const StageRecord& last = r.stages.back();
    f.summary = {{"method", "cdf"},         {"n_df", n_df},          {"objective", last.objective},
                 {"mad", last.mad},         {"epochs", r.epochs},    {"converged", r.converged},
                 {"stop_reason", r.stop_reason}};
    f.decomposition = make_decomposition(ham, std::move(r.layers));
  } else {
    throw UsageError("unknown method " + method + " (expected xdf or cdf)");
  }
  for (const StageRecord& s : f.stages)
    if (!std::isfinite(s.objective)) throw OptimizerFailure("non-finite objective in " + s.stage);
  return f;
}

Json cdf_json(const CdfOptions& c) {
  return {{"max_epochs", c.max_epochs}, {"grad_tol", c.grad_tol},   {"patience", c.patience},
          {"seed", c.seed},             {"restarts", c.random_restarts}, {"one_step", c.one_step}};
}

Json config_json(const QfdConfig& c) {
  Json refs = Json::array();
  for (const Determinant& d : c.references)
    refs.push_back({{"alpha", occupation_to_json(d.alpha)}, {"beta", occupation_to_json(d.beta)}});
  return {{"n_qfd", c.n_qfd},
          {"dt", c.dt},
          {"n_df", c.n_df},
          {"mode", c.mode == QfdMode::kExact ? "exact" : "hadamard-shots"},
          {"shots", c.shots},
          {"n_echo", c.n_echo},
          {"post_select", c.post_select},
          {"eps_s", c.eps_s ? Json(*c.eps_s) : Json(nullptr)},
          {"references", refs},
          {"exact_propagator", c.exact_propagator},
          {"noise", to_json(c.noise)},
          {"seed", c.seed}};
}

}  // namespace

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)) {}

void RunManifest::add_input(const std::string& path, const std::string& contents) {
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(contents)));
  inputs_.push_back({{"path", path}, {"bytes", contents.size()}, {"fnv1a64", hash}});
}

void RunManifest::start_phase(const std::string& name) {
  current_ = name;
  started_ = std::chrono::steady_clock::now();
}

void RunManifest::end_phase() {
  phases_.emplace_back(current_, std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count());
}

Json RunManifest::to_json() const {
  Json wall = Json::object();
  for (const auto& [name, seconds] : phases_) wall[name] = seconds;
  return {{"command", command_}, {"argv", argv_},   {"version", QFDDF_VERSION}, {"inputs", inputs_},
          {"config", config_},   {"outputs", outputs_}, {"wall_seconds", wall}};
}

int default_threads() {
  if (const char* env = std::getenv("QFDDF_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return 1;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw UsageError("invalid range '" + text + "'");
    }
    if (used != s.size()) throw UsageError("invalid range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots)), hi = to_int(text.substr(dots + 2));
  if (lo > hi) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

Determinant parse_reference(const std::string& text, int n_orbitals) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw UsageError("reference '" + text + "' must look like 0,1/0,1");
  auto parse_list = [&](const std::string& s) {
    Bitstring bits = 0;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      const auto [k, k2] = parse_range(item);
      if (k != k2 || k < 0 || k >= n_orbitals) throw UsageError("reference orbital out of range in '" + text + "'");
      if (bits >> k & 1) throw UsageError("duplicate orbital in reference '" + text + "'");
      bits |= Bitstring{1} << k;
    }
    return bits;
  };
  return {parse_list(text.substr(0, slash)), parse_list(text.substr(slash + 1))};
}

int cmd_factorize(const FactorizeOptions& opt, RunManifest& manifest) {
  const auto [lo, hi] = parse_range(opt.ndf);
  if (lo < 0) throw UsageError("n_df must be >= 0");
  const CdfOptions cdf = with_solver(opt.cdf, opt.solver);
  manifest.set_config({{"n_df", opt.ndf}, {"method", opt.method}, {"solver", opt.solver}, {"cdf", cdf_json(cdf)}});
  const ActiveSpaceHamiltonian ham = load_hamiltonian(opt.fcidump, manifest);
  if (hi > ham.n_orbitals * (ham.n_orbitals + 1) / 2) throw UsageError("n_df exceeds M(M+1)/2");

  std::string csv = "n_df,stage,objective,mad\n";
  Factorized last;
  bool converged = true;
  for (int k = lo; k <= hi; ++k) {
    manifest.start_phase("factorize_ndf" + std::to_string(k));
    last = factorize(ham, k, opt.method, cdf);
    manifest.end_phase();
    converged = converged && last.converged;
    for (const StageRecord& s : last.stages)
      csv += std::to_string(k) + "," + s.stage + "," + fmt(s.objective) + "," + fmt(s.mad) + "\n";
  }
  Json doc = to_json(last.decomposition);
  doc["factorization"] = last.summary;
  write_output(manifest, opt.out, "decomposition.json", dump(doc));
  write_output(manifest, opt.out, "diagnostics.csv", csv);
  if (opt.strict && !converged) throw OptimizerFailure("C-DF did not converge (see diagnostics.csv)");
  return kOk;
}

namespace {

void check_decomposition(const DFDecomposition& dec, const ActiveSpaceHamiltonian& ham) {
  if (dec.n_orbitals != ham.n_orbitals) throw UsageError("decomposition and FCIDUMP disagree on NORB");
}

std::string sweep_row(const std::string& param, int value, const SpectrumResult& r) {
  int retained = 0;
  for (const auto& run : r.runs) retained += run.spectrum.retained;
  return param + "," + std::to_string(value) + "," + std::to_string(retained) + "," + fmt(r.eigenvalues(0)) + "," +
         fmt(r.gaps.s0) + "," + fmt(r.gaps.t1) + "," + fmt(r.gaps.s1) + "," + fmt(r.gaps.s0t1) + "," +
         fmt(r.gaps.s0s1) + "\n";
}

}  // namespace

int cmd_qfd(QfdOptions opt, RunManifest& manifest) {
  QfdConfig& config = opt.config;
  if (opt.mode == "exact")
    config.mode = QfdMode::kExact;
  else if (opt.mode == "hadamard-shots")
    config.mode = QfdMode::kHadamardShots;
  else
    throw UsageError("unknown mode " + opt.mode);

  const ActiveSpaceHamiltonian ham = load_hamiltonian(opt.fcidump, manifest);
  if (!opt.noise.empty()) {
    const std::string text = read_text_file(opt.noise);
    manifest.add_input(opt.noise, text);
    try {
      config.noise = noise_from_json(Json::parse(text));
    } catch (const Json::parse_error& e) {
      throw UsageError(opt.noise + ": " + e.what());
    }
  }
  for (const std::string& r : opt.references) config.references.push_back(parse_reference(r, ham.n_orbitals));

  std::optional<DFDecomposition> supplied;
  if (!opt.decomposition.empty()) {
    supplied = load_decomposition(opt.decomposition, manifest);
    check_decomposition(*supplied, ham);
    config.n_df = static_cast<int>(supplied->layers.size());
  }
  std::string sweep_param;
  std::pair<int, int> sweep_range{0, -1};
  if (!opt.sweep.empty()) {
    const auto eq = opt.sweep.find('=');
    if (eq == std::string::npos) throw UsageError("sweep must look like nqfd=1..8 or ndf=1..4");
    sweep_param = opt.sweep.substr(0, eq);
    sweep_range = parse_range(opt.sweep.substr(eq + 1));
    if (sweep_param != "nqfd" && sweep_param != "ndf") throw UsageError("unknown sweep parameter " + sweep_param);
    if (sweep_param == "nqfd" && sweep_range.first < 1) throw UsageError("nqfd sweep must start at 1 or more");
    if (sweep_param == "ndf" && sweep_range.first < 0) throw UsageError("ndf sweep must start at 0 or more");
    if (sweep_param == "ndf" && supplied) throw UsageError("an ndf sweep needs the FCIDUMP, not a decomposition");
  }
  config.validate();
  manifest.set_config({{"qfd", config_json(config)}, {"method", opt.method}, {"cdf", cdf_json(opt.cdf)},
                       {"sweep", opt.sweep}, {"threads", config.threads}});

  auto decompose = [&](int n_df) {
    if (supplied) return Factorized{*supplied, Json{{"method", "supplied"}, {"n_df", n_df}}, {}, true};
    manifest.start_phase("factorize_ndf" + std::to_string(n_df));
    Factorized f = factorize(ham, n_df, opt.method, opt.cdf);
    manifest.end_phase();
    return f;
  };

  const Factorized base = decompose(config.n_df);
  manifest.start_phase("qfd");
  const SpectrumResult spectrum = run_qfd(config, to_zeta_form(base.decomposition), ham.n_alpha, ham.n_beta);
  manifest.end_phase();

  std::string csv;
  if (!sweep_param.empty()) {
    csv = "parameter,value,retained,ground,S0,T1,S1,S0T1,S0S1\n";
    for (int v = sweep_range.first; v <= sweep_range.second; ++v) {
      QfdConfig c = config;
      const Factorized* f = &base;
      Factorized other;
      if (sweep_param == "nqfd") {
        c.n_qfd = v;
      } else {
        c.n_df = v;
        if (v != config.n_df) {
          other = decompose(v);
          f = &other;
        }
      }
      manifest.start_phase("sweep_" + sweep_param + std::to_string(v));
      csv += sweep_row(sweep_param, v, run_qfd(c, to_zeta_form(f->decomposition), ham.n_alpha, ham.n_beta));
      manifest.end_phase();
    }
  }

  const Json doc = {{"config", config_json(config)},
                    {"n_orbitals", ham.n_orbitals},
                    {"n_alpha", ham.n_alpha},
                    {"n_beta", ham.n_beta},
                    {"factorization", base.summary},
                    {"spectrum", to_json(spectrum)}};
  write_output(manifest, opt.out, "spectrum.json", dump(doc));
  if (!csv.empty()) write_output(manifest, opt.out, "sweep.csv", csv);
  return kOk;
}

int cmd_oracle(const OracleOptions& opt, RunManifest& manifest) {
  const ActiveSpaceHamiltonian ham = load_hamiltonian(opt.fcidump, manifest);
  const int na = opt.n_alpha.value_or(ham.n_alpha), nb = opt.n_beta.value_or(ham.n_beta);
  if (na < 0 || nb < 0 || na > ham.n_orbitals || nb > ham.n_orbitals) throw UsageError("sector out of range");
  manifest.set_config({{"n_alpha", na}, {"n_beta", nb}, {"cap", opt.cap}});
  manifest.start_phase("oracle");
  const Vector ev = fci_oracle(ham, na, nb, opt.cap);
  manifest.end_phase();
  const Json doc = {{"n_orbitals", ham.n_orbitals},
                    {"n_alpha", na},
                    {"n_beta", nb},
                    {"dimension", ev.size()},
                    {"eigenvalues", vector_to_json(ev)}};
  write_output(manifest, opt.out, "oracle.json", dump(doc));
  return kOk;
}

int cmd_gatecount(const GatecountOptions& opt, RunManifest& manifest) {
  if (opt.dt <= 0.0 || opt.n_qfd < 1) throw UsageError("dt must be positive and nqfd >= 1");
  DFDecomposition dec;
  if (!opt.decomposition.empty()) {
    dec = load_decomposition(opt.decomposition, manifest);
  } else if (!opt.fcidump.empty()) {
    const ActiveSpaceHamiltonian ham = load_hamiltonian(opt.fcidump, manifest);
    manifest.start_phase("factorize");
    dec = factorize(ham, opt.n_df, opt.method, opt.cdf).decomposition;
    manifest.end_phase();
  } else {
    throw UsageError("gatecount needs an FCIDUMP or --decomposition");
  }
  manifest.set_config({{"dt", opt.dt}, {"n_qfd", opt.n_qfd}, {"linear_topology", opt.linear_topology},
                       {"n_df", opt.n_df}, {"method", opt.method}});
  manifest.start_phase("gatecount");
  const int m = dec.n_orbitals;
  const int n_df = static_cast<int>(dec.layers.size());
  const ZetaForm form = to_zeta_form(dec);
  const ZetaForm unfolded = to_unfolded_zeta_form(dec);
  const QubitLayout plain{m, false}, with_anc{m, true};

  const auto step = lower_and_count(trotter_step_circuit(form, opt.dt, plain), opt.linear_topology);
  const ControlledCostReport report = controlled_step_report(form, unfolded, opt.dt, with_anc);

  const int two_body_cnot = 2 * step.before.count(GateKind::kRZZ);

  Json changes = Json::array();
  const Matrix* previous = &form.one_body_leaf;
  auto basis_change = [&](const std::string& label, const Matrix& u) {
    const int rotations = static_cast<int>(givens_decompose(u).size());
    changes.push_back({{"label", label}, {"givens_per_spin", rotations}, {"cnot_per_spin", 2 * rotations},
                       {"cnot_bound_per_spin", m * (m - 1)}});
  };
  basis_change("enter_one_body", form.one_body_leaf.transpose());
  for (std::size_t t = 0; t < form.layers.size(); ++t) {
    basis_change("enter_layer_" + std::to_string(t + 1), form.layers[t].leaf.transpose() * *previous);
    previous = &form.layers[t].leaf;
  }
  basis_change("exit", *previous);

  Json tests = Json::array();
  const Determinant rhf = default_references(m, (m + 1) / 2, (m + 1) / 2).front();
  for (int a = 0; a < opt.n_qfd; ++a)
    for (int b = a; b < opt.n_qfd; ++b)
      for (int factor = kIdentityFactor; factor <= n_df; ++factor)
        for (Part part : {Part::kReal, Part::kImag}) {
          const auto l = lower_and_count(hadamard_test_circuit(rhf, a, b, part, factor, form, opt.dt, with_anc),
                                         opt.linear_topology);
          tests.push_back({{"m", a}, {"n", b}, {"factor", factor}, {"part", part == Part::kReal ? "real" : "imag"},
                           {"cnot", l.after.cnot()}, {"total", l.after.total()}, {"swaps", l.swaps_inserted}});
        }

  Circuit crz(2), crzz(3);
  crz.crz(0, 1, 0.1);
  crzz.crzz(0, 1, 2, 0.1);
  const GateCounts crz_counts = lower_and_count(crz).after, crzz_counts = lower_and_count(crzz).after;
  manifest.end_phase();

  const Json doc = {
      {"n_orbitals", m},
      {"n_df", n_df},
      {"n_qubits", with_anc.n_qubits()},
      {"dt", opt.dt},
      {"linear_topology", opt.linear_topology},
      {"trotter_step", {{"before", to_json(step.before)}, {"after", to_json(step.after)},
                        {"two_body_cnot", two_body_cnot}, {"swaps", step.swaps_inserted}}},
      {"controlled_step",
       {{"optimized", to_json(report.optimized)},
        {"unfolded", to_json(report.unfolded)},
        {"optimized_controlled_cnot", report.optimized_controlled_cnot},
        {"unfolded_controlled_cnot", report.unfolded_controlled_cnot},
        {"cnot_saving", report.cnot_saving},
        {"cnot_saving_formula", 2 * (2 * m) * n_df},
        {"per_controlled_z", {{"cnot", crz_counts.cnot()}, {"rz", crz_counts.count(GateKind::kRZ)}}},
        {"per_controlled_zz", {{"cnot", crzz_counts.cnot()}, {"rz", crzz_counts.count(GateKind::kRZ)}}},
        {"per_controlled_two_body_term_grouped", {{"cnot", 4}, {"zz", 2}}}}},
      {"basis_changes", changes},
      {"hadamard_tests", tests}};
  write_output(manifest, opt.out, "gatecount.json", dump(doc));
  return kOk;
}

int cmd_synth(const SynthOptions& opt, RunManifest& manifest) {
  if (opt.output.empty()) throw UsageError("synth needs an output path");
  if (opt.n_orbitals < 1 || opt.n_orbitals > 16) throw UsageError("norb must be in 1..16");
  manifest.set_config({{"model", opt.model}, {"n_orbitals", opt.n_orbitals}, {"seed", opt.seed},
                       {"hopping", opt.hopping}, {"onsite", opt.onsite}});
  const int half = (opt.n_orbitals + 1) / 2;
  const int na = opt.n_alpha.value_or(half), nb = opt.n_beta.value_or(half);
  ActiveSpaceHamiltonian ham;
  if (opt.model == "homo-lumo") {
    if (opt.n_orbitals != 2) throw UsageError("the homo-lumo model has 2 orbitals");
    ham = homo_lumo_model(random_homo_lumo_params(opt.seed));
  } else if (opt.model == "hubbard") {
    if (opt.n_orbitals != 2) throw UsageError("the hubbard dimer has 2 orbitals");
    ham = hubbard_dimer(opt.hopping, opt.onsite);
  } else if (opt.model == "random") {
    ham = random_hamiltonian(opt.n_orbitals, na, nb, opt.seed);
  } else if (opt.model == "ppp") {
    ham.n_orbitals = opt.n_orbitals;
    ham.eri = ppp_like_eri(opt.n_orbitals, opt.seed);
    auto rng = make_rng(opt.seed, {0x0b});
    ham.one_body = random_symmetric(opt.n_orbitals, rng, 0.5);
  } else {
    throw UsageError("unknown model " + opt.model + " (homo-lumo, hubbard, random, ppp)");
  }
  if (opt.n_alpha || opt.n_beta || opt.model == "ppp") {
    ham.n_alpha = na;
    ham.n_beta = nb;
  }
  ham.validate();
  write_text_file(opt.output, serialize_fcidump(ham));
  manifest.add_output(opt.output);
  return kOk;
}

}  // namespace qfddf::cli
