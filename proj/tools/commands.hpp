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

#pragma once

#include "qfddf/serialize.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfddf::cli {

enum ExitCode : int { kOk = 0, kParse = 2, kOptimizer = 3, kEngineAbort = 4, kIo = 5 };

/// Invalid command-line values or input documents.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OptimizerFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs, configuration and per-phase wall times of one invocation.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> argv);

  void add_input(const std::string& path, const std::string& contents);
  void set_config(Json config) { config_ = std::move(config); }
  void add_output(const std::string& path) { outputs_.push_back(path); }
  void start_phase(const std::string& name);
  void end_phase();
  Json to_json() const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  Json inputs_ = Json::array();
  Json config_ = Json::object();
  std::vector<std::string> outputs_;
  std::vector<std::pair<std::string, double>> phases_;
  std::string current_;
  std::chrono::steady_clock::time_point started_;
};

struct FactorizeOptions {
  std::string fcidump;
  std::string ndf = "2";  ///< "k" or "a..b"
  std::string method = "cdf";
  CdfOptions cdf;
  std::string solver = "auto";
  bool strict = false;
  std::string out = ".";
};

struct QfdOptions {
  std::string fcidump;
  std::string decomposition;
  std::string method = "cdf";
  QfdConfig config;
  CdfOptions cdf;
  std::string mode = "exact";
  std::string noise;
  std::vector<std::string> references;  ///< "0,1/0,1": alpha then beta occupations
  std::string sweep;                    ///< "nqfd=a..b" or "ndf=a..b"
  std::string out = ".";
};

struct OracleOptions {
  std::string fcidump;
  std::optional<int> n_alpha;
  std::optional<int> n_beta;
  std::size_t cap = kDefaultSectorCap;
  std::string out = ".";
};

struct GatecountOptions {
  std::string fcidump;
  std::string decomposition;
  int n_df = 1;
  std::string method = "cdf";
  CdfOptions cdf;
  double dt = 0.1;
  int n_qfd = 2;
  bool linear_topology = false;
  std::string out = ".";
};

struct SynthOptions {
  std::string model = "homo-lumo";
  int n_orbitals = 2;
  std::optional<int> n_alpha;
  std::optional<int> n_beta;
  std::uint64_t seed = 0;
  double hopping = 1.0;
  double onsite = 4.0;
  std::string output;
};

/// Inclusive integer range "a..b" or a single integer.
std::pair<int, int> parse_range(const std::string& text);
Determinant parse_reference(const std::string& text, int n_orbitals);

int cmd_factorize(const FactorizeOptions& opt, RunManifest& manifest);
int cmd_qfd(QfdOptions opt, RunManifest& manifest);
int cmd_oracle(const OracleOptions& opt, RunManifest& manifest);
int cmd_gatecount(const GatecountOptions& opt, RunManifest& manifest);
int cmd_synth(const SynthOptions& opt, RunManifest& manifest);

/// Thread count from QFDDF_THREADS, defaulting to 1.
int default_threads();

}  // namespace qfddf::cli
