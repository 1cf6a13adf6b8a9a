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

#include "qfddf/compiler.hpp"
#include "qfddf/double_factorization.hpp"
#include "qfddf/qfd.hpp"
#include "qfddf/statevector.hpp"

#include "json.hpp"

#include <string>

namespace qfddf {

using Json = nlohmann::ordered_json;

/// Rows as nested arrays.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const DFDecomposition& dec);
DFDecomposition decomposition_from_json(const Json& j);

Json to_json(const Circuit& circuit);
Circuit circuit_from_json(const Json& j);

Json to_json(const GateCounts& counts);

/// Keys are hexadecimal bitstrings ("0x1f").
Json to_json(const ShotRecord& shots);
ShotRecord shots_from_json(const Json& j);

Json to_json(const NoiseModel& noise);
/// Accepts {p1, p2, readout}; missing keys default to 0. Throws std::invalid_argument.
NoiseModel noise_from_json(const Json& j);

Json to_json(const SubspaceMatrices& m);
Json to_json(const SpectrumResult& result);
Json to_json(const Gaps& gaps);

/// Occupied orbital indices of a spin string.
Json occupation_to_json(Bitstring bits);

/// Reads a whole file; throws std::ios_base::failure.
std::string read_text_file(const std::string& path);
/// Writes through a temporary file renamed into place; throws std::ios_base::failure.
void write_text_file(const std::string& path, const std::string& text);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace qfddf
