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

#include "qfddf/hamiltonian.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfddf {

class FcidumpError : public std::runtime_error {
 public:
  enum class Kind { kMalformedHeader, kMalformedRecord, kIndexOutOfRange, kConflictingDuplicate };

  FcidumpError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Parses FCIDUMP text (1-based indices, chemists' notation).
///
/// Each ERI record populates all of its symmetry images; a second record
/// that lands on an already populated entry must agree to 1e-10. Orbital
/// energy records (`value i 0 0 0`) are accepted and ignored.
ActiveSpaceHamiltonian parse_fcidump(std::string_view text);

ActiveSpaceHamiltonian read_fcidump(const std::string& path);

/// Writes the unique integrals (p>=q, r>=s, pq>=rs) at full double precision.
std::string serialize_fcidump(const ActiveSpaceHamiltonian& ham);

}  // namespace qfddf
