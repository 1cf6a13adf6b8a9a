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

#include "qfddf/double_factorization.hpp"

#include <vector>

namespace qfddf {

/// Spin-orbital (k, sigma) maps to mode k + sigma * M, sigma = 0 for alpha.
inline int spin_orbital(int k, int sigma, int n_orbitals) { return k + sigma * n_orbitals; }

/// coefficient * zeta_a zeta_b with zeta = 1 - 2n in the layer's rotated frame.
struct ZetaPair {
  int mode_a = 0;
  int mode_b = 0;
  double coefficient = 0.0;
};

struct ZetaLayer {
  Matrix leaf;
  std::vector<ZetaPair> pairs;  ///< every unordered pair of distinct modes
  /// Optional per-orbital coefficient of zeta_{k alpha} + zeta_{k beta};
  /// empty once folded into the one-body term.
  Vector linear;
};

/// H = E'_ext + sum_{k,sigma} f'_k zeta_{k sigma} (in the frame of U0')
///     + sum_t [sum_pairs c zeta_a zeta_b + sum_{k,sigma} linear_k zeta_{k sigma}] (in the frame of U_t).
struct ZetaForm {
  int n_orbitals = 0;
  double e_ext = 0.0;
  Vector one_body_coefficients;
  Matrix one_body_leaf;
  std::vector<ZetaLayer> layers;
};

ZetaForm to_zeta_form(const DFDecomposition& dec);

/// The same operator with each layer's linear zeta terms left in place and
/// the one-body term in the frame of U0. Used as the un-rewritten baseline
/// for controlled-circuit gate accounting.
ZetaForm to_unfolded_zeta_form(const DFDecomposition& dec);

}  // namespace qfddf
