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
#include "qfddf/fock.hpp"
#include "qfddf/zeta_form.hpp"

namespace qfddf {

/// E_ext + sum_k f0_k N_k(U0) + 1/2 sum_t sum_kl Z_kl N_k(U_t) N_l(U_t) on the full Fock space,
/// with N_k the spin-summed number operator of rotated orbital k.
Matrix dense_operator(const FockSpace& space, const DFDecomposition& dec);

/// E'_ext + sum f'_k zeta_k(U0') + sum_t sum_pairs c zeta_a(U_t) zeta_b(U_t).
Matrix dense_operator(const FockSpace& space, const ZetaForm& form);

}  // namespace qfddf
