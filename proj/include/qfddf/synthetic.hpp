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

#include <cstdint>
#include <random>

namespace qfddf {

/// Haar-like random matrix in SO(n).
Matrix random_special_orthogonal(int n, std::mt19937_64& rng);

Matrix random_symmetric(int n, std::mt19937_64& rng, double scale = 1.0);

/// Positive semidefinite, 8-fold symmetric ERI tensor sum_a v_a v_a^T with
/// random symmetric v_a; rank defaults to M(M+1)/2.
Tensor4 random_eri(int n_orbitals, std::uint64_t seed, int rank = -1);

ActiveSpaceHamiltonian random_hamiltonian(int n_orbitals, int n_alpha, int n_beta, std::uint64_t seed);

/// Pariser-Parr-Pople style ERIs: Ohno-screened Coulomb between sites on a
/// ring, a random PSD perturbation of relative size `perturbation`, then a
/// random orbital rotation.
Tensor4 ppp_like_eri(int n_orbitals, std::uint64_t seed, double perturbation = 0.1);

/// Two-site Hubbard model in the site basis.
ActiveSpaceHamiltonian hubbard_dimer(double hopping, double onsite_u);

/// Two-orbital (HOMO g, LUMO u) model with inversion symmetry: only
/// (gg|gg), (uu|uu), (gg|uu) and (gu|gu) classes are nonzero.
struct HomoLumoParams {
  double e_ext = 0.0;
  double eps_g = -0.4;
  double eps_u = 0.2;
  double j_gg = 0.6;
  double j_uu = 0.58;
  double j_gu = 0.55;
  double k_gu = 0.15;
};

ActiveSpaceHamiltonian homo_lumo_model(const HomoLumoParams& params);
HomoLumoParams random_homo_lumo_params(std::uint64_t seed);

/// Random decomposition with special orthogonal leaves and symmetric cores.
DFDecomposition random_decomposition(int n_orbitals, int n_df, std::uint64_t seed);

}  // namespace qfddf
