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

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace qfddf {

/// Occupation bitstring over 2M spin orbitals. Bit k is spin-alpha orbital k,
/// bit k+M is spin-beta orbital k; this is also the Jordan-Wigner qubit order.
using Bitstring = std::uint64_t;

/// Applies a_mode in place. Returns the fermionic sign, or 0 when the mode is empty.
inline int annihilate(Bitstring& state, int mode) {
  const Bitstring bit = Bitstring{1} << mode;
  if (!(state & bit)) return 0;
  state ^= bit;
  return (std::popcount(state & (bit - 1)) & 1) ? -1 : 1;
}

/// Applies a+_mode in place. Returns the fermionic sign, or 0 when the mode is occupied.
inline int create(Bitstring& state, int mode) {
  const Bitstring bit = Bitstring{1} << mode;
  if (state & bit) return 0;
  const int sign = (std::popcount(state & (bit - 1)) & 1) ? -1 : 1;
  state |= bit;
  return sign;
}

struct Determinant {
  Bitstring alpha = 0;
  Bitstring beta = 0;

  Bitstring combined(int n_orbitals) const { return alpha | (beta << n_orbitals); }
  bool operator==(const Determinant&) const = default;
};

inline constexpr std::size_t kDefaultSectorCap = 4096;

class SectorTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Determinants with fixed (n_alpha, n_beta), alpha-major then beta, ascending.
class SectorBasis {
 public:
  SectorBasis(int n_orbitals, int n_alpha, int n_beta);

  int n_orbitals() const { return n_orbitals_; }
  int n_alpha() const { return n_alpha_; }
  int n_beta() const { return n_beta_; }
  std::size_t dimension() const { return determinants_.size(); }
  const std::vector<Determinant>& determinants() const { return determinants_; }
  std::vector<Bitstring> combined() const;

  std::optional<std::size_t> index_of(Bitstring combined) const;

  static std::size_t predicted_dimension(int n_orbitals, int n_alpha, int n_beta);

 private:
  int n_orbitals_;
  int n_alpha_;
  int n_beta_;
  std::vector<Determinant> determinants_;
  std::unordered_map<Bitstring, std::size_t> lookup_;
};

/// Matrix of E_ext + sum h_pq a+a + 1/2 sum (pq|rs) a+_p a+_r a_s a_q (spin summed)
/// over an arbitrary particle-conserving basis of occupation bitstrings.
Matrix hamiltonian_matrix(const ActiveSpaceHamiltonian& ham, std::span<const Bitstring> basis);

/// Same operator assembled as E_ext + sum kappa_pq E_pq + 1/2 sum (pq|rs) E_pq E_rs.
Matrix hamiltonian_matrix_kappa_form(const ActiveSpaceHamiltonian& ham, std::span<const Bitstring> basis);

/// Sector Hamiltonian in the SectorBasis ordering. Throws SectorTooLarge past `cap`.
Matrix build_sector_hamiltonian(const ActiveSpaceHamiltonian& ham, int n_alpha, int n_beta,
                                std::size_t cap = kDefaultSectorCap);

Matrix build_sector_hamiltonian_kappa_form(const ActiveSpaceHamiltonian& ham, int n_alpha, int n_beta,
                                           std::size_t cap = kDefaultSectorCap);

/// Ascending eigenvalues of the sector Hamiltonian, degeneracies repeated.
Vector fci_oracle(const ActiveSpaceHamiltonian& ham, int n_alpha, int n_beta,
                  std::size_t cap = kDefaultSectorCap);

/// Dense operators on the full 2^(2M) Fock space, indexed by Bitstring value.
/// Intended for small M (verification and exact propagation).
class FockSpace {
 public:
  explicit FockSpace(int n_orbitals);

  int n_orbitals() const { return n_orbitals_; }
  int n_modes() const { return 2 * n_orbitals_; }
  std::size_t dimension() const { return std::size_t{1} << (2 * n_orbitals_); }

  Matrix identity() const { return Matrix::Identity(dimension(), dimension()); }

  /// sum_pq coeff_pq a+_{p,spin} a_{q,spin}; spin 0 = alpha, 1 = beta.
  Matrix one_body(const Matrix& coeff, int spin) const;
  /// Spin-summed one-body operator sum_pq coeff_pq E_pq.
  Matrix one_body(const Matrix& coeff) const;

  /// Number operator of orbital k in the frame rotated by `frame`
  /// (b+_k = sum_p frame_pk a+_p).
  Matrix rotated_number(const Matrix& frame, int k, int spin) const;

  Matrix number_alpha() const;
  Matrix number_beta() const;

  Matrix hamiltonian(const ActiveSpaceHamiltonian& ham) const;

 private:
  int n_orbitals_;
};

}  // namespace qfddf
