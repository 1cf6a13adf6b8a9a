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

#include "qfddf/fock.hpp"

#include <algorithm>
#include <numeric>

namespace qfddf {

namespace {

std::vector<Bitstring> masks_with_popcount(int n, int k) {
  std::vector<Bitstring> out;
  for (Bitstring m = 0; m < (Bitstring{1} << n); ++m) {
    if (std::popcount(m) == k) out.push_back(m);
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

class BasisIndex {
 public:
  explicit BasisIndex(std::span<const Bitstring> basis) {
    map_.reserve(basis.size() * 2);
    for (std::size_t i = 0; i < basis.size(); ++i) map_.emplace(basis[i], i);
  }
  std::optional<std::size_t> find(Bitstring s) const {
    auto it = map_.find(s);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<Bitstring, std::size_t> map_;
};

}  // namespace

SectorBasis::SectorBasis(int n_orbitals, int n_alpha, int n_beta)
    : n_orbitals_(n_orbitals), n_alpha_(n_alpha), n_beta_(n_beta) {
  if (n_orbitals < 0 || n_orbitals > 31) throw std::invalid_argument("SectorBasis: unsupported orbital count");
  if (n_alpha < 0 || n_alpha > n_orbitals || n_beta < 0 || n_beta > n_orbitals) {
    throw std::invalid_argument("SectorBasis: particle counts out of range");
  }
  const auto alphas = masks_with_popcount(n_orbitals, n_alpha);
  const auto betas = masks_with_popcount(n_orbitals, n_beta);
  determinants_.reserve(alphas.size() * betas.size());
  for (Bitstring a : alphas)
    for (Bitstring b : betas) determinants_.push_back({a, b});
  for (std::size_t i = 0; i < determinants_.size(); ++i) {
    lookup_.emplace(determinants_[i].combined(n_orbitals_), i);
  }
}

std::vector<Bitstring> SectorBasis::combined() const {
  std::vector<Bitstring> out;
  out.reserve(determinants_.size());
  for (const auto& d : determinants_) out.push_back(d.combined(n_orbitals_));
  return out;
}

std::optional<std::size_t> SectorBasis::index_of(Bitstring combined) const {
  auto it = lookup_.find(combined);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t SectorBasis::predicted_dimension(int n_orbitals, int n_alpha, int n_beta) {
  return static_cast<std::size_t>(binomial(n_orbitals, n_alpha) * binomial(n_orbitals, n_beta));
}

Matrix hamiltonian_matrix(const ActiveSpaceHamiltonian& ham, std::span<const Bitstring> basis) {
  const int m = ham.n_orbitals;
  const int modes = 2 * m;
  const BasisIndex index(basis);
  const std::size_t dim = basis.size();
  Matrix out = Matrix::Zero(dim, dim);

  for (std::size_t col = 0; col < dim; ++col) {
    const Bitstring ket = basis[col];
    out(col, col) += ham.e_ext;

    // One-body: h_pq a+_{p s} a_{q s}.
    for (int spin = 0; spin < 2; ++spin) {
      for (int q = 0; q < m; ++q) {
        Bitstring s1 = ket;
        const int sq = annihilate(s1, q + spin * m);
        if (!sq) continue;
        for (int p = 0; p < m; ++p) {
          if (ham.one_body(p, q) == 0.0) continue;
          Bitstring s2 = s1;
          const int sp = create(s2, p + spin * m);
          if (!sp) continue;
          if (auto row = index.find(s2)) out(*row, col) += sp * sq * ham.one_body(p, q);
        }
      }
    }

    // Two-body: 1/2 (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}.
    for (int qm = 0; qm < modes; ++qm) {
      Bitstring s1 = ket;
      const int sgn1 = annihilate(s1, qm);
      if (!sgn1) continue;
      const int sigma = qm / m;
      const int q = qm % m;
      for (int sm = 0; sm < modes; ++sm) {
        Bitstring s2 = s1;
        const int sgn2 = annihilate(s2, sm);
        if (!sgn2) continue;
        const int tau = sm / m;
        const int s = sm % m;
        for (int r = 0; r < m; ++r) {
          Bitstring s3 = s2;
          const int sgn3 = create(s3, r + tau * m);
          if (!sgn3) continue;
          for (int p = 0; p < m; ++p) {
            const double v = ham.eri(p, q, r, s);
            if (v == 0.0) continue;
            Bitstring s4 = s3;
            const int sgn4 = create(s4, p + sigma * m);
            if (!sgn4) continue;
            if (auto row = index.find(s4)) out(*row, col) += 0.5 * v * sgn1 * sgn2 * sgn3 * sgn4;
          }
        }
      }
    }
  }
  return out;
}

Matrix hamiltonian_matrix_kappa_form(const ActiveSpaceHamiltonian& ham, std::span<const Bitstring> basis) {
  const int m = ham.n_orbitals;
  const Matrix kappa = compute_kappa(ham.one_body, ham.eri);
  const BasisIndex index(basis);
  const std::size_t dim = basis.size();
  Matrix out = Matrix::Zero(dim, dim);

  // E_pq |ket> as a list of (sign, result) pairs over both spins.
  auto excite = [m](Bitstring ket, int p, int q, std::vector<std::pair<int, Bitstring>>& res) {
    res.clear();
    for (int spin = 0; spin < 2; ++spin) {
      Bitstring s = ket;
      const int a = annihilate(s, q + spin * m);
      if (!a) continue;
      const int c = create(s, p + spin * m);
      if (!c) continue;
      res.emplace_back(a * c, s);
    }
  };

  std::vector<std::pair<int, Bitstring>> first, second;
  for (std::size_t col = 0; col < dim; ++col) {
    const Bitstring ket = basis[col];
    out(col, col) += ham.e_ext;
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        excite(ket, p, q, first);
        for (const auto& [sg, st] : first) {
          if (auto row = index.find(st)) out(*row, col) += sg * kappa(p, q);
        }
      }
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s) {
        excite(ket, r, s, first);
        for (const auto& [sg1, st1] : first) {
          for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q) {
              const double v = ham.eri(p, q, r, s);
              if (v == 0.0) continue;
              excite(st1, p, q, second);
              for (const auto& [sg2, st2] : second) {
                if (auto row = index.find(st2)) out(*row, col) += 0.5 * v * sg1 * sg2;
              }
            }
        }
      }
  }
  return out;
}

namespace {

SectorBasis checked_sector(const ActiveSpaceHamiltonian& ham, int n_alpha, int n_beta, std::size_t cap) {
  const std::size_t dim = SectorBasis::predicted_dimension(ham.n_orbitals, n_alpha, n_beta);
  if (dim > cap) {
    throw SectorTooLarge("sector dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
  }
  return SectorBasis(ham.n_orbitals, n_alpha, n_beta);
}

}  // namespace

Matrix build_sector_hamiltonian(const ActiveSpaceHamiltonian& ham, int n_alpha, int n_beta, std::size_t cap) {
  const SectorBasis basis = checked_sector(ham, n_alpha, n_beta, cap);
  const auto combined = basis.combined();
  return hamiltonian_matrix(ham, combined);
}

Matrix build_sector_hamiltonian_kappa_form(const ActiveSpaceHamiltonian& ham, int n_alpha, int n_beta,
                                           std::size_t cap) {
  const SectorBasis basis = checked_sector(ham, n_alpha, n_beta, cap);
  const auto combined = basis.combined();
  return hamiltonian_matrix_kappa_form(ham, combined);
}

Vector fci_oracle(const ActiveSpaceHamiltonian& ham, int n_alpha, int n_beta, std::size_t cap) {
  const Matrix h = build_sector_hamiltonian(ham, n_alpha, n_beta, cap);
  if (h.rows() == 0) return Vector();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

FockSpace::FockSpace(int n_orbitals) : n_orbitals_(n_orbitals) {
  if (n_orbitals < 0 || n_orbitals > 6) throw std::invalid_argument("FockSpace: dense Fock space limited to M <= 6");
}

Matrix FockSpace::one_body(const Matrix& coeff, int spin) const {
  const int m = n_orbitals_;
  const std::size_t dim = dimension();
  Matrix out = Matrix::Zero(dim, dim);
  for (Bitstring ket = 0; ket < dim; ++ket) {
    for (int q = 0; q < m; ++q) {
      Bitstring s1 = ket;
      const int a = annihilate(s1, q + spin * m);
      if (!a) continue;
      for (int p = 0; p < m; ++p) {
        if (coeff(p, q) == 0.0) continue;
        Bitstring s2 = s1;
        const int c = create(s2, p + spin * m);
        if (!c) continue;
        out(s2, ket) += a * c * coeff(p, q);
      }
    }
  }
  return out;
}

Matrix FockSpace::one_body(const Matrix& coeff) const { return one_body(coeff, 0) + one_body(coeff, 1); }

Matrix FockSpace::rotated_number(const Matrix& frame, int k, int spin) const {
  const Matrix coeff = frame.col(k) * frame.col(k).transpose();
  return one_body(coeff, spin);
}

Matrix FockSpace::number_alpha() const { return one_body(Matrix::Identity(n_orbitals_, n_orbitals_), 0); }

Matrix FockSpace::number_beta() const { return one_body(Matrix::Identity(n_orbitals_, n_orbitals_), 1); }

Matrix FockSpace::hamiltonian(const ActiveSpaceHamiltonian& ham) const {
  std::vector<Bitstring> basis(dimension());
  std::iota(basis.begin(), basis.end(), Bitstring{0});
  return hamiltonian_matrix(ham, basis);
}

}  // namespace qfddf
