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

#include "qfddf/synthetic.hpp"

#include "qfddf/linalg.hpp"
#include "qfddf/rng.hpp"

#include <cmath>
#include <numbers>

namespace qfddf {

Matrix random_special_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR();
  for (int k = 0; k < n; ++k)
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  if (n > 0 && q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Matrix random_symmetric(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  return 0.5 * (a + a.transpose());
}

Tensor4 random_eri(int n_orbitals, std::uint64_t seed, int rank) {
  auto rng = make_rng(seed, {0x45});
  const int n = n_orbitals;
  if (rank < 0) rank = n * (n + 1) / 2;
  Matrix sum = Matrix::Zero(n * n, n * n);
  for (int a = 0; a < rank; ++a) {
    const Matrix v = random_symmetric(n, rng, 1.0 / n);
    const Eigen::Map<const Vector> flat(v.data(), n * n);
    sum += flat * flat.transpose();
  }
  return Tensor4::from_matrix(sum, n);
}

ActiveSpaceHamiltonian random_hamiltonian(int n_orbitals, int n_alpha, int n_beta, std::uint64_t seed) {
  auto rng = make_rng(seed, {0x48});
  ActiveSpaceHamiltonian ham;
  ham.n_orbitals = n_orbitals;
  ham.e_ext = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  ham.one_body = random_symmetric(n_orbitals, rng, 0.5);
  ham.eri = random_eri(n_orbitals, seed);
  ham.n_alpha = n_alpha;
  ham.n_beta = n_beta;
  return ham;
}

Tensor4 ppp_like_eri(int n_orbitals, std::uint64_t seed, double perturbation) {
  auto rng = make_rng(seed, {0x50});
  const int n = n_orbitals;
  const double hubbard = 11.13 / 27.2114;
  const double bond = 1.40 / 0.529177;
  const double radius = n > 1 ? bond / (2.0 * std::sin(std::numbers::pi / n)) : 0.0;
  Matrix gamma(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * (i - j) / n;
      const double r = radius * std::sqrt(2.0 - 2.0 * std::cos(angle));
      gamma(i, j) = hubbard / std::sqrt(1.0 + std::pow(hubbard * r, 2));
    }
  Tensor4 site(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) site(i, i, j, j) = gamma(i, j);

  const Tensor4 noise = random_eri(n, splitmix64(seed ^ 0x7075), n);
  const double scale = perturbation * gamma.cwiseAbs().maxCoeff() / std::max(noise.max_abs(), 1e-300);
  Matrix combined = site.as_matrix() + scale * noise.as_matrix();

  ActiveSpaceHamiltonian tmp;
  tmp.n_orbitals = n;
  tmp.one_body = Matrix::Zero(n, n);
  tmp.eri = Tensor4::from_matrix(combined, n);
  return rotate_orbitals(tmp, random_special_orthogonal(n, rng)).eri;
}

ActiveSpaceHamiltonian hubbard_dimer(double hopping, double onsite_u) {
  ActiveSpaceHamiltonian ham;
  ham.n_orbitals = 2;
  ham.one_body = Matrix::Zero(2, 2);
  ham.one_body(0, 1) = ham.one_body(1, 0) = -hopping;
  ham.eri = Tensor4(2);
  ham.eri(0, 0, 0, 0) = onsite_u;
  ham.eri(1, 1, 1, 1) = onsite_u;
  ham.n_alpha = 1;
  ham.n_beta = 1;
  return ham;
}

ActiveSpaceHamiltonian homo_lumo_model(const HomoLumoParams& p) {
  ActiveSpaceHamiltonian ham;
  ham.n_orbitals = 2;
  ham.e_ext = p.e_ext;
  ham.one_body = Matrix::Zero(2, 2);
  ham.one_body(0, 0) = p.eps_g;
  ham.one_body(1, 1) = p.eps_u;
  ham.eri = Tensor4(2);
  ham.eri.set_symmetric(0, 0, 0, 0, p.j_gg);
  ham.eri.set_symmetric(1, 1, 1, 1, p.j_uu);
  ham.eri.set_symmetric(0, 0, 1, 1, p.j_gu);
  ham.eri.set_symmetric(0, 1, 0, 1, p.k_gu);
  ham.n_alpha = 1;
  ham.n_beta = 1;
  return ham;
}

HomoLumoParams random_homo_lumo_params(std::uint64_t seed) {
  auto rng = make_rng(seed, {0x4c});
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  HomoLumoParams p;
  p.e_ext = uniform(-1.0, 1.0);
  p.eps_g = uniform(-0.6, -0.3);
  p.eps_u = uniform(0.1, 0.3);
  p.j_gg = uniform(0.55, 0.65);
  p.j_uu = uniform(0.55, 0.65);
  p.j_gu = uniform(0.5, 0.6);
  p.k_gu = uniform(0.125, 0.2);
  return p;
}

DFDecomposition random_decomposition(int n_orbitals, int n_df, std::uint64_t seed) {
  auto rng = make_rng(seed, {0x44});
  DFDecomposition dec;
  dec.n_orbitals = n_orbitals;
  dec.e_ext = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  dec.one_body = decompose_one_body(random_symmetric(n_orbitals, rng, 0.5));
  for (int t = 0; t < n_df; ++t) {
    DFLayer layer;
    layer.leaf = random_special_orthogonal(n_orbitals, rng);
    layer.core = random_symmetric(n_orbitals, rng, 0.3);
    dec.layers.push_back(std::move(layer));
  }
  return dec;
}

}  // namespace qfddf
