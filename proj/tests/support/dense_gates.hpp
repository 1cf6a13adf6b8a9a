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

// Gate matrices written from their textbook definitions and embedded into
// n qubits by index bookkeeping, independent of the simulator kernels.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace qfddf::testing {

using Cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

/// Local bit j of the row/column index is qubit qubits[j].
inline CMat embed(const CMat& local, const std::vector<int>& qubits, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::size_t mask = 0;
  for (int q : qubits) mask |= std::size_t{1} << q;
  auto local_index = [&](std::size_t i) {
    std::size_t l = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j)
      if (i >> qubits[j] & 1) l |= std::size_t{1} << j;
    return l;
  };
  CMat out = CMat::Zero(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if ((r & ~mask) == (c & ~mask)) out(r, c) = local(local_index(r), local_index(c));
  return out;
}

inline CMat pauli(char p) {
  CMat m(2, 2);
  const Cx i(0, 1);
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = CMat::Identity(2, 2);
  }
  return m;
}

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// exp(-i t H) for a real symmetric H.
inline CMat expm_hermitian(const Eigen::MatrixXd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(Cx(0, -t * es.eigenvalues()(k)));
  const CMat v = es.eigenvectors().cast<Cx>();
  return v * phases.asDiagonal() * v.adjoint();
}

/// Largest singular value.
inline double spectral_norm(const CMat& a) {
  return Eigen::JacobiSVD<CMat>(a).singularValues()(0);
}

}  // namespace qfddf::testing
