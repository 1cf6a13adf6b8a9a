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

// Reference second-quantized operators built from Kronecker products of
// 2x2 Pauli factors. Independent of the bit-twiddling sign code in the
// library. Qubit q is bit q of the basis index; the alpha spin orbital k is
// qubit k and the beta spin orbital k is qubit k + M.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace qfddf::testing {

using Dense = Eigen::MatrixXd;

inline Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// a_j on n qubits: Z on qubits below j, |0><1| on j, identity above.
inline Dense jw_annihilator(int n_qubits, int j) {
  Dense id = Dense::Identity(2, 2);
  Dense z(2, 2);
  z << 1, 0, 0, -1;
  Dense lower(2, 2);
  lower << 0, 1, 0, 0;
  Dense out = Dense::Identity(1, 1);
  // Highest qubit is the most significant Kronecker factor.
  for (int q = n_qubits - 1; q >= 0; --q) {
    const Dense& f = q < j ? z : (q == j ? lower : id);
    out = kron(out, f);
  }
  return out;
}

struct JwOperators {
  int n_orbitals;
  std::vector<Dense> a;  // indexed by spin orbital

  explicit JwOperators(int m) : n_orbitals(m) {
    for (int j = 0; j < 2 * m; ++j) a.push_back(jw_annihilator(2 * m, j));
  }

  std::size_t dim() const { return std::size_t{1} << (2 * n_orbitals); }

  /// E_pq = sum_sigma a+_{p sigma} a_{q sigma}
  Dense excitation(int p, int q) const {
    const int m = n_orbitals;
    return a[p].transpose() * a[q] + a[p + m].transpose() * a[q + m];
  }
};

/// E_ext + sum h a+a + 1/2 sum (pq|rs) a+_p a+_r a_s a_q, loops written out
/// index by index. eri(p,q,r,s) is any callable.
template <class Eri>
Dense jw_hamiltonian(const JwOperators& ops, double e_ext, const Eigen::MatrixXd& h, const Eri& eri) {
  const int m = ops.n_orbitals;
  Dense out = e_ext * Dense::Identity(ops.dim(), ops.dim());
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int s1 = 0; s1 < 2; ++s1) out += h(p, q) * ops.a[p + s1 * m].transpose() * ops.a[q + s1 * m];
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
          const double v = eri(p, q, r, s);
          if (v == 0.0) continue;
          for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) {
              out += 0.5 * v * ops.a[p + s1 * m].transpose() * ops.a[r + s2 * m].transpose() * ops.a[s + s2 * m] *
                     ops.a[q + s1 * m];
            }
        }
  return out;
}

}  // namespace qfddf::testing
