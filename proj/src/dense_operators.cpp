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

#include "qfddf/dense_operators.hpp"

namespace qfddf {

Matrix dense_operator(const FockSpace& space, const DFDecomposition& dec) {
  const int n = dec.n_orbitals;
  Matrix h = dec.e_ext * space.identity();
  h += space.one_body(dec.one_body.leaf * dec.one_body.eigenvalues.asDiagonal() * dec.one_body.leaf.transpose());
  for (const DFLayer& layer : dec.layers) {
    std::vector<Matrix> number(n);
    for (int k = 0; k < n; ++k) number[k] = space.rotated_number(layer.leaf, k, 0) + space.rotated_number(layer.leaf, k, 1);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) h += 0.5 * layer.core(k, l) * number[k] * number[l];
  }
  return h;
}

Matrix dense_operator(const FockSpace& space, const ZetaForm& form) {
  const int n = form.n_orbitals;
  const Matrix id = space.identity();
  Matrix h = form.e_ext * id;
  for (int k = 0; k < n; ++k)
    for (int s = 0; s < 2; ++s)
      h += form.one_body_coefficients(k) * (id - 2.0 * space.rotated_number(form.one_body_leaf, k, s));
  for (const ZetaLayer& layer : form.layers) {
    std::vector<Matrix> zeta(2 * n);
    for (int k = 0; k < n; ++k)
      for (int s = 0; s < 2; ++s) zeta[spin_orbital(k, s, n)] = id - 2.0 * space.rotated_number(layer.leaf, k, s);
    for (const ZetaPair& pair : layer.pairs) h += pair.coefficient * zeta[pair.mode_a] * zeta[pair.mode_b];
    for (Eigen::Index k = 0; k < layer.linear.size(); ++k)
      h += layer.linear(k) * (zeta[spin_orbital(k, 0, n)] + zeta[spin_orbital(k, 1, n)]);
  }
  return h;
}

}  // namespace qfddf
