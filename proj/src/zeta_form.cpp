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

#include "qfddf/zeta_form.hpp"

#include "qfddf/linalg.hpp"

namespace qfddf {

ZetaForm to_zeta_form(const DFDecomposition& dec) {
  const int n = dec.n_orbitals;
  ZetaForm out;
  out.n_orbitals = n;

  Matrix f = dec.one_body.leaf * dec.one_body.eigenvalues.asDiagonal() * dec.one_body.leaf.transpose();
  double constant = dec.e_ext;
  for (const DFLayer& layer : dec.layers) {
    const Vector r = layer.core.rowwise().sum();
    f += layer.leaf * r.asDiagonal() * layer.leaf.transpose();
    constant += -0.5 * layer.core.sum() + 0.25 * layer.core.trace();

    ZetaLayer zl;
    zl.leaf = layer.leaf;
    for (int a = 0; a < 2 * n; ++a)
      for (int b = a + 1; b < 2 * n; ++b) zl.pairs.push_back({a, b, 0.25 * layer.core(a % n, b % n)});
    out.layers.push_back(std::move(zl));
  }

  if (dec.layers.empty()) {
    out.one_body_leaf = dec.one_body.leaf;
    out.one_body_coefficients = -0.5 * dec.one_body.eigenvalues;
    constant += dec.one_body.eigenvalues.sum();
  } else {
    const FixedEigen eig = symmetric_eigen_fixed(f);
    out.one_body_leaf = eig.vectors;
    out.one_body_coefficients = -0.5 * eig.values;
    constant += eig.values.sum();
  }
  out.e_ext = constant;
  return out;
}

ZetaForm to_unfolded_zeta_form(const DFDecomposition& dec) {
  const int n = dec.n_orbitals;
  ZetaForm out;
  out.n_orbitals = n;
  out.one_body_leaf = dec.one_body.leaf;
  out.one_body_coefficients = -0.5 * dec.one_body.eigenvalues;
  double constant = dec.e_ext + dec.one_body.eigenvalues.sum();
  for (const DFLayer& layer : dec.layers) {
    constant += 0.5 * layer.core.sum() + 0.25 * layer.core.trace();
    ZetaLayer zl;
    zl.leaf = layer.leaf;
    zl.linear = -0.5 * layer.core.rowwise().sum();
    for (int a = 0; a < 2 * n; ++a)
      for (int b = a + 1; b < 2 * n; ++b) zl.pairs.push_back({a, b, 0.25 * layer.core(a % n, b % n)});
    out.layers.push_back(std::move(zl));
  }
  out.e_ext = constant;
  return out;
}

}  // namespace qfddf
