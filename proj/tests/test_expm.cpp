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

#include "qfddf/expm.hpp"
#include "qfddf/linalg.hpp"
#include "qfddf/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qfddf {
namespace {

Matrix random_antisymmetric(int n, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::normal_distribution<double> normal;
  Matrix x = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      x(a, b) = normal(rng);
      x(b, a) = -x(a, b);
    }
  return x;
}

TEST(Expm, ZeroIsIdentity) {
  EXPECT_LT((expm_antisymmetric(Matrix::Zero(4, 4)) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Expm, TwoByTwoClosedForm) {
  const double theta = 0.731;
  Matrix x(2, 2);
  x << 0, theta, -theta, 0;
  Matrix expected(2, 2);
  expected << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  EXPECT_LT((expm_antisymmetric(x) - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Expm, SpecialOrthogonal) {
  for (int n = 1; n <= 6; ++n) {
    const Matrix u = expm_antisymmetric(random_antisymmetric(n, n));
    EXPECT_LT(orthogonality_error(u), 1e-12);
    EXPECT_NEAR(u.determinant(), 1.0, 1e-12);
  }
}

TEST(Expm, MatchesTaylorSeries) {
  const Matrix x = 0.3 * random_antisymmetric(5, 2);
  Matrix sum = Matrix::Identity(5, 5), term = Matrix::Identity(5, 5);
  for (int k = 1; k < 40; ++k) {
    term = term * x / k;
    sum += term;
  }
  EXPECT_LT((expm_antisymmetric(x) - sum).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Expm, RejectsNonAntisymmetric) {
  EXPECT_THROW(AntisymmetricExp(Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST(Expm, DirectionalDerivativeFiniteDifference) {
  const Matrix x = random_antisymmetric(4, 3);
  const Matrix e = random_antisymmetric(4, 4);
  const AntisymmetricExp f(x);
  const double h = 1e-5;
  const Matrix fd = (expm_antisymmetric(x + h * e) - expm_antisymmetric(x - h * e)) / (2 * h);
  const Matrix an = f.directional_derivative(e);
  EXPECT_LT((fd - an).norm() / an.norm(), 1e-7);
}

TEST(Expm, DerivativeWithRepeatedEigenvalues) {
  Matrix x = Matrix::Zero(4, 4);
  x(0, 1) = 0.5;
  x(1, 0) = -0.5;
  x(2, 3) = 0.5;
  x(3, 2) = -0.5;
  const Matrix e = random_antisymmetric(4, 9);
  const double h = 1e-5;
  const Matrix fd = (expm_antisymmetric(x + h * e) - expm_antisymmetric(x - h * e)) / (2 * h);
  EXPECT_LT((fd - AntisymmetricExp(x).directional_derivative(e)).norm() / fd.norm(), 1e-7);
}

TEST(Expm, PullbackIsAdjoint) {
  const Matrix x = random_antisymmetric(5, 5);
  const AntisymmetricExp f(x);
  auto rng = make_rng(6);
  std::normal_distribution<double> normal;
  Matrix g(5, 5), e(5, 5);
  for (int i = 0; i < 25; ++i) {
    g.data()[i] = normal(rng);
    e.data()[i] = normal(rng);
  }
  EXPECT_NEAR(g.cwiseProduct(f.directional_derivative(e)).sum(), f.pullback(g).cwiseProduct(e).sum(), 1e-12);
}

TEST(Expm, PackRoundTrip) {
  const Matrix x = random_antisymmetric(5, 7);
  EXPECT_EQ(antisymmetric_size(5), 10);
  EXPECT_EQ(unpack_antisymmetric(pack_antisymmetric(x), 5), x);
}

}  // namespace
}  // namespace qfddf
