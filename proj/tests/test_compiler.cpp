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

#include "qfddf/compiler.hpp"
#include "qfddf/dense_operators.hpp"
#include "qfddf/linalg.hpp"
#include "qfddf/rng.hpp"
#include "qfddf/statevector.hpp"
#include "qfddf/synthetic.hpp"
#include "qfddf/zeta_form.hpp"

#include "support/dense_gates.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace qfddf {
namespace {

using testing::CMat;
using testing::Cx;
using testing::expm_hermitian;
using testing::spectral_norm;

ZetaForm one_body_part(const ZetaForm& form) {
  ZetaForm out = form;
  out.layers.clear();
  out.e_ext = 0.0;
  return out;
}

ZetaForm layer_part(const ZetaForm& form, std::size_t t) {
  ZetaForm out;
  out.n_orbitals = form.n_orbitals;
  out.one_body_coefficients = Vector::Zero(form.n_orbitals);
  out.one_body_leaf = Matrix::Identity(form.n_orbitals, form.n_orbitals);
  out.layers = {form.layers[t]};
  return out;
}

CMat creation_matrix(int n_modes, int mode) {
  const std::size_t dim = std::size_t{1} << n_modes;
  CMat c = CMat::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Bitstring j = i;
    if (const int sign = create(j, mode)) c(j, i) = sign;
  }
  return c;
}

CMat ordered_product(const ZetaForm& form, double dt) {
  const FockSpace space(form.n_orbitals);
  CMat u = expm_hermitian(dense_operator(space, one_body_part(form)), dt);
  for (std::size_t t = 0; t < form.layers.size(); ++t)
    u = expm_hermitian(dense_operator(space, layer_part(form, t)), dt) * u;
  return std::exp(Cx(0, -dt * form.e_ext)) * u;
}

double max_abs(const CMat& a) { return a.cwiseAbs().maxCoeff(); }

TEST(Givens, RoundTrip) {
  for (int n = 1; n <= 6; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto rng = make_rng(seed, {static_cast<std::uint64_t>(n)});
      const Matrix u = random_special_orthogonal(n, rng);
      const auto rotations = givens_decompose(u);
      EXPECT_LE(rotations.size(), static_cast<std::size_t>(n * (n - 1) / 2));
      for (const auto& g : rotations) EXPECT_EQ(g.row_b, g.row_a + 1);
      EXPECT_LT((givens_product(rotations, n) - u).cwiseAbs().maxCoeff(), 1e-10) << n << " " << seed;
    }
}

TEST(Givens, IdentityIsEmpty) { EXPECT_TRUE(givens_decompose(Matrix::Identity(4, 4)).empty()); }

TEST(Givens, SingleRotation) {
  const auto rotations = givens_decompose(plane_rotation(2, 0, 1, 0.7));
  ASSERT_EQ(rotations.size(), 1u);
  EXPECT_EQ(rotations[0].row_a, 0);
  EXPECT_EQ(rotations[0].row_b, 1);
  EXPECT_NEAR(rotations[0].angle, 0.7, 1e-14);
}

TEST(Givens, RejectsReflection) {
  Matrix r = Matrix::Identity(3, 3);
  r(2, 2) = -1.0;
  EXPECT_THROW(givens_decompose(r), std::invalid_argument);
  EXPECT_THROW(givens_decompose(Matrix::Ones(2, 2)), std::invalid_argument);
}

// G(U) a+_k G(U)^dagger = sum_p U_pk a+_p and G(U)|vac> = |vac>.
TEST(Givens, OrbitalRotationIsFermionic) {
  const int m = 3;
  auto rng = make_rng(11);
  const Matrix u = random_special_orthogonal(m, rng);
  const QubitLayout layout{m, false};
  Circuit c(layout.n_qubits());
  append_orbital_rotation(c, u, layout);
  const CMat w = circuit_unitary(c);
  EXPECT_NEAR(std::abs(w(0, 0) - 1.0), 0.0, 1e-12);
  for (int spin = 0; spin < 2; ++spin)
    for (int k = 0; k < m; ++k) {
      CMat rotated = CMat::Zero(w.rows(), w.cols());
      for (int p = 0; p < m; ++p) rotated += u(p, k) * creation_matrix(2 * m, p + spin * m);
      EXPECT_LT(max_abs(w * creation_matrix(2 * m, k + spin * m) - rotated * w), 1e-10);
    }
}

TEST(Trotter, ZeroStepIsIdentity) {
  const auto form = to_zeta_form(random_decomposition(2, 1, 3));
  const QubitLayout layout{2, false};
  const CMat u = circuit_unitary(trotter_step_circuit(form, 0.0, layout));
  EXPECT_LT(max_abs(u - CMat::Identity(u.rows(), u.cols())), 1e-12);
}

TEST(Trotter, OneBodyIsExact) {
  auto dec = random_decomposition(3, 0, 4);
  const auto form = to_zeta_form(dec);
  const QubitLayout layout{3, false};
  const double dt = 0.37;
  const CMat u = circuit_unitary(trotter_step_circuit(form, dt, layout));
  EXPECT_LT(max_abs(u - expm_hermitian(dense_operator(FockSpace(3), dec), dt)), 1e-10);
}

TEST(Trotter, OrderedProduct) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const int m = 2;
    const auto form = to_zeta_form(random_decomposition(m, 1 + static_cast<int>(seed % 2), 20 + seed));
    const QubitLayout layout{m, false};
    const CMat u = circuit_unitary(trotter_step_circuit(form, 0.1, layout));
    EXPECT_LT(max_abs(u - ordered_product(form, 0.1)), 1e-10) << seed;
  }
}

TEST(Trotter, UnfoldedOrderedProduct) {
  const auto dec = random_decomposition(2, 2, 25);
  const auto form = to_unfolded_zeta_form(dec);
  const CMat u = circuit_unitary(trotter_step_circuit(form, 0.1, QubitLayout{2, false}));
  EXPECT_LT(max_abs(u - ordered_product(form, 0.1)), 1e-10);
}

TEST(Trotter, SecondOrderLocalError) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto dec = random_decomposition(2, 1, 30 + seed);
    const auto form = to_zeta_form(dec);
    const Matrix h = dense_operator(FockSpace(2), dec);
    const QubitLayout layout{2, false};
    auto error = [&](double dt) {
      return spectral_norm(circuit_unitary(trotter_step_circuit(form, dt, layout)) - expm_hermitian(h, dt));
    };
    const double ratio = error(0.1) / error(0.05);
    EXPECT_GE(ratio, 3.2) << seed;
    EXPECT_LE(ratio, 4.8) << seed;
  }
}

TEST(Trotter, ConservesSpinNumbers) {
  const auto form = to_zeta_form(random_decomposition(3, 2, 40));
  const CMat u = circuit_unitary(trotter_step_circuit(form, 0.2, QubitLayout{3, false}));
  const FockSpace space(3);
  for (const Matrix& n : {space.number_alpha(), space.number_beta()}) {
    const CMat nc = n.cast<Cx>();
    EXPECT_LT(max_abs(u * nc - nc * u), 1e-10);
  }
}

TEST(Controlled, Semantics) {
  const int m = 2;
  const auto form = to_zeta_form(random_decomposition(m, 1, 50));
  const QubitLayout layout{m, true};
  const double dt = 0.13;
  const CMat step = circuit_unitary(trotter_step_circuit(form, dt, QubitLayout{m, false}));
  const Eigen::Index d = step.rows();
  for (int power : {0, 1, 2}) {
    const CMat u = circuit_unitary(controlled_trotter_circuit(form, dt, power, layout));
    CMat target = CMat::Identity(d, d);
    for (int i = 0; i < power; ++i) target = step * target;
    EXPECT_LT(max_abs(u.topLeftCorner(d, d) - CMat::Identity(d, d)), 1e-12) << power;
    EXPECT_LT(max_abs(u.topRightCorner(d, d)), 1e-12);
    EXPECT_LT(max_abs(u.bottomLeftCorner(d, d)), 1e-12);
    EXPECT_LT(max_abs(u.bottomRightCorner(d, d) - target), 1e-10) << power;
  }
  EXPECT_THROW(controlled_trotter_circuit(form, dt, 1, QubitLayout{m, false}), std::logic_error);
}

TEST(Controlled, OnlyDiagonalRotationsControlled) {
  const auto form = to_zeta_form(random_decomposition(2, 1, 51));
  const auto c = controlled_trotter_circuit(form, 0.1, 1, QubitLayout{2, true});
  const int anc = 4;
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::kGivens) {
      EXPECT_NE(g.qubits[0], anc);
      EXPECT_NE(g.qubits[1], anc);
    }
    EXPECT_NE(g.kind, GateKind::kRZZ);
  }
}

// <Psi_m| h |Psi_n> from the estimator mean(s_anc f(x)) on the exact output distribution.
TEST(HadamardTest, ExactExpectations) {
  const int m_orb = 2;
  const auto form = to_zeta_form(random_decomposition(m_orb, 1, 60));
  const QubitLayout layout{m_orb, true};
  const double dt = 0.2;
  const Determinant ref{0b01, 0b01};
  const FockSpace space(m_orb);
  const CMat step = circuit_unitary(trotter_step_circuit(form, dt, QubitLayout{m_orb, false}));
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(step.rows());
  psi0(ref.combined(m_orb)) = 1.0;

  std::vector<CMat> factors = {CMat::Identity(step.rows(), step.cols()),
                               dense_operator(space, one_body_part(form)).cast<Cx>(),
                               dense_operator(space, layer_part(form, 0)).cast<Cx>()};
  const int anc = layout.ancilla();
  for (int m = 0; m <= 2; ++m)
    for (int n = m; n <= 2; ++n)
      for (int factor = kIdentityFactor; factor <= 1; ++factor) {
        Eigen::VectorXcd bra = psi0, ket = psi0;
        for (int i = 0; i < m; ++i) bra = step * bra;
        for (int i = 0; i < n; ++i) ket = step * ket;
        const Cx expected = bra.dot(factors[factor + 1] * ket);
        for (Part part : {Part::kReal, Part::kImag}) {
          const Circuit c = hadamard_test_circuit(ref, m, n, part, factor, form, dt, layout);
          ASSERT_TRUE(c.measures());
          const StateVector out = apply_circuit(StateVector(layout.n_qubits()), c);
          const double estimate = exact_expectation(out, [&](Bitstring bits) {
            const double sign = (bits >> anc & 1) ? -1.0 : 1.0;
            return sign * factor_value(form, factor, bits & ~(Bitstring{1} << anc));
          });
          const double want = part == Part::kReal ? expected.real() : expected.imag();
          EXPECT_NEAR(estimate, want, 1e-10) << m << n << factor << (part == Part::kReal ? "re" : "im");
        }
      }
}

TEST(HadamardTest, RejectsBadArguments) {
  const auto form = to_zeta_form(random_decomposition(2, 1, 61));
  const Determinant ref{1, 1};
  EXPECT_THROW(hadamard_test_circuit(ref, 2, 1, Part::kReal, 0, form, 0.1, QubitLayout{2, true}),
               std::invalid_argument);
  EXPECT_THROW(hadamard_test_circuit(ref, 0, 1, Part::kReal, 0, form, 0.1, QubitLayout{2, false}),
               std::invalid_argument);
  EXPECT_THROW(hadamard_test_circuit(ref, 0, 1, Part::kReal, 5, form, 0.1, QubitLayout{2, true}), std::out_of_range);
}

TEST(Measurement, FactorValuesMatchDenseFactors) {
  const int m = 2;
  const auto form = to_zeta_form(random_decomposition(m, 2, 62));
  const QubitLayout layout{m, false};
  const FockSpace space(m);
  auto rng = make_rng(62);
  std::normal_distribution<double> normal;
  StateVector phi(layout.n_qubits());
  for (Eigen::Index i = 0; i < phi.amplitudes().size(); ++i) phi.amplitudes()(i) = Cx(normal(rng), normal(rng));
  phi.amplitudes().normalize();
  for (int factor = 0; factor <= 2; ++factor) {
    const Matrix h = factor == 0 ? dense_operator(space, one_body_part(form))
                                 : dense_operator(space, layer_part(form, factor - 1));
    const Cx want = phi.amplitudes().dot(h.cast<Cx>() * phi.amplitudes());
    const StateVector rotated = apply_circuit(phi, diagonal_measurement_circuit(factor, form, layout));
    const double got = exact_expectation(rotated, [&](Bitstring b) { return factor_value(form, factor, b); });
    EXPECT_NEAR(got, want.real(), 1e-10) << factor;
  }
}

TEST(Echo, PreservesUnitary) {
  const int m = 2;
  const auto form = to_zeta_form(random_decomposition(m, 1, 70));
  const QubitLayout plain{m, false};
  const Circuit step = trotter_step_circuit(form, 0.1, plain);
  const Circuit echoed = insert_echoes(step, plain, 1234);
  EXPECT_LT(max_abs(circuit_unitary(echoed) - circuit_unitary(step)), 1e-10);

  const QubitLayout with_anc{m, true};
  const Circuit h = hadamard_test_circuit(Determinant{1, 1}, 1, 2, Part::kImag, 1, form, 0.1, with_anc);
  EXPECT_LT(max_abs(circuit_unitary(insert_echoes(h, with_anc, 99)) - circuit_unitary(h)), 1e-10);
}

TEST(Echo, AddsFourMRotationsPerBlock) {
  const int m = 3;
  const auto form = to_zeta_form(random_decomposition(m, 2, 71));
  const QubitLayout layout{m, false};
  const Circuit step = trotter_step_circuit(form, 0.1, layout);
  int blocks = 0;
  for (const Gate& g : step.gates()) blocks += g.kind == GateKind::kBlockBegin;
  EXPECT_EQ(blocks, 3);
  const Circuit echoed = insert_echoes(step, layout, 5);
  EXPECT_EQ(count_gates(echoed).count(GateKind::kRZ) - count_gates(step).count(GateKind::kRZ), 4 * m * blocks);
}

TEST(Echo, SeedDeterminism) {
  const auto form = to_zeta_form(random_decomposition(2, 1, 72));
  const QubitLayout layout{2, false};
  const Circuit step = trotter_step_circuit(form, 0.1, layout);
  EXPECT_EQ(insert_echoes(step, layout, 8).gates(), insert_echoes(step, layout, 8).gates());
  EXPECT_NE(insert_echoes(step, layout, 8).gates(), insert_echoes(step, layout, 9).gates());
  const Circuit zero = insert_echoes(step, layout, 8, true);
  int zero_rz = 0;
  for (const Gate& g : zero.gates()) zero_rz += g.kind == GateKind::kRZ && g.angle == 0.0;
  EXPECT_EQ(zero_rz, 4 * 2 * 2);
  EXPECT_EQ(zero.global_phase(), step.global_phase());
  EXPECT_THROW(insert_echoes(Circuit(4), layout, 1), std::invalid_argument);
}

TEST(Lowering, PrimitiveCounts) {
  auto lowered_cnots = [](auto add) {
    Circuit c(3);
    add(c);
    const auto l = lower_and_count(c);
    return std::pair{l.after.cnot(), l.after.count(GateKind::kRZ)};
  };
  EXPECT_EQ(lowered_cnots([](Circuit& c) { c.givens(0, 1, 0.3); }), (std::pair{2, 0}));
  EXPECT_EQ(lowered_cnots([](Circuit& c) { c.rzz(0, 1, 0.3); }), (std::pair{2, 1}));
  EXPECT_EQ(lowered_cnots([](Circuit& c) { c.crz(2, 0, 0.3); }), (std::pair{2, 2}));
  EXPECT_EQ(lowered_cnots([](Circuit& c) { c.crzz(2, 0, 1, 0.3); }), (std::pair{4, 2}));
  EXPECT_EQ(lowered_cnots([](Circuit& c) { c.swap(0, 2); }), (std::pair{3, 0}));
}

TEST(Lowering, PreservesUnitary) {
  const int m = 2;
  const auto form = to_zeta_form(random_decomposition(m, 1, 80));
  const QubitLayout layout{m, true};
  Circuit c = hadamard_test_circuit(Determinant{1, 2}, 1, 2, Part::kImag, 1, form, 0.15, layout);
  c.swap(0, 3);
  c.crzz(1, 4, 2, 0.4);
  const CMat want = circuit_unitary(c);
  for (bool linear : {false, true}) {
    const auto l = lower_and_count(c, linear);
    for (const Gate& g : l.circuit.gates()) {
      EXPECT_NE(g.kind, GateKind::kGivens);
      EXPECT_NE(g.kind, GateKind::kCRZ);
      EXPECT_NE(g.kind, GateKind::kCRZZ);
      EXPECT_NE(g.kind, GateKind::kRZZ);
      if (linear && g.kind == GateKind::kCNOT) EXPECT_EQ(std::abs(g.qubits[0] - g.qubits[1]), 1);
    }
    EXPECT_LT(max_abs(circuit_unitary(l.circuit) - want), 1e-12) << linear;
    EXPECT_EQ(l.swaps_inserted > 0, linear);
  }
}

TEST(Lowering, ControlledSaving) {
  for (auto [m, ndf] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}}) {
    const auto dec = random_decomposition(m, ndf, 90 + m * 10 + ndf);
    const auto report =
        controlled_step_report(to_zeta_form(dec), to_unfolded_zeta_form(dec), 0.1, QubitLayout{m, true});
    EXPECT_EQ(report.cnot_saving, 2 * (2 * m) * ndf) << m << " " << ndf;
  }
}

TEST(CircuitModel, Validation) {
  Circuit c(2);
  EXPECT_THROW(c.h(2), std::invalid_argument);
  EXPECT_THROW(c.cnot(1, 1), std::invalid_argument);
  EXPECT_THROW(c.rz(0, std::nan("")), std::invalid_argument);
  for (int k = 0; k <= static_cast<int>(GateKind::kBlockEnd); ++k) {
    const auto kind = static_cast<GateKind>(k);
    EXPECT_EQ(gate_from_name(gate_name(kind)), kind);
  }
  EXPECT_FALSE(gate_from_name("toffoli").has_value());
}

}  // namespace
}  // namespace qfddf
