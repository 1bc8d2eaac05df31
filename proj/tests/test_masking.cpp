// Copyright 2026 The etamask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "etamask/errors.hpp"
#include "etamask/linalg.hpp"
#include "etamask/masking.hpp"
#include "etamask/nhqm.hpp"
#include "etamask/reference.hpp"
#include "test_support.hpp"

using namespace etamask;
using testing::random_hpd;
using testing::random_matrix;

namespace {

Ket basis_ket(const MetricSpace& space, std::size_t index) {
  ComplexMatrix v(space.dim(), 1);
  v(index, 0) = 1.0;
  return make_ket(space, v);
}

// Bloch vector of a pure qubit ket (x, y, z).
std::array<double, 3> bloch_of(const Ket& k) {
  const cplx a = k.vec(0, 0);
  const cplx b = k.vec(1, 0);
  const cplx cross = std::conj(a) * b;
  return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(a) - std::norm(b)};
}

}  // namespace

TEST_CASE("generalized_reduced_states: maximally correlated state on eta = I") {
  const MetricSpace qubit = MetricSpace::standard(2);
  ComplexMatrix v(4, 1);
  v(0, 0) = v(3, 0) = 1.0 / std::sqrt(2.0);
  const auto [ra, rb] =
      generalized_reduced_states(make_ket(tensor(qubit, qubit), v), qubit, qubit);
  CHECK(max_abs_diff(ra, 0.5 * ComplexMatrix::identity(2)) <= 1e-15);
  CHECK(max_abs_diff(rb, 0.5 * ComplexMatrix::identity(2)) <= 1e-15);
}

TEST_CASE("generalized_reduced_states: product state splits into dyads") {
  std::mt19937_64 rng(41);
  const MetricSpace sa = MetricSpace::standard(2);
  const MetricSpace sb = MetricSpace::standard(3);
  const Ket a = eta_normalize(make_ket(sa, random_matrix(2, 1, rng)));
  const Ket b = eta_normalize(make_ket(sb, random_matrix(3, 1, rng)));
  const auto [ra, rb] = generalized_reduced_states(
      make_ket(tensor(sa, sb), kron(a.vec, b.vec)), sa, sb);
  CHECK(max_abs_diff(ra, a.vec * dagger(a.vec)) <= 1e-14);
  CHECK(max_abs_diff(rb, b.vec * dagger(b.vec)) <= 1e-14);
}

TEST_CASE("generalized_reduced_states: skewed metric uses the Hermitian frame") {
  // An equal superposition of the two normalized alpha-state products is
  // maximally entangled in the frame, so both reduced states are I/2.
  const double beta = 1.0;
  const MetricSpace space = metric_eta0(beta);
  const auto [a1, a2] = alpha_states(beta);
  const Ket n1 = eta_normalize(a1);
  const Ket n2 = eta_normalize(a2);
  const ComplexMatrix v =
      (1.0 / std::sqrt(2.0)) * (kron(n1.vec, n1.vec) + kron(n2.vec, n2.vec));
  const auto [ra, rb] =
      generalized_reduced_states(make_ket(tensor(space, space), v), space, space);
  CHECK(max_abs_diff(ra, 0.5 * ComplexMatrix::identity(2)) <= 1e-12);
  CHECK(max_abs_diff(rb, 0.5 * ComplexMatrix::identity(2)) <= 1e-12);
}

TEST_CASE("generalized_reduced_states agrees with a dyad-and-trace oracle") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 10; ++rep) {
    const MetricSpace sa = validate_metric(random_hpd(3, rng));
    const MetricSpace sb = validate_metric(random_hpd(2, rng));
    const Ket psi = make_ket(tensor(sa, sb), random_matrix(6, 1, rng));
    const auto [ra, rb] = generalized_reduced_states(psi, sa, sb);

    const ComplexMatrix frame = kron(sa.eta_sqrt(), sb.eta_sqrt()) * psi.vec;
    const ComplexMatrix dyad = frame * dagger(frame);
    CHECK(max_abs_diff(ra, reference::partial_trace(dyad, {3, 2}, {0})) <= 1e-12);
    CHECK(max_abs_diff(rb, reference::partial_trace(dyad, {3, 2}, {1})) <= 1e-12);
  }
  CHECK_THROWS_AS(generalized_reduced_states(
                      make_ket(MetricSpace::standard(3), ComplexMatrix(3, 1)),
                      MetricSpace::standard(2), MetricSpace::standard(2)),
                  InputError);
}

TEST_CASE("make_masker validates its invariants") {
  const MetricSpace qubit = MetricSpace::standard(2);
  const Ket anc = basis_ket(qubit, 0);
  CHECK_THROWS_AS(make_masker(qubit, qubit, ComplexMatrix::identity(3), anc),
                  InputError);
  CHECK_THROWS_AS(
      make_masker(qubit, qubit, 2.0 * ComplexMatrix::identity(4), anc),
      InputError);  // not pseudo-unitary
  const Ket big = make_ket(qubit, ComplexMatrix::column({2.0, 0.0}));
  CHECK_THROWS_AS(make_masker(qubit, qubit, ComplexMatrix::identity(4), big),
                  InputError);  // ancilla not unit norm
}

TEST_CASE("fixed_reducing_states: entries, Gram, and flat marginals") {
  const auto pair = fixed_reducing_states(2, 2);
  const double amp = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(pair[0](0, 0) - amp) <= 1e-15);
  CHECK(std::abs(pair[0](3, 0) - amp) <= 1e-15);
  CHECK(std::abs(pair[1](1, 0) - amp) <= 1e-15);
  CHECK(std::abs(pair[1](2, 0) - amp) <= 1e-15);
  CHECK(std::abs(pair[0](1, 0)) == 0.0);

  for (std::size_t d = 2; d <= 6; ++d) {
    for (std::size_t m = 2; m <= d; ++m) {
      const auto states = fixed_reducing_states(m, d);
      REQUIRE(states.size() == m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const cplx g = standard_inner(states[i], states[j]);
          CHECK(std::abs(g - (i == j ? cplx(1.0) : cplx(0.0))) <= 1e-14);
        }
        const ComplexMatrix flat =
            (1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d);
        CHECK(max_abs_diff(cross_marginal(states[i], states[i], {d, d}, {0}), flat) <=
              1e-14);
        CHECK(max_abs_diff(cross_marginal(states[i], states[i], {d, d}, {1}), flat) <=
              1e-14);
      }
    }
  }

  CHECK_THROWS_AS(fixed_reducing_states(1, 4), InputError);
  CHECK_THROWS_AS(fixed_reducing_states(5, 4), InputError);
}

TEST_CASE("synthesize_pseudo_unitary: permutation of the standard basis") {
  const MetricSpace space = MetricSpace::standard(3);
  std::vector<ComplexMatrix> sources, targets;
  for (std::size_t k = 0; k < 3; ++k) {
    ComplexMatrix s(3, 1), t(3, 1);
    s(k, 0) = 1.0;
    t((k + 1) % 3, 0) = 1.0;
    sources.push_back(std::move(s));
    targets.push_back(std::move(t));
  }
  const ComplexMatrix u = synthesize_pseudo_unitary(sources, targets, space);
  CHECK(max_abs_diff(dagger(u) * u, ComplexMatrix::identity(3)) <= 1e-12);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(max_abs_diff(u * sources[k], targets[k]) <= 1e-12);
  }
}

TEST_CASE("synthesize_pseudo_unitary: single pair under a random metric") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 5; ++rep) {
    const MetricSpace space = validate_metric(random_hpd(4, rng));
    const Ket s = eta_normalize(make_ket(space, random_matrix(4, 1, rng)));
    const Ket t = eta_normalize(make_ket(space, random_matrix(4, 1, rng)));
    const ComplexMatrix u = synthesize_pseudo_unitary({s.vec}, {t.vec}, space);
    CHECK(is_pseudo_unitary(u, space, 1e-10));
    CHECK(max_abs_diff(u * s.vec, t.vec) <= 1e-10);
  }
}

TEST_CASE("synthesize_pseudo_unitary: Gram mismatch is infeasible") {
  const MetricSpace space = MetricSpace::standard(2);
  ComplexMatrix e0(2, 1), doubled(2, 1);
  e0(0, 0) = 1.0;
  doubled(0, 0) = 2.0;
  CHECK_THROWS_AS(synthesize_pseudo_unitary({e0}, {doubled}, space),
                  InfeasibilityError);
  CHECK_THROWS_AS(synthesize_pseudo_unitary({e0}, {}, space), InputError);
}

TEST_CASE("deterministic_masker: standard basis of a qubit") {
  const MetricSpace qubit = MetricSpace::standard(2);
  const Ket anc = basis_ket(qubit, 0);
  const std::vector<Ket> states{basis_ket(qubit, 0), basis_ket(qubit, 1)};
  const Masker masker = deterministic_masker(states, qubit, qubit, anc);
  CHECK(max_abs_diff(dagger(masker.u) * masker.u, ComplexMatrix::identity(4)) <=
        1e-10);

  const MaskingReport report = verify_masking(masker, states, 1e-10);
  CHECK(report.passed);
  CHECK(report.max_marginal_deviation_a <= 1e-12);
  CHECK(report.max_marginal_deviation_b <= 1e-12);
  REQUIRE(report.per_pair.size() == 1);
  CHECK(report.per_pair[0].i == 0);
  CHECK(report.per_pair[0].j == 1);
  // The masked pair is the maximally correlated pair, whose cross marginal
  // has max entry 1/2. This is exactly the superposition obstruction.
  CHECK(std::abs(report.max_cross_term_norm - 0.5) <= 1e-12);

  // Each masked state reduces to I/2 on both sides.
  for (const auto& s : states) {
    const Ket masked =
        make_ket(masker.composite, masker.u * kron(s.vec, anc.vec));
    const auto [ra, rb] = generalized_reduced_states(masked, qubit, qubit);
    CHECK(max_abs_diff(ra, 0.5 * ComplexMatrix::identity(2)) <= 1e-12);
    CHECK(max_abs_diff(rb, 0.5 * ComplexMatrix::identity(2)) <= 1e-12);
  }
}

TEST_CASE("deterministic_masker: alpha states under the hyperbolic metric") {
  for (double beta : {0.5, 1.0, 2.0}) {
    const MetricSpace space = metric_eta0(beta);
    const auto [a1, a2] = alpha_states(beta);
    const Ket anc = eta_normalize(basis_ket(space, 0));
    // Raw alpha states share the common eta-norm 1/cosh(beta), which the
    // constructor is documented to absorb.
    const Masker masker = deterministic_masker({a1, a2}, space, space, anc);
    CHECK(is_pseudo_unitary(masker.u, masker.composite, 1e-9));
    const MaskingReport report =
        verify_masking(masker, {eta_normalize(a1), eta_normalize(a2)}, 1e-9);
    CHECK(report.passed);
    CHECK(report.max_marginal_deviation_a <= 1e-10);
    CHECK(report.max_marginal_deviation_b <= 1e-10);
  }
}

TEST_CASE("deterministic_masker: unequal side dimensions") {
  const MetricSpace sa = MetricSpace::standard(2);
  const MetricSpace sb = MetricSpace::standard(3);
  const std::vector<Ket> states{basis_ket(sa, 0), basis_ket(sa, 1)};
  const Masker masker = deterministic_masker(states, sa, sb, basis_ket(sb, 0));
  const MaskingReport report = verify_masking(masker, states, 1e-10);
  CHECK(report.passed);

  // The common marginal on B occupies the first min(da, db) = 2 levels.
  const Ket masked =
      make_ket(masker.composite, masker.u * kron(states[0].vec, masker.ancilla.vec));
  const auto [ra, rb] = generalized_reduced_states(masked, sa, sb);
  CHECK(max_abs_diff(ra, 0.5 * ComplexMatrix::identity(2)) <= 1e-12);
  ComplexMatrix expected_b(3, 3);
  expected_b(0, 0) = expected_b(1, 1) = 0.5;
  CHECK(max_abs_diff(rb, expected_b) <= 1e-12);
}

TEST_CASE("deterministic_masker rejects bad inputs") {
  const MetricSpace qubit = MetricSpace::standard(2);
  const Ket anc = basis_ket(qubit, 0);

  // Non-orthogonal states are infeasible, not an input error.
  const Ket plus = make_ket(
      qubit, ComplexMatrix::column({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}));
  CHECK_THROWS_AS(deterministic_masker({basis_ket(qubit, 0), plus}, qubit, qubit, anc),
                  InfeasibilityError);
  CHECK_THROWS_WITH_AS(
      deterministic_masker({basis_ket(qubit, 0), plus}, qubit, qubit, anc),
      doctest::Contains("gram-mismatch"), InfeasibilityError);

  CHECK_THROWS_AS(deterministic_masker({basis_ket(qubit, 0)}, qubit, qubit, anc),
                  InputError);
  const std::vector<Ket> three{basis_ket(qubit, 0), basis_ket(qubit, 1),
                               basis_ket(qubit, 0)};
  CHECK_THROWS_AS(deterministic_masker(three, qubit, qubit, anc), InputError);

  const Ket big = make_ket(qubit, ComplexMatrix::column({2.0, 0.0}));
  CHECK_THROWS_AS(
      deterministic_masker({basis_ket(qubit, 0), basis_ket(qubit, 1)}, qubit, qubit,
                           big),
      InputError);
}

TEST_CASE("disk_masker: closed-form matrix at alpha = theta = 0") {
  const Masker masker = disk_masker(0.0, 0.0);
  ComplexMatrix expected(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  expected(2, 3) = -1.0;
  expected(3, 2) = -1.0;
  CHECK(max_abs_diff(masker.u, expected) <= 1e-15);
  CHECK(masker.composite.is_standard());
}

TEST_CASE("disk_masker is unitary for arbitrary angles") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> angle(-8.0, 8.0);
  for (int rep = 0; rep < 25; ++rep) {
    const Masker masker = disk_masker(angle(rng), angle(rng));
    CHECK(max_abs_diff(dagger(masker.u) * masker.u, ComplexMatrix::identity(4)) <=
          1e-12);
  }
  CHECK_THROWS_AS(disk_masker(std::numeric_limits<double>::infinity(), 0.0),
                  InputError);
}

TEST_CASE("disk_masker: every state on the disk reduces to diag((1+c)/2, (1-c)/2)") {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> offset(-0.95, 0.95);
  for (int rep = 0; rep < 10; ++rep) {
    const DiskSpec spec{angle(rng), 2.0 * angle(rng), offset(rng)};
    const Masker masker = disk_masker(spec.alpha, spec.theta);
    const auto states = disk_states(spec, 12, 1000 + static_cast<std::uint64_t>(rep));

    ComplexMatrix expected(2, 2);
    expected(0, 0) = 0.5 * (1.0 + spec.c);
    expected(1, 1) = 0.5 * (1.0 - spec.c);

    for (const auto& s : states) {
      const Ket masked = make_ket(masker.composite,
                                  masker.u * kron(s.vec, masker.ancilla.vec));
      const auto [ra, rb] = generalized_reduced_states(
          masked, masker.space_a, masker.space_b);
      CHECK(max_abs_diff(ra, expected) <= 1e-10);
      CHECK(max_abs_diff(rb, expected) <= 1e-10);
    }
    CHECK(verify_masking(masker, states, 1e-10).passed);
  }
}

TEST_CASE("disk_masker: states on different disks deviate by |c - c'| / 2") {
  const double alpha = 0.4, theta = 1.1;
  const Masker masker = disk_masker(alpha, theta);
  const auto on = disk_states({alpha, theta, 0.5}, 1, 7);
  const auto off = disk_states({alpha, theta, 0.2}, 1, 7);
  const MaskingReport report = verify_masking(masker, {on[0], off[0]}, 1e-10);
  CHECK_FALSE(report.passed);
  CHECK(std::abs(report.max_marginal_deviation_a - 0.15) <= 1e-10);
  CHECK(std::abs(report.max_marginal_deviation_b - 0.15) <= 1e-10);
}

TEST_CASE("disk_states sample the boundary circle of the disk") {
  const DiskSpec spec{0.9, -0.3, 0.37};
  const auto states = disk_states(spec, 40, 99);
  REQUIRE(states.size() == 40);
  const double nx = std::sin(spec.alpha) * std::cos(spec.theta);
  const double ny = std::sin(spec.alpha) * std::sin(spec.theta);
  const double nz = std::cos(spec.alpha);
  for (const auto& s : states) {
    const auto [x, y, z] = bloch_of(s);
    CHECK(std::abs(x * x + y * y + z * z - 1.0) <= 1e-12);         // pure
    CHECK(std::abs(nx * x + ny * y + nz * z - spec.c) <= 1e-12);   // on the plane
  }

  // Deterministic in the seed.
  const auto again = disk_states(spec, 40, 99);
  for (std::size_t i = 0; i < states.size(); ++i) {
    CHECK(max_abs_diff(states[i].vec, again[i].vec) == 0.0);
  }

  // Degenerate disk: single pole state.
  const auto pole = disk_states({0.0, 0.0, 1.0}, 3, 5);
  for (const auto& s : pole) {
    CHECK(std::abs(s.vec(0, 0) - 1.0) <= 1e-12);
    CHECK(std::abs(s.vec(1, 0)) <= 1e-12);
  }

  CHECK_THROWS_AS(disk_states({0.0, 0.0, 1.5}, 2, 1), InputError);
}

TEST_CASE("bloch_state builds the density matrix of a Bloch vector") {
  const ComplexMatrix rho = bloch_state(0.3, -0.4, 0.5);
  CHECK(std::abs(rho(0, 0).real() - 0.75) <= 1e-15);
  CHECK(std::abs(rho(1, 1).real() - 0.25) <= 1e-15);
  CHECK(std::abs(rho(0, 1) - cplx(0.15, 0.2)) <= 1e-15);
  CHECK(std::abs(rho(1, 0) - cplx(0.15, -0.2)) <= 1e-15);
  CHECK(hermiticity_residual(rho) == 0.0);

  // Pure states are projectors; disk samples match their own dyads.
  const auto states = disk_states({0.7, 0.2, -0.4}, 5, 11);
  for (const auto& s : states) {
    const auto [x, y, z] = bloch_of(s);
    CHECK(max_abs_diff(bloch_state(x, y, z), s.vec * dagger(s.vec)) <= 1e-12);
  }

  CHECK_THROWS_AS(bloch_state(1.0, 1.0, 0.0), InputError);
}

TEST_CASE("superposition_leakage: weights, exact zero, and the 1/2 obstruction") {
  const MetricSpace qubit = MetricSpace::standard(2);
  const std::vector<Ket> states{basis_ket(qubit, 0), basis_ket(qubit, 1)};
  const Masker masker =
      deterministic_masker(states, qubit, qubit, basis_ket(qubit, 0));

  // Trivial weights leak nothing.
  CHECK(superposition_leakage(masker, states[0], states[1], 1.0, 0.0) <= 1e-15);
  CHECK(superposition_leakage(masker, states[0], states[1], 0.0, 1.0) <= 1e-15);

  // Equal weights on the maximally correlated pair leak exactly 1/2.
  const double w = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(superposition_leakage(masker, states[0], states[1], w, w) - 0.5) <=
        1e-12);

  CHECK_THROWS_AS(superposition_leakage(masker, states[0], states[1], 1.0, 1.0),
                  InputError);
}

TEST_CASE("superposition_leakage: antipodal disk pairs are safe, others are not") {
  const DiskSpec spec{0.0, 0.0, 0.5};
  const Masker masker = disk_masker(spec.alpha, spec.theta);
  const double radius = std::sqrt(1.0 - spec.c * spec.c);

  const auto ket_at = [&](double phi) {
    const double bx = radius * std::cos(phi);
    const double by = radius * std::sin(phi);
    const double bz = spec.c;
    const double polar = std::acos(bz);
    return make_ket(MetricSpace::standard(2),
                    ComplexMatrix::column(
                        {std::cos(polar / 2.0),
                         std::exp(cplx(0.0, std::atan2(by, bx))) *
                             std::sin(polar / 2.0)}));
  };

  // Superpositions of an antipodal pair stay on the disk exactly when
  // mu* nu is purely imaginary, and then the cross terms cancel.
  const double w = 1.0 / std::sqrt(2.0);
  const cplx iw(0.0, w);
  for (double phi : {0.1, 1.3, 2.9}) {
    const Ket s0 = ket_at(phi);
    const Ket anti = ket_at(phi + std::numbers::pi);
    CHECK(superposition_leakage(masker, s0, anti, w, iw) <= 1e-10);
    // Real weights on the same pair, or any weights on a non-antipodal
    // pair, leave an order-one cross term.
    CHECK(superposition_leakage(masker, s0, anti, w, w) > 0.01);
    const Ket nearby = ket_at(phi + 1.0);
    CHECK(superposition_leakage(masker, s0, nearby, w, iw) > 0.01);
  }
}

TEST_CASE("fourier_ghz_states: entries, orthogonality, guard") {
  const auto two = fourier_ghz_states(2, 2);
  REQUIRE(two.size() == 2);
  const double amp = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(two[0](0, 0) - amp) <= 1e-15);
  CHECK(std::abs(two[0](3, 0) - amp) <= 1e-15);
  CHECK(std::abs(two[1](0, 0) - amp) <= 1e-15);
  CHECK(std::abs(two[1](3, 0) + amp) <= 1e-14);  // phase (-1)^1
  CHECK(std::abs(two[0](1, 0)) == 0.0);
  CHECK(std::abs(two[0](2, 0)) == 0.0);

  for (auto [d, n] : std::vector<std::pair<std::size_t, std::size_t>>{
           {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
    const auto states = fourier_ghz_states(d, n);
    REQUIRE(states.size() == d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const cplx g = standard_inner(states[i], states[j]);
        CHECK(std::abs(g - (i == j ? cplx(1.0) : cplx(0.0))) <= 1e-14);
      }
    }
  }

  CHECK_THROWS_AS(fourier_ghz_states(2, 13), SizeError);
  CHECK_THROWS_AS(fourier_ghz_states(1, 3), InputError);
  CHECK_THROWS_AS(fourier_ghz_states(2, 1), InputError);
}

TEST_CASE("verify_r_uniform: GHZ families pass for every r < n") {
  for (auto [d, n] : std::vector<std::pair<std::size_t, std::size_t>>{
           {2, 3}, {2, 4}, {3, 3}}) {
    const auto states = fourier_ghz_states(d, n);
    for (std::size_t r = 1; r < n; ++r) {
      const MaskingReport report = verify_r_uniform(states, d, n, r, 1e-12);
      CHECK(report.passed);
      CHECK(report.max_marginal_deviation_a <= 1e-14);
      CHECK(report.note.find("marginals compared") != std::string::npos);
    }
  }
}

TEST_CASE("verify_r_uniform: detects a distinguishable pair") {
  ComplexMatrix product(4, 1);
  product(0, 0) = 1.0;  // |00>, marginal diag(1, 0)
  ComplexMatrix correlated(4, 1);
  correlated(0, 0) = correlated(3, 0) = 1.0 / std::sqrt(2.0);  // marginal I/2
  const MaskingReport report =
      verify_r_uniform({product, correlated}, 2, 2, 1, 1e-10);
  CHECK_FALSE(report.passed);
  CHECK(std::abs(report.max_marginal_deviation_a - 0.5) <= 1e-14);
  REQUIRE(report.per_pair.size() == 1);
  CHECK(report.per_pair[0].i == 0);
  CHECK(report.per_pair[0].j == 1);
  CHECK(report.note.find("worst kept subset") != std::string::npos);
}

TEST_CASE("verify_r_uniform validates its arguments") {
  const auto states = fourier_ghz_states(2, 3);
  CHECK_THROWS_AS(verify_r_uniform(states, 2, 3, 0, 1e-10), InputError);
  CHECK_THROWS_AS(verify_r_uniform(states, 2, 3, 3, 1e-10), InputError);
  CHECK_THROWS_AS(verify_r_uniform({states[0]}, 2, 3, 1, 1e-10), InputError);
  CHECK_THROWS_AS(verify_r_uniform(states, 2, 2, 1, 1e-10), InputError);
}

TEST_CASE("probabilistic_ghz_masker: columns carry p_k Psi_k") {
  const std::vector<double> p{0.5, 1.0};
  const ProbabilisticMasker masker = probabilistic_ghz_masker(2, 2, p);
  REQUIRE(masker.map.rows() == 4);
  REQUIRE(masker.map.cols() == 4);
  const auto ghz = fourier_ghz_states(2, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    ComplexMatrix input(4, 1);
    input(k * 2, 0) = 1.0;  // |k> (x) |0>
    CHECK(max_abs_diff(masker.map * input, p[k] * ghz[k]) <= 1e-14);
  }

  // Trace-decreasing: L^dagger L has spectrum {p_k^2} union {0}.
  const EigenDecomposition eig = herm_eig(dagger(masker.map) * masker.map);
  CHECK(eig.values.front() >= -1e-12);
  CHECK(eig.values.back() <= 1.0 + 1e-12);
  CHECK(std::abs(eig.values.back() - 1.0) <= 1e-12);

  CHECK_THROWS_AS(probabilistic_ghz_masker(2, 2, {0.5}), InputError);
  CHECK_THROWS_AS(probabilistic_ghz_masker(2, 2, {0.0, 1.0}), InputError);
  CHECK_THROWS_AS(probabilistic_ghz_masker(2, 2, {0.5, 1.5}), InputError);
  CHECK_THROWS_AS(probabilistic_ghz_masker(2, 9, {0.5, 0.5}), SizeError);
}
