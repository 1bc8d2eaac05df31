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

#ifndef ETAMASK_MASKING_HPP
#define ETAMASK_MASKING_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "etamask/nhqm.hpp"

namespace etamask {

// A masking isometry packaged with its spaces: u is pseudo-unitary on
// H_A (x) H_B with metric eta_A (x) eta_B, and the ancilla is a unit-norm
// ket in H_B. States |a> in H_A are masked as u (|a> (x) |ancilla>).
struct Masker {
  MetricSpace space_a;
  MetricSpace space_b;
  MetricSpace composite;  // tensor(space_a, space_b), cached
  ComplexMatrix u;
  Ket ancilla;
};

// Validates the invariants (dimensions, pseudo-unitarity to 1e-9, unit-norm
// ancilla to 1e-8) and caches the composite space.
Masker make_masker(const MetricSpace& space_a, const MetricSpace& space_b,
                   ComplexMatrix u, const Ket& ancilla);

struct PairDeviation {
  std::size_t i = 0;
  std::size_t j = 0;
  double deviation = 0.0;  // max over both marginals in max norm
};

struct MaskingReport {
  double max_marginal_deviation_a = 0.0;
  double max_marginal_deviation_b = 0.0;
  // Largest cross-term marginal norm ||Tr_X(psi'_i psi'_j^dagger)||_max over
  // pairs i != j. Informational: it witnesses why superpositions leak; the
  // pass verdict uses only the marginal deviations.
  double max_cross_term_norm = 0.0;
  bool passed = false;
  std::vector<PairDeviation> per_pair;
  std::string note;
};

// Hermitian-frame reduced density matrices (rho_A, rho_B) of a composite
// pure ket: psi' = (eta_A^(1/2) (x) eta_B^(1/2)) psi, rho_X = Tr_notX
// (psi' psi'^dagger). Unit trace when psi has unit composite eta-norm.
std::pair<ComplexMatrix, ComplexMatrix> generalized_reduced_states(
    const Ket& psi, const MetricSpace& space_a, const MetricSpace& space_b);

// Masks every state through the masker and compares all pairs of reduced
// states on both sides. States must live in masker.space_a (at least two).
MaskingReport verify_masking(const Masker& masker, const std::vector<Ket>& states,
                             double tol);

// The m cyclic maximally-correlated states (1/sqrt d) sum_i |i>|(i+k) mod d>,
// k = 0..m-1, in C^d (x) C^d. Standard Gram matrix is the identity for every
// m <= d, and every marginal on either side is I_d / d.
std::vector<ComplexMatrix> fixed_reducing_states(std::size_t m, std::size_t d);

// Builds a pseudo-unitary u with u sources[k] ~= targets[k]: frame-maps both
// sets with eta^(1/2), completes each to a standard orthonormal basis, forms
// the basis-to-basis unitary, and conjugates back. Requires the eta-Gram
// matrices of the two sets to agree to 1e-8 (InfeasibilityError otherwise).
ComplexMatrix synthesize_pseudo_unitary(const std::vector<ComplexMatrix>& sources,
                                        const std::vector<ComplexMatrix>& targets,
                                        const MetricSpace& space);

// Constructive masker for mutually eta_A-orthogonal states with a common
// norm (Gram == g I to 1e-8 relative; InfeasibilityError "gram-mismatch"
// otherwise). Inputs are normalized internally so g = 1; targets are the
// fixed reducing states pulled back from the Hermitian frame.
Masker deterministic_masker(const std::vector<Ket>& states,
                            const MetricSpace& space_a, const MetricSpace& space_b,
                            const Ket& ancilla);

// A Bloch-disk family: the plane x sin(a) cos(t) + y sin(a) sin(t)
// + z cos(a) = c intersected with the Bloch ball.
struct DiskSpec {
  double alpha = 0.0;
  double theta = 0.0;
  double c = 0.0;
};

// The qubit masker that masks exactly the states on a disk: a literal 4x4
// unitary built from the half-angle entries. Masked marginals are
// diag((1+c)/2, (1-c)/2) on both sides for every state on the disk c.
Masker disk_masker(double alpha, double theta);

// n pure states with Bloch vectors uniformly sampled (by explicit 53-bit
// draws from mt19937_64(seed)) on the circle where the disk's plane meets
// the Bloch sphere. Degenerate |c| = 1 yields copies of the pole state.
std::vector<Ket> disk_states(const DiskSpec& spec, std::size_t n,
                             std::uint64_t seed);

// Density matrix (I + x sx + y sy + z sz)/2; requires |(x,y,z)| <= 1.
ComplexMatrix bloch_state(double x, double y, double z);

// ||mu nu* T01 + mu* nu T10||_max with Tij = Tr_A(psi'_i psi'_j^dagger) the
// Hermitian-frame cross-marginals of the two masked states on B. Zero iff
// the superposition mu s0 + nu s1 is masked exactly; requires
// |mu|^2 + |nu|^2 = 1 to 1e-10.
double superposition_leakage(const Masker& masker, const Ket& s0, const Ket& s1,
                             cplx mu, cplx nu);

// The d Fourier-phased GHZ-type states (1/sqrt d) sum_j w^(jk) |j...j> on n
// parties, w = exp(2 pi i / d). Pairwise orthogonal. SizeError when
// d^n > 4096.
std::vector<ComplexMatrix> fourier_ghz_states(std::size_t d, std::size_t n);

// Checks r-uniformity: for EVERY size-(n-r) subset of parties traced out,
// the r-party marginals of all states coincide. Enumerating all subsets is
// deliberately stronger than spot-checking one; the report notes it.
// SizeError when the subset count exceeds 10^6.
MaskingReport verify_r_uniform(const std::vector<ComplexMatrix>& states,
                               std::size_t d, std::size_t n, std::size_t r,
                               double tol);

// A trace-decreasing masking map L with L |k>|0...0> = p_k |Psi_k>; the
// success probabilities p_k must lie in (0, 1].
struct ProbabilisticMasker {
  ComplexMatrix map;
  std::vector<double> probabilities;
};

// The Fourier-GHZ probabilistic masker on n parties (dense map; guarded to
// d^n <= 256 to keep the matrix small).
ProbabilisticMasker probabilistic_ghz_masker(std::size_t d, std::size_t n,
                                             const std::vector<double>& probabilities);

}  // namespace etamask

#endif  // ETAMASK_MASKING_HPP
