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

#ifndef ETAMASK_CHANNELS_HPP
#define ETAMASK_CHANNELS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "etamask/masking.hpp"

namespace etamask {

// Discrete Weyl (generalized Pauli) operator
// W_st = sum_m exp(2 pi i m s / d) |m><(m+t) mod d|, 0 <= s, t < d.
ComplexMatrix weyl_operator(std::size_t d, std::size_t s, std::size_t t);

enum class ChannelKind { pauli, weyl, depolarizing };

struct KrausTerm {
  double weight = 0.0;  // probability attached to a unitary conjugation
  ComplexMatrix op;
};

// A mixed-unitary noise channel rho -> sum_i w_i K_i rho K_i^dagger.
// The depolarizing channel additionally knows its strength and is applied
// as the affine map (1-q) rho + q Tr(rho) I/d; its Kraus terms (the
// identity reweighted against the uniform Weyl mixture) are materialized
// for d <= 32 so the two routes can be compared.
struct NoiseChannel {
  ChannelKind kind = ChannelKind::pauli;
  std::size_t dim = 0;
  std::vector<KrausTerm> kraus;
  double depolarizing_q = 0.0;
};

// Qubit Pauli channel p0 rho + p1 X rho X + p2 Y rho Y + p3 Z rho Z.
NoiseChannel pauli_channel(const std::vector<double>& p);

// Weyl channel with a d x d probability matrix over (s, t), row-major.
NoiseChannel weyl_channel(std::size_t d, const std::vector<double>& p);

// Global depolarizing channel of strength q in [0, 1].
NoiseChannel depolarizing_channel(std::size_t d, double q);

// Applies the channel to a Hermitian input (to 1e-10). Trace-preserving and
// positivity-preserving.
ComplexMatrix apply_channel(const NoiseChannel& channel, const ComplexMatrix& rho);

struct RobustnessReport {
  // Worst pairwise max-norm deviation between reduced states, over sides
  // and state pairs; the per-side maxima are kept alongside.
  double worst_marginal_deviation = 0.0;
  double worst_marginal_deviation_a = 0.0;
  double worst_marginal_deviation_b = 0.0;
  std::string channel_params;
  bool passed = false;
  // Diagonal of the first state's reduced density matrix on side A after
  // the channel; what the masker collapses every input to.
  std::vector<double> first_marginal_diag;
  // Set when a closed-form marginal prediction applies (r-uniform checks).
  std::optional<double> marginal_formula_residual;
};

// Masks each state, pushes the composite density matrix (normalized to unit
// trace, in the Hermitian frame) through the channel, and compares reduced
// states pairwise on both sides. The channel acts on the composite space.
RobustnessReport robustness_check(const Masker& masker, const std::vector<Ket>& states,
                                  const NoiseChannel& channel, double tol);

enum class ChannelFamily { depolarizing, uniform_weyl_mix };

// One robustness_check per grid value. depolarizing: parameter is q.
// uniform_weyl_mix: parameter is the mixing weight lambda of the uniform
// Weyl twirl against the identity channel (a genuine Kraus-sum route).
// Results are ordered by grid index.
std::vector<RobustnessReport> robustness_sweep(const Masker& masker,
                                               const std::vector<Ket>& states,
                                               ChannelFamily family,
                                               const std::vector<double>& grid,
                                               double tol);

// Noise robustness of the probabilistic Fourier-GHZ masking: pushes each
// p_k^2 |Psi_k><Psi_k| through q.identity + (1-q).maximally-mixed and checks
// every r-party marginal against p_k^2 (q (1/d) sum_j |j..j><j..j| +
// (1-q) I / d^r). Marginals are compared across k after dividing out p_k^2.
RobustnessReport r_uniform_robustness(std::size_t d, std::size_t n, std::size_t r,
                                      const std::vector<double>& probabilities,
                                      double q, double tol);

}  // namespace etamask

#endif  // ETAMASK_CHANNELS_HPP
