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

#include "etamask/masking.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "etamask/detail/combinatorics.hpp"
#include "etamask/errors.hpp"

namespace etamask {

namespace {

constexpr double kGramTol = 1e-8;
constexpr double kMaskerResidualTol = 1e-9;

// Masked composite state in the Hermitian frame.
ComplexMatrix frame_masked_vector(const Masker& masker, const Ket& state) {
  const ComplexMatrix psi = masker.u * kron(state.vec, masker.ancilla.vec);
  if (masker.composite.is_standard()) return psi;
  return masker.composite.eta_sqrt() * psi;
}

std::vector<std::size_t> composite_dims(const Masker& masker) {
  return {masker.space_a.dim(), masker.space_b.dim()};
}

}  // namespace

Masker make_masker(const MetricSpace& space_a, const MetricSpace& space_b,
                   ComplexMatrix u, const Ket& ancilla) {
  if (!space_a.valid() || !space_b.valid()) {
    throw InputError("masker needs validated spaces");
  }
  const std::size_t dim = space_a.dim() * space_b.dim();
  if (u.rows() != dim || u.cols() != dim) {
    throw InputError("masker matrix does not match dim_A * dim_B");
  }
  if (!all_finite(u)) throw InputError("masker matrix has non-finite entries");
  if (!ancilla.space.compatible_with(space_b)) {
    throw InputError("ancilla does not live in space B");
  }
  Masker masker{space_a, space_b, tensor(space_a, space_b), std::move(u), ancilla};
  if (pseudo_unitarity_residual(masker.u, masker.composite) > kMaskerResidualTol) {
    throw InputError("masker matrix is not pseudo-unitary on the composite space");
  }
  const double norm_sq = eta_inner(ancilla, ancilla).real();
  if (std::abs(norm_sq - 1.0) > kGramTol) {
    throw InputError("ancilla must have unit eta_B-norm");
  }
  return masker;
}

std::pair<ComplexMatrix, ComplexMatrix> generalized_reduced_states(
    const Ket& psi, const MetricSpace& space_a, const MetricSpace& space_b) {
  const std::size_t da = space_a.dim();
  const std::size_t db = space_b.dim();
  if (psi.vec.rows() != da * db) {
    throw InputError("composite ket does not match dim_A * dim_B");
  }
  ComplexMatrix frame = psi.vec;
  if (!space_a.is_standard() || !space_b.is_standard()) {
    frame = kron(space_a.eta_sqrt(), space_b.eta_sqrt()) * frame;
  }
  const std::vector<std::size_t> dims{da, db};
  return {cross_marginal(frame, frame, dims, {0}),
          cross_marginal(frame, frame, dims, {1})};
}

MaskingReport verify_masking(const Masker& masker, const std::vector<Ket>& states,
                             double tol) {
  if (states.size() < 2) throw InputError("verification needs at least two states");
  for (const auto& s : states) {
    if (!s.space.compatible_with(masker.space_a)) {
      throw InputError("state does not live in the masker's space A");
    }
  }
  const auto dims = composite_dims(masker);
  const std::size_t m = states.size();

  std::vector<ComplexMatrix> frames;
  std::vector<ComplexMatrix> red_a;
  std::vector<ComplexMatrix> red_b;
  frames.reserve(m);
  red_a.reserve(m);
  red_b.reserve(m);
  for (const auto& s : states) {
    frames.push_back(frame_masked_vector(masker, s));
    red_a.push_back(cross_marginal(frames.back(), frames.back(), dims, {0}));
    red_b.push_back(cross_marginal(frames.back(), frames.back(), dims, {1}));
  }

  MaskingReport report;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dev_a = max_abs_diff(red_a[i], red_a[j]);
      const double dev_b = max_abs_diff(red_b[i], red_b[j]);
      report.max_marginal_deviation_a = std::max(report.max_marginal_deviation_a, dev_a);
      report.max_marginal_deviation_b = std::max(report.max_marginal_deviation_b, dev_b);
      report.per_pair.push_back({i, j, std::max(dev_a, dev_b)});
      const double cross_a = max_abs(cross_marginal(frames[i], frames[j], dims, {1}));
      const double cross_b = max_abs(cross_marginal(frames[i], frames[j], dims, {0}));
      report.max_cross_term_norm =
          std::max({report.max_cross_term_norm, cross_a, cross_b});
    }
  }
  report.passed = report.max_marginal_deviation_a <= tol &&
                  report.max_marginal_deviation_b <= tol;
  return report;
}

std::vector<ComplexMatrix> fixed_reducing_states(std::size_t m, std::size_t d) {
  if (m < 2) throw InputError("need at least two reducing states");
  if (m > d) throw InputError("cannot place more than d orthogonal reducing states");
  std::vector<ComplexMatrix> states;
  states.reserve(m);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < m; ++k) {
    ComplexMatrix psi(d * d, 1);
    for (std::size_t i = 0; i < d; ++i) {
      psi(i * d + (i + k) % d, 0) = amp;
    }
    states.push_back(std::move(psi));
  }
  return states;
}

ComplexMatrix synthesize_pseudo_unitary(const std::vector<ComplexMatrix>& sources,
                                        const std::vector<ComplexMatrix>& targets,
                                        const MetricSpace& space) {
  if (sources.empty() || sources.size() != targets.size()) {
    throw InputError("need matching non-empty source and target sets");
  }
  const std::size_t dim = space.dim();
  for (const auto& v : sources) {
    if (v.cols() != 1 || v.rows() != dim) throw InputError("source dimension mismatch");
  }
  for (const auto& v : targets) {
    if (v.cols() != 1 || v.rows() != dim) throw InputError("target dimension mismatch");
  }

  const std::size_t m = sources.size();
  const auto eta_gram = [&](const std::vector<ComplexMatrix>& set) {
    ComplexMatrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      const ComplexMatrix eta_vj = space.is_standard() ? set[i] : space.eta() * set[i];
      for (std::size_t j = 0; j < m; ++j) {
        gram(j, i) = standard_inner(set[j], eta_vj);
      }
    }
    return gram;
  };
  if (max_abs_diff(eta_gram(sources), eta_gram(targets)) > kGramTol) {
    throw InfeasibilityError("source and target eta-Gram matrices differ");
  }

  // Frame-map, complete both orthonormal families, and transport one basis
  // onto the other; conjugating back restores pseudo-unitarity.
  const auto frame_map = [&](const std::vector<ComplexMatrix>& set) {
    std::vector<ComplexMatrix> mapped;
    mapped.reserve(set.size());
    for (const auto& v : set) {
      mapped.push_back(space.is_standard() ? v : space.eta_sqrt() * v);
    }
    return mapped;
  };
  const std::vector<ComplexMatrix> basis_s =
      gram_schmidt_complete(frame_map(sources), standard_inner);
  const std::vector<ComplexMatrix> basis_t =
      gram_schmidt_complete(frame_map(targets), standard_inner);

  ComplexMatrix u_frame(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        u_frame(i, j) += basis_t[k](i, 0) * std::conj(basis_s[k](j, 0));
      }
    }
  }
  if (space.is_standard()) return u_frame;
  return space.eta_inv_sqrt() * u_frame * space.eta_sqrt();
}

Masker deterministic_masker(const std::vector<Ket>& states,
                            const MetricSpace& space_a, const MetricSpace& space_b,
                            const Ket& ancilla) {
  const std::size_t m = states.size();
  if (m < 2) throw InputError("need at least two states to mask");
  const std::size_t da = space_a.dim();
  const std::size_t db = space_b.dim();
  if (m > std::min(da, db)) {
    throw InputError("more states than min(dim_A, dim_B) admits");
  }
  for (const auto& s : states) {
    if (!s.space.compatible_with(space_a)) {
      throw InputError("state does not live in space A");
    }
  }
  if (!ancilla.space.compatible_with(space_b)) {
    throw InputError("ancilla does not live in space B");
  }
  const double anc_norm_sq = eta_inner(ancilla, ancilla).real();
  if (std::abs(anc_norm_sq - 1.0) > kGramTol) {
    throw InputError("ancilla must have unit eta_B-norm");
  }

  // Gram must equal g I for a common g > 0; inputs are then normalized so
  // the synthesis below works with g = 1.
  ComplexMatrix gram(m, m);
  double g = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) gram(i, j) = eta_inner(states[i], states[j]);
    g += gram(i, i).real() / static_cast<double>(m);
  }
  if (!(g > 1e-12)) throw InfeasibilityError("states have (near-)zero eta-norm");
  const double gram_scale = std::max(1.0, std::abs(g));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const cplx expected = (i == j) ? cplx(g, 0.0) : cplx(0.0, 0.0);
      if (std::abs(gram(i, j) - expected) > kGramTol * gram_scale) {
        throw InfeasibilityError(
            "states are not mutually eta-orthogonal with a common norm");
      }
    }
  }

  const MetricSpace composite = tensor(space_a, space_b);
  std::vector<ComplexMatrix> sources;
  sources.reserve(m);
  const Ket anc = eta_normalize(ancilla);
  for (const auto& s : states) {
    sources.push_back(kron(eta_normalize(s).vec, anc.vec));
  }

  // Targets: cyclic reducing states over the first min(da, db) levels of
  // both sides, pulled back from the Hermitian frame so their eta-Gram is
  // the identity too.
  const std::size_t d = std::min(da, db);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<ComplexMatrix> targets;
  targets.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    ComplexMatrix frame_target(da * db, 1);
    for (std::size_t i = 0; i < d; ++i) {
      frame_target(i * db + (i + k) % d, 0) = amp;
    }
    targets.push_back(composite.is_standard()
                          ? std::move(frame_target)
                          : composite.eta_inv_sqrt() * frame_target);
  }

  ComplexMatrix u = synthesize_pseudo_unitary(sources, targets, composite);
  return make_masker(space_a, space_b, std::move(u), anc);
}

Masker disk_masker(double alpha, double theta) {
  if (!std::isfinite(alpha) || !std::isfinite(theta)) {
    throw InputError("angles must be finite");
  }
  const double ca = std::cos(alpha / 2.0);
  const double sa = std::sin(alpha / 2.0);
  const cplx ph = std::exp(cplx(0.0, -theta));
  ComplexMatrix u(4, 4);
  u(0, 0) = ca;
  u(0, 2) = ph * sa;
  u(1, 1) = ca;
  u(1, 3) = ph * sa;
  u(2, 1) = sa;
  u(2, 3) = -ph * ca;
  u(3, 0) = sa;
  u(3, 2) = -ph * ca;
  const MetricSpace qubit = MetricSpace::standard(2);
  Ket zero = make_ket(qubit, ComplexMatrix::column({1.0, 0.0}));
  zero.normalized = true;
  return make_masker(qubit, qubit, std::move(u), zero);
}

ComplexMatrix bloch_state(double x, double y, double z) {
  const double len_sq = x * x + y * y + z * z;
  if (!(len_sq <= 1.0 + 1e-12)) {
    throw InputError("Bloch vector lies outside the unit ball");
  }
  ComplexMatrix rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + z);
  rho(0, 1) = 0.5 * cplx(x, -y);
  rho(1, 0) = 0.5 * cplx(x, y);
  rho(1, 1) = 0.5 * (1.0 - z);
  return rho;
}

std::vector<Ket> disk_states(const DiskSpec& spec, std::size_t n,
                             std::uint64_t seed) {
  if (!(std::abs(spec.c) <= 1.0)) throw InputError("disk offset must satisfy |c| <= 1");
  // Disk normal and an orthonormal tangent frame for the boundary circle.
  const double nx = std::sin(spec.alpha) * std::cos(spec.theta);
  const double ny = std::sin(spec.alpha) * std::sin(spec.theta);
  const double nz = std::cos(spec.alpha);
  double ux, uy, uz;
  if (std::abs(nz) < 1.0 - 1e-12) {
    const double inv = 1.0 / std::hypot(ny, nx);  // z_hat x n, normalized
    ux = -ny * inv;
    uy = nx * inv;
    uz = 0.0;
  } else {
    ux = 1.0;
    uy = 0.0;
    uz = 0.0;
  }
  const double vx = ny * uz - nz * uy;
  const double vy = nz * ux - nx * uz;
  const double vz = nx * uy - ny * ux;
  const double radius = std::sqrt(std::max(0.0, 1.0 - spec.c * spec.c));

  // Explicit 53-bit uniforms keep the stream identical across platforms.
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  const MetricSpace qubit = MetricSpace::standard(2);
  std::vector<Ket> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = 2.0 * std::numbers::pi * uniform();
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    const double bx = spec.c * nx + radius * (cp * ux + sp * vx);
    const double by = spec.c * ny + radius * (cp * uy + sp * vy);
    const double bz = spec.c * nz + radius * (cp * uz + sp * vz);
    // Pure state with this (unit) Bloch vector.
    const double polar = std::acos(std::clamp(bz, -1.0, 1.0));
    const double azimuth = std::atan2(by, bx);
    Ket ket = make_ket(
        qubit, ComplexMatrix::column(
                   {std::cos(polar / 2.0),
                    std::exp(cplx(0.0, azimuth)) * std::sin(polar / 2.0)}));
    ket.normalized = true;
    states.push_back(std::move(ket));
  }
  return states;
}

double superposition_leakage(const Masker& masker, const Ket& s0, const Ket& s1,
                             cplx mu, cplx nu) {
  if (std::abs(std::norm(mu) + std::norm(nu) - 1.0) > 1e-10) {
    throw InputError("superposition weights must satisfy |mu|^2 + |nu|^2 = 1");
  }
  const auto dims = composite_dims(masker);
  const ComplexMatrix f0 = frame_masked_vector(masker, s0);
  const ComplexMatrix f1 = frame_masked_vector(masker, s1);
  const ComplexMatrix t01 = cross_marginal(f0, f1, dims, {1});
  const ComplexMatrix t10 = cross_marginal(f1, f0, dims, {1});
  return max_abs(mu * std::conj(nu) * t01 + std::conj(mu) * nu * t10);
}

std::vector<ComplexMatrix> fourier_ghz_states(std::size_t d, std::size_t n) {
  if (d < 2 || n < 2) throw InputError("need d >= 2 and n >= 2");
  double total = 1.0;
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<double>(d);
    if (total > 4096.0) throw SizeError("d^n exceeds the 4096 guard");
    dim *= d;
  }
  std::vector<ComplexMatrix> states;
  states.reserve(d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  // |j...j> sits at index j * (d^n - 1) / (d - 1).
  std::size_t diag_stride = 0;
  std::size_t power = 1;
  for (std::size_t i = 0; i < n; ++i) {
    diag_stride += power;
    power *= d;
  }
  for (std::size_t k = 0; k < d; ++k) {
    ComplexMatrix psi(dim, 1);
    for (std::size_t j = 0; j < d; ++j) {
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(d);
      psi(j * diag_stride, 0) = amp * std::exp(cplx(0.0, angle));
    }
    states.push_back(std::move(psi));
  }
  return states;
}

MaskingReport verify_r_uniform(const std::vector<ComplexMatrix>& states,
                               std::size_t d, std::size_t n, std::size_t r,
                               double tol) {
  if (states.size() < 2) throw InputError("need at least two states");
  if (r < 1 || r >= n) throw InputError("need 1 <= r <= n-1");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= d;
  for (const auto& s : states) {
    if (s.cols() != 1 || s.rows() != dim) {
      throw InputError("state dimension is not d^n");
    }
  }
  if (detail::binomial(n, n - r) > 1e6) {
    throw SizeError("subset enumeration exceeds the 10^6 guard");
  }

  const std::vector<std::size_t> dims(n, d);
  const auto kept_sets = detail::subsets_of_size(n, r);

  MaskingReport report;
  report.note = "all " + std::to_string(kept_sets.size()) +
                " size-" + std::to_string(r) +
                " marginals compared (every traced subset, not just the first)";
  double worst = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 1;
  std::vector<std::size_t> worst_set = kept_sets.front();
  for (const auto& keep : kept_sets) {
    std::vector<ComplexMatrix> marginals;
    marginals.reserve(states.size());
    for (const auto& s : states) {
      marginals.push_back(cross_marginal(s, s, dims, keep));
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = i + 1; j < states.size(); ++j) {
        const double dev = max_abs_diff(marginals[i], marginals[j]);
        if (dev > worst) {
          worst = dev;
          worst_i = i;
          worst_j = j;
          worst_set = keep;
        }
      }
    }
  }
  report.max_marginal_deviation_a = worst;
  report.max_marginal_deviation_b = worst;
  report.per_pair.push_back({worst_i, worst_j, worst});
  report.note += "; worst kept subset {";
  for (std::size_t i = 0; i < worst_set.size(); ++i) {
    report.note += (i ? "," : "") + std::to_string(worst_set[i]);
  }
  report.note += "}";
  report.passed = worst <= tol;
  return report;
}

ProbabilisticMasker probabilistic_ghz_masker(std::size_t d, std::size_t n,
                                             const std::vector<double>& probabilities) {
  if (probabilities.size() != d) {
    throw InputError("need one success probability per state");
  }
  for (double p : probabilities) {
    if (!(p > 0.0) || p > 1.0) {
      throw InputError("success probabilities must lie in (0, 1]");
    }
  }
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    dim *= d;
    if (dim > 256) throw SizeError("dense probabilistic map is guarded to d^n <= 256");
  }
  const auto ghz = fourier_ghz_states(d, n);
  // L = sum_k p_k |Psi_k><k| (x) <0...0|: the input |k> occupies index
  // k * d^(n-1) of the composite (input (x) ancilla) ordering.
  std::size_t ancilla_dim = dim / d;
  ComplexMatrix map(dim, dim);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t col = k * ancilla_dim;
    for (std::size_t i = 0; i < dim; ++i) {
      map(i, col) = probabilities[k] * ghz[k](i, 0);
    }
  }
  return ProbabilisticMasker{std::move(map), probabilities};
}

}  // namespace etamask
