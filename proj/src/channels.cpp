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

#include "etamask/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "etamask/detail/combinatorics.hpp"
#include "etamask/errors.hpp"
#include "etamask/linalg.hpp"

namespace etamask {

namespace {

constexpr double kProbSumTol = 1e-12;

// Probability vector: nonnegative entries summing to one.
void validate_probabilities(const std::vector<double>& p) {
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -kProbSumTol) {
      throw InputError("channel probabilities must be nonnegative");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kProbSumTol) {
    throw InputError("channel probabilities must sum to one");
  }
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

ComplexMatrix dyad_over_trace(const ComplexMatrix& f) {
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < f.rows(); ++i) norm_sq += std::norm(f(i, 0));
  if (norm_sq < 1e-300) throw InputError("masked state has zero norm");
  const std::size_t n = f.rows();
  ComplexMatrix rho(n, n);
  const double inv = 1.0 / norm_sq;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rho(i, j) = f(i, 0) * std::conj(f(j, 0)) * inv;
    }
  }
  return rho;
}

}  // namespace

ComplexMatrix weyl_operator(std::size_t d, std::size_t s, std::size_t t) {
  if (d < 2) throw InputError("dimension must be at least 2");
  if (s >= d || t >= d) throw InputError("Weyl indices must satisfy 0 <= s, t < d");
  ComplexMatrix w(d, d);
  for (std::size_t m = 0; m < d; ++m) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m * s) /
                         static_cast<double>(d);
    w(m, (m + t) % d) = std::exp(cplx(0.0, angle));
  }
  return w;
}

NoiseChannel pauli_channel(const std::vector<double>& p) {
  if (p.size() != 4) throw InputError("Pauli channel needs four probabilities");
  validate_probabilities(p);
  NoiseChannel channel;
  channel.kind = ChannelKind::pauli;
  channel.dim = 2;
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  y(0, 1) = cplx(0.0, -1.0);
  y(1, 0) = cplx(0.0, 1.0);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  channel.kraus.push_back({p[0], ComplexMatrix::identity(2)});
  channel.kraus.push_back({p[1], std::move(x)});
  channel.kraus.push_back({p[2], std::move(y)});
  channel.kraus.push_back({p[3], std::move(z)});
  return channel;
}

NoiseChannel weyl_channel(std::size_t d, const std::vector<double>& p) {
  if (d < 2) throw InputError("dimension must be at least 2");
  if (p.size() != d * d) {
    throw InputError("Weyl channel needs d^2 probabilities, row-major over (s, t)");
  }
  validate_probabilities(p);
  NoiseChannel channel;
  channel.kind = ChannelKind::weyl;
  channel.dim = d;
  channel.kraus.reserve(d * d);
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t t = 0; t < d; ++t) {
      channel.kraus.push_back({p[s * d + t], weyl_operator(d, s, t)});
    }
  }
  return channel;
}

NoiseChannel depolarizing_channel(std::size_t d, double q) {
  if (d < 2) throw InputError("dimension must be at least 2");
  if (!std::isfinite(q) || q < 0.0 || q > 1.0) {
    throw InputError("depolarizing strength must lie in [0, 1]");
  }
  NoiseChannel channel;
  channel.kind = ChannelKind::depolarizing;
  channel.dim = d;
  channel.depolarizing_q = q;
  if (d <= 32) {
    // Equivalent mixed-unitary form: the uniform Weyl mixture averages to
    // Tr(rho) I / d, so q spreads as q/d^2 per Weyl operator.
    const double uniform = q / static_cast<double>(d * d);
    channel.kraus.reserve(d * d);
    channel.kraus.push_back({1.0 - q + uniform, ComplexMatrix::identity(d)});
    for (std::size_t s = 0; s < d; ++s) {
      for (std::size_t t = 0; t < d; ++t) {
        if (s == 0 && t == 0) continue;
        channel.kraus.push_back({uniform, weyl_operator(d, s, t)});
      }
    }
  }
  return channel;
}

ComplexMatrix apply_channel(const NoiseChannel& channel, const ComplexMatrix& rho) {
  if (channel.dim == 0) throw InputError("channel is empty");
  if (!rho.is_square() || rho.rows() != channel.dim) {
    throw InputError("state dimension does not match the channel");
  }
  if (!all_finite(rho)) throw InputError("state has non-finite entries");
  const double scale = std::max(1.0, max_abs(rho));
  if (hermiticity_residual(rho) > 1e-10 * scale) {
    throw InputError("channel input must be Hermitian");
  }
  const std::size_t d = channel.dim;
  if (channel.kind == ChannelKind::depolarizing) {
    const double q = channel.depolarizing_q;
    const cplx mixed = q * trace(rho) / static_cast<double>(d);
    ComplexMatrix out = (1.0 - q) * rho;
    for (std::size_t i = 0; i < d; ++i) out(i, i) += mixed;
    return out;
  }
  ComplexMatrix out(d, d);
  for (const auto& term : channel.kraus) {
    if (term.weight == 0.0) continue;
    out = out + term.weight * (term.op * rho * dagger(term.op));
  }
  return out;
}

namespace {

std::string channel_params_string(const NoiseChannel& channel) {
  std::ostringstream os;
  switch (channel.kind) {
    case ChannelKind::pauli:
      os << "pauli p=[";
      for (std::size_t i = 0; i < channel.kraus.size(); ++i) {
        if (i) os << ", ";
        os << format_double(channel.kraus[i].weight);
      }
      os << "]";
      break;
    case ChannelKind::weyl:
      os << "weyl d=" << channel.dim;
      break;
    case ChannelKind::depolarizing:
      os << "depolarizing d=" << channel.dim
         << " q=" << format_double(channel.depolarizing_q);
      break;
  }
  return os.str();
}

}  // namespace

RobustnessReport robustness_check(const Masker& masker, const std::vector<Ket>& states,
                                  const NoiseChannel& channel, double tol) {
  if (states.size() < 2) throw InputError("need at least two states");
  if (channel.dim != masker.composite.dim()) {
    throw InputError("channel dimension does not match the composite space");
  }
  const std::size_t da = masker.space_a.dim();
  const std::size_t db = masker.space_b.dim();
  const std::vector<std::size_t> dims = {da, db};

  std::vector<ComplexMatrix> reduced_a, reduced_b;
  reduced_a.reserve(states.size());
  reduced_b.reserve(states.size());
  for (const auto& state : states) {
    if (!state.space.compatible_with(masker.space_a)) {
      throw InputError("state metric does not match the masker");
    }
    ComplexMatrix psi = masker.u * kron(state.vec, masker.ancilla.vec);
    if (!masker.composite.is_standard()) {
      psi = masker.composite.eta_sqrt() * psi;
    }
    const ComplexMatrix out = apply_channel(channel, dyad_over_trace(psi));
    reduced_a.push_back(partial_trace(out, dims, {0}));
    reduced_b.push_back(partial_trace(out, dims, {1}));
  }

  RobustnessReport report;
  report.channel_params = channel_params_string(channel);
  for (std::size_t i = 0; i < da; ++i) {
    report.first_marginal_diag.push_back(reduced_a.front()(i, i).real());
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      report.worst_marginal_deviation_a = std::max(
          report.worst_marginal_deviation_a, max_abs_diff(reduced_a[i], reduced_a[j]));
      report.worst_marginal_deviation_b = std::max(
          report.worst_marginal_deviation_b, max_abs_diff(reduced_b[i], reduced_b[j]));
    }
  }
  report.worst_marginal_deviation = std::max(report.worst_marginal_deviation_a,
                                             report.worst_marginal_deviation_b);
  report.passed = report.worst_marginal_deviation <= tol;
  return report;
}

std::vector<RobustnessReport> robustness_sweep(const Masker& masker,
                                               const std::vector<Ket>& states,
                                               ChannelFamily family,
                                               const std::vector<double>& grid,
                                               double tol) {
  const std::size_t dim = masker.composite.dim();
  std::vector<RobustnessReport> reports;
  reports.reserve(grid.size());
  for (double value : grid) {
    NoiseChannel channel;
    if (family == ChannelFamily::depolarizing) {
      channel = depolarizing_channel(dim, value);
    } else {
      if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
        throw InputError("mixing weight must lie in [0, 1]");
      }
      // lambda-weighted uniform Weyl twirl against the identity channel.
      const double uniform = value / static_cast<double>(dim * dim);
      std::vector<double> p(dim * dim, uniform);
      p[0] = 1.0 - value + uniform;
      channel = weyl_channel(dim, p);
      std::ostringstream os;
      os << "uniform-weyl d=" << dim << " lambda=" << format_double(value);
      RobustnessReport report = robustness_check(masker, states, channel, tol);
      report.channel_params = os.str();
      reports.push_back(std::move(report));
      continue;
    }
    reports.push_back(robustness_check(masker, states, channel, tol));
  }
  return reports;
}

RobustnessReport r_uniform_robustness(std::size_t d, std::size_t n, std::size_t r,
                                      const std::vector<double>& probabilities,
                                      double q, double tol) {
  if (d < 2) throw InputError("local dimension must be at least 2");
  if (n < 2) throw InputError("need at least two parties");
  if (r < 1 || r >= n) throw InputError("need 1 <= r <= n-1");
  if (probabilities.size() != d) {
    throw InputError("need one probability per branch");
  }
  for (double p : probabilities) {
    if (!std::isfinite(p) || p <= 0.0 || p > 1.0) {
      throw InputError("branch probabilities must lie in (0, 1]");
    }
  }
  if (!std::isfinite(q) || q < 0.0 || q > 1.0) {
    throw InputError("retention weight must lie in [0, 1]");
  }

  // fourier_ghz_states enforces the d^n <= 4096 guard.
  const std::vector<ComplexMatrix> states = fourier_ghz_states(d, n);
  const std::size_t dim = states.front().rows();
  if (detail::binomial(n, n - r) > 1e6) {
    throw SizeError("subset enumeration exceeds the 10^6 guard");
  }
  const auto kept_sets = detail::subsets_of_size(n, r);
  std::size_t rdim = 1;
  for (std::size_t i = 0; i < r; ++i) rdim *= d;
  if (static_cast<double>(kept_sets.size()) * static_cast<double>(d) *
          static_cast<double>(rdim) * static_cast<double>(rdim) >
      static_cast<double>(1 << 24)) {
    throw SizeError("marginal storage exceeds the guard");
  }

  // sigma -> q sigma + (1-q) Tr(sigma) I / dim retains weight q on the state.
  const NoiseChannel channel = depolarizing_channel(dim, 1.0 - q);
  const std::vector<std::size_t> dims(n, d);

  // Predicted r-party marginal of |Psi_k><Psi_k| after the channel, without
  // the p_k^2 prefactor: q/d sum_j |j..j><j..j| + (1-q)/d^r I.
  ComplexMatrix predicted(rdim, rdim);
  const double off = (1.0 - q) / static_cast<double>(rdim);
  for (std::size_t i = 0; i < rdim; ++i) predicted(i, i) = off;
  std::size_t diag_stride_r = 0;
  {
    std::size_t power = 1;
    for (std::size_t i = 0; i < r; ++i) {
      diag_stride_r += power;
      power *= d;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    predicted(j * diag_stride_r, j * diag_stride_r) += q / static_cast<double>(d);
  }

  // marginals[subset][k], divided by p_k^2 so the across-k identity is exact.
  std::vector<std::vector<ComplexMatrix>> marginals(
      kept_sets.size(), std::vector<ComplexMatrix>(d));
  double formula_residual = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double weight = probabilities[k] * probabilities[k];
    ComplexMatrix sigma = dyad_over_trace(states[k]);
    sigma = weight * sigma;
    const ComplexMatrix out = apply_channel(channel, sigma);
    for (std::size_t s = 0; s < kept_sets.size(); ++s) {
      ComplexMatrix m = partial_trace(out, dims, kept_sets[s]);
      formula_residual =
          std::max(formula_residual, max_abs_diff(m, weight * predicted));
      marginals[s][k] = (1.0 / weight) * m;
    }
  }

  RobustnessReport report;
  {
    std::ostringstream os;
    os << "ghz-depolarizing d=" << d << " n=" << n << " r=" << r
       << " q=" << format_double(q);
    report.channel_params = os.str();
  }
  for (const auto& per_subset : marginals) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        report.worst_marginal_deviation =
            std::max(report.worst_marginal_deviation,
                     max_abs_diff(per_subset[i], per_subset[j]));
      }
    }
  }
  report.worst_marginal_deviation_a = report.worst_marginal_deviation;
  report.worst_marginal_deviation_b = report.worst_marginal_deviation;
  report.marginal_formula_residual = formula_residual;
  report.passed =
      report.worst_marginal_deviation <= tol && formula_residual <= tol;
  return report;
}

}  // namespace etamask
