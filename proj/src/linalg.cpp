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

#include "etamask/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "etamask/errors.hpp"
#include "etamask/kernels.hpp"

namespace etamask {

namespace {

void validate_factors(const ComplexMatrix& m,
                      const std::vector<std::size_t>& dims,
                      const std::vector<std::size_t>& keep,
                      bool square_input) {
  if (dims.empty()) throw InputError("empty factor list");
  std::size_t prod = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw InputError("zero factor dimension");
    prod *= d;
  }
  if (m.rows() != prod || (square_input ? m.cols() != prod : m.cols() != 1)) {
    throw InputError("factor dimensions do not multiply to the matrix side");
  }
  if (keep.empty()) throw InputError("keep list must be non-empty");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= dims.size()) throw InputError("keep index out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw InputError("keep indices must be strictly increasing");
    }
  }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.empty() || b.empty()) throw InputError("kron of an empty matrix");
  return kernels::kron(a, b);
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  if (!m.is_square()) throw InputError("partial trace of a non-square matrix");
  validate_factors(m, dims, keep, /*square_input=*/true);
  return kernels::partial_trace(m, dims, keep);
}

ComplexMatrix cross_marginal(const ComplexMatrix& u, const ComplexMatrix& v,
                             const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& keep) {
  if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows()) {
    throw InputError("cross_marginal expects two column vectors of equal size");
  }
  validate_factors(u, dims, keep, /*square_input=*/false);
  return kernels::cross_marginal(u, v, dims, keep);
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver: cyclic complex Jacobi.
//
// Each rotation J differs from the identity in the (p, q) block
//   J(p,p) = c         J(p,q) = s
//   J(q,p) = -s e^-if  J(q,q) = c e^-if
// with e^if the phase of w(p,q), which reduces the block to a real symmetric
// 2x2 problem solved by the classical Jacobi tangent formula. Rotations are
// exactly unitary, so the accumulated eigenvector matrix stays unitary to
// machine precision.
// ---------------------------------------------------------------------------

EigenDecomposition herm_eig(const ComplexMatrix& a) {
  if (!a.is_square()) throw InputError("eigendecomposition of a non-square matrix");
  if (!all_finite(a)) throw InputError("matrix has non-finite entries");
  if (hermiticity_residual(a) > 1e-10) {
    throw InputError("matrix is not Hermitian to 1e-10");
  }
  const std::size_t n = a.rows();

  // Exact symmetrization removes the tolerated asymmetry before iterating.
  ComplexMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      w(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, max_abs(w));
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(w(p, q)));
    }
    if (off <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx wpq = w(p, q);
        const double r = std::abs(wpq);
        if (r <= 1e-18 * scale) {
          w(p, q) = std::conj(w(q, p) = 0.0);
          continue;
        }
        const cplx phase = wpq / r;
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx cps = std::conj(phase);

        // w <- J^dagger w J, applied as column then row updates.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx wkp = w(k, p);
          const cplx wkq = w(k, q);
          w(k, p) = c * wkp - s * cps * wkq;
          w(k, q) = s * wkp + c * cps * wkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx wpk = w(p, k);
          const cplx wqk = w(q, k);
          w(p, k) = c * wpk - s * phase * wqk;
          w(q, k) = s * wpk + c * phase * wqk;
        }
        // v <- v J.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * cps * vkq;
          v(k, q) = s * vkp + c * cps * vkq;
        }
        // The rotation zeroes the pair exactly in theory; enforce it.
        w(p, q) = 0.0;
        w(q, p) = 0.0;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return w(i, i).real() < w(j, j).real();
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = w(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> hpd_sqrt(const ComplexMatrix& h) {
  const EigenDecomposition eig = herm_eig(h);
  const std::size_t n = h.rows();
  const double lmax = eig.values.back();
  const double lmin = eig.values.front();
  if (!(lmax > 0.0) || !(lmin > 1e-12 * lmax)) {
    throw MetricError("matrix is not positive-definite");
  }

  // f(H) = V f(L) V^dagger, assembled for f = sqrt and f = 1/sqrt at once.
  ComplexMatrix root(n, n);
  ComplexMatrix inv_root(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc_r = 0.0;
      cplx acc_i = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const cplx outer = eig.vectors(i, k) * std::conj(eig.vectors(j, k));
        const double sq = std::sqrt(eig.values[k]);
        acc_r += sq * outer;
        acc_i += outer / sq;
      }
      root(i, j) = acc_r;
      inv_root(i, j) = acc_i;
    }
  }
  // Exact Hermitian symmetrization of the assembled functions.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      root(i, j) = 0.5 * (root(i, j) + std::conj(root(j, i)));
      root(j, i) = std::conj(root(i, j));
      inv_root(i, j) = 0.5 * (inv_root(i, j) + std::conj(inv_root(j, i)));
      inv_root(j, i) = std::conj(inv_root(i, j));
    }
    root(i, i) = root(i, i).real();
    inv_root(i, i) = inv_root(i, i).real();
  }
  return {root, inv_root};
}

cplx standard_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) acc += std::conj(a(i, 0)) * b(i, 0);
  return acc;
}

std::vector<ComplexMatrix> gram_schmidt_complete(
    const std::vector<ComplexMatrix>& vectors, const InnerProduct& ip) {
  if (vectors.empty()) throw InputError("gram_schmidt_complete needs at least one vector");
  const std::size_t d = vectors.front().rows();
  for (const auto& vec : vectors) {
    if (vec.cols() != 1 || vec.rows() != d) {
      throw InputError("inputs must be column vectors of equal dimension");
    }
  }
  if (vectors.size() > d) throw RankError("more vectors than the dimension admits");

  std::vector<ComplexMatrix> basis;
  basis.reserve(d);
  // One subtraction pass against the current basis.
  const auto project_out = [&](ComplexMatrix v) {
    for (const auto& b : basis) {
      const cplx coeff = ip(b, v);
      for (std::size_t i = 0; i < d; ++i) v(i, 0) -= coeff * b(i, 0);
    }
    return v;
  };
  const auto ip_norm = [&](const ComplexMatrix& v) {
    return std::sqrt(std::max(0.0, ip(v, v).real()));
  };

  for (const auto& input : vectors) {
    // Two passes: the second mops up the rounding left by the first.
    ComplexMatrix v = project_out(project_out(input));
    const double nrm = ip_norm(v);
    if (nrm < 1e-10) throw RankError("input vectors are linearly dependent under ip");
    basis.push_back((1.0 / nrm) * v);
  }

  // Completion: maintain the residual of every standard basis vector and
  // greedily promote the largest one (column-pivoted Gram-Schmidt).
  std::vector<ComplexMatrix> residuals;
  residuals.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    ComplexMatrix e(d, 1);
    e(j, 0) = 1.0;
    residuals.push_back(project_out(std::move(e)));
  }
  std::vector<bool> used(d, false);

  while (basis.size() < d) {
    std::size_t best = d;
    double best_norm = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (used[j]) continue;
      const double nrm = ip_norm(residuals[j]);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = j;
      }
    }
    if (best == d || best_norm < 1e-10) {
      throw RankError("failed to complete an orthonormal basis");
    }
    used[best] = true;
    // Re-orthogonalize the winner before admitting it.
    ComplexMatrix v = project_out((1.0 / best_norm) * residuals[best]);
    const double nrm = ip_norm(v);
    if (nrm < 1e-10) throw RankError("failed to complete an orthonormal basis");
    basis.push_back((1.0 / nrm) * v);
    const ComplexMatrix& added = basis.back();
    for (std::size_t j = 0; j < d; ++j) {
      if (used[j]) continue;
      const cplx coeff = ip(added, residuals[j]);
      for (std::size_t i = 0; i < d; ++i) residuals[j](i, 0) -= coeff * added(i, 0);
    }
  }
  return basis;
}

std::vector<ComplexMatrix> gell_mann_basis(std::size_t d) {
  if (d < 2) throw InputError("gell_mann_basis needs dimension >= 2");
  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d - 1);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix sym(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.push_back(std::move(sym));
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix asym(d, d);
      asym(j, k) = cplx(0.0, -1.0);
      asym(k, j) = cplx(0.0, 1.0);
      basis.push_back(std::move(asym));
    }
  }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix diag(d, d);
    const double norm = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (std::size_t i = 0; i < l; ++i) diag(i, i) = norm;
    diag(l, l) = -norm * static_cast<double>(l);
    basis.push_back(std::move(diag));
  }
  return basis;
}

}  // namespace etamask
