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

#include "etamask/nhqm.hpp"

#include <cmath>

#include "etamask/errors.hpp"

namespace etamask {

MetricSpace MetricSpace::standard(std::size_t dim) {
  if (dim == 0) throw InputError("zero-dimensional space");
  auto data = std::make_shared<Data>();
  data->dim = dim;
  data->eta = ComplexMatrix::identity(dim);
  data->eta_sqrt = data->eta;
  data->eta_inv_sqrt = data->eta;
  data->standard = true;
  return MetricSpace(std::move(data));
}

bool MetricSpace::compatible_with(const MetricSpace& other) const {
  if (!valid() || !other.valid()) return false;
  if (data_ == other.data_) return true;
  if (dim() != other.dim()) return false;
  const double scale = std::max(1.0, max_abs(eta()));
  return max_abs_diff(eta(), other.eta()) <= 1e-12 * scale;
}

MetricSpace validate_metric(const ComplexMatrix& eta) {
  if (!eta.is_square()) throw InputError("metric must be a square matrix");
  if (!all_finite(eta)) throw InputError("metric has non-finite entries");
  if (hermiticity_residual(eta) > 1e-10) {
    throw MetricError("metric is not Hermitian to 1e-10");
  }
  const EigenDecomposition eig = herm_eig(eta);
  const double lmax = eig.values.back();
  const double lmin = eig.values.front();
  if (!(lmax > 0.0) || !(lmin > 1e-12 * lmax)) {
    throw MetricError("metric is not positive-definite");
  }

  const std::size_t n = eta.rows();
  auto data = std::make_shared<MetricSpace::Data>();
  data->dim = n;
  data->eta = eta;
  data->eta_sqrt = ComplexMatrix(n, n);
  data->eta_inv_sqrt = ComplexMatrix(n, n);
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
      data->eta_sqrt(i, j) = acc_r;
      data->eta_inv_sqrt(i, j) = acc_i;
    }
  }
  return MetricSpace(std::move(data));
}

MetricSpace tensor(const MetricSpace& a, const MetricSpace& b) {
  auto data = std::make_shared<MetricSpace::Data>();
  data->dim = a.dim() * b.dim();
  data->eta = kron(a.eta(), b.eta());
  data->eta_sqrt = kron(a.eta_sqrt(), b.eta_sqrt());
  data->eta_inv_sqrt = kron(a.eta_inv_sqrt(), b.eta_inv_sqrt());
  data->standard = a.is_standard() && b.is_standard();
  return MetricSpace(std::move(data));
}

Ket make_ket(const MetricSpace& space, ComplexMatrix vec) {
  if (!space.valid()) throw InputError("ket needs a validated space");
  if (vec.cols() != 1 || vec.rows() != space.dim()) {
    throw InputError("ket vector does not match the space dimension");
  }
  if (!all_finite(vec)) throw InputError("ket has non-finite entries");
  return Ket{space, std::move(vec), false};
}

cplx eta_inner(const Ket& phi, const Ket& psi) {
  if (!phi.space.compatible_with(psi.space)) {
    throw InputError("kets live in different metric spaces");
  }
  if (phi.space.is_standard()) return standard_inner(phi.vec, psi.vec);
  return standard_inner(phi.vec, phi.space.eta() * psi.vec);
}

Ket eta_normalize(const Ket& psi) {
  const double norm_sq = eta_inner(psi, psi).real();
  if (!(norm_sq > 1e-300)) throw InputError("cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(norm_sq);
  return Ket{psi.space, inv * psi.vec, true};
}

double eta_hermiticity_residual(const ComplexMatrix& o, const MetricSpace& space) {
  if (o.rows() != space.dim() || o.cols() != space.dim()) {
    throw InputError("operator does not match the space dimension");
  }
  return max_abs_diff(dagger(o) * space.eta(), space.eta() * o);
}

bool is_eta_hermitian(const ComplexMatrix& o, const MetricSpace& space, double tol) {
  return eta_hermiticity_residual(o, space) <= tol;
}

double pseudo_unitarity_residual(const ComplexMatrix& u, const MetricSpace& space) {
  if (u.rows() != space.dim() || u.cols() != space.dim()) {
    throw InputError("operator does not match the space dimension");
  }
  return max_abs_diff(dagger(u) * space.eta() * u, space.eta());
}

bool is_pseudo_unitary(const ComplexMatrix& u, const MetricSpace& space, double tol) {
  return pseudo_unitarity_residual(u, space) <= tol;
}

Ket to_hermitian_frame(const Ket& psi) {
  const MetricSpace target = MetricSpace::standard(psi.space.dim());
  if (psi.space.is_standard()) return Ket{target, psi.vec, psi.normalized};
  return Ket{target, psi.space.eta_sqrt() * psi.vec, psi.normalized};
}

ComplexMatrix op_to_hermitian_frame(const ComplexMatrix& op, const MetricSpace& space) {
  if (op.rows() != space.dim() || op.cols() != space.dim()) {
    throw InputError("operator does not match the space dimension");
  }
  if (space.is_standard()) return op;
  return space.eta_sqrt() * op * space.eta_inv_sqrt();
}

Ket from_hermitian_frame(const ComplexMatrix& frame_vec, const MetricSpace& space) {
  if (frame_vec.cols() != 1 || frame_vec.rows() != space.dim()) {
    throw InputError("vector does not match the space dimension");
  }
  if (space.is_standard()) return Ket{space, frame_vec, false};
  return Ket{space, space.eta_inv_sqrt() * frame_vec, false};
}

ComplexMatrix op_from_hermitian_frame(const ComplexMatrix& frame_op,
                                      const MetricSpace& space) {
  if (frame_op.rows() != space.dim() || frame_op.cols() != space.dim()) {
    throw InputError("operator does not match the space dimension");
  }
  if (space.is_standard()) return frame_op;
  return space.eta_inv_sqrt() * frame_op * space.eta_sqrt();
}

MetricSpace metric_eta0(double beta) {
  if (!std::isfinite(beta)) throw InputError("beta must be finite");
  const double a = std::cosh(beta);
  const double b = std::sinh(beta);
  ComplexMatrix eta(2, 2);
  eta(0, 0) = a;
  eta(0, 1) = -b;
  eta(1, 0) = -b;
  eta(1, 1) = a;
  // Eigenvalues are exp(-+beta); validate_metric rejects the underflowing
  // conditioning at |beta| >~ 13.8.
  return validate_metric(eta);
}

std::pair<Ket, Ket> alpha_states(double beta) {
  const MetricSpace space = metric_eta0(beta);
  const double inv_root = 1.0 / std::sqrt(std::cosh(beta));
  const double ch = std::cosh(beta / 2.0);
  const double sh = std::sinh(beta / 2.0);
  Ket a1 = make_ket(space, ComplexMatrix::column({ch * inv_root, sh * inv_root}));
  Ket a2 = make_ket(space, ComplexMatrix::column({sh * inv_root, ch * inv_root}));
  return {std::move(a1), std::move(a2)};
}

}  // namespace etamask
