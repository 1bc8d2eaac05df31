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

#ifndef ETAMASK_NHQM_HPP
#define ETAMASK_NHQM_HPP

#include <cstddef>
#include <memory>
#include <utility>

#include "etamask/linalg.hpp"
#include "etamask/matrix.hpp"

namespace etamask {

// A Hilbert space equipped with a Hermitian positive-definite metric eta.
// The metric defines the inner product <phi|eta|psi>; eta^(1/2) maps the
// space onto an ordinary Hermitian-frame Hilbert space. The square roots are
// computed once at validation and shared by copies.
class MetricSpace {
 public:
  MetricSpace() = default;

  // Identity metric without an eigensolve (any dimension).
  static MetricSpace standard(std::size_t dim);

  std::size_t dim() const { return data_->dim; }
  const ComplexMatrix& eta() const { return data_->eta; }
  const ComplexMatrix& eta_sqrt() const { return data_->eta_sqrt; }
  const ComplexMatrix& eta_inv_sqrt() const { return data_->eta_inv_sqrt; }
  bool is_standard() const { return data_->standard; }
  bool valid() const { return data_ != nullptr; }

  // Same dimension and same metric entries (to 1e-12 relative in max norm).
  bool compatible_with(const MetricSpace& other) const;

  friend MetricSpace validate_metric(const ComplexMatrix& eta);
  friend MetricSpace tensor(const MetricSpace& a, const MetricSpace& b);

 private:
  struct Data {
    std::size_t dim = 0;
    ComplexMatrix eta, eta_sqrt, eta_inv_sqrt;
    bool standard = false;
  };
  explicit MetricSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

// Validates a metric candidate: square, finite, Hermitian to 1e-10, and
// positive-definite (smallest eigenvalue > 1e-12 times the largest). Caches
// eta^(1/2) and eta^(-1/2) from a single eigendecomposition.
MetricSpace validate_metric(const ComplexMatrix& eta);

// Composite space with eta_A (x) eta_B; the square roots factorize, so no
// eigensolve is needed.
MetricSpace tensor(const MetricSpace& a, const MetricSpace& b);

// A column vector attached to its metric space. `normalized` marks vectors
// with unit eta-norm.
struct Ket {
  MetricSpace space;
  ComplexMatrix vec;
  bool normalized = false;
};

Ket make_ket(const MetricSpace& space, ComplexMatrix vec);

// <<phi|psi>>_eta = <phi|eta|psi>. Spaces must be compatible.
cplx eta_inner(const Ket& phi, const Ket& psi);

// psi / sqrt(<psi|eta|psi>); rejects (near-)zero vectors.
Ket eta_normalize(const Ket& psi);

// ||o^dagger eta - eta o||_max: zero iff o is Hermitian with respect to eta.
double eta_hermiticity_residual(const ComplexMatrix& o, const MetricSpace& space);
bool is_eta_hermitian(const ComplexMatrix& o, const MetricSpace& space, double tol);

// ||u^dagger eta u - eta||_max: zero iff u preserves the eta inner product.
double pseudo_unitarity_residual(const ComplexMatrix& u, const MetricSpace& space);
bool is_pseudo_unitary(const ComplexMatrix& u, const MetricSpace& space, double tol);

// Hermitian-frame transform: kets map by eta^(1/2), operators by
// eta^(1/2) O eta^(-1/2). The frame image of a Ket lives in the standard
// space of the same dimension; from_* invert the maps.
Ket to_hermitian_frame(const Ket& psi);
Ket from_hermitian_frame(const ComplexMatrix& frame_vec, const MetricSpace& space);
ComplexMatrix op_to_hermitian_frame(const ComplexMatrix& op, const MetricSpace& space);
ComplexMatrix op_from_hermitian_frame(const ComplexMatrix& frame_op,
                                      const MetricSpace& space);

// The 2x2 example metric cosh(beta) I - sinh(beta) sigma_x, with eigenvalues
// exp(-+beta). Large |beta| fails the positive-definiteness threshold.
MetricSpace metric_eta0(double beta);

// The two overlapping states (cosh(b/2), sinh(b/2))/sqrt(cosh b) and
// (sinh(b/2), cosh(b/2))/sqrt(cosh b) attached to metric_eta0(beta).
// Their standard overlap is tanh(beta); their eta0 inner product is 0;
// their eta0-norm squared is 1/cosh(beta) (eta_normalize for unit norm).
std::pair<Ket, Ket> alpha_states(double beta);

}  // namespace etamask

#endif  // ETAMASK_NHQM_HPP
