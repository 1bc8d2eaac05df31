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

#ifndef ETAMASK_LINALG_HPP
#define ETAMASK_LINALG_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "etamask/matrix.hpp"

namespace etamask {

// Validated public entry points; heavy loops live in etamask::kernels.

// Kronecker product, row-major factor ordering.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Partial trace over the factors not listed in `keep`. `dims` must multiply
// to the side of `m`; `keep` must be a non-empty strictly increasing list of
// factor indices. Kept factors keep their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

// Tr_traced(u v^dagger) for column vectors; the pure-state reduced density
// matrix when u == v.
ComplexMatrix cross_marginal(const ComplexMatrix& u, const ComplexMatrix& v,
                             const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& keep);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // unitary, columns ordered to match values
};

// Hermitian eigendecomposition via cyclic complex Jacobi rotations.
// Accurate and dependency-free at the small sizes this library targets
// (<= 64). Input must be Hermitian to 1e-10 in max norm.
EigenDecomposition herm_eig(const ComplexMatrix& a);

// Principal square root and inverse square root of a Hermitian
// positive-definite matrix, via the spectral decomposition. Rejects inputs
// whose smallest eigenvalue is <= 1e-12 times the largest.
std::pair<ComplexMatrix, ComplexMatrix> hpd_sqrt(const ComplexMatrix& h);

// A positive-definite (not necessarily standard) inner product.
using InnerProduct =
    std::function<cplx(const ComplexMatrix&, const ComplexMatrix&)>;

cplx standard_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Orthonormalizes `vectors` under `ip` (modified Gram-Schmidt with a second
// re-orthogonalization pass) and completes them to a full orthonormal basis
// by greedily adding the standard basis vector with the largest residual.
// The span of the first k outputs equals the span of the first k inputs.
// Throws RankError if the inputs are dependent under ip.
std::vector<ComplexMatrix> gram_schmidt_complete(
    const std::vector<ComplexMatrix>& vectors, const InnerProduct& ip);

// Generalized Gell-Mann basis of su(d): symmetric pairs in lexicographic
// (j, k) order, then antisymmetric pairs, then the d-1 diagonal matrices.
// All traceless Hermitian with Tr(L_i L_j) = 2 delta_ij; d = 2 gives the
// Pauli matrices (x, y, z).
std::vector<ComplexMatrix> gell_mann_basis(std::size_t d);

}  // namespace etamask

#endif  // ETAMASK_LINALG_HPP
