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

#ifndef ETAMASK_KERNELS_HPP
#define ETAMASK_KERNELS_HPP

#include <cstddef>
#include <vector>

#include "etamask/matrix.hpp"

namespace etamask::kernels {

// OpenMP-parallel compute kernels. No shape validation here; the public
// wrappers in linalg.hpp validate and then dispatch. The naive serial twins
// in etamask::reference are kept as oracles for tests and the benchmark.
//
// All kernels are deterministic: parallel loops partition independent output
// entries, and every sum is accumulated in a fixed serial order.

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Partial trace of a square matrix over the tensor factors NOT listed in
// `keep`. `dims` are the factor dimensions in row-major order; kept factors
// retain their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

// Tr_traced(u * v^dagger) for column vectors u, v, without materializing the
// dyad. cross_marginal(psi, psi, ...) is the reduced density matrix of a pure
// state.
ComplexMatrix cross_marginal(const ComplexMatrix& u, const ComplexMatrix& v,
                             const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& keep);

}  // namespace etamask::kernels

#endif  // ETAMASK_KERNELS_HPP
