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

#ifndef ETAMASK_REFERENCE_HPP
#define ETAMASK_REFERENCE_HPP

#include <cstddef>
#include <vector>

#include "etamask/matrix.hpp"

namespace etamask::reference {

// Naive serial implementations of the compute kernels. These are written as
// plain index loops, independent of the code in etamask::kernels, and serve
// as the oracles for equivalence tests and as the baseline in etamask_bench.
// Keep them dumb: clarity over speed is the whole point.

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

ComplexMatrix cross_marginal(const ComplexMatrix& u, const ComplexMatrix& v,
                             const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& keep);

}  // namespace etamask::reference

#endif  // ETAMASK_REFERENCE_HPP
