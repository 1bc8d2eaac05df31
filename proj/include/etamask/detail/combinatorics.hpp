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

#ifndef ETAMASK_DETAIL_COMBINATORICS_HPP
#define ETAMASK_DETAIL_COMBINATORICS_HPP

#include <cstddef>
#include <vector>

namespace etamask::detail {

// All size-k subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n,
                                                             std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(k);
  for (std::size_t i = 0; i < k; ++i) current[i] = i;
  while (true) {
    out.push_back(current);
    std::size_t i = k;
    bool advanced = false;
    while (i-- > 0) {
      if (current[i] + 1 <= n - k + i) {
        ++current[i];
        for (std::size_t j = i + 1; j < k; ++j) current[j] = current[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

inline double binomial(std::size_t n, std::size_t k) {
  double b = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    b *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return b;
}

}  // namespace etamask::detail

#endif  // ETAMASK_DETAIL_COMBINATORICS_HPP
