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

#include "etamask/reference.hpp"

namespace etamask::reference {

namespace {

// Decode a composite row-major index into per-factor digits.
std::vector<std::size_t> decode(std::size_t index,
                                const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> digits(dims.size(), 0);
  for (std::size_t f = dims.size(); f-- > 0;) {
    digits[f] = index % dims[f];
    index /= dims[f];
  }
  return digits;
}

bool traced_digits_equal(const std::vector<std::size_t>& a,
                         const std::vector<std::size_t>& b,
                         const std::vector<bool>& kept) {
  for (std::size_t f = 0; f < kept.size(); ++f) {
    if (!kept[f] && a[f] != b[f]) return false;
  }
  return true;
}

std::size_t kept_index(const std::vector<std::size_t>& digits,
                       const std::vector<std::size_t>& dims,
                       const std::vector<bool>& kept) {
  std::size_t idx = 0;
  for (std::size_t f = 0; f < kept.size(); ++f) {
    if (kept[f]) idx = idx * dims[f] + digits[f];
  }
  return idx;
}

std::vector<bool> kept_mask(std::size_t n_factors,
                            const std::vector<std::size_t>& keep) {
  std::vector<bool> kept(n_factors, false);
  for (std::size_t f : keep) kept[f] = true;
  return kept;
}

}  // namespace

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx acc = 0.0;
      for (std::size_t l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  const auto kept = kept_mask(dims.size(), keep);
  std::size_t out_side = 1;
  for (std::size_t f : keep) out_side *= dims[f];
  ComplexMatrix out(out_side, out_side);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto rd = decode(r, dims);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto cd = decode(c, dims);
      if (!traced_digits_equal(rd, cd, kept)) continue;
      out(kept_index(rd, dims, kept), kept_index(cd, dims, kept)) += m(r, c);
    }
  }
  return out;
}

ComplexMatrix cross_marginal(const ComplexMatrix& u, const ComplexMatrix& v,
                             const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& keep) {
  const auto kept = kept_mask(dims.size(), keep);
  std::size_t out_side = 1;
  for (std::size_t f : keep) out_side *= dims[f];
  ComplexMatrix out(out_side, out_side);
  for (std::size_t r = 0; r < u.rows(); ++r) {
    const auto rd = decode(r, dims);
    for (std::size_t c = 0; c < v.rows(); ++c) {
      const auto cd = decode(c, dims);
      if (!traced_digits_equal(rd, cd, kept)) continue;
      out(kept_index(rd, dims, kept), kept_index(cd, dims, kept)) +=
          u(r, 0) * std::conj(v(c, 0));
    }
  }
  return out;
}

}  // namespace etamask::reference
