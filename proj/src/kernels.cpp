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

#include "etamask/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace etamask::kernels {

namespace {

// Below this many scalar multiply-adds the parallel region costs more than
// the loop; keep tiny workloads serial so 2x2 algebra stays cheap.
constexpr std::int64_t kParallelGrain = 1 << 14;

std::vector<std::size_t> factor_strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * dims[i];
  }
  return strides;
}

// Row-major enumeration of the composite-index contributions of `axes`.
std::vector<std::size_t> axis_offsets(const std::vector<std::size_t>& dims,
                                      const std::vector<std::size_t>& strides,
                                      const std::vector<std::size_t>& axes) {
  std::vector<std::size_t> offsets{0};
  for (std::size_t axis : axes) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[axis]);
    for (std::size_t base : offsets) {
      for (std::size_t k = 0; k < dims[axis]; ++k) {
        next.push_back(base + k * strides[axis]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

std::vector<std::size_t> complement_axes(std::size_t n_factors,
                                         const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> traced;
  std::size_t k = 0;
  for (std::size_t f = 0; f < n_factors; ++f) {
    if (k < keep.size() && keep[k] == f) {
      ++k;
    } else {
      traced.push_back(f);
    }
  }
  return traced;
}

}  // namespace

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::int64_t n = static_cast<std::int64_t>(a.rows());
  const std::int64_t k = static_cast<std::int64_t>(a.cols());
  const std::int64_t m = static_cast<std::int64_t>(b.cols());
  ComplexMatrix out(a.rows(), b.cols());
  const cplx* pa = a.data();
  const cplx* pb = b.data();
  cplx* po = out.data();
  const std::int64_t work = n * k * m;
  if (work <= kParallelGrain) {
    // Small products stay heap-free.
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::int64_t j = 0; j < m; ++j) {
        cplx acc = 0.0;
        for (std::int64_t l = 0; l < k; ++l) acc += pa[i * k + l] * pb[l * m + j];
        po[i * m + j] = acc;
      }
    }
    return out;
  }
  // Split b into real/imaginary planes: std::complex arithmetic blocks
  // vectorization, two double streams keep the inner loop as FMAs.
  std::vector<double> b_re(static_cast<std::size_t>(k * m));
  std::vector<double> b_im(static_cast<std::size_t>(k * m));
  for (std::int64_t x = 0; x < k * m; ++x) {
    b_re[static_cast<std::size_t>(x)] = pb[x].real();
    b_im[static_cast<std::size_t>(x)] = pb[x].imag();
  }
#pragma omp parallel
  {
    std::vector<double> acc_re(static_cast<std::size_t>(m));
    std::vector<double> acc_im(static_cast<std::size_t>(m));
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      std::fill(acc_re.begin(), acc_re.end(), 0.0);
      std::fill(acc_im.begin(), acc_im.end(), 0.0);
      for (std::int64_t l = 0; l < k; ++l) {
        const double a_re = pa[i * k + l].real();
        const double a_im = pa[i * k + l].imag();
        if (a_re == 0.0 && a_im == 0.0) continue;
        const double* row_re = b_re.data() + l * m;
        const double* row_im = b_im.data() + l * m;
        for (std::int64_t j = 0; j < m; ++j) {
          acc_re[static_cast<std::size_t>(j)] += a_re * row_re[j] - a_im * row_im[j];
          acc_im[static_cast<std::size_t>(j)] += a_re * row_im[j] + a_im * row_re[j];
        }
      }
      for (std::int64_t j = 0; j < m; ++j) {
        po[i * m + j] = cplx(acc_re[static_cast<std::size_t>(j)],
                             acc_im[static_cast<std::size_t>(j)]);
      }
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::int64_t ar = static_cast<std::int64_t>(a.rows());
  const std::int64_t ac = static_cast<std::int64_t>(a.cols());
  const std::int64_t br = static_cast<std::int64_t>(b.rows());
  const std::int64_t bc = static_cast<std::int64_t>(b.cols());
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const std::int64_t oc = ac * bc;
  cplx* po = out.data();
  const std::int64_t work = ar * ac * br * bc;
#pragma omp parallel for schedule(static) collapse(2) if (work > kParallelGrain)
  for (std::int64_t i = 0; i < ar; ++i) {
    for (std::int64_t k = 0; k < br; ++k) {
      const std::int64_t orow = i * br + k;
      for (std::int64_t j = 0; j < ac; ++j) {
        const cplx aij = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        for (std::int64_t l = 0; l < bc; ++l) {
          po[orow * oc + j * bc + l] =
              aij * b(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  const auto strides = factor_strides(dims);
  const auto traced = complement_axes(dims.size(), keep);
  const auto keep_off = axis_offsets(dims, strides, keep);
  const auto tr_off = axis_offsets(dims, strides, traced);
  const std::int64_t kd = static_cast<std::int64_t>(keep_off.size());
  const std::int64_t td = static_cast<std::int64_t>(tr_off.size());
  const std::size_t side = m.rows();
  ComplexMatrix out(keep_off.size(), keep_off.size());
  const cplx* pm = m.data();
  cplx* po = out.data();
  const std::int64_t work = kd * kd * td;
#pragma omp parallel for schedule(static) if (work > kParallelGrain)
  for (std::int64_t x = 0; x < kd; ++x) {
    for (std::int64_t y = 0; y < kd; ++y) {
      cplx acc = 0.0;
      for (std::int64_t t = 0; t < td; ++t) {
        const std::size_t row = keep_off[static_cast<std::size_t>(x)] +
                                tr_off[static_cast<std::size_t>(t)];
        const std::size_t col = keep_off[static_cast<std::size_t>(y)] +
                                tr_off[static_cast<std::size_t>(t)];
        acc += pm[row * side + col];
      }
      po[x * kd + y] = acc;
    }
  }
  return out;
}

ComplexMatrix cross_marginal(const ComplexMatrix& u, const ComplexMatrix& v,
                             const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& keep) {
  const auto strides = factor_strides(dims);
  const auto traced = complement_axes(dims.size(), keep);
  const auto keep_off = axis_offsets(dims, strides, keep);
  const auto tr_off = axis_offsets(dims, strides, traced);
  const std::int64_t kd = static_cast<std::int64_t>(keep_off.size());
  const std::int64_t td = static_cast<std::int64_t>(tr_off.size());
  ComplexMatrix out(keep_off.size(), keep_off.size());
  const cplx* pu = u.data();
  const cplx* pv = v.data();
  cplx* po = out.data();
  const std::int64_t work = kd * kd * td;
#pragma omp parallel for schedule(static) if (work > kParallelGrain)
  for (std::int64_t x = 0; x < kd; ++x) {
    for (std::int64_t y = 0; y < kd; ++y) {
      cplx acc = 0.0;
      for (std::int64_t t = 0; t < td; ++t) {
        const std::size_t iu = keep_off[static_cast<std::size_t>(x)] +
                               tr_off[static_cast<std::size_t>(t)];
        const std::size_t iv = keep_off[static_cast<std::size_t>(y)] +
                               tr_off[static_cast<std::size_t>(t)];
        acc += pu[iu] * std::conj(pv[iv]);
      }
      po[x * kd + y] = acc;
    }
  }
  return out;
}

}  // namespace etamask::kernels
