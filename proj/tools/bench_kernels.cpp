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

// Times the OpenMP kernels against the serial reference implementation and
// reports the max deviation between the two, so a kernel regression shows up
// as either a slowdown or a mismatch.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "etamask/kernels.hpp"
#include "etamask/matrix.hpp"
#include "etamask/reference.hpp"

namespace {

using etamask::ComplexMatrix;
using etamask::cplx;

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(dist(rng), dist(rng));
  }
  return m;
}

double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void report(const char* name, const char* size, double serial_ms, double parallel_ms,
            double deviation) {
  std::printf("%-14s %-22s %10.2f %10.2f %8.2fx %10.2e\n", name, size, serial_ms,
              parallel_ms, serial_ms / parallel_ms, deviation);
}

}  // namespace

int main() {
  std::mt19937_64 rng(12345);
  constexpr int kReps = 3;

  std::printf("%-14s %-22s %10s %10s %9s %10s\n", "op", "size", "serial ms",
              "kernel ms", "speedup", "max |diff|");

  {
    const std::size_t n = 192;
    const ComplexMatrix a = random_matrix(n, n, rng);
    const ComplexMatrix b = random_matrix(n, n, rng);
    ComplexMatrix serial, parallel;
    const double s = time_ms([&] { serial = etamask::reference::mat_mul(a, b); }, kReps);
    const double p = time_ms([&] { parallel = etamask::kernels::mat_mul(a, b); }, kReps);
    report("mat_mul", "192 x 192", s, p, etamask::max_abs_diff(serial, parallel));
  }

  {
    const std::size_t n = 48;
    const ComplexMatrix a = random_matrix(n, n, rng);
    const ComplexMatrix b = random_matrix(n, n, rng);
    ComplexMatrix serial, parallel;
    const double s = time_ms([&] { serial = etamask::reference::kron(a, b); }, kReps);
    const double p = time_ms([&] { parallel = etamask::kernels::kron(a, b); }, kReps);
    report("kron", "(48 x 48)^(x2)", s, p, etamask::max_abs_diff(serial, parallel));
  }

  {
    const std::vector<std::size_t> dims = {4, 4, 4, 4, 4};  // 1024
    const std::vector<std::size_t> keep = {0, 2};
    const ComplexMatrix m = random_matrix(1024, 1024, rng);
    ComplexMatrix serial, parallel;
    const double s =
        time_ms([&] { serial = etamask::reference::partial_trace(m, dims, keep); }, kReps);
    const double p =
        time_ms([&] { parallel = etamask::kernels::partial_trace(m, dims, keep); }, kReps);
    report("partial_trace", "4^5, keep {0,2}", s, p,
           etamask::max_abs_diff(serial, parallel));
  }

  {
    const std::vector<std::size_t> dims(12, 2);  // 4096
    const std::vector<std::size_t> keep = {0, 5, 11};
    const ComplexMatrix u = random_matrix(4096, 1, rng);
    const ComplexMatrix v = random_matrix(4096, 1, rng);
    ComplexMatrix serial, parallel;
    const double s = time_ms(
        [&] { serial = etamask::reference::cross_marginal(u, v, dims, keep); }, kReps);
    const double p = time_ms(
        [&] { parallel = etamask::kernels::cross_marginal(u, v, dims, keep); }, kReps);
    report("cross_marginal", "2^12, keep 3", s, p,
           etamask::max_abs_diff(serial, parallel));
  }

  return 0;
}
