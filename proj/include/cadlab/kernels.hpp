// Copyright 2026 The cadlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CADLAB_KERNELS_HPP_
#define CADLAB_KERNELS_HPP_

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops used by the geometry, metrics and policy modules.
//
// Every kernel has a scalar reference implementation plus SIMD variants
// (AVX2 on x86-64, NEON on aarch64) selected once at runtime. The variants
// are contracted to reproduce the scalar reference bit-for-bit: identical
// per-element IEEE operations, no fused multiply-add, and reductions either
// order-independent (min, bit counts) or pinned to the reference's blocked
// accumulation order (dot). Equivalence is enforced by tests/test_kernels.
//
// The environment variable CADLAB_SIMD (auto | scalar | avx2 | neon)
// overrides the autodetected choice.

namespace cadlab::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

const char* backend_name(Backend b);

// Backend chosen from CADLAB_SIMD and CPU capabilities. Throws
// std::runtime_error for an unknown CADLAB_SIMD value or an unsupported
// explicit choice.
Backend default_backend();

Backend active_backend();

// Overrides the active backend (used by the equivalence tests). Throws if
// the backend is not usable on this CPU. Not safe to call concurrently with
// running kernels.
void set_backend(Backend b);

// --- Bit-mask predicates over a row of sample coordinates ---------------
//
// Bit (i % 64) of out[i / 64] is the predicate result for xs[i]; trailing
// bits of the last word are zero. `out` holds ceil(n/64) words.

// lo <= x && x <= hi
void mask_interval(const double* xs, std::size_t n, double lo, double hi,
                   std::uint64_t* out);

// (x - cx)*(x - cx) + addend <= rhs
void mask_quadratic(const double* xs, std::size_t n, double cx, double addend,
                    double rhs, std::uint64_t* out);

// --- Bitset reductions ---------------------------------------------------

std::uint64_t popcount(const std::uint64_t* words, std::size_t nwords);

// Population counts of (a & b) and (a | b) in one pass.
void popcount_pair(const std::uint64_t* a, const std::uint64_t* b,
                   std::size_t nwords, std::uint64_t* count_and,
                   std::uint64_t* count_or);

// --- Point-cloud and dense-algebra loops ---------------------------------

// min_i (xs[i]-px)^2 + (ys[i]-py)^2 + (zs[i]-pz)^2, evaluated as
// ((dx*dx + dy*dy) + dz*dz) per element. Returns +inf for n == 0.
double min_sqdist(const double* xs, const double* ys, const double* zs,
                  std::size_t n, double px, double py, double pz);

// Dot product with a fixed width-4 blocked accumulation order:
//   acc[j] += a[i+j]*b[i+j] over blocks of 4, tail element i added to
//   acc[i - n4]; result = (acc0 + acc1) + (acc2 + acc3).
double dot(const double* a, const double* b, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

// Scalar reference implementations; the dispatch table points at these when
// no SIMD variant is selected. Exposed so tests can compare variants.
namespace scalar {
void mask_interval(const double* xs, std::size_t n, double lo, double hi,
                   std::uint64_t* out);
void mask_quadratic(const double* xs, std::size_t n, double cx, double addend,
                    double rhs, std::uint64_t* out);
std::uint64_t popcount(const std::uint64_t* words, std::size_t nwords);
void popcount_pair(const std::uint64_t* a, const std::uint64_t* b,
                   std::size_t nwords, std::uint64_t* count_and,
                   std::uint64_t* count_or);
double min_sqdist(const double* xs, const double* ys, const double* zs,
                  std::size_t n, double px, double py, double pz);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

}  // namespace cadlab::kernels

#endif  // CADLAB_KERNELS_HPP_
