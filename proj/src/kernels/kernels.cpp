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

#include "cadlab/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

namespace cadlab::kernels {

namespace scalar {

void mask_interval(const double* xs, std::size_t n, double lo, double hi,
                   std::uint64_t* out) {
  std::size_t nwords = (n + 63) / 64;
  std::memset(out, 0, nwords * sizeof(std::uint64_t));
  for (std::size_t i = 0; i < n; ++i) {
    if (lo <= xs[i] && xs[i] <= hi) out[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

void mask_quadratic(const double* xs, std::size_t n, double cx, double addend,
                    double rhs, std::uint64_t* out) {
  std::size_t nwords = (n + 63) / 64;
  std::memset(out, 0, nwords * sizeof(std::uint64_t));
  for (std::size_t i = 0; i < n; ++i) {
    double d = xs[i] - cx;
    if (d * d + addend <= rhs) out[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

std::uint64_t popcount(const std::uint64_t* words, std::size_t nwords) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(words[i]);
  return total;
}

void popcount_pair(const std::uint64_t* a, const std::uint64_t* b,
                   std::size_t nwords, std::uint64_t* count_and,
                   std::uint64_t* count_or) {
  std::uint64_t ci = 0, cu = 0;
  for (std::size_t i = 0; i < nwords; ++i) {
    ci += std::popcount(a[i] & b[i]);
    cu += std::popcount(a[i] | b[i]);
  }
  *count_and = ci;
  *count_or = cu;
}

double min_sqdist(const double* xs, const double* ys, const double* zs,
                  std::size_t n, double px, double py, double pz) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double dx = xs[i] - px;
    double dy = ys[i] - py;
    double dz = zs[i] - pz;
    double d = (dx * dx + dy * dy) + dz * dz;
    if (d < best) best = d;
  }
  return best;
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < n4; i += 4) {
    acc[0] += a[i] * b[i];
    acc[1] += a[i + 1] * b[i + 1];
    acc[2] += a[i + 2] * b[i + 2];
    acc[3] += a[i + 3] * b[i + 3];
  }
  for (std::size_t i = n4; i < n; ++i) acc[i - n4] += a[i] * b[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
bool supported();
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
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
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
}  // namespace neon
#endif

namespace {

struct Table {
  void (*mask_interval)(const double*, std::size_t, double, double,
                        std::uint64_t*);
  void (*mask_quadratic)(const double*, std::size_t, double, double, double,
                         std::uint64_t*);
  std::uint64_t (*popcount)(const std::uint64_t*, std::size_t);
  void (*popcount_pair)(const std::uint64_t*, const std::uint64_t*,
                        std::size_t, std::uint64_t*, std::uint64_t*);
  double (*min_sqdist)(const double*, const double*, const double*,
                       std::size_t, double, double, double);
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
};

constexpr Table kScalarTable = {
    scalar::mask_interval, scalar::mask_quadratic, scalar::popcount,
    scalar::popcount_pair, scalar::min_sqdist,     scalar::dot,
    scalar::axpy,
};

#if defined(__x86_64__)
constexpr Table kAvx2Table = {
    avx2::mask_interval, avx2::mask_quadratic, avx2::popcount,
    avx2::popcount_pair, avx2::min_sqdist,     avx2::dot,
    avx2::axpy,
};
#endif

#if defined(__aarch64__)
constexpr Table kNeonTable = {
    neon::mask_interval, neon::mask_quadratic, neon::popcount,
    neon::popcount_pair, neon::min_sqdist,     neon::dot,
    neon::axpy,
};
#endif

bool backend_available(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(__x86_64__)
      return avx2::supported();
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Table* table_for(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return &kScalarTable;
#if defined(__x86_64__)
    case Backend::kAvx2:
      return &kAvx2Table;
#endif
#if defined(__aarch64__)
    case Backend::kNeon:
      return &kNeonTable;
#endif
    default:
      return &kScalarTable;
  }
}

struct State {
  Backend backend;
  const Table* table;
};

// Lazy so that a bad CADLAB_SIMD value surfaces as a catchable exception on
// first use instead of aborting during static initialization.
State& state() {
  static State s = [] {
    Backend b = default_backend();
    return State{b, table_for(b)};
  }();
  return s;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "?";
}

Backend default_backend() {
  const char* env = std::getenv("CADLAB_SIMD");
  std::string choice = env ? env : "auto";
  if (choice == "auto" || choice.empty()) {
    if (backend_available(Backend::kAvx2)) return Backend::kAvx2;
    if (backend_available(Backend::kNeon)) return Backend::kNeon;
    return Backend::kScalar;
  }
  Backend b;
  if (choice == "scalar") {
    b = Backend::kScalar;
  } else if (choice == "avx2") {
    b = Backend::kAvx2;
  } else if (choice == "neon") {
    b = Backend::kNeon;
  } else {
    throw std::runtime_error("CADLAB_SIMD: unknown value '" + choice +
                             "' (expected auto, scalar, avx2 or neon)");
  }
  if (!backend_available(b)) {
    throw std::runtime_error(std::string("CADLAB_SIMD: backend '") +
                             backend_name(b) + "' not usable on this CPU");
  }
  return b;
}

Backend active_backend() { return state().backend; }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::runtime_error(std::string("kernel backend '") +
                             backend_name(b) + "' not usable on this CPU");
  }
  state().backend = b;
  state().table = table_for(b);
}

void mask_interval(const double* xs, std::size_t n, double lo, double hi,
                   std::uint64_t* out) {
  state().table->mask_interval(xs, n, lo, hi, out);
}

void mask_quadratic(const double* xs, std::size_t n, double cx, double addend,
                    double rhs, std::uint64_t* out) {
  state().table->mask_quadratic(xs, n, cx, addend, rhs, out);
}

std::uint64_t popcount(const std::uint64_t* words, std::size_t nwords) {
  return state().table->popcount(words, nwords);
}

void popcount_pair(const std::uint64_t* a, const std::uint64_t* b,
                   std::size_t nwords, std::uint64_t* count_and,
                   std::uint64_t* count_or) {
  state().table->popcount_pair(a, b, nwords, count_and, count_or);
}

double min_sqdist(const double* xs, const double* ys, const double* zs,
                  std::size_t n, double px, double py, double pz) {
  return state().table->min_sqdist(xs, ys, zs, n, px, py, pz);
}

double dot(const double* a, const double* b, std::size_t n) {
  return state().table->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  state().table->axpy(alpha, x, y, n);
}

}  // namespace cadlab::kernels
