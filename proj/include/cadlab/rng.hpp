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

#ifndef CADLAB_RNG_HPP_
#define CADLAB_RNG_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace cadlab::rng {

// All randomness in the project flows through std::mt19937_64 (whose output
// sequence is pinned by the standard) and the helpers below. The standard
// library *distributions* are implementation-defined, so they are never used;
// results must be reproducible byte-for-byte across toolchains.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed plus tags
// (step index, item index, purpose id, ...).
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = master ^ 0x6a09e667f3bcc908ULL;
  (void)splitmix64(s);
  for (std::uint64_t t : tags) {
    s ^= t + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    (void)splitmix64(s);
  }
  return splitmix64(s);
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

// Uniform double in [0, 1).
inline double u01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi).
inline double uniform(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * u01(eng);
}

// Unbiased integer in [0, n). Rejection sampling over a power-of-two mask.
inline std::uint64_t below(Engine& eng, std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(n - 1 | 1);
  for (;;) {
    std::uint64_t v = eng() & mask;
    if (v < n) return v;
  }
}

// Integer in [lo, hi] inclusive.
inline std::int64_t range_int(Engine& eng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(eng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Index draw proportional to non-negative weights.
inline std::size_t weighted_index(Engine& eng, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double x = u01(eng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    acc += weights[i];
    if (x < acc) return i;
  }
  return weights.empty() ? 0 : weights.size() - 1;
}

// Fisher-Yates; spelled out because std::shuffle is implementation-defined.
template <typename T>
void shuffle(std::vector<T>& items, Engine& eng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(below(eng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace cadlab::rng

#endif  // CADLAB_RNG_HPP_
