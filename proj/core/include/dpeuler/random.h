// Copyright 2026 The dpeuler Authors
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

#ifndef DPEULER_RANDOM_H_
#define DPEULER_RANDOM_H_

#include <cstdint>

namespace dpeuler {

// SplitMix64 finaliser.
inline uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent child seed for stream `stream` of a master seed.
inline uint64_t DeriveSeed(uint64_t master, uint64_t stream) {
  return Mix64(Mix64(master) ^ Mix64(stream + 0x632be59bd9b4e019ULL));
}

// A source of uniform variates on the open interval (-1/2, 1/2), addressed by
// a counter. Implementations must return the same value for the same index,
// so draws do not depend on call order.
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual double Centered(uint64_t index) const = 0;
};

// Counter-based stream keyed by a 64-bit seed.
class CounterUniformSource final : public UniformSource {
 public:
  explicit CounterUniformSource(uint64_t seed) : seed_(seed) {}

  uint64_t Bits(uint64_t index) const {
    return Mix64(Mix64(seed_ ^ 0xd1b54a32d192ed03ULL) + index);
  }
  double Centered(uint64_t index) const override {
    // 53 random bits mapped to odd multiples of 2^-54: never exactly +-1/2.
    const uint64_t k = Bits(index) >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53 - 0.5;
  }
  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
};

// Returns the same value for every index. With value 0 every Laplace draw is
// zero, which turns the mechanism into the identity.
class ConstantUniformSource final : public UniformSource {
 public:
  explicit ConstantUniformSource(double value = 0.0) : value_(value) {}
  double Centered(uint64_t) const override { return value_; }

 private:
  double value_;
};

// Sequential 64-bit generator for non-privacy randomness (synthetic data,
// query placement). Deterministic for a given seed on every platform.
class SplitMixRng {
 public:
  using result_type = uint64_t;
  explicit SplitMixRng(uint64_t seed) : state_(seed) {}

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~0ULL; }
  uint64_t operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1).
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer on [0, bound); bound > 0.
  uint64_t Below(uint64_t bound);
  // Standard normal (Box-Muller).
  double Normal();

 private:
  uint64_t state_;
};

}  // namespace dpeuler

#endif  // DPEULER_RANDOM_H_
