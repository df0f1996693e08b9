// Copyright 2026 The segmap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEGMAP_RNG_HPP
#define SEGMAP_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace segmap {

/// Seeded generator with hand-rolled Gaussian sampling. mt19937_64 output is
/// fully specified by the standard and Box-Muller is deterministic, so the
/// same seed gives the same stream on every platform and toolchain
/// (std::normal_distribution does not make that guarantee).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; the paired sample is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> complex_gaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

    /// splitmix64-style mixing for deriving independent per-sample seeds from
    /// a base seed and a counter. Sample i of a batch always sees the same
    /// seed regardless of evaluation order.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        return mix(mix(seed, a), b);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace segmap

#endif
