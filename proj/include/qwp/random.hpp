// Copyright 2026 The qwp Authors
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

#ifndef QWP_RANDOM_HPP
#define QWP_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace qwp {

/// Identifier written into output metadata so that runs can be replayed.
inline constexpr const char *kRngAlgorithm = "mt19937_64/splitmix64-derive/u53";

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Child seed for job `index` of a run seeded with `master`. Used for ensemble
/// iterations, coin slots and sweep points alike; a pure function so that work
/// can be sharded in any order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(master ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Uniform doubles in [0, 1) addressed by time step.
///
/// Draw t is the t-th output of an mt19937_64 engine seeded with `seed`, reduced
/// to its top 53 bits. Draws are cached so lookups by step index are random
/// access while the underlying engine is consumed strictly in order.
class UniformSequence {
   public:
    explicit UniformSequence(std::uint64_t seed) : seed_(seed), engine_(seed) {
    }

    std::uint64_t seed() const noexcept {
        return seed_;
    }

    double at(std::size_t t) {
        while (cache_.size() <= t) {
            cache_.push_back(static_cast<double>(engine_() >> 11) * 0x1.0p-53);
        }
        return cache_[t];
    }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::vector<double> cache_;
};

}  // namespace qwp

#endif  // QWP_RANDOM_HPP
