// Copyright 2026 The wigner_lab Authors
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

#pragma once

#include <cstdint>
#include <limits>

namespace wigner_lab {

/// SplitMix64. Satisfies std::uniform_random_bit_generator.
class SplitMix64 {
   public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Independent stream for (seed, index), so trial k draws the same
    /// numbers regardless of which thread or in which order it runs.
    static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mixer(seed ^ (index * 0xD1B54A32D192ED03ULL));
        mixer();
        return SplitMix64(mixer() ^ index);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

   private:
    std::uint64_t state_;
};

/// Uniform double in [0, 1) from the top 53 bits of one draw. Unlike
/// std::generate_canonical this is identical across standard libraries.
template <typename Rng>
double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace wigner_lab
