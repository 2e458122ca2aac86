// SPDX-License-Identifier: Apache-2.0
//
// simris: RIS-assisted physical channel simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SIMRIS_RANDOM_HPP
#define SIMRIS_RANDOM_HPP

// Counter-based random streams.
//
// Every draw is a pure function of (master seed, stream tag, realization index,
// cell index, draw position). The master seed is the Philox key; the remaining
// coordinates occupy the upper three counter words and the lower word counts
// blocks inside a stream. Streams are therefore independent of execution order,
// which is what makes Monte Carlo results identical for any worker count.
//
// The distributions below are implemented on top of the raw stream instead of
// <random> because the standard distributions are not specified bit-exactly
// across library implementations.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace simris
{
    class philox4x32
    {
    public:
        using counter_type = std::array<std::uint32_t, 4>;
        using key_type = std::array<std::uint32_t, 2>;

        static counter_type block(counter_type ctr, key_type key)
        {
            for (int round = 0; round < 10; ++round)
            {
                const std::uint64_t p0 = std::uint64_t(0xD2511F53u) * ctr[0];
                const std::uint64_t p1 = std::uint64_t(0xCD9E8D57u) * ctr[2];
                const auto hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
                const auto hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
                ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            return ctr;
        }
    };

    // Identifies one independent substream inside a simulation
    struct stream_id
    {
        std::uint32_t tag = 0;
        std::uint32_t realization = 0;
        std::uint32_t cell = 0;
    };

    class random_stream
    {
    public:
        random_stream(std::uint64_t master_seed, stream_id id)
            : key_{std::uint32_t(master_seed), std::uint32_t(master_seed >> 32)}, id_(id) {}

        std::uint32_t next_u32()
        {
            if (pos_ == 4)
            {
                buffer_ = philox4x32::block({block_, id_.tag, id_.realization, id_.cell}, key_);
                ++block_;
                pos_ = 0;
            }
            return buffer_[pos_++];
        }

        std::uint64_t next_u64()
        {
            const std::uint64_t hi = next_u32();
            return (hi << 32) | next_u32();
        }

        // [0, 1) with 53 random bits
        double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

        // (0, 1]
        double uniform01_open_low() { return (double(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

        double uniform(double a, double b) { return a + (b - a) * uniform01(); }

        // Uniform integer in [lo, hi], rejection sampling without modulo bias
        std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)
        {
            if (hi < lo)
                throw std::invalid_argument("uniform_int: empty range");
            const std::uint64_t range = std::uint64_t(hi - lo) + 1u;
            if (range == 0) // full 64-bit span
                return std::int64_t(next_u64());
            const std::uint64_t threshold = (0u - range) % range; // 2^64 mod range
            std::uint64_t x;
            do
                x = next_u64();
            while (x < threshold);
            return lo + std::int64_t(x % range);
        }

        double normal()
        {
            const double r = std::sqrt(-2.0 * std::log(uniform01_open_low()));
            return r * std::cos(2.0 * std::numbers::pi * uniform01());
        }

        // CN(0, 1): E|z|^2 = 1
        std::complex<double> complex_normal()
        {
            const double r = std::sqrt(-std::log(uniform01_open_low()));
            const double a = 2.0 * std::numbers::pi * uniform01();
            return {r * std::cos(a), r * std::sin(a)};
        }

        bool bernoulli(double p) { return uniform01() < p; }

        // Knuth multiplication method; adequate for the small means used for cluster counts
        std::uint32_t poisson(double mean)
        {
            if (!(mean >= 0.0) || mean > 500.0)
                throw std::invalid_argument("poisson: mean must be in [0, 500]");
            const double limit = std::exp(-mean);
            std::uint32_t k = 0;
            double p = uniform01_open_low();
            while (p > limit)
            {
                ++k;
                p *= uniform01_open_low();
            }
            return k;
        }

        const stream_id &id() const noexcept { return id_; }

    private:
        philox4x32::key_type key_;
        stream_id id_;
        std::uint32_t block_ = 0;
        philox4x32::counter_type buffer_{};
        int pos_ = 4;
    };

    // Substream tags. RIS-specific links are offset by `ris_tag_stride * ris_index`.
    enum class stream_tag : std::uint32_t
    {
        clusters_tx_ris = 1,
        clusters_ris_rx = 2,
        clusters_tx_rx = 3,
        fading_tx_ris = 4,
        fading_ris_rx = 5,
        fading_tx_rx = 6,
        shared_tx_rx = 7,
        ris_phases = 8,
    };

    inline constexpr std::uint32_t ris_tag_stride = 16;

    // (master seed, realization, cell) coordinates of one channel draw
    struct seed_lineage
    {
        std::uint64_t master_seed = 0;
        std::uint32_t realization = 0;
        std::uint32_t cell = 0;

        random_stream stream(stream_tag tag, std::uint32_t ris_index = 0) const
        {
            return random_stream(master_seed,
                                 {std::uint32_t(tag) + ris_tag_stride * ris_index, realization, cell});
        }
    };
}

#endif
