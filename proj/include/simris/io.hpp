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

#ifndef SIMRIS_IO_HPP
#define SIMRIS_IO_HPP

// RISCH1 channel tensor files.
//
//   offset  size  content
//   0       8     magic "RISCH1\0\0"
//   8       4     format version (u32 LE) = 1
//   12      4     reserved, zero
//   16      12    n_real, rows, cols (u32 LE each)
//   28      ...   n_real * rows * cols complex values, realization-major then
//                 row-major, each as re, im (IEEE-754 binary64 LE)

#include "arrays.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace simris::io
{
    inline constexpr std::array<char, 8> risch_magic = {'R', 'I', 'S', 'C', 'H', '1', '\0', '\0'};
    inline constexpr std::uint32_t risch_version = 1;
    inline constexpr std::size_t risch_header_bytes = 28;

    // A stack of equally sized complex matrices
    struct tensor
    {
        std::uint32_t rows = 0, cols = 0;
        std::vector<cmat> slices;
    };

    namespace detail
    {
        inline void put_u32(std::string &out, std::uint32_t v)
        {
            for (int i = 0; i < 4; ++i)
                out.push_back(char((v >> (8 * i)) & 0xFFu));
        }

        inline void put_f64(std::string &out, double v)
        {
            const auto bits = std::bit_cast<std::uint64_t>(v);
            for (int i = 0; i < 8; ++i)
                out.push_back(char((bits >> (8 * i)) & 0xFFu));
        }

        inline std::uint64_t get_le(const unsigned char *p, int bytes)
        {
            std::uint64_t v = 0;
            for (int i = bytes - 1; i >= 0; --i)
                v = (v << 8) | p[i];
            return v;
        }
    }

    inline std::string encode_risch(const tensor &t)
    {
        std::string out(risch_magic.begin(), risch_magic.end());
        detail::put_u32(out, risch_version);
        detail::put_u32(out, 0);
        detail::put_u32(out, std::uint32_t(t.slices.size()));
        detail::put_u32(out, t.rows);
        detail::put_u32(out, t.cols);
        out.reserve(out.size() + t.slices.size() * t.rows * t.cols * 16);
        for (const auto &m : t.slices)
        {
            if (m.rows() != Eigen::Index(t.rows) || m.cols() != Eigen::Index(t.cols))
                throw std::invalid_argument("encode_risch: slice shape differs from tensor shape");
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                {
                    detail::put_f64(out, m(r, c).real());
                    detail::put_f64(out, m(r, c).imag());
                }
        }
        return out;
    }

    inline tensor decode_risch(std::string_view bytes)
    {
        if (bytes.size() < risch_header_bytes || std::memcmp(bytes.data(), risch_magic.data(), 8) != 0)
            throw std::runtime_error("decode_risch: missing RISCH1 magic");
        const auto *p = reinterpret_cast<const unsigned char *>(bytes.data());
        if (detail::get_le(p + 8, 4) != risch_version)
            throw std::runtime_error("decode_risch: unsupported version");
        tensor t;
        const auto n = std::uint32_t(detail::get_le(p + 16, 4));
        t.rows = std::uint32_t(detail::get_le(p + 20, 4));
        t.cols = std::uint32_t(detail::get_le(p + 24, 4));
        const std::size_t expected = risch_header_bytes + std::size_t(n) * t.rows * t.cols * 16;
        if (bytes.size() != expected)
            throw std::runtime_error("decode_risch: payload size does not match dimensions");
        p += risch_header_bytes;
        t.slices.reserve(n);
        for (std::uint32_t k = 0; k < n; ++k)
        {
            cmat m(t.rows, t.cols);
            for (std::uint32_t r = 0; r < t.rows; ++r)
                for (std::uint32_t c = 0; c < t.cols; ++c)
                {
                    const double re = std::bit_cast<double>(detail::get_le(p, 8));
                    const double im = std::bit_cast<double>(detail::get_le(p + 8, 8));
                    m(r, c) = {re, im};
                    p += 16;
                }
            t.slices.push_back(std::move(m));
        }
        return t;
    }

    // realization,row,col,re,im with round-trip precision
    inline std::string encode_csv(const tensor &t)
    {
        std::ostringstream os;
        os << "realization,row,col,re,im\n" << std::setprecision(17);
        for (std::size_t k = 0; k < t.slices.size(); ++k)
            for (Eigen::Index r = 0; r < t.slices[k].rows(); ++r)
                for (Eigen::Index c = 0; c < t.slices[k].cols(); ++c)
                    os << k << ',' << r << ',' << c << ',' << t.slices[k](r, c).real() << ','
                       << t.slices[k](r, c).imag() << '\n';
        return os.str();
    }

    inline void write_file(const std::filesystem::path &path, std::string_view bytes)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        f.write(bytes.data(), std::streamsize(bytes.size()));
        if (!f)
            throw std::runtime_error("write failed: " + path.string());
    }

    inline std::string read_file(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open " + path.string());
        std::ostringstream os;
        os << f.rdbuf();
        return os.str();
    }

    // FNV-1a, 64 bit; used for config hashes and output digests
    inline std::uint64_t fnv1a64(std::string_view bytes)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : bytes)
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    inline std::string hex64(std::uint64_t v)
    {
        std::ostringstream os;
        os << std::hex << std::setw(16) << std::setfill('0') << v;
        return os.str();
    }
}

#endif
