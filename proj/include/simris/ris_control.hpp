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

#ifndef SIMRIS_RIS_CONTROL_HPP
#define SIMRIS_RIS_CONTROL_HPP

#include "arrays.hpp"
#include "errors.hpp"
#include "random.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace simris
{
    enum class phase_strategy
    {
        cophase,
        pinv_surrogate,
        random,
        off, // Phi = I
    };

    inline std::string to_string(phase_strategy s)
    {
        switch (s)
        {
        case phase_strategy::cophase:
            return "cophase";
        case phase_strategy::pinv_surrogate:
            return "pinv_surrogate";
        case phase_strategy::random:
            return "random";
        case phase_strategy::off:
            return "off";
        }
        return "?";
    }

    inline double wrap_phase(double x)
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double w = x - two_pi * std::floor(x / two_pi);
        return w >= two_pi ? 0.0 : w;
    }

    // phi_n = reference - arg(g_n h_n), so every element term lands on the
    // reference phase. Zero products get phase 0.
    inline ris_phase_config phases_cophase_siso(const cvec &h, const cvec &g, double reference_phase = 0.0)
    {
        if (h.size() != g.size() || h.size() < 1)
            throw dimension_error("phases_cophase_siso: h and g must have the same non-zero length");
        ris_phase_config cfg;
        cfg.phases.resize(std::size_t(h.size()));
        for (Eigen::Index n = 0; n < h.size(); ++n)
        {
            const cplx p = g[n] * h[n];
            cfg.phases[std::size_t(n)] = p == cplx{} ? 0.0 : wrap_phase(reference_phase - std::arg(p));
        }
        return cfg;
    }

    struct pinv_result
    {
        ris_phase_config config;
        bool degenerate = false; // a channel had no dominant mode; fell back to norm cophasing
    };

    namespace detail
    {
        // Scales v so its largest-magnitude entry is exactly 1
        inline void pin_phase(cvec &v)
        {
            Eigen::Index pivot = 0;
            v.cwiseAbs().maxCoeff(&pivot);
            v /= v[pivot];
            v[pivot] = 1.0;
        }
    }

    // Dominant-mode cophasing. With b the dominant right singular vector of H and
    // a the dominant left singular vector of G (each pinned to a unit pivot entry),
    // u = H b and w = a^H G are the effective Tx-RIS and RIS-Rx vectors, and the
    // phases cophase w_n u_n. For Nt = Nr = 1 this is exactly phases_cophase_siso.
    inline pinv_result phases_pinv_mimo(const cmat &H, const cmat &G)
    {
        if (H.rows() != G.cols() || H.rows() < 1 || H.cols() < 1 || G.rows() < 1)
            throw dimension_error("phases_pinv_mimo: need H (N x Nt) and G (Nr x N)");
        pinv_result out;

        Eigen::JacobiSVD<cmat> svd_h(H, Eigen::ComputeThinV);
        Eigen::JacobiSVD<cmat> svd_g(G, Eigen::ComputeThinU);
        if (svd_h.singularValues()[0] <= 0.0 || svd_g.singularValues()[0] <= 0.0)
        {
            out.degenerate = true;
            out.config.phases.assign(std::size_t(H.rows()), 0.0);
            return out;
        }

        cvec b = svd_h.matrixV().col(0);
        cvec a = svd_g.matrixU().col(0);
        detail::pin_phase(b);
        detail::pin_phase(a);
        const cvec u = H * b;
        const cvec w = (a.adjoint() * G).transpose();
        out.config = phases_cophase_siso(u, w);
        return out;
    }

    inline ris_phase_config random_phases(std::size_t n, random_stream &rng)
    {
        ris_phase_config cfg;
        cfg.phases.resize(n);
        for (auto &p : cfg.phases)
            p = rng.uniform(0.0, 2.0 * std::numbers::pi);
        return cfg;
    }

    inline ris_phase_config zero_phases(std::size_t n)
    {
        ris_phase_config cfg;
        cfg.phases.assign(n, 0.0);
        return cfg;
    }

    // Nearest point on the uniform 2^bits grid over [0, 2*pi)
    inline ris_phase_config quantize_phases(const ris_phase_config &cfg, int bits)
    {
        if (bits < 1 || bits > 16)
            throw config_error("quant_bits", "must be within [1, 16]");
        const std::int64_t levels = std::int64_t(1) << bits;
        const double step = 2.0 * std::numbers::pi / double(levels);
        ris_phase_config out;
        out.quant_bits = bits;
        out.phases.reserve(cfg.size());
        for (double p : cfg.phases)
        {
            std::int64_t idx = std::llround(wrap_phase(p) / step) % levels;
            out.phases.push_back(double(idx) * step);
        }
        return out;
    }

    struct rate_result
    {
        double rate = 0.0;       // bit/s/Hz
        double snr_linear = 0.0; // rho = P_tx / P_noise
        std::string strategy;
        std::uint64_t seed = 0;
    };

    // log2 det(I + rho / Nt * C C^H), equal power over the Nt transmit antennas
    inline rate_result achievable_rate(const cmat &C, double tx_power_dbm = 30.0, double noise_dbm = -100.0)
    {
        if (!C.allFinite())
            throw domain_error("achievable_rate: channel has non-finite entries");
        rate_result r;
        r.snr_linear = std::pow(10.0, (tx_power_dbm - noise_dbm) / 10.0);
        if (C.size() == 0 || C.isZero(0.0))
            return r;
        const double scale = r.snr_linear / double(C.cols());
        const cmat gram = C * C.adjoint();
        Eigen::SelfAdjointEigenSolver<cmat> eig(gram, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
            r.rate += std::log1p(scale * std::max(eig.eigenvalues()[i], 0.0)) / std::numbers::ln2;
        return r;
    }
}

#endif
