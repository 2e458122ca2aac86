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

#ifndef SIMRIS_ARRAYS_HPP
#define SIMRIS_ARRAYS_HPP

#include "errors.hpp"
#include "geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace simris
{
    using cvec = Eigen::VectorXcd;
    using cmat = Eigen::MatrixXcd;
    using cplx = std::complex<double>;

    enum class array_kind
    {
        ula,
        upa,
    };

    inline std::string to_string(array_kind k) { return k == array_kind::ula ? "ULA" : "UPA"; }

    // Planar or linear array on a wall. Element i sits at column i % n_h and
    // row i / n_h; columns run along the plane's horizontal axis, rows along +z.
    struct array_geometry
    {
        array_kind kind = array_kind::upa;
        std::size_t n_h = 1;
        std::size_t n_v = 1;
        double spacing_wavelengths = 0.5;
        surface_orientation orientation{};

        std::size_t size() const { return n_h * n_v; }

        double spacing_m(double wavelength) const { return spacing_wavelengths * wavelength; }

        void validate() const
        {
            if (n_h < 1 || n_v < 1)
                throw config_error("array", "element counts must be >= 1");
            if (kind == array_kind::ula && n_v != 1)
                throw config_error("array", "ULA must have n_v = 1");
            if (!(spacing_wavelengths > 0.0))
                throw config_error("array.spacing_wavelengths", "must be > 0");
        }

        static array_geometry single(surface_orientation o = {})
        {
            return {array_kind::ula, 1, 1, 0.5, o};
        }

        static array_geometry ula(std::size_t n, surface_orientation o = {}, double spacing = 0.5)
        {
            return {array_kind::ula, n, 1, spacing, o};
        }

        // Closest-to-square UPA with n elements (n_h >= n_v)
        static array_geometry upa(std::size_t n, surface_orientation o = {}, double spacing = 0.5)
        {
            std::size_t nv = std::size_t(std::sqrt(double(n)));
            while (nv > 1 && n % nv != 0)
                --nv;
            if (nv == 0)
                nv = 1;
            return {array_kind::upa, n / nv, nv, spacing, o};
        }
    };

    // Array response toward `angles`: exp(j k s (col * u_h + row * u_z)), where
    // u_h is the direction component along the horizontal axis of the mounting
    // plane (sin(theta)cos(phi) on xz, sin(theta)sin(phi) on yz), u_z = cos(theta).
    inline cvec steering_vector(const array_geometry &geom, const direction_angles &angles, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw domain_error("steering_vector: wavelength must be > 0");
        const double k_s = 2.0 * std::numbers::pi / wavelength * geom.spacing_m(wavelength);
        const double st = std::sin(angles.elevation);
        const double u_h = geom.orientation.plane == mounting_plane::xz ? st * std::cos(angles.azimuth)
                                                                       : st * std::sin(angles.azimuth);
        const double u_z = geom.kind == array_kind::ula ? 0.0 : std::cos(angles.elevation);
        cvec a(geom.size());
        for (std::size_t row = 0; row < geom.n_v; ++row)
            for (std::size_t col = 0; col < geom.n_h; ++col)
            {
                const double phase = k_s * (double(col) * u_h + double(row) * u_z);
                a[Eigen::Index(row * geom.n_h + col)] = std::polar(1.0, phase);
            }
        return a;
    }

    // Element centres in world coordinates; `center` is the array centroid
    inline std::vector<point3> element_positions(const array_geometry &geom, point3 center, double wavelength)
    {
        const double s = geom.spacing_m(wavelength);
        const point3 axis = geom.orientation.horizontal_axis();
        std::vector<point3> out;
        out.reserve(geom.size());
        for (std::size_t row = 0; row < geom.n_v; ++row)
            for (std::size_t col = 0; col < geom.n_h; ++col)
            {
                const double dh = (double(col) - 0.5 * double(geom.n_h - 1)) * s;
                const double dv = (double(row) - 0.5 * double(geom.n_v - 1)) * s;
                out.push_back(center + dh * axis + point3{0.0, 0.0, dv});
            }
        return out;
    }

    // cos^(2q) element pattern normalized to a 4*pi hemisphere integral
    struct element_pattern
    {
        double q = 0.285;

        double boresight_gain() const { return 2.0 * (2.0 * q + 1.0); }
    };

    inline double element_gain(const element_pattern &pattern, double boresight_angle)
    {
        constexpr double eps = 1e-12;
        if (!(boresight_angle >= -eps && boresight_angle <= std::numbers::pi + eps))
            throw domain_error("element_gain: boresight angle outside [0, pi]");
        if (boresight_angle >= std::numbers::pi / 2)
            return 0.0;
        const double c = std::cos(std::max(boresight_angle, 0.0));
        return pattern.boresight_gain() * std::pow(c, 2.0 * pattern.q);
    }

    // N phase shifts in [0, 2*pi) defining Phi = diag(exp(j * phase))
    struct ris_phase_config
    {
        std::vector<double> phases;
        std::optional<int> quant_bits;

        std::size_t size() const { return phases.size(); }
    };

    inline cvec reflection_coefficients(const ris_phase_config &cfg)
    {
        cvec d(Eigen::Index(cfg.size()));
        for (std::size_t n = 0; n < cfg.size(); ++n)
            d[Eigen::Index(n)] = std::polar(1.0, cfg.phases[n]);
        return d;
    }

    inline cmat reflection_matrix(const ris_phase_config &cfg)
    {
        return reflection_coefficients(cfg).asDiagonal();
    }
}

#endif
