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

#ifndef SIMRIS_CONFIG_HPP
#define SIMRIS_CONFIG_HPP

// JSON run configuration.
//
// Precedence, lowest first: built-in parameter table, the file named by
// $SIMRIS_PARAMS, "parameters_file", inline "parameters", then top-level keys.
// Unknown keys are rejected so typos surface as config errors.

#include "errors.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "propagation.hpp"
#include "ris_control.hpp"
#include "scene.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace simris
{
    using json = nlohmann::json;

    inline constexpr const char *tool_version = "1.0.0";
    inline constexpr const char *params_env_var = "SIMRIS_PARAMS";

    struct axis_range
    {
        double min = 0.0, max = 0.0, step = 1.0;

        std::size_t count() const { return std::size_t(std::floor((max - min) / step + 1e-9)) + 1; }
        double at(std::size_t i) const { return min + double(i) * step; }
    };

    struct coverage_spec
    {
        axis_range x, y;
        double z = 1.0;

        std::size_t cells() const { return x.count() * y.count(); }
    };

    enum class inactive_ris_mode
    {
        absent,
        random_phase,
    };

    struct run_config
    {
        multi_ris_scene scene;
        std::uint32_t realizations = 1000;
        std::uint64_t seed = 1;
        double tx_power_dbm = 30.0;
        double noise_dbm = -100.0;
        std::optional<phase_strategy> strategy; // default: cophase for SISO, pinv_surrogate otherwise
        std::optional<int> quant_bits;
        inactive_ris_mode inactive = inactive_ris_mode::absent;
        std::optional<coverage_spec> coverage;
        std::string out_dir = "simris_out";
        unsigned workers = 1;
        bool csv = false;
        json source;                          // effective input document, hashed into the metadata
        json external_parameters = json::object(); // contents of $SIMRIS_PARAMS / parameters_file

        phase_strategy effective_strategy() const
        {
            if (strategy)
                return *strategy;
            const auto &b = scene.base;
            return b.nt() == 1 && b.nr() == 1 ? phase_strategy::cophase : phase_strategy::pinv_surrogate;
        }

        // Input document without the keys that cannot change results
        json identity() const
        {
            json j = source;
            if (j.is_object())
            {
                j.erase("out_dir");
                j.erase("workers");
                j.erase("csv");
                if (!external_parameters.empty())
                    j["external_parameters"] = external_parameters;
            }
            return j;
        }

        std::string config_hash() const { return io::hex64(io::fnv1a64(identity().dump())); }
    };

    namespace detail
    {
        inline void check_keys(const json &j, const std::string &where, std::initializer_list<const char *> allowed)
        {
            if (!j.is_object())
                throw config_error(where, "must be an object");
            std::set<std::string> ok(allowed.begin(), allowed.end());
            for (auto it = j.begin(); it != j.end(); ++it)
                if (!ok.count(it.key()))
                    throw config_error(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
        }

        inline double get_number(const json &j, const std::string &field)
        {
            if (!j.is_number())
                throw config_error(field, "must be a number");
            const double v = j.get<double>();
            if (!std::isfinite(v))
                throw config_error(field, "must be finite");
            return v;
        }

        inline std::int64_t get_int(const json &j, const std::string &field, std::int64_t lo, std::int64_t hi)
        {
            if (!j.is_number_integer())
                throw config_error(field, "must be an integer");
            const auto v = j.get<std::int64_t>();
            if (v < lo || v > hi)
                throw config_error(field, "must be within [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return v;
        }

        inline bool get_bool(const json &j, const std::string &field)
        {
            if (!j.is_boolean())
                throw config_error(field, "must be true or false");
            return j.get<bool>();
        }

        inline std::string get_string(const json &j, const std::string &field)
        {
            if (!j.is_string())
                throw config_error(field, "must be a string");
            return j.get<std::string>();
        }

        inline point3 get_point(const json &j, const std::string &field)
        {
            if (!j.is_array() || j.size() != 3)
                throw config_error(field, "must be a [x, y, z] array");
            return {get_number(j[0], field + "[0]"), get_number(j[1], field + "[1]"), get_number(j[2], field + "[2]")};
        }

        inline environment_kind parse_environment(const std::string &s, const std::string &field)
        {
            if (s == "InH" || s == "inh" || s == "InH_IndoorOffice" || s == "indoor")
                return environment_kind::inh_indoor_office;
            if (s == "UMi" || s == "umi" || s == "UMi_StreetCanyon" || s == "outdoor")
                return environment_kind::umi_street_canyon;
            throw config_error(field, "expected \"InH\" or \"UMi\", got \"" + s + "\"");
        }

        inline mounting_plane parse_scenario(const json &j, const std::string &field)
        {
            if (j.is_number_integer())
            {
                const auto v = j.get<int>();
                if (v == 1)
                    return mounting_plane::xz;
                if (v == 2)
                    return mounting_plane::yz;
            }
            else if (j.is_string())
            {
                const auto s = j.get<std::string>();
                if (s == "xz" || s == "side_wall")
                    return mounting_plane::xz;
                if (s == "yz" || s == "opposite_wall")
                    return mounting_plane::yz;
            }
            throw config_error(field, "expected 1 / 2, \"xz\" / \"yz\" or \"side_wall\" / \"opposite_wall\"");
        }

        inline los_mode parse_los_mode(const json &j, const std::string &field)
        {
            const auto s = get_string(j, field);
            if (s == "auto")
                return los_mode::automatic;
            if (s == "on")
                return los_mode::force_on;
            if (s == "off")
                return los_mode::force_off;
            throw config_error(field, "expected \"auto\", \"on\" or \"off\"");
        }

        inline phase_strategy parse_strategy(const json &j, const std::string &field)
        {
            const auto s = get_string(j, field);
            if (s == "cophase")
                return phase_strategy::cophase;
            if (s == "pinv_surrogate" || s == "pinv")
                return phase_strategy::pinv_surrogate;
            if (s == "random")
                return phase_strategy::random;
            if (s == "off")
                return phase_strategy::off;
            throw config_error(field, "expected cophase, pinv_surrogate, random or off");
        }

        inline array_kind parse_array_kind(const json &j, const std::string &field)
        {
            const auto s = get_string(j, field);
            if (s == "ULA" || s == "ula")
                return array_kind::ula;
            if (s == "UPA" || s == "upa")
                return array_kind::upa;
            throw config_error(field, "expected \"ULA\" or \"UPA\"");
        }

        struct array_defaults
        {
            array_kind kind = array_kind::upa;
            std::optional<std::size_t> n_h, n_v;
            double spacing = 0.5;
            double q = 0.285;
        };

        inline void apply_array_defaults(array_defaults &d, const json &j, const std::string &field)
        {
            if (j.is_string())
            {
                d.kind = parse_array_kind(j, field);
                return;
            }
            check_keys(j, field, {"type", "n_h", "n_v", "spacing_wavelengths", "q"});
            if (j.contains("type"))
                d.kind = parse_array_kind(j["type"], field + ".type");
            if (j.contains("n_h"))
                d.n_h = std::size_t(get_int(j["n_h"], field + ".n_h", 1, 1 << 16));
            if (j.contains("n_v"))
                d.n_v = std::size_t(get_int(j["n_v"], field + ".n_v", 1, 1 << 16));
            if (j.contains("spacing_wavelengths"))
            {
                d.spacing = get_number(j["spacing_wavelengths"], field + ".spacing_wavelengths");
                if (!(d.spacing > 0.0))
                    throw config_error(field + ".spacing_wavelengths", "must be > 0");
            }
            if (j.contains("q"))
            {
                d.q = get_number(j["q"], field + ".q");
                if (!(d.q >= 0.0))
                    throw config_error(field + ".q", "must be >= 0");
            }
        }

        inline array_geometry build_array(const array_defaults &d, std::optional<std::size_t> count,
                                          surface_orientation o, const std::string &field)
        {
            array_geometry g;
            if (d.n_h && d.n_v)
            {
                g = {d.kind, *d.n_h, *d.n_v, d.spacing, o};
                if (count && *count != g.size())
                    throw config_error(field, "element count " + std::to_string(*count) + " != n_h * n_v = " +
                                                  std::to_string(g.size()));
            }
            else
            {
                const std::size_t n = count.value_or(d.n_h.value_or(1) * d.n_v.value_or(1));
                if (n < 1)
                    throw config_error(field, "element count must be >= 1");
                g = d.kind == array_kind::ula ? array_geometry::ula(n, o, d.spacing)
                                              : array_geometry::upa(n, o, d.spacing);
            }
            if (g.kind == array_kind::ula && g.n_v != 1)
                throw config_error(field, "ULA must have n_v = 1");
            return g;
        }

        inline los_model parse_los_model(const json &j, const std::string &field)
        {
            const auto s = get_string(j, field);
            if (s == "inh_office")
                return los_model::inh_office_mixed;
            if (s == "umi")
                return los_model::umi_street_canyon;
            if (s == "always")
                return los_model::always;
            if (s == "never")
                return los_model::never;
            throw config_error(field, "expected inh_office, umi, always or never");
        }

        // Parameter-table overrides collected before the scene is assembled
        struct parameter_table
        {
            environment_params inh = default_environment_params(environment_kind::inh_indoor_office);
            environment_params umi = default_environment_params(environment_kind::umi_street_canyon);
            std::optional<json> scattering, array, sub6, ris_control;

            environment_params &env(environment_kind e)
            {
                return e == environment_kind::inh_indoor_office ? inh : umi;
            }
        };

        inline void apply_env_override(environment_params &p, const json &j, const std::string &field)
        {
            check_keys(j, field,
                       {"n_los", "n_nlos", "b_los", "b_nlos", "f0_ghz", "sigma_los_db", "sigma_nlos_db", "los_model"});
            if (j.contains("n_los"))
                p.exponent_los.n = get_number(j["n_los"], field + ".n_los");
            if (j.contains("n_nlos"))
                p.exponent_nlos.n = get_number(j["n_nlos"], field + ".n_nlos");
            if (j.contains("b_los"))
                p.exponent_los.b = get_number(j["b_los"], field + ".b_los");
            if (j.contains("b_nlos"))
                p.exponent_nlos.b = get_number(j["b_nlos"], field + ".b_nlos");
            if (j.contains("f0_ghz"))
                p.exponent_los.f0_hz = p.exponent_nlos.f0_hz = 1e9 * get_number(j["f0_ghz"], field + ".f0_ghz");
            if (j.contains("sigma_los_db"))
                p.sigma_los_db = get_number(j["sigma_los_db"], field + ".sigma_los_db");
            if (j.contains("sigma_nlos_db"))
                p.sigma_nlos_db = get_number(j["sigma_nlos_db"], field + ".sigma_nlos_db");
            if (j.contains("los_model"))
                p.los = parse_los_model(j["los_model"], field + ".los_model");
            if (!(p.exponent_los.n > 0.0) || !(p.exponent_nlos.n > 0.0))
                throw config_error(field, "path-loss exponents must be > 0");
            if (!(p.sigma_los_db >= 0.0) || !(p.sigma_nlos_db >= 0.0))
                throw config_error(field, "shadowing sigmas must be >= 0");
        }

        inline void apply_parameter_file(parameter_table &t, const json &j, const std::string &field)
        {
            check_keys(j, field, {"InH", "UMi", "scattering", "array", "sub6", "ris_control"});
            const std::string prefix = field.empty() ? "" : field + ".";
            if (j.contains("InH"))
                apply_env_override(t.inh, j["InH"], prefix + "InH");
            if (j.contains("UMi"))
                apply_env_override(t.umi, j["UMi"], prefix + "UMi");
            auto merge = [&](std::optional<json> &slot, const char *key) {
                if (!j.contains(key))
                    return;
                if (!j[key].is_object())
                    throw config_error(prefix + key, "must be an object");
                if (!slot)
                    slot = json::object();
                slot->update(j[key]);
            };
            merge(t.scattering, "scattering");
            merge(t.array, "array");
            merge(t.sub6, "sub6");
            merge(t.ris_control, "ris_control");
        }

        inline json load_json_file(const std::string &path, const std::string &field)
        {
            std::string text;
            try
            {
                text = io::read_file(path);
            }
            catch (const std::exception &e)
            {
                throw config_error(field, e.what());
            }
            try
            {
                return json::parse(text);
            }
            catch (const json::parse_error &e)
            {
                throw config_error(field, std::string("invalid JSON in ") + path + ": " + e.what());
            }
        }

        inline void apply_scattering(scattering_params &s, const json &j, const std::string &field)
        {
            check_keys(j, field, {"lambda_c", "s_min", "s_max", "spread_m", "retry_cap", "truncate_min_one"});
            if (j.contains("lambda_c"))
                s.lambda_c = get_number(j["lambda_c"], field + ".lambda_c");
            if (j.contains("s_min"))
                s.s_min = int(get_int(j["s_min"], field + ".s_min", 1, 100000));
            if (j.contains("s_max"))
                s.s_max = int(get_int(j["s_max"], field + ".s_max", 1, 100000));
            if (j.contains("spread_m"))
                s.spread_m = get_number(j["spread_m"], field + ".spread_m");
            if (j.contains("retry_cap"))
                s.retry_cap = int(get_int(j["retry_cap"], field + ".retry_cap", 1, 100000000));
            if (j.contains("truncate_min_one"))
                s.truncate_min_one = get_bool(j["truncate_min_one"], field + ".truncate_min_one");
            s.validate();
        }

        inline void apply_sub6(sub6_params &s, const json &j, const std::string &field)
        {
            check_keys(j, field, {"element_edge_m", "nearfield_mode"});
            if (j.contains("element_edge_m"))
            {
                s.element_edge_m = get_number(j["element_edge_m"], field + ".element_edge_m");
                if (!(*s.element_edge_m > 0.0))
                    throw config_error(field + ".element_edge_m", "must be > 0");
            }
            if (j.contains("nearfield_mode"))
            {
                const auto m = get_string(j["nearfield_mode"], field + ".nearfield_mode");
                if (m == "auto")
                    s.mode = nearfield_mode::automatic;
                else if (m == "force_near")
                    s.mode = nearfield_mode::force_near;
                else if (m == "force_far")
                    s.mode = nearfield_mode::force_far;
                else
                    throw config_error(field + ".nearfield_mode", "expected auto, force_near or force_far");
            }
        }

        inline void apply_ris_control(run_config &cfg, const json &j, const std::string &field)
        {
            check_keys(j, field, {"strategy", "quant_bits"});
            if (j.contains("strategy"))
                cfg.strategy = parse_strategy(j["strategy"], field + ".strategy");
            if (j.contains("quant_bits"))
            {
                if (j["quant_bits"].is_null())
                    cfg.quant_bits.reset();
                else
                    cfg.quant_bits = int(get_int(j["quant_bits"], field + ".quant_bits", 1, 16));
            }
        }

        inline axis_range parse_range(const json &j, const std::string &field)
        {
            if (!j.is_array() || j.size() != 3)
                throw config_error(field, "must be [min, max, step]");
            axis_range r{get_number(j[0], field + "[0]"), get_number(j[1], field + "[1]"),
                         get_number(j[2], field + "[2]")};
            if (!(r.step > 0.0))
                throw config_error(field, "step must be > 0");
            if (r.max < r.min)
                throw config_error(field, "max must be >= min");
            return r;
        }
    }

    // Builds and validates a run configuration from a JSON document
    inline run_config parse_run_config(const json &doc)
    {
        using namespace detail;
        check_keys(doc, "",
                   {"frequency_ghz", "environment", "scenario", "band", "tx", "rx", "ris", "n", "nt", "nr", "array",
                    "tx_array", "rx_array", "tx_facing", "realizations", "seed", "out_dir", "workers", "csv",
                    "tx_power_dbm", "noise_dbm", "direct_link", "los", "share_clusters", "shadow_ris_los",
                    "inactive_ris", "ris_control", "parameters", "parameters_file", "coverage", "bounds",
                    "scattering", "sub6"});

        run_config cfg;
        cfg.source = doc;

        parameter_table table;
        if (const char *env_path = std::getenv(params_env_var); env_path && *env_path)
        {
            auto j = load_json_file(env_path, params_env_var);
            apply_parameter_file(table, j, params_env_var);
            cfg.external_parameters[params_env_var] = std::move(j);
        }
        if (doc.contains("parameters_file"))
        {
            const auto path = get_string(doc["parameters_file"], "parameters_file");
            auto j = load_json_file(path, "parameters_file");
            apply_parameter_file(table, j, "parameters_file");
            cfg.external_parameters["parameters_file"] = std::move(j);
        }
        if (doc.contains("parameters"))
            apply_parameter_file(table, doc["parameters"], "parameters");
        if (doc.contains("scattering"))
            apply_parameter_file(table, json{{"scattering", doc["scattering"]}}, "");
        if (doc.contains("sub6"))
            apply_parameter_file(table, json{{"sub6", doc["sub6"]}}, "");

        scene &sc = cfg.scene.base;
        if (doc.contains("environment"))
            sc.set_environment(parse_environment(get_string(doc["environment"], "environment"), "environment"));
        sc.env = table.env(sc.environment);
        if (table.scattering)
            apply_scattering(sc.scattering, *table.scattering, "scattering");
        if (table.sub6)
            apply_sub6(sc.sub6, *table.sub6, "sub6");

        if (doc.contains("frequency_ghz"))
            sc.frequency_hz = 1e9 * get_number(doc["frequency_ghz"], "frequency_ghz");
        try
        {
            check_frequency(sc.frequency_hz);
        }
        catch (const config_error &e)
        {
            throw config_error("frequency_ghz", e.what());
        }
        if (doc.contains("band"))
        {
            const auto b = get_string(doc["band"], "band");
            if (b == "auto")
                sc.band = band_model::automatic;
            else if (b == "mmwave")
                sc.band = band_model::mmwave;
            else if (b == "sub6")
                sc.band = band_model::sub6;
            else
                throw config_error("band", "expected auto, mmwave or sub6");
        }
        if (doc.contains("tx"))
            sc.tx = get_point(doc["tx"], "tx");
        if (doc.contains("rx"))
            sc.rx = get_point(doc["rx"], "rx");
        if (doc.contains("bounds"))
        {
            const auto &b = doc["bounds"];
            check_keys(b, "bounds", {"min", "max"});
            if (!b.contains("min") || !b.contains("max"))
                throw config_error("bounds", "requires min and max");
            sc.bounds = {get_point(b["min"], "bounds.min"), get_point(b["max"], "bounds.max")};
        }

        // Terminal arrays. The Tx sits on a yz wall, facing the (first) RIS by default.
        array_defaults tx_def, rx_def;
        tx_def.kind = rx_def.kind = array_kind::ula;
        if (doc.contains("tx_array"))
            apply_array_defaults(tx_def, doc["tx_array"], "tx_array");
        if (doc.contains("rx_array"))
            apply_array_defaults(rx_def, doc["rx_array"], "rx_array");
        std::optional<std::size_t> nt, nr;
        if (doc.contains("nt"))
            nt = std::size_t(get_int(doc["nt"], "nt", 1, 4096));
        if (doc.contains("nr"))
            nr = std::size_t(get_int(doc["nr"], "nr", 1, 4096));

        // RIS list
        mounting_plane default_plane = mounting_plane::xz;
        if (doc.contains("scenario"))
            default_plane = parse_scenario(doc["scenario"], "scenario");
        array_defaults ris_def;
        if (table.array)
            apply_array_defaults(ris_def, *table.array, "parameters.array");
        if (doc.contains("array"))
            apply_array_defaults(ris_def, doc["array"], "array");
        std::optional<std::size_t> default_n;
        if (doc.contains("n"))
            default_n = std::size_t(get_int(doc["n"], "n", 1, 1 << 20));

        json ris_list = json::array();
        if (!doc.contains("ris"))
            ris_list.push_back(json{{"position", json::array({40.0, 50.0, 2.0})}});
        else if (doc["ris"].is_array() && !doc["ris"].empty() && doc["ris"][0].is_number())
            ris_list.push_back(json{{"position", doc["ris"]}});
        else if (doc["ris"].is_object())
            ris_list.push_back(doc["ris"]);
        else if (doc["ris"].is_array() && !doc["ris"].empty())
            ris_list = doc["ris"];
        else
            throw config_error("ris", "expected [x, y, z], an RIS object, or a non-empty list of RIS objects");

        for (std::size_t k = 0; k < ris_list.size(); ++k)
        {
            const std::string field = ris_list.size() == 1 && !(doc.contains("ris") && doc["ris"].is_array() &&
                                                                  doc["ris"][0].is_object())
                                          ? std::string("ris")
                                          : "ris[" + std::to_string(k) + "]";
            const json &r = ris_list[k];
            check_keys(r, field, {"position", "n", "array", "scenario", "facing", "active"});
            if (!r.contains("position"))
                throw config_error(field + ".position", "required");
            ris_site site;
            site.position = get_point(r["position"], field + ".position");
            mounting_plane plane = r.contains("scenario") ? parse_scenario(r["scenario"], field + ".scenario")
                                                          : default_plane;
            surface_orientation o = surface_orientation::facing_towards(plane, site.position, sc.tx);
            if (r.contains("facing"))
            {
                const auto f = get_int(r["facing"], field + ".facing", -1, 1);
                if (f == 0)
                    throw config_error(field + ".facing", "must be +1 or -1");
                o.facing = int(f);
            }
            array_defaults d = ris_def;
            if (r.contains("array"))
                apply_array_defaults(d, r["array"], field + ".array");
            std::optional<std::size_t> n = default_n;
            if (r.contains("n"))
                n = std::size_t(get_int(r["n"], field + ".n", 1, 1 << 20));
            if (!n && !(d.n_h && d.n_v))
                n = 64;
            site.array = build_array(d, n, o, field);
            site.pattern.q = d.q;
            if (r.contains("active"))
                site.active = get_bool(r["active"], field + ".active");
            cfg.scene.sites.push_back(site);
        }

        surface_orientation tx_o =
            surface_orientation::facing_towards(mounting_plane::yz, sc.tx, cfg.scene.sites.front().position);
        if (doc.contains("tx_facing"))
        {
            const auto f = get_int(doc["tx_facing"], "tx_facing", -1, 1);
            if (f == 0)
                throw config_error("tx_facing", "must be +1 or -1");
            tx_o.facing = int(f);
        }
        sc.tx_array = build_array(tx_def, nt.value_or(1), tx_o, "tx_array");
        sc.rx_array = build_array(rx_def, nr.value_or(1), surface_orientation{}, "rx_array");
        sc.ris = cfg.scene.sites.front();

        // Model switches
        if (doc.contains("direct_link"))
        {
            const auto s = get_string(doc["direct_link"], "direct_link");
            if (s == "blocked")
                sc.options.direct_blocked = true;
            else if (s == "los")
                sc.options.los_tx_rx = los_mode::force_on;
            else if (s == "nlos")
                sc.options.los_tx_rx = los_mode::force_off;
            else if (s != "auto")
                throw config_error("direct_link", "expected auto, blocked, los or nlos");
        }
        if (doc.contains("los"))
        {
            const auto &l = doc["los"];
            check_keys(l, "los", {"tx_ris", "ris_rx", "tx_rx"});
            if (l.contains("tx_ris"))
                sc.options.los_tx_ris = parse_los_mode(l["tx_ris"], "los.tx_ris");
            if (l.contains("ris_rx"))
                sc.options.los_ris_rx = parse_los_mode(l["ris_rx"], "los.ris_rx");
            if (l.contains("tx_rx"))
                sc.options.los_tx_rx = parse_los_mode(l["tx_rx"], "los.tx_rx");
        }
        if (doc.contains("share_clusters"))
            sc.options.share_clusters = get_bool(doc["share_clusters"], "share_clusters");
        if (doc.contains("shadow_ris_los"))
            sc.options.shadow_ris_los = get_bool(doc["shadow_ris_los"], "shadow_ris_los");
        if (doc.contains("inactive_ris"))
        {
            const auto s = get_string(doc["inactive_ris"], "inactive_ris");
            if (s == "absent")
                cfg.inactive = inactive_ris_mode::absent;
            else if (s == "random_phase")
                cfg.inactive = inactive_ris_mode::random_phase;
            else
                throw config_error("inactive_ris", "expected absent or random_phase");
        }

        // Run control
        if (doc.contains("realizations"))
            cfg.realizations = std::uint32_t(get_int(doc["realizations"], "realizations", 1, 100000000));
        if (doc.contains("seed"))
        {
            if (!doc["seed"].is_number_integer() || (doc["seed"].is_number_integer() && !doc["seed"].is_number_unsigned() &&
                                                     doc["seed"].get<std::int64_t>() < 0))
                throw config_error("seed", "must be a non-negative integer");
            cfg.seed = doc["seed"].get<std::uint64_t>();
        }
        if (doc.contains("out_dir"))
            cfg.out_dir = get_string(doc["out_dir"], "out_dir");
        if (doc.contains("workers"))
            cfg.workers = unsigned(get_int(doc["workers"], "workers", 1, 1024));
        if (doc.contains("csv"))
            cfg.csv = get_bool(doc["csv"], "csv");
        if (doc.contains("tx_power_dbm"))
            cfg.tx_power_dbm = get_number(doc["tx_power_dbm"], "tx_power_dbm");
        if (doc.contains("noise_dbm"))
            cfg.noise_dbm = get_number(doc["noise_dbm"], "noise_dbm");
        if (table.ris_control)
            apply_ris_control(cfg, *table.ris_control, "parameters.ris_control");
        if (doc.contains("ris_control"))
            apply_ris_control(cfg, doc["ris_control"], "ris_control");
        if (doc.contains("coverage"))
        {
            const auto &c = doc["coverage"];
            check_keys(c, "coverage", {"x", "y", "z"});
            if (!c.contains("x") || !c.contains("y"))
                throw config_error("coverage", "requires x and y ranges");
            coverage_spec g;
            g.x = parse_range(c["x"], "coverage.x");
            g.y = parse_range(c["y"], "coverage.y");
            if (c.contains("z"))
                g.z = get_number(c["z"], "coverage.z");
            if (g.cells() > 10000000)
                throw config_error("coverage", "grid has more than 1e7 cells");
            cfg.coverage = g;
        }

        cfg.scene.validate();
        if (sc.is_sub6() && cfg.effective_strategy() == phase_strategy::pinv_surrogate && (sc.nt() > 1 || sc.nr() > 1))
            throw config_error("nt", "the sub-6 GHz model is SISO");
        return cfg;
    }
}

#endif
