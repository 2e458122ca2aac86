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

#ifndef SIMRIS_ENGINE_HPP
#define SIMRIS_ENGINE_HPP

// Monte Carlo driver: realizations, rates, coverage grids, and artifact export.
//
// Realization r of grid cell c draws every random quantity from substreams keyed
// by (seed, r, c), so results do not depend on the worker count or scheduling.
// Outputs are collected by index and written by a single thread.

#include "channel_mmwave.hpp"
#include "channel_sub6.hpp"
#include "config.hpp"
#include "io.hpp"
#include "multi_ris.hpp"
#include "ris_control.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace simris
{
    // Runs fn(i) for i in [0, n) on `workers` threads; rethrows the first failure
    inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &fn)
    {
        workers = std::max(1u, std::min<unsigned>(workers, unsigned(std::max<std::size_t>(n, 1))));
        if (workers == 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < n && !failed; i = next++)
                    {
                        try
                        {
                            fn(i);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(error_mutex);
                            if (!error)
                                error = std::current_exception();
                            failed = true;
                        }
                    }
                });
        }
        if (error)
            std::rethrow_exception(error);
    }

    inline multi_realization generate_realization(const multi_ris_scene &ms, const seed_lineage &lineage)
    {
        return gen_multi(ms, lineage);
    }

    // Phase configuration of RIS k under the run's strategy
    inline ris_phase_config configure_ris(const run_config &cfg, const ris_term &term, const cmat &D,
                                          const seed_lineage &lineage, std::uint32_t k)
    {
        const auto n = std::size_t(term.H.rows());
        ris_phase_config phases;
        switch (cfg.effective_strategy())
        {
        case phase_strategy::cophase:
            if (term.H.cols() == 1 && term.G.rows() == 1)
            {
                // Align every element with the direct path so the terms add coherently
                const double ref = D(0, 0) == cplx{} ? 0.0 : std::arg(D(0, 0));
                phases = phases_cophase_siso(term.H.col(0), term.G.row(0).transpose(), ref);
            }
            else
                phases = phases_pinv_mimo(term.H, term.G).config;
            break;
        case phase_strategy::pinv_surrogate:
            phases = phases_pinv_mimo(term.H, term.G).config;
            break;
        case phase_strategy::random:
        {
            auto rng = lineage.stream(stream_tag::ris_phases, k);
            phases = random_phases(n, rng);
            break;
        }
        case phase_strategy::off:
            phases = zero_phases(n);
            break;
        }
        if (cfg.quant_bits)
            phases = quantize_phases(phases, *cfg.quant_bits);
        return phases;
    }

    inline cmat effective_channel(const run_config &cfg, const multi_realization &real, const seed_lineage &lineage)
    {
        std::vector<ris_term> terms = real.terms;
        std::vector<ris_phase_config> phases;
        for (std::uint32_t k = 0; k < terms.size(); ++k)
        {
            if (terms[k].active)
                phases.push_back(configure_ris(cfg, terms[k], real.D, lineage, k));
            else if (cfg.inactive == inactive_ris_mode::random_phase)
            {
                auto rng = lineage.stream(stream_tag::ris_phases, k);
                phases.push_back(random_phases(std::size_t(terms[k].H.rows()), rng));
                terms[k].active = true;
            }
            else
                phases.push_back(zero_phases(std::size_t(terms[k].H.rows())));
        }
        return compose_multi(terms, phases, real.D);
    }

    inline rate_result evaluate_rate(const run_config &cfg, const multi_realization &real, const seed_lineage &lineage)
    {
        auto r = achievable_rate(effective_channel(cfg, real, lineage), cfg.tx_power_dbm, cfg.noise_dbm);
        r.strategy = to_string(cfg.effective_strategy());
        r.seed = cfg.seed;
        return r;
    }

    struct run_output
    {
        std::vector<multi_realization> realizations;
        std::vector<rate_result> rates; // empty unless requested
    };

    inline run_output simulate(const run_config &cfg, bool with_rates, unsigned workers)
    {
        run_output out;
        out.realizations.resize(cfg.realizations);
        if (with_rates)
            out.rates.resize(cfg.realizations);
        parallel_for(cfg.realizations, workers, [&](std::size_t i) {
            const seed_lineage lineage{cfg.seed, std::uint32_t(i), 0};
            out.realizations[i] = generate_realization(cfg.scene, lineage);
            if (with_rates)
                out.rates[i] = evaluate_rate(cfg, out.realizations[i], lineage);
        });
        return out;
    }

    struct coverage_cell
    {
        double x = 0.0, y = 0.0, z = 0.0;
        double mean_rate = std::numeric_limits<double>::quiet_NaN();
        bool valid = false;
        std::string status = "ok";
    };

    struct coverage_grid
    {
        coverage_spec spec;
        std::vector<coverage_cell> cells; // index = iy * nx + ix
    };

    inline coverage_grid run_coverage(const run_config &cfg, unsigned workers)
    {
        if (!cfg.coverage)
            throw config_error("coverage", "no coverage grid configured");
        const auto &spec = *cfg.coverage;
        coverage_grid grid;
        grid.spec = spec;
        const std::size_t nx = spec.x.count();
        grid.cells.resize(spec.cells());
        parallel_for(grid.cells.size(), workers, [&](std::size_t c) {
            coverage_cell &cell = grid.cells[c];
            cell.x = spec.x.at(c % nx);
            cell.y = spec.y.at(c / nx);
            cell.z = spec.z;
            multi_ris_scene ms = cfg.scene;
            ms.base.rx = {cell.x, cell.y, cell.z};
            try
            {
                ms.validate();
            }
            catch (const config_error &)
            {
                cell.status = "invalid";
                return;
            }
            double sum = 0.0;
            for (std::uint32_t r = 0; r < cfg.realizations; ++r)
            {
                const seed_lineage lineage{cfg.seed, r, std::uint32_t(c)};
                sum += evaluate_rate(cfg, generate_realization(ms, lineage), lineage).rate;
            }
            cell.mean_rate = sum / double(cfg.realizations);
            cell.valid = true;
        });
        return grid;
    }

    // ---------- export ----------

    inline std::string tensor_name(char which, std::size_t k, std::size_t count)
    {
        std::string s(1, which);
        if (count > 1)
            s += "_ris" + std::to_string(k + 1);
        return s;
    }

    inline json run_metadata(const run_config &cfg, const char *command)
    {
        json meta;
        meta["tool"] = "simris";
        meta["tool_version"] = tool_version;
        meta["command"] = command;
        meta["format"] = "RISCH1";
        meta["config_hash"] = "fnv1a64:" + cfg.config_hash();
        meta["config"] = cfg.identity();
        meta["seed"] = cfg.seed;
        meta["realizations"] = cfg.realizations;
        meta["parameter_table_version"] = parameter_table_version;
        meta["environment"] = to_string(cfg.scene.base.environment);
        meta["band"] = cfg.scene.base.is_sub6() ? "sub6" : "mmwave";
        meta["frequency_hz"] = cfg.scene.base.frequency_hz;
        meta["strategy"] = to_string(cfg.effective_strategy());
        meta["tx_power_dbm"] = cfg.tx_power_dbm;
        meta["noise_dbm"] = cfg.noise_dbm;
        return meta;
    }

    // Channel tensors of a run in file order: H/G per RIS, then D
    inline std::vector<std::pair<std::string, io::tensor>> collect_tensors(const run_config &cfg,
                                                                          const run_output &out)
    {
        std::vector<std::pair<std::string, io::tensor>> tensors;
        const std::size_t count = cfg.scene.sites.size();
        for (std::size_t k = 0; k < count; ++k)
        {
            io::tensor h, g;
            h.rows = std::uint32_t(cfg.scene.sites[k].array.size());
            h.cols = std::uint32_t(cfg.scene.base.nt());
            g.rows = std::uint32_t(cfg.scene.base.nr());
            g.cols = h.rows;
            for (const auto &r : out.realizations)
            {
                h.slices.push_back(r.terms[k].H);
                g.slices.push_back(r.terms[k].G);
            }
            tensors.emplace_back(tensor_name('H', k, count), std::move(h));
            tensors.emplace_back(tensor_name('G', k, count), std::move(g));
        }
        io::tensor d;
        d.rows = std::uint32_t(cfg.scene.base.nr());
        d.cols = std::uint32_t(cfg.scene.base.nt());
        for (const auto &r : out.realizations)
            d.slices.push_back(r.D);
        tensors.emplace_back("D", std::move(d));
        return tensors;
    }

    // FNV-1a over the encoded tensors and the raw rate values
    inline std::string run_digest(const run_config &cfg, const run_output &out)
    {
        std::string bytes;
        for (const auto &[name, t] : collect_tensors(cfg, out))
            bytes += name + '\n' + io::encode_risch(t);
        for (const auto &r : out.rates)
            bytes.append(reinterpret_cast<const char *>(&r.rate), sizeof(double));
        return io::hex64(io::fnv1a64(bytes));
    }

    // Writes H/G/D tensors (+ optional CSV), rates.csv when rates were computed,
    // and meta.json. Returns the written file names.
    inline std::vector<std::string> write_run(const run_config &cfg, const run_output &out, const char *command)
    {
        namespace fs = std::filesystem;
        const fs::path dir(cfg.out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

        std::vector<std::string> files;
        json meta = run_metadata(cfg, command);
        json tensors = json::object();
        for (const auto &[name, t] : collect_tensors(cfg, out))
        {
            const std::string file = name + ".risch";
            io::write_file(dir / file, io::encode_risch(t));
            files.push_back(file);
            tensors[name] = {{"file", file}, {"dims", {t.slices.size(), t.rows, t.cols}}};
            if (cfg.csv)
            {
                io::write_file(dir / (name + ".csv"), io::encode_csv(t));
                files.push_back(name + ".csv");
            }
        }
        meta["tensors"] = tensors;

        json los = json::array();
        for (const auto &r : out.realizations)
        {
            json entry;
            entry["tx_rx"] = r.los_direct;
            json per_ris = json::array();
            for (const auto &t : r.terms)
                per_ris.push_back({{"tx_ris", t.los_tx_ris}, {"ris_rx", t.los_ris_rx}});
            entry["ris"] = per_ris;
            los.push_back(entry);
        }
        meta["los"] = los;

        if (!out.rates.empty())
        {
            std::ostringstream os;
            os << "realization,rate_bps_hz\n" << std::setprecision(17);
            double sum = 0.0;
            for (std::size_t i = 0; i < out.rates.size(); ++i)
            {
                os << i << ',' << out.rates[i].rate << '\n';
                sum += out.rates[i].rate;
            }
            io::write_file(dir / "rates.csv", os.str());
            files.push_back("rates.csv");
            meta["mean_rate_bps_hz"] = sum / double(out.rates.size());
            meta["snr_linear"] = out.rates.front().snr_linear;
        }

        meta["digest"] = "fnv1a64:" + run_digest(cfg, out);
        io::write_file(dir / "meta.json", meta.dump(2) + "\n");
        files.push_back("meta.json");
        return files;
    }

    inline std::string encode_coverage_csv(const coverage_grid &grid)
    {
        std::ostringstream os;
        os << "ix,iy,x,y,z,mean_rate_bps_hz,status\n" << std::setprecision(17);
        const std::size_t nx = grid.spec.x.count();
        for (std::size_t c = 0; c < grid.cells.size(); ++c)
        {
            const auto &cell = grid.cells[c];
            os << (c % nx) << ',' << (c / nx) << ',' << cell.x << ',' << cell.y << ',' << cell.z << ',';
            if (cell.valid)
                os << cell.mean_rate;
            else
                os << "nan";
            os << ',' << cell.status << '\n';
        }
        return os.str();
    }

    inline std::vector<std::string> write_coverage(const run_config &cfg, const coverage_grid &grid)
    {
        namespace fs = std::filesystem;
        const fs::path dir(cfg.out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
        io::write_file(dir / "coverage.csv", encode_coverage_csv(grid));
        json meta = run_metadata(cfg, "coverage");
        meta["grid"] = {{"nx", grid.spec.x.count()}, {"ny", grid.spec.y.count()}, {"z", grid.spec.z}};
        io::write_file(dir / "meta.json", meta.dump(2) + "\n");
        return {"coverage.csv", "meta.json"};
    }
}

#endif
