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

// Command-line front end.
//
//   simris gen      --config run.json   channel tensors H, G, D + meta.json
//   simris rate     --config run.json   the above plus rates.csv
//   simris coverage --config run.json   coverage.csv over the configured grid
//   simris validate --config run.json   parse and check only
//
// Exit status: 0 ok, 2 configuration error, 3 runtime error.

#include <simris/simris.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_config = 2;
    constexpr int exit_runtime = 3;

    struct overrides
    {
        std::string config_path;
        std::optional<double> frequency_ghz;
        std::optional<std::string> environment, scenario, array, out_dir, params;
        std::vector<double> tx, rx, ris;
        std::optional<std::int64_t> n, nt, nr, realizations, workers;
        std::optional<std::uint64_t> seed;
        bool csv = false;
        bool quiet = false;
    };

    void add_common(CLI::App *cmd, overrides &o)
    {
        cmd->add_option("-c,--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
        cmd->add_option("--frequency-ghz", o.frequency_ghz, "carrier frequency [GHz]");
        cmd->add_option("--environment", o.environment, "InH or UMi");
        cmd->add_option("--scenario", o.scenario, "RIS mounting plane: xz or yz");
        cmd->add_option("--tx", o.tx, "Tx position x y z [m]")->expected(3);
        cmd->add_option("--rx", o.rx, "Rx position x y z [m]")->expected(3);
        cmd->add_option("--ris", o.ris, "RIS position x y z [m] (single RIS)")->expected(3);
        cmd->add_option("--n", o.n, "RIS elements");
        cmd->add_option("--nt", o.nt, "Tx antennas");
        cmd->add_option("--nr", o.nr, "Rx antennas");
        cmd->add_option("--array", o.array, "RIS array type: ULA or UPA");
        cmd->add_option("--realizations", o.realizations, "Monte Carlo realizations");
        cmd->add_option("--seed", o.seed, "master seed");
        cmd->add_option("--out-dir", o.out_dir, "output directory");
        cmd->add_option("--workers", o.workers, "worker threads (default: hardware concurrency)");
        cmd->add_option("--params", o.params, std::string("parameter table file (overrides $") +
                                                  simris::params_env_var + ")");
        cmd->add_flag("--csv", o.csv, "also write CSV copies of the channel tensors");
        cmd->add_flag("-q,--quiet", o.quiet, "suppress the summary line");
    }

    simris::json point(const std::vector<double> &v) { return simris::json::array({v[0], v[1], v[2]}); }

    simris::json load_document(const overrides &o)
    {
        simris::json doc = simris::json::object();
        if (!o.config_path.empty())
        {
            try
            {
                doc = simris::json::parse(simris::io::read_file(o.config_path));
            }
            catch (const simris::json::parse_error &e)
            {
                throw simris::config_error("config", e.what());
            }
            if (!doc.is_object())
                throw simris::config_error("config", "top level must be a JSON object");
        }
        if (o.frequency_ghz)
            doc["frequency_ghz"] = *o.frequency_ghz;
        if (o.environment)
            doc["environment"] = *o.environment;
        if (o.scenario)
            doc["scenario"] = *o.scenario;
        if (!o.tx.empty())
            doc["tx"] = point(o.tx);
        if (!o.rx.empty())
            doc["rx"] = point(o.rx);
        if (!o.ris.empty())
            doc["ris"] = point(o.ris);
        if (o.n)
            doc["n"] = *o.n;
        if (o.nt)
            doc["nt"] = *o.nt;
        if (o.nr)
            doc["nr"] = *o.nr;
        if (o.array)
            doc["array"] = *o.array;
        if (o.realizations)
            doc["realizations"] = *o.realizations;
        if (o.seed)
            doc["seed"] = *o.seed;
        if (o.out_dir)
            doc["out_dir"] = *o.out_dir;
        if (o.workers)
            doc["workers"] = *o.workers;
        if (o.csv)
            doc["csv"] = true;
        if (o.params)
            doc["parameters_file"] = *o.params;
        return doc;
    }

    unsigned worker_count(const overrides &o, const simris::run_config &cfg, const simris::json &doc)
    {
        if (o.workers || doc.contains("workers"))
            return cfg.workers;
        return std::max(1u, std::thread::hardware_concurrency());
    }

    void print_files(const simris::run_config &cfg, const std::vector<std::string> &files)
    {
        for (const auto &f : files)
            std::cout << "  " << (std::filesystem::path(cfg.out_dir) / f).string() << "\n";
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"simris: RIS-assisted channel simulator"};
    app.set_version_flag("--version", std::string(simris::tool_version));
    app.require_subcommand(1);

    overrides o;
    auto *gen = app.add_subcommand("gen", "generate H, G and D channel tensors");
    auto *rate = app.add_subcommand("rate", "generate channels and per-realization achievable rates");
    auto *coverage = app.add_subcommand("coverage", "mean achievable rate over an Rx position grid");
    auto *validate = app.add_subcommand("validate", "check a configuration without running it");
    for (auto *cmd : {gen, rate, coverage, validate})
        add_common(cmd, o);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    simris::run_config cfg;
    simris::json doc;
    try
    {
        doc = load_document(o);
        cfg = simris::parse_run_config(doc);
        if (coverage->parsed() && !cfg.coverage)
            throw simris::config_error("coverage", "the coverage command needs a \"coverage\" grid");
    }
    catch (const simris::config_error &e)
    {
        std::cerr << "config error [" << (e.field().empty() ? "config" : e.field()) << "]: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }

    if (validate->parsed())
    {
        if (!o.quiet)
            std::cout << "ok: " << cfg.scene.sites.size() << " RIS, N = " << cfg.scene.sites.front().array.size()
                      << ", Nt = " << cfg.scene.base.nt() << ", Nr = " << cfg.scene.base.nr()
                      << ", band = " << (cfg.scene.base.is_sub6() ? "sub6" : "mmwave")
                      << ", strategy = " << simris::to_string(cfg.effective_strategy())
                      << ", config hash = " << cfg.config_hash() << "\n";
        return exit_ok;
    }

    try
    {
        const unsigned workers = worker_count(o, cfg, doc);
        if (coverage->parsed())
        {
            const auto grid = simris::run_coverage(cfg, workers);
            const auto files = simris::write_coverage(cfg, grid);
            if (!o.quiet)
            {
                std::cout << "coverage: " << grid.cells.size() << " cells x " << cfg.realizations
                          << " realizations\n";
                print_files(cfg, files);
            }
            return exit_ok;
        }
        const bool with_rates = rate->parsed();
        const auto out = simris::simulate(cfg, with_rates, workers);
        const auto files = simris::write_run(cfg, out, with_rates ? "rate" : "gen");
        if (!o.quiet)
        {
            std::cout << (with_rates ? "rate" : "gen") << ": " << cfg.realizations << " realizations, seed "
                      << cfg.seed;
            if (with_rates)
            {
                double sum = 0.0;
                for (const auto &r : out.rates)
                    sum += r.rate;
                std::cout << ", mean rate " << sum / double(out.rates.size()) << " bit/s/Hz";
            }
            std::cout << "\n";
            print_files(cfg, files);
        }
        return exit_ok;
    }
    catch (const simris::config_error &e)
    {
        std::cerr << "config error [" << e.field() << "]: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}
