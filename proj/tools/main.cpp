// SPDX-License-Identifier: Apache-2.0
//
// relay-irs: simulator and optimizer for IRS-assisted downlinks with
// controller relaying.
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

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "relay_irs/commands.hpp"

int main(int argc, char **argv) {
    CLI::App app{"relay-irs: IRS-assisted downlink with controller relaying"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string config_path;
    if (const char *env = std::getenv("RELAY_IRS_CONFIG"))
        config_path = env;
    std::string out_stem = "results";
    std::optional<std::uint64_t> seed_override;
    bool quiet = false;

    app.add_option("--config", config_path, "JSON config file (see README for the schema)");
    app.add_option("--out", out_stem, "output stem for result files");
    std::uint64_t seed_raw = 0;
    auto *seed_opt = app.add_option("--seed", seed_raw, "override the config seed");
    app.add_flag("--quiet", quiet, "suppress progress output");

    auto *sweep = app.add_subcommand("sweep", "rate-versus-distance Monte Carlo sweep");
    double d0 = 50.0;
    auto *single = app.add_subcommand("single", "solve one channel draw and print the solution");
    single->add_option("--d0", d0, "AP-user horizontal distance in metres");
    auto *verify = app.add_subcommand("verify", "run the property verification battery");
    int oracle_m = 2;
    auto *oracle = app.add_subcommand("oracle-check", "compare AO against the exhaustive oracle");
    oracle->add_option("--m", oracle_m, "IRS element count for the oracle (1..4)");

    CLI11_PARSE(app, argc, argv);

    try {
        relay_irs::FullConfig cfg = config_path.empty()
                                        ? relay_irs::parse_config_text("")
                                        : relay_irs::parse_config_file(config_path);
        if (*seed_opt) {
            seed_override = seed_raw;
            cfg.experiment.base_seed = seed_raw;
        }

        if (sweep->parsed())
            return relay_irs::cmd_sweep(cfg, out_stem, std::cout, quiet);
        if (single->parsed())
            return relay_irs::cmd_single(cfg, d0, seed_override, std::cout, quiet);
        if (verify->parsed())
            return relay_irs::cmd_verify(cfg, std::cout, quiet);
        if (oracle->parsed())
            return relay_irs::cmd_oracle_check(cfg, oracle_m, std::cout, quiet);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
