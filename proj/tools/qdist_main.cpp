// Copyright 2026 The qdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace qdist::cli;

void add_common_options(CLI::App *app, RunConfig &config) {
    app->add_option("--seed", config.seed, "Root seed for all random streams");
    app->add_option("--n", config.n_qubits, "Number of qubits for a preset state");
    app->add_option("--preset", config.preset, "ghz | w | bell | product | random-haar");
    app->add_option("--state", config.state_path, "State JSON file");
    app->add_option("--plan", config.plan_path, "Distribution plan JSON file");
    app->add_option("--parties", config.parties, "Receivers for the default round-robin plan");
    app->add_option("--out", config.out_path, "Write the JSON report here instead of stdout");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Distribute a multi-qubit state with entanglement swapping"};
    app.require_subcommand(1);

    RunConfig run_config;
    auto *run = app.add_subcommand("run", "Run seeded distribution trials");
    add_common_options(run, run_config);
    run->add_option("--trials", run_config.trials, "Number of trials");

    RunConfig verify_config;
    auto *verify = app.add_subcommand("verify", "Check every outcome word against the oracle");
    add_common_options(verify, verify_config);

    std::string gen_kind;
    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    std::optional<std::string> gen_out;
    auto *gen = app.add_subcommand("gen", "Write a preset state as JSON");
    gen->add_option("kind", gen_kind, "ghz | w | bell | product | random-haar")->required();
    gen->add_option("n", gen_n, "Number of qubits")->required();
    gen->add_option("--seed", gen_seed, "Seed for randomized presets");
    gen->add_option("--out", gen_out, "Output file");

    std::size_t plan_n = 0;
    std::size_t plan_parties = 1;
    std::optional<std::string> plan_out;
    auto *plan = app.add_subcommand("plan", "Write a round-robin distribution plan as JSON");
    plan->add_option("n", plan_n, "Number of qubits, labelled 1..n")->required();
    plan->add_option("--parties", plan_parties, "Number of receivers");
    plan->add_option("--out", plan_out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsageError;
    }

    try {
        CommandResult result{kOk, {}, {}};
        std::optional<std::string> out_path;
        if (*run) {
            result = cmd_run(run_config);
            out_path = run_config.out_path;
        } else if (*verify) {
            result = cmd_verify(verify_config);
            out_path = verify_config.out_path;
        } else if (*plan) {
            result = cmd_plan(plan_n, plan_parties);
            out_path = plan_out;
        } else {
            result = cmd_gen(gen_kind, gen_n, gen_seed);
            out_path = gen_out;
        }
        emit(result, out_path, std::cout, std::cerr);
        return result.exit_code;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
}
