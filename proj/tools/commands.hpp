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

/**
 * @file
 * The `run`, `verify` and `gen` commands of the qdist tool, independent of
 * argument parsing so they can be driven from tests.
 *
 * Randomness: every trial t draws from SeededRandomSource::child(seed, t);
 * a randomized preset state is generated from that stream first, then the
 * Bell measurements consume it. `verify` uses child(seed, 0) for the state
 * and child(seed, 1) for sampling outcome words.
 */

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdist/qdist.hpp"

namespace qdist::cli {

using io::json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2, kIoError = 3 };

/// Bad flags or invalid input data.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxCliQubits = 20;
/// Outcome words are enumerated exhaustively up to this many steps, sampled above.
inline constexpr std::size_t kExhaustiveStepLimit = 4;
inline constexpr std::size_t kSampledWords = 256;

struct RunConfig {
    std::uint64_t seed = 0;
    std::optional<std::size_t> n_qubits;
    std::optional<std::string> preset;
    std::optional<std::string> state_path;
    std::optional<std::string> plan_path;
    std::optional<std::size_t> parties;
    std::size_t trials = 1;
    std::optional<std::string> out_path;
};

struct CommandResult {
    int exit_code;
    json report;
    std::string summary;
};

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

/// The only field that varies between otherwise identical runs.
inline json report_header() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ts;
    ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return json{{"tool", "qdist"}, {"generated_at", ts.str()}};
}

inline bool is_randomized_preset(const std::string &name) { return name == "random-haar" || name == "product"; }

inline void validate(const RunConfig &config) {
    if (config.preset && config.state_path) {
        throw UsageError("--preset and --state are mutually exclusive");
    }
    if (config.plan_path && config.parties) {
        throw UsageError("--plan and --parties are mutually exclusive");
    }
    if (config.n_qubits && (*config.n_qubits < 1 || *config.n_qubits > kMaxCliQubits)) {
        throw UsageError("--n must be in [1, " + std::to_string(kMaxCliQubits) + "]");
    }
    if (!config.state_path && !config.n_qubits) {
        throw UsageError("--n is required unless --state is given");
    }
    if (config.trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    if (config.preset) {
        const auto &names = presets::names();
        if (std::find(names.begin(), names.end(), *config.preset) == names.end()) {
            throw UsageError("unknown preset '" + *config.preset + "'");
        }
    }
    if (config.parties && config.n_qubits && (*config.parties < 1 || *config.parties > *config.n_qubits)) {
        throw UsageError("--parties must be in [1, n]");
    }
}

/// Resolves the input state for one trial stream.
class StateSource {
  public:
    explicit StateSource(const RunConfig &config) : preset_(config.preset.value_or("random-haar")) {
        if (config.state_path) {
            try {
                from_file_ = io::state_from_json(read_json_file(*config.state_path));
            } catch (const io::FormatError &e) {
                throw UsageError(std::string("state file rejected: ") + e.what());
            }
            if (from_file_->num_qubits() > kMaxCliQubits) {
                throw UsageError("state file has more than " + std::to_string(kMaxCliQubits) + " qubits");
            }
            if (config.n_qubits && *config.n_qubits != from_file_->num_qubits()) {
                throw UsageError("--n does not match the number of qubits in the state file");
            }
            n_ = from_file_->num_qubits();
        } else {
            n_ = *config.n_qubits;
            if (!is_randomized_preset(preset_)) {
                SeededRandomSource unused(0);
                try {
                    fixed_ = presets::make(preset_, n_, unused);
                } catch (const std::invalid_argument &e) {
                    throw UsageError(e.what());
                }
            }
        }
    }

    std::size_t n() const { return n_; }
    std::string description() const { return from_file_ ? "file" : preset_; }

    StateVector state_for(SeededRandomSource &rng) const {
        if (from_file_) return *from_file_;
        if (fixed_) return *fixed_;
        return presets::make(preset_, n_, rng);
    }

    /// Any representative state, for plan construction and validation.
    StateVector sample() const {
        SeededRandomSource rng(0);
        return state_for(rng);
    }

  private:
    std::string preset_;
    std::size_t n_ = 0;
    std::optional<StateVector> from_file_;
    std::optional<StateVector> fixed_;
};

inline DistributionPlan resolve_plan(const RunConfig &config, const StateVector &representative) {
    DistributionPlan plan;
    if (config.plan_path) {
        try {
            plan = io::plan_from_json(read_json_file(*config.plan_path));
        } catch (const io::FormatError &e) {
            throw UsageError(std::string("plan file rejected: ") + e.what());
        }
    } else {
        const std::size_t parties = config.parties.value_or(1);
        if (parties < 1 || parties > representative.num_qubits()) {
            throw UsageError("--parties must be in [1, n]");
        }
        plan = round_robin_plan(representative, parties);
    }
    try {
        validate_plan(plan, representative);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("invalid plan: ") + e.what());
    }
    return plan;
}

inline json config_to_json(const RunConfig &config, const StateSource &source) {
    json j{{"seed", config.seed}, {"n", source.n()}, {"state_source", source.description()}, {"trials", config.trials}};
    if (config.state_path) j["state_path"] = *config.state_path;
    if (config.plan_path) j["plan_path"] = *config.plan_path;
    j["parties"] = config.parties.value_or(1);
    return j;
}

inline CommandResult cmd_run(const RunConfig &config) {
    validate(config);
    const StateSource source(config);
    const DistributionPlan plan = resolve_plan(config, source.sample());

    json trials = json::array();
    std::array<std::int64_t, 4> counts{};
    std::size_t passed = 0;
    double min_fidelity = 1.0;
    for (std::size_t t = 0; t < config.trials; ++t) {
        SeededRandomSource rng = SeededRandomSource::child(config.seed, t);
        const StateVector initial = source.state_for(rng);
        const DistributionResult result = distribute(initial, plan, rng);
        const double f = fidelity(result.final_state, relabeled_target(initial, plan));
        const bool ok = f >= 1.0 - kNormTol;
        passed += ok ? 1 : 0;
        min_fidelity = std::min(min_fidelity, f);
        for (const auto &e : result.transcript) {
            counts[static_cast<std::size_t>(e.outcome)]++;
        }
        trials.push_back(json{{"index", t},
                              {"fidelity", f},
                              {"passed", ok},
                              {"transcript", io::to_json(result.transcript)},
                              {"ledger", io::to_json(result.ledger)}});
    }

    const std::int64_t total = counts[0] + counts[1] + counts[2] + counts[3];
    json freqs = json::object();
    for (auto k : kAllBellKinds) {
        const auto c = counts[static_cast<std::size_t>(k)];
        freqs[to_string(k)] = json{{"count", c}, {"frequency", total ? double(c) / double(total) : 0.0}};
    }
    const bool all_passed = passed == config.trials;
    json report{{"header", report_header()},
                {"config", config_to_json(config, source)},
                {"plan", io::to_json(plan)},
                {"trials", std::move(trials)},
                {"outcome_frequencies", std::move(freqs)},
                {"summary",
                 {{"trials", config.trials}, {"passed", passed}, {"min_fidelity", min_fidelity}, {"all_passed", all_passed}}}};
    std::ostringstream summary;
    summary << "run: " << passed << "/" << config.trials << " trials recovered the state (min fidelity "
            << std::setprecision(17) << min_fidelity << ")";
    return {all_passed ? kOk : kCheckFailed, std::move(report), summary.str()};
}

namespace detail {

inline std::vector<BellKind> word_from_index(std::uint64_t index, std::size_t length) {
    std::vector<BellKind> word(length);
    for (std::size_t k = 0; k < length; ++k) {
        word[k] = kAllBellKinds[(index >> (2 * k)) & 3U];
    }
    return word;
}

inline std::string word_to_string(const std::vector<BellKind> &word) {
    std::string s;
    for (auto k : word) s += cbits_to_string(encode_classical(k));
    return s;
}

/// Marginal of the remote qubit after each forced outcome vs. the source qubit's own state.
inline json teleportation_check(const StateVector &state, const SwapStep &step) {
    const DensityMatrix expected = reduced_density(state, {step.source});
    double worst = 0.0;
    for (auto k : kAllBellKinds) {
        DistributionPlan single{"sender", {step.receiver}, {step}};
        const auto result = distribute_forced(state, single, std::vector<BellKind>{k});
        worst = std::max(worst, max_entry_difference(reduced_density(result.final_state, {step.remote}), expected));
    }
    return json{{"max_marginal_difference", worst}, {"passed", worst <= kNormTol}};
}

/// bell_project against the oracle expansion for one source qubit.
inline json oracle_agreement(const StateVector &state, const SwapStep &step) {
    const auto expansion = oracle::expand_swap(state, step.source, step.alice_anchor, step.remote);
    const StateVector joint = tensor(state, make_bell(BellKind::PHI_MINUS, {step.alice_anchor, step.remote}));
    double worst_p = 0.0;
    double worst_f = 0.0;
    for (const auto &br : expansion.branches) {
        const auto p = bell_project(joint, {step.source, step.alice_anchor}, br.kind);
        worst_p = std::max(worst_p, std::abs(p.probability - std::norm(br.coefficient)));
        worst_f = std::max(worst_f, p.collapsed ? 1.0 - fidelity(br.state, *p.collapsed) : 1.0);
    }
    return json{{"max_probability_difference", worst_p},
                {"max_infidelity", worst_f},
                {"passed", worst_p <= kNormTol && worst_f <= kNormTol}};
}

} // namespace detail

inline CommandResult cmd_verify(const RunConfig &config) {
    validate(config);
    const StateSource source(config);
    SeededRandomSource state_rng = SeededRandomSource::child(config.seed, 0);
    const StateVector state = source.state_for(state_rng);
    const DistributionPlan plan = resolve_plan(config, state);
    bool all_passed = true;

    json sources = json::array();
    std::size_t teleportation_steps = 0;
    for (const auto &step : plan.steps) {
        const bool product = state.num_qubits() == 1 || is_product_about(decompose(state, step.source));
        const auto table = oracle::verify_correction_table(state, step.source, step.alice_anchor, step.remote);
        json entry{{"source", step.source.id},
                   {"teleportation", product},
                   {"correction_table", io::to_json(table)},
                   {"oracle_agreement", detail::oracle_agreement(state, step)}};
        all_passed = all_passed && table.passed && entry["oracle_agreement"]["passed"].get<bool>();
        if (product) {
            ++teleportation_steps;
            entry["teleportation_check"] = detail::teleportation_check(state, step);
            all_passed = all_passed && entry["teleportation_check"]["passed"].get<bool>();
        }
        sources.push_back(std::move(entry));
    }

    const StateVector target = relabeled_target(state, plan);
    const std::size_t steps = plan.steps.size();
    const bool exhaustive = steps <= kExhaustiveStepLimit;
    const std::uint64_t word_count = exhaustive ? (std::uint64_t{1} << (2 * steps)) : kSampledWords;
    SeededRandomSource word_rng = SeededRandomSource::child(config.seed, 1);
    std::uint64_t words_passed = 0;
    double min_fidelity = 1.0;
    json failures = json::array();
    for (std::uint64_t w = 0; w < word_count; ++w) {
        std::vector<BellKind> word;
        if (exhaustive) {
            word = detail::word_from_index(w, steps);
        } else {
            for (std::size_t k = 0; k < steps; ++k) {
                word.push_back(kAllBellKinds[word_rng.next_u64() & 3U]);
            }
        }
        const auto result = distribute_forced(state, plan, word);
        const double f = fidelity(result.final_state, target);
        min_fidelity = std::min(min_fidelity, f);
        if (f >= 1.0 - kNormTol) {
            ++words_passed;
        } else if (failures.size() < 16) {
            failures.push_back(json{{"word", detail::word_to_string(word)}, {"fidelity", f}});
        }
    }
    all_passed = all_passed && words_passed == word_count;

    json report{{"header", report_header()},
                {"config", config_to_json(config, source)},
                {"state", io::to_json(state)},
                {"plan", io::to_json(plan)},
                {"sources", std::move(sources)},
                {"words",
                 {{"mode", exhaustive ? "exhaustive" : "sampled"},
                  {"checked", word_count},
                  {"passed", words_passed},
                  {"min_fidelity", min_fidelity},
                  {"failures", std::move(failures)}}},
                {"summary", {{"teleportation_steps", teleportation_steps}, {"passed", all_passed}}}};
    std::ostringstream summary;
    summary << "verify: " << words_passed << "/" << word_count << " outcome words ("
            << (exhaustive ? "exhaustive" : "sampled") << "), " << teleportation_steps
            << " teleportation step(s), " << (all_passed ? "PASS" : "FAIL");
    return {all_passed ? kOk : kCheckFailed, std::move(report), summary.str()};
}

inline CommandResult cmd_gen(const std::string &kind, std::size_t n, std::uint64_t seed) {
    if (n < 1 || n > kMaxCliQubits) {
        throw UsageError("n must be in [1, " + std::to_string(kMaxCliQubits) + "]");
    }
    SeededRandomSource rng = SeededRandomSource::child(seed, 0);
    try {
        const StateVector s = presets::make(kind, n, rng);
        return {kOk, io::to_json(s), "gen: " + kind + " state on " + std::to_string(n) + " qubits"};
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

/// Round-robin plan over `parties` receivers for qubits labelled 1..n.
inline CommandResult cmd_plan(std::size_t n, std::size_t parties) {
    if (n < 1 || n > kMaxCliQubits) {
        throw UsageError("n must be in [1, " + std::to_string(kMaxCliQubits) + "]");
    }
    if (parties < 1 || parties > n) {
        throw UsageError("--parties must be in [1, n]");
    }
    const DistributionPlan plan = round_robin_plan(presets::ghz(n), parties);
    return {kOk, io::to_json(plan),
            "plan: " + std::to_string(n) + " qubits over " + std::to_string(parties) + " receiver(s)"};
}

/// Writes the report to `out_path` or stdout and the summary to stderr.
inline void emit(const CommandResult &result, const std::optional<std::string> &out_path, std::ostream &out,
                 std::ostream &err) {
    const std::string text = result.report.dump(2) + "\n";
    if (out_path) {
        write_text_file(*out_path, text);
    } else {
        out << text;
    }
    err << result.summary << "\n";
}

} // namespace qdist::cli
