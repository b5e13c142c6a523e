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
 * Distribution of an N-qubit state to remote parties by repeated
 * entanglement swapping.
 *
 * One swap step for source qubit i, sender anchor mu and remote qubit nu:
 *   1. a fresh singlet PHI_MINUS(mu, nu) is tensored onto the register,
 *   2. the sender Bell-measures (i, mu) and sends the 2-bit outcome code,
 *   3. the receiver applies correction_for(outcome) to nu,
 *   4. the sender rotates the measured pair back to the singlet.
 * Afterwards nu carries exactly the role i had in the register. The
 * measured pair is factored out immediately, so the live register never
 * exceeds N + 2 qubits.
 */

#pragma once

#include <algorithm>
#include <optional>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qdist/bell.hpp"
#include "qdist/common.hpp"
#include "qdist/random.hpp"
#include "qdist/state.hpp"

namespace qdist {

/// Receiver-side Pauli that maps the post-measurement branch back to the
/// original decomposition.
inline PauliOp correction_for(BellKind outcome) {
    switch (outcome) {
    case BellKind::VARPHI_PLUS: return PauliOp::ZX;
    case BellKind::VARPHI_MINUS: return PauliOp::X;
    case BellKind::PHI_PLUS: return PauliOp::Z;
    case BellKind::PHI_MINUS: return PauliOp::I;
    }
    throw std::logic_error("unreachable BellKind");
}

/// Sender-side Pauli on the first qubit of a measured pair that rotates the
/// observed Bell state to PHI_MINUS (up to a global sign).
inline PauliOp singlet_restore_for(BellKind outcome) {
    // Same table as the receiver correction: ZX|VARPHI+> = |PHI->, X|VARPHI-> = -|PHI->,
    // Z|PHI+> = |PHI->, each acting on the first qubit.
    return correction_for(outcome);
}

/// Two classical bits: VARPHI_PLUS=00, VARPHI_MINUS=01, PHI_PLUS=10, PHI_MINUS=11.
inline std::uint8_t encode_classical(BellKind outcome) { return static_cast<std::uint8_t>(outcome); }

inline BellKind decode_classical(std::uint8_t code) {
    if (code > 3) {
        throw std::invalid_argument("classical code " + std::to_string(code) + " is not a 2-bit value");
    }
    return kAllBellKinds[code];
}

inline std::string cbits_to_string(std::uint8_t code) {
    return {static_cast<char>('0' + ((code >> 1) & 1U)), static_cast<char>('0' + (code & 1U))};
}

inline std::uint8_t cbits_from_string(const std::string &bits) {
    if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') || (bits[1] != '0' && bits[1] != '1')) {
        throw std::invalid_argument("classical code '" + bits + "' is not two binary digits");
    }
    return static_cast<std::uint8_t>(((bits[0] - '0') << 1) | (bits[1] - '0'));
}

struct Party {
    std::string name;
    std::set<QubitLabel> held_qubits;
};

struct SwapStep {
    QubitLabel source;       ///< qubit i, held by the sender
    QubitLabel alice_anchor; ///< mu, sender half of the fresh singlet
    QubitLabel remote;       ///< nu, receiver half of the fresh singlet
    std::string receiver;
};

struct DistributionPlan {
    std::string sender = "sender";
    std::vector<std::string> receivers;
    std::vector<SwapStep> steps;
};

struct TranscriptEntry {
    SwapStep step;
    BellKind outcome;
    std::uint8_t classical_bits;
    PauliOp correction;
    PauliOp singlet_restore;
    double probability;
};

struct ResourceCost {
    std::int64_t ebits = 0;
    std::int64_t cbits_forward = 0;
    std::int64_t cbits_backward = 0;

    friend bool operator==(const ResourceCost &, const ResourceCost &) = default;

    ResourceCost operator*(std::int64_t k) const { return {ebits * k, cbits_forward * k, cbits_backward * k}; }
    ResourceCost &operator+=(const ResourceCost &o) {
        ebits += o.ebits;
        cbits_forward += o.cbits_forward;
        cbits_backward += o.cbits_backward;
        return *this;
    }
};

/// Cost of one entanglement-swapping step.
inline constexpr ResourceCost kSwapStepCost{1, 2, 0};

/// Published lower bound for a general nonlocal swap, used as a comparison baseline.
inline constexpr ResourceCost kGeneralSwapCost{2, 2, 2};

struct ResourceLedger {
    ResourceCost consumed;
    std::int64_t swaps = 0;

    void record_swap() {
        consumed += kSwapStepCost;
        ++swaps;
    }

    ResourceCost baseline_per_swap() const { return kGeneralSwapCost; }
    ResourceCost baseline_total() const { return kGeneralSwapCost * swaps; }
};

/// Throws std::invalid_argument describing the first violated plan invariant.
inline void validate_plan(const DistributionPlan &plan, const StateVector &initial) {
    if (plan.receivers.size() > initial.num_qubits()) {
        throw std::invalid_argument("plan has more receivers than state qubits");
    }
    std::unordered_set<std::string> names{plan.sender};
    for (const auto &r : plan.receivers) {
        if (!names.insert(r).second) {
            throw std::invalid_argument("party name '" + r + "' is not unique");
        }
    }
    std::unordered_set<QubitLabel> sources;
    std::unordered_set<QubitLabel> pair_labels;
    for (const auto &step : plan.steps) {
        if (!initial.contains(step.source)) {
            throw std::invalid_argument("step source " + to_string(step.source) + " is not a state qubit");
        }
        if (!sources.insert(step.source).second) {
            throw std::invalid_argument("source " + to_string(step.source) + " appears in more than one step");
        }
        if (step.alice_anchor == step.remote) {
            throw std::invalid_argument("Bell pair of a step needs two distinct labels");
        }
        for (auto q : {step.alice_anchor, step.remote}) {
            if (initial.contains(q)) {
                throw std::invalid_argument("pair label " + to_string(q) + " collides with a state qubit");
            }
            if (!pair_labels.insert(q).second) {
                throw std::invalid_argument("pair label " + to_string(q) + " is used by more than one step");
            }
        }
        if (std::find(plan.receivers.begin(), plan.receivers.end(), step.receiver) == plan.receivers.end()) {
            throw std::invalid_argument("step receiver '" + step.receiver + "' is not a listed receiver");
        }
    }
}

/// Holds one protocol run: the live register, party ownership, transcript
/// and ledger. Steps execute strictly in call order.
class DistributionSession {
  public:
    DistributionSession(StateVector initial, const DistributionPlan &plan)
        : state_(std::move(initial)), sender_{plan.sender, {}} {
        validate_plan(plan, state_);
        for (auto q : state_.labels()) {
            sender_.held_qubits.insert(q);
            used_labels_.insert(q);
        }
        for (const auto &r : plan.receivers) {
            receivers_.push_back(Party{r, {}});
        }
    }

    const StateVector &state() const { return state_; }
    const Party &sender() const { return sender_; }
    std::span<const Party> receivers() const { return receivers_; }
    std::span<const TranscriptEntry> transcript() const { return transcript_; }
    const ResourceLedger &ledger() const { return ledger_; }
    /// Measured (source, anchor) pairs after singlet restoration, one per step.
    std::span<const StateVector> measured_pairs() const { return measured_pairs_; }

    /// Executes one step with a sampled Bell outcome (one uniform draw).
    const TranscriptEntry &swap(const SwapStep &step, SeededRandomSource &rng) {
        return run_step(step, [&](const StateVector &joint, QubitPair pair) { return bell_measure(joint, pair, rng); });
    }

    /// Executes one step with the Bell outcome fixed in advance.
    const TranscriptEntry &swap_forced(const SwapStep &step, BellKind outcome) {
        return run_step(step, [&](const StateVector &joint, QubitPair pair) {
            auto p = bell_project(joint, pair, outcome);
            return MeasurementResult{BellOutcome{outcome, pair, p.probability}, std::move(p.collapsed)};
        });
    }

  private:
    Party &receiver_named(const std::string &name) {
        for (auto &p : receivers_) {
            if (p.name == name) {
                return p;
            }
        }
        throw std::invalid_argument("unknown receiver '" + name + "'");
    }

    template <typename Measure>
    const TranscriptEntry &run_step(const SwapStep &step, Measure &&measure) {
        if (!state_.contains(step.source)) {
            throw std::invalid_argument("source " + to_string(step.source) + " is not in the live register");
        }
        if (step.alice_anchor == step.remote || step.alice_anchor == step.source || step.remote == step.source) {
            throw std::invalid_argument("step labels i, mu, nu must be distinct");
        }
        for (auto q : {step.alice_anchor, step.remote}) {
            if (used_labels_.contains(q)) {
                throw std::invalid_argument("pair label " + to_string(q) + " was already consumed");
            }
        }
        Party &receiver = receiver_named(step.receiver);

        const StateVector joint = tensor(state_, make_bell(BellKind::PHI_MINUS, {step.alice_anchor, step.remote}));
        const QubitPair measured{step.source, step.alice_anchor};
        MeasurementResult measurement = measure(joint, measured);
        if (!measurement.collapsed) {
            throw std::runtime_error("Bell outcome has zero probability on this state");
        }
        const BellKind outcome = measurement.outcome.kind;

        const PauliOp correction = correction_for(outcome);
        StateVector corrected = apply_pauli(*measurement.collapsed, step.remote, correction);

        // Put nu where i was so the register keeps its original qubit order.
        std::vector<QubitLabel> order(state_.labels().begin(), state_.labels().end());
        std::replace(order.begin(), order.end(), step.source, step.remote);
        state_ = permute_to(corrected, order);

        const PauliOp restore = singlet_restore_for(outcome);
        measured_pairs_.push_back(apply_pauli(make_bell(outcome, measured), step.source, restore));

        used_labels_.insert(step.alice_anchor);
        used_labels_.insert(step.remote);
        sender_.held_qubits.insert(step.alice_anchor);
        receiver.held_qubits.insert(step.remote);
        ledger_.record_swap();
        transcript_.push_back(TranscriptEntry{step, outcome, encode_classical(outcome), correction, restore,
                                              measurement.outcome.probability});
        return transcript_.back();
    }

    StateVector state_;
    Party sender_;
    std::vector<Party> receivers_;
    std::vector<TranscriptEntry> transcript_;
    std::vector<StateVector> measured_pairs_;
    std::unordered_set<QubitLabel> used_labels_;
    ResourceLedger ledger_;
};

struct StepResult {
    StateVector state;
    TranscriptEntry entry;
};

/// One nonlocal swap on its own: the returned state carries `step.remote` at
/// the position `step.source` had.
inline StepResult swap_step(const StateVector &state, const SwapStep &step, SeededRandomSource &rng) {
    DistributionPlan plan{"sender", {step.receiver}, {step}};
    DistributionSession session(state, plan);
    TranscriptEntry entry = session.swap(step, rng);
    return {session.state(), std::move(entry)};
}

struct DistributionResult {
    StateVector final_state;
    std::vector<TranscriptEntry> transcript;
    ResourceLedger ledger;
    Party sender;
    std::vector<Party> receivers;
    std::vector<StateVector> measured_pairs;
};

namespace detail {

inline DistributionResult finish(const DistributionSession &session) {
    return DistributionResult{session.state(),
                              {session.transcript().begin(), session.transcript().end()},
                              session.ledger(),
                              session.sender(),
                              {session.receivers().begin(), session.receivers().end()},
                              {session.measured_pairs().begin(), session.measured_pairs().end()}};
}

} // namespace detail

/// Runs every step of `plan` in order with sampled outcomes.
inline DistributionResult distribute(const StateVector &initial, const DistributionPlan &plan,
                                     SeededRandomSource &rng) {
    DistributionSession session(initial, plan);
    for (const auto &step : plan.steps) {
        session.swap(step, rng);
    }
    return detail::finish(session);
}

/// Runs every step of `plan` with the outcome word fixed in advance.
inline DistributionResult distribute_forced(const StateVector &initial, const DistributionPlan &plan,
                                            std::span<const BellKind> outcomes) {
    if (outcomes.size() != plan.steps.size()) {
        throw std::invalid_argument("outcome word length does not match the number of steps");
    }
    DistributionSession session(initial, plan);
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        session.swap_forced(plan.steps[k], outcomes[k]);
    }
    return detail::finish(session);
}

/// Expected final register: `initial` with every planned source renamed to its remote qubit.
inline StateVector relabeled_target(const StateVector &initial, const DistributionPlan &plan) {
    StateVector target = initial;
    for (const auto &step : plan.steps) {
        target = relabel(target, step.source, step.remote);
    }
    return target;
}

/// Distributes a strict, nonempty subset of the qubits and returns the
/// reduced state of the qubits that arrived, in register order.
inline DensityMatrix partial_distribution_reduced(const StateVector &initial, const DistributionPlan &plan,
                                                  SeededRandomSource &rng) {
    if (plan.steps.empty()) {
        throw std::invalid_argument("partial distribution needs at least one step");
    }
    if (plan.steps.size() >= initial.num_qubits()) {
        throw std::invalid_argument("plan distributes every qubit; use distribute instead");
    }
    auto result = distribute(initial, plan, rng);
    std::vector<QubitLabel> arrived;
    for (const auto &step : plan.steps) {
        arrived.push_back(step.remote);
    }
    return reduced_density(result.final_state, arrived);
}

/// Round-robin plan: sources[k] goes to receiver (k mod parties). Pair labels
/// are allocated above the largest label in `state`, as (mu, nu) consecutively.
inline DistributionPlan round_robin_plan(const StateVector &state, std::span<const QubitLabel> sources,
                                         std::size_t parties) {
    if (parties == 0 || parties > state.num_qubits()) {
        throw std::invalid_argument("number of receivers must be in [1, number of qubits]");
    }
    std::int64_t next = 0;
    for (auto q : state.labels()) {
        next = std::max(next, q.id);
    }
    ++next;
    DistributionPlan plan;
    for (std::size_t r = 0; r < parties; ++r) {
        plan.receivers.push_back("receiver-" + std::to_string(r + 1));
    }
    for (std::size_t k = 0; k < sources.size(); ++k) {
        plan.steps.push_back(SwapStep{sources[k], QubitLabel(next), QubitLabel(next + 1), plan.receivers[k % parties]});
        next += 2;
    }
    return plan;
}

/// Every qubit of `state`, in register order, dealt round-robin to `parties` receivers.
inline DistributionPlan round_robin_plan(const StateVector &state, std::size_t parties) {
    return round_robin_plan(state, state.labels(), parties);
}

inline DistributionPlan all_to_one_plan(const StateVector &state) { return round_robin_plan(state, 1); }

} // namespace qdist
