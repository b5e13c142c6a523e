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
 * JSON forms of states, plans, transcripts, ledgers and oracle reports.
 *
 *   state:      { "labels": [int, ...], "amplitudes": [[re, im], ...] }
 *   plan:       { "sender": str, "receivers": [str, ...],
 *                 "steps": [{ "source": int, "mu": int, "nu": int, "receiver": str }, ...] }
 *   transcript: [{ "step": {...}, "outcome": "VARPHI_PLUS|...", "cbits": "00|01|10|11",
 *                  "correction": "I|X|Z|ZX", "singlet_restore": "I|X|Z|ZX",
 *                  "probability": real }, ...]
 *   ledger:     { "ebits": int, "cbits_forward": int, "cbits_backward": int,
 *                 "baseline": { "per_swap": {...}, "total": {...} } }
 *
 * Doubles are written with round-trip precision.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qdist/bell.hpp"
#include "qdist/oracle.hpp"
#include "qdist/protocol.hpp"
#include "qdist/state.hpp"

namespace qdist::io {

using nlohmann::json;

/// Malformed or invalid JSON input.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline PauliOp pauli_from_string(const std::string &name) {
    for (auto op : {PauliOp::I, PauliOp::X, PauliOp::Z, PauliOp::ZX}) {
        if (name == to_string(op)) {
            return op;
        }
    }
    throw FormatError("unknown Pauli operator '" + name + "'");
}

inline json to_json(const StateVector &s) {
    json labels = json::array();
    for (auto q : s.labels()) {
        labels.push_back(q.id);
    }
    json amps = json::array();
    for (const auto &a : s.amplitudes()) {
        amps.push_back(json::array({a.real(), a.imag()}));
    }
    return json{{"labels", std::move(labels)}, {"amplitudes", std::move(amps)}};
}

/// Rejects wrong shapes and states whose norm is off by more than kNormTol.
inline StateVector state_from_json(const json &j) {
    try {
        std::vector<QubitLabel> labels;
        for (const auto &v : j.at("labels")) {
            labels.emplace_back(v.get<std::int64_t>());
        }
        std::vector<Amplitude> amps;
        for (const auto &v : j.at("amplitudes")) {
            if (!v.is_array() || v.size() != 2) {
                throw FormatError("each amplitude must be a [re, im] pair");
            }
            amps.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        }
        return StateVector(std::move(labels), std::move(amps));
    } catch (const json::exception &e) {
        throw FormatError(std::string("malformed state: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw FormatError(std::string("invalid state: ") + e.what());
    } catch (const std::length_error &e) {
        throw FormatError(std::string("invalid state: ") + e.what());
    }
}

inline json to_json(const SwapStep &step) {
    return json{{"source", step.source.id}, {"mu", step.alice_anchor.id}, {"nu", step.remote.id},
                {"receiver", step.receiver}};
}

inline json to_json(const DistributionPlan &plan) {
    json steps = json::array();
    for (const auto &s : plan.steps) {
        steps.push_back(to_json(s));
    }
    return json{{"sender", plan.sender}, {"receivers", plan.receivers}, {"steps", std::move(steps)}};
}

inline DistributionPlan plan_from_json(const json &j) {
    try {
        DistributionPlan plan;
        plan.sender = j.value("sender", std::string("sender"));
        plan.receivers = j.at("receivers").get<std::vector<std::string>>();
        for (const auto &s : j.at("steps")) {
            plan.steps.push_back(SwapStep{QubitLabel(s.at("source").get<std::int64_t>()),
                                          QubitLabel(s.at("mu").get<std::int64_t>()),
                                          QubitLabel(s.at("nu").get<std::int64_t>()),
                                          s.at("receiver").get<std::string>()});
        }
        return plan;
    } catch (const json::exception &e) {
        throw FormatError(std::string("malformed plan: ") + e.what());
    }
}

inline json to_json(const TranscriptEntry &e) {
    return json{{"step", to_json(e.step)},
                {"outcome", to_string(e.outcome)},
                {"cbits", cbits_to_string(e.classical_bits)},
                {"correction", to_string(e.correction)},
                {"singlet_restore", to_string(e.singlet_restore)},
                {"probability", e.probability}};
}

inline json to_json(std::span<const TranscriptEntry> transcript) {
    json out = json::array();
    for (const auto &e : transcript) {
        out.push_back(to_json(e));
    }
    return out;
}

inline TranscriptEntry transcript_entry_from_json(const json &j) {
    try {
        const auto &s = j.at("step");
        TranscriptEntry e{SwapStep{QubitLabel(s.at("source").get<std::int64_t>()),
                                   QubitLabel(s.at("mu").get<std::int64_t>()),
                                   QubitLabel(s.at("nu").get<std::int64_t>()), s.at("receiver").get<std::string>()},
                          bell_kind_from_string(j.at("outcome").get<std::string>()),
                          cbits_from_string(j.at("cbits").get<std::string>()),
                          pauli_from_string(j.at("correction").get<std::string>()),
                          pauli_from_string(j.value("singlet_restore", std::string("I"))),
                          j.value("probability", 0.0)};
        if (decode_classical(e.classical_bits) != e.outcome) {
            throw FormatError("cbits do not encode the recorded outcome");
        }
        if (correction_for(e.outcome) != e.correction) {
            throw FormatError("correction does not match the recorded outcome");
        }
        return e;
    } catch (const json::exception &ex) {
        throw FormatError(std::string("malformed transcript entry: ") + ex.what());
    } catch (const std::invalid_argument &ex) {
        throw FormatError(std::string("invalid transcript entry: ") + ex.what());
    }
}

inline json to_json(const ResourceCost &c) {
    return json{{"ebits", c.ebits}, {"cbits_forward", c.cbits_forward}, {"cbits_backward", c.cbits_backward}};
}

inline json to_json(const ResourceLedger &ledger) {
    json out = to_json(ledger.consumed);
    out["baseline"] = json{{"per_swap", to_json(ledger.baseline_per_swap())}, {"total", to_json(ledger.baseline_total())}};
    return out;
}

inline json to_json(const DensityMatrix &rho) {
    json labels = json::array();
    for (auto q : rho.labels()) {
        labels.push_back(q.id);
    }
    json rows = json::array();
    for (std::size_t r = 0; r < rho.dimension(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < rho.dimension(); ++c) {
            row.push_back(json::array({rho.at(r, c).real(), rho.at(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return json{{"labels", std::move(labels)}, {"entries", std::move(rows)}, {"purity", rho.purity()}};
}

inline json to_json(const oracle::CorrectionReport &report) {
    json branches = json::array();
    for (const auto &b : report.branches) {
        branches.push_back(json{{"outcome", to_string(b.outcome)},
                                {"probability", b.probability},
                                {"fidelity_before_correction", b.fidelity_before_correction},
                                {"fidelity_after_correction", b.fidelity_after_correction},
                                {"passed", b.passed}});
    }
    return json{{"source", report.source.id}, {"branches", std::move(branches)}, {"passed", report.passed}};
}

} // namespace qdist::io
