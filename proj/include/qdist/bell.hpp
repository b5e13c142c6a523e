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
 * Bell basis, projective Bell measurement and single-qubit decomposition.
 *
 * Naming follows the protocol literature:
 *   PHI_PLUS / PHI_MINUS       = (|01> +/- |10>) / sqrt(2)   (PHI_MINUS is the singlet)
 *   VARPHI_PLUS / VARPHI_MINUS = (|00> +/- |11>) / sqrt(2)
 */

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdist/common.hpp"
#include "qdist/random.hpp"
#include "qdist/state.hpp"

namespace qdist {

/// Declaration order is the fixed sampling order.
enum class BellKind { VARPHI_PLUS, VARPHI_MINUS, PHI_PLUS, PHI_MINUS };

inline constexpr std::array<BellKind, 4> kAllBellKinds = {BellKind::VARPHI_PLUS, BellKind::VARPHI_MINUS,
                                                          BellKind::PHI_PLUS, BellKind::PHI_MINUS};

inline const char *to_string(BellKind k) {
    switch (k) {
    case BellKind::VARPHI_PLUS: return "VARPHI_PLUS";
    case BellKind::VARPHI_MINUS: return "VARPHI_MINUS";
    case BellKind::PHI_PLUS: return "PHI_PLUS";
    case BellKind::PHI_MINUS: return "PHI_MINUS";
    }
    return "?";
}

inline BellKind bell_kind_from_string(std::string_view name) {
    for (auto k : kAllBellKinds) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown Bell state name '" + std::string(name) + "'");
}

using QubitPair = std::pair<QubitLabel, QubitLabel>;

namespace detail {

/// Real Bell-state amplitudes over |00>, |01>, |10>, |11> of (first, second).
inline std::array<double, 4> bell_amplitudes(BellKind kind) {
    const double h = std::numbers::sqrt2 / 2.0;
    switch (kind) {
    case BellKind::VARPHI_PLUS: return {h, 0.0, 0.0, h};
    case BellKind::VARPHI_MINUS: return {h, 0.0, 0.0, -h};
    case BellKind::PHI_PLUS: return {0.0, h, h, 0.0};
    case BellKind::PHI_MINUS: return {0.0, h, -h, 0.0};
    }
    throw std::logic_error("unreachable BellKind");
}

inline void check_pair(const StateVector &s, QubitPair pair) {
    if (pair.first == pair.second) {
        throw std::invalid_argument("Bell pair needs two distinct qubits");
    }
    for (auto q : {pair.first, pair.second}) {
        if (!s.contains(q)) {
            throw std::invalid_argument("label " + to_string(q) + " is not in the state");
        }
    }
}

/// The state with `pair` moved to the two least significant positions,
/// remaining qubits keeping their relative order.
inline StateVector pair_last(const StateVector &s, QubitPair pair, std::vector<QubitLabel> &rest) {
    rest.clear();
    for (auto q : s.labels()) {
        if (q != pair.first && q != pair.second) {
            rest.push_back(q);
        }
    }
    std::vector<QubitLabel> order = rest;
    order.push_back(pair.first);
    order.push_back(pair.second);
    return permute_to(s, order);
}

} // namespace detail

inline StateVector make_bell(BellKind kind, QubitPair labels) {
    if (labels.first == labels.second) {
        throw std::invalid_argument("Bell state needs two distinct qubit labels");
    }
    const auto c = detail::bell_amplitudes(kind);
    return StateVector({labels.first, labels.second}, {c[0], c[1], c[2], c[3]});
}

struct BellOutcome {
    BellKind kind;
    QubitPair pair;
    double probability;
};

/// a|0_i>|phi> + b|1_i>|phi_prime>, with a, b real and non-negative.
/// A residual whose coefficient vanishes is absent rather than garbage.
struct DecompositionResult {
    QubitLabel qubit;
    double a;
    double b;
    std::optional<StateVector> phi;
    std::optional<StateVector> phi_prime;

    bool degenerate() const { return !phi || !phi_prime; }
};

inline DecompositionResult decompose(const StateVector &s, QubitLabel i) {
    if (!s.contains(i)) {
        throw std::invalid_argument("label " + to_string(i) + " is not in the state");
    }
    if (s.num_qubits() < 2) {
        throw std::invalid_argument("decompose needs at least two qubits");
    }
    std::vector<QubitLabel> order{i};
    std::vector<QubitLabel> rest;
    for (auto q : s.labels()) {
        if (q != i) {
            order.push_back(q);
            rest.push_back(q);
        }
    }
    const StateVector arranged = permute_to(s, order);
    const std::size_t half = arranged.dimension() / 2;
    auto block = [&](std::size_t offset) {
        return std::vector<Amplitude>(arranged.amplitudes().begin() + static_cast<std::ptrdiff_t>(offset),
                                      arranged.amplitudes().begin() + static_cast<std::ptrdiff_t>(offset + half));
    };
    auto zero = block(0);
    auto one = block(half);
    const double n0 = detail::squared_norm(zero);
    const double n1 = detail::squared_norm(one);

    DecompositionResult d{i, std::sqrt(n0), std::sqrt(n1), std::nullopt, std::nullopt};
    if (n0 >= kProbFloor) {
        d.phi = StateVector::normalized(rest, std::move(zero));
    } else {
        d.a = 0.0;
        d.b = 1.0;
    }
    if (n1 >= kProbFloor) {
        d.phi_prime = StateVector::normalized(rest, std::move(one));
    } else {
        d.a = 1.0;
        d.b = 0.0;
    }
    return d;
}

/// True iff the decomposed qubit is unentangled from the rest of the register.
inline bool is_product_about(const DecompositionResult &d) {
    if (d.degenerate()) {
        return true;
    }
    return fidelity(*d.phi, *d.phi_prime) >= 1.0 - kNormTol;
}

struct ProjectionResult {
    double probability;
    /// Remaining qubits, renormalized; absent when probability < kProbFloor.
    std::optional<StateVector> collapsed;
};

namespace detail {

struct PairProjector {
    std::vector<QubitLabel> rest;
    StateVector arranged;

    PairProjector(const StateVector &s, QubitPair pair) : arranged(pair_last(s, pair, rest)) {}

    /// Unnormalized <Bell_kind (pair)| s> over the remaining qubits.
    std::vector<Amplitude> project(BellKind kind) const {
        const auto c = bell_amplitudes(kind);
        const std::size_t d = arranged.dimension() / 4;
        std::vector<Amplitude> out(d);
        for (std::size_t r = 0; r < d; ++r) {
            const std::size_t base = r * 4;
            out[r] = c[0] * arranged[base] + c[1] * arranged[base + 1] + c[2] * arranged[base + 2] +
                     c[3] * arranged[base + 3];
        }
        return out;
    }

    ProjectionResult result(std::vector<Amplitude> projected) const {
        const double p = squared_norm(projected);
        if (p < kProbFloor) {
            return {p, std::nullopt};
        }
        return {p, StateVector::normalized(rest, std::move(projected))};
    }
};

} // namespace detail

/// Projects `pair` onto Bell state `kind`. The measured pair is removed from
/// the collapsed register; the remaining qubits keep their relative order.
/// The whole register must be at least three qubits for a collapsed state to
/// exist; for a two-qubit input only the probability is meaningful.
inline ProjectionResult bell_project(const StateVector &s, QubitPair pair, BellKind kind) {
    if (s.num_qubits() < 3) {
        detail::check_pair(s, pair);
        const auto c = detail::bell_amplitudes(kind);
        const StateVector arranged = permute_to(s, {pair.first, pair.second});
        Amplitude overlap = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            overlap += c[k] * arranged[k];
        }
        return {std::norm(overlap), std::nullopt};
    }
    detail::check_pair(s, pair);
    detail::PairProjector projector(s, pair);
    return projector.result(projector.project(kind));
}

/// Probabilities of the four outcomes in kAllBellKinds order.
inline std::array<double, 4> bell_probabilities(const StateVector &s, QubitPair pair) {
    std::array<double, 4> probs{};
    for (std::size_t k = 0; k < 4; ++k) {
        probs[k] = bell_project(s, pair, kAllBellKinds[k]).probability;
    }
    return probs;
}

/// Inverse-CDF choice over the four probabilities in fixed kind order.
inline BellKind sample_bell_kind(const std::array<double, 4> &probs, double u) {
    const double total = probs[0] + probs[1] + probs[2] + probs[3];
    const double target = u * total;
    double cumulative = 0.0;
    std::size_t last_possible = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        if (probs[k] >= kProbFloor) {
            last_possible = k;
        }
        cumulative += probs[k];
        if (target < cumulative && probs[k] >= kProbFloor) {
            return kAllBellKinds[k];
        }
    }
    return kAllBellKinds[last_possible];
}

struct MeasurementResult {
    BellOutcome outcome;
    std::optional<StateVector> collapsed;
};

/// Samples a Bell measurement of `pair` with Born-rule probabilities.
/// Consumes exactly one uniform draw from `rng`.
inline MeasurementResult bell_measure(const StateVector &s, QubitPair pair, SeededRandomSource &rng) {
    if (s.num_qubits() < 3) {
        const auto probs = bell_probabilities(s, pair);
        const BellKind kind = sample_bell_kind(probs, rng.uniform());
        return {BellOutcome{kind, pair, probs[static_cast<std::size_t>(kind)]}, std::nullopt};
    }
    detail::check_pair(s, pair);
    detail::PairProjector projector(s, pair);
    std::array<std::vector<Amplitude>, 4> branches;
    std::array<double, 4> probs{};
    for (std::size_t k = 0; k < 4; ++k) {
        branches[k] = projector.project(kAllBellKinds[k]);
        probs[k] = detail::squared_norm(branches[k]);
    }
    const BellKind kind = sample_bell_kind(probs, rng.uniform());
    auto chosen = projector.result(std::move(branches[static_cast<std::size_t>(kind)]));
    return {BellOutcome{kind, pair, chosen.probability}, std::move(chosen.collapsed)};
}

} // namespace qdist
