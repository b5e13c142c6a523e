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
 * Dense state vectors over labeled qubits.
 *
 * Basis-index convention: labels()[0] is the most significant bit of the
 * amplitude index, so for labels (q1, q2) the amplitude of |q1=1, q2=0> sits
 * at index 0b10 = 2.
 *
 * All operations return new values; a StateVector never changes after
 * construction.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qdist/common.hpp"

namespace qdist {

namespace detail {

inline void check_unique(std::span<const QubitLabel> labels) {
    std::unordered_set<QubitLabel> seen;
    for (auto q : labels) {
        if (!seen.insert(q).second) {
            throw std::invalid_argument("duplicate qubit label " + to_string(q));
        }
    }
}

inline void check_size(std::size_t n) {
    if (n > kMaxQubits) {
        throw std::length_error("register of " + std::to_string(n) + " qubits exceeds limit of " +
                                std::to_string(kMaxQubits));
    }
}

inline double squared_norm(std::span<const Amplitude> amps) {
    double total = 0.0;
    for (const auto &a : amps) {
        total += std::norm(a);
    }
    return total;
}

} // namespace detail

class StateVector {
  public:
    /// Validates length, label uniqueness and normalization.
    StateVector(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes)
        : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
        validate_shape();
        const double n2 = detail::squared_norm(amps_);
        if (std::abs(n2 - 1.0) > kNormTol) {
            throw std::invalid_argument("state is not normalized (squared norm " + std::to_string(n2) + ")");
        }
    }

    /// Rescales `amplitudes` to unit norm. Throws if the vector is zero.
    static StateVector normalized(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes) {
        const double n2 = detail::squared_norm(amplitudes);
        if (!(n2 > 0.0) || !std::isfinite(n2)) {
            throw std::invalid_argument("cannot normalize a zero or non-finite vector");
        }
        const double scale = 1.0 / std::sqrt(n2);
        for (auto &a : amplitudes) {
            a *= scale;
        }
        return StateVector(std::move(labels), std::move(amplitudes));
    }

    std::span<const QubitLabel> labels() const { return labels_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dimension() const { return amps_.size(); }
    Amplitude operator[](std::size_t index) const { return amps_[index]; }

    double squared_norm() const { return detail::squared_norm(amps_); }

    std::optional<std::size_t> position_of(QubitLabel q) const {
        auto it = std::find(labels_.begin(), labels_.end(), q);
        if (it == labels_.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    bool contains(QubitLabel q) const { return position_of(q).has_value(); }

    /// Bit mask of qubit at `position` within an amplitude index.
    std::size_t mask_of_position(std::size_t position) const {
        return std::size_t{1} << (labels_.size() - 1 - position);
    }

  private:
    void validate_shape() const {
        if (labels_.empty()) {
            throw std::invalid_argument("state must have at least one qubit");
        }
        detail::check_size(labels_.size());
        detail::check_unique(labels_);
        if (amps_.size() != (std::size_t{1} << labels_.size())) {
            throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) +
                                        " does not match 2^" + std::to_string(labels_.size()));
        }
    }

    std::vector<QubitLabel> labels_;
    std::vector<Amplitude> amps_;
};

/// Computational basis state |b1 b2 ... bn> over labels 1..n (or the given labels).
inline StateVector make_basis_state(std::span<const int> bits, std::span<const QubitLabel> labels = {}) {
    if (bits.empty()) {
        throw std::invalid_argument("basis state needs at least one bit");
    }
    detail::check_size(bits.size());
    std::vector<QubitLabel> ls;
    if (labels.empty()) {
        for (std::size_t k = 0; k < bits.size(); ++k) {
            ls.emplace_back(static_cast<std::int64_t>(k + 1));
        }
    } else {
        if (labels.size() != bits.size()) {
            throw std::invalid_argument("label count does not match bit count");
        }
        ls.assign(labels.begin(), labels.end());
    }
    std::size_t index = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("basis bits must be 0 or 1");
        }
        index = (index << 1) | static_cast<std::size_t>(b);
    }
    std::vector<Amplitude> amps(std::size_t{1} << bits.size());
    amps[index] = 1.0;
    return StateVector(std::move(ls), std::move(amps));
}

inline StateVector make_basis_state(std::initializer_list<int> bits, std::initializer_list<QubitLabel> labels = {}) {
    return make_basis_state(std::span<const int>(bits.begin(), bits.size()),
                            std::span<const QubitLabel>(labels.begin(), labels.size()));
}

/// Single-qubit state alpha|0> + beta|1> (normalized on construction).
inline StateVector make_qubit(QubitLabel q, Amplitude alpha, Amplitude beta) {
    return StateVector::normalized({q}, {alpha, beta});
}

/// Labels of `first` followed by labels of `second`; amplitude (x, y) = first[x] * second[y].
inline StateVector tensor(const StateVector &first, const StateVector &second) {
    std::vector<QubitLabel> labels(first.labels().begin(), first.labels().end());
    labels.insert(labels.end(), second.labels().begin(), second.labels().end());
    detail::check_size(labels.size());
    detail::check_unique(labels);

    std::vector<Amplitude> amps(first.dimension() * second.dimension());
    const std::size_t inner = second.dimension();
    for (std::size_t x = 0; x < first.dimension(); ++x) {
        const Amplitude fx = first[x];
        for (std::size_t y = 0; y < inner; ++y) {
            amps[x * inner + y] = fx * second[y];
        }
    }
    return StateVector(std::move(labels), std::move(amps));
}

/// Re-indexes the amplitudes so that the labels appear in `order`.
/// The physical state is unchanged; the inverse permutation is bit-exact.
inline StateVector permute_to(const StateVector &s, std::span<const QubitLabel> order) {
    const std::size_t n = s.num_qubits();
    if (order.size() != n) {
        throw std::invalid_argument("new label order is not a permutation of the state labels");
    }
    detail::check_unique(order);
    // shifts[k]: bit offset in the old index of the qubit now at position k
    std::vector<std::size_t> shifts(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto pos = s.position_of(order[k]);
        if (!pos) {
            throw std::invalid_argument("label " + to_string(order[k]) + " is not in the state");
        }
        shifts[k] = n - 1 - *pos;
    }
    std::vector<Amplitude> amps(s.dimension());
    for (std::size_t new_index = 0; new_index < s.dimension(); ++new_index) {
        std::size_t old_index = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t bit = (new_index >> (n - 1 - k)) & 1U;
            old_index |= bit << shifts[k];
        }
        amps[new_index] = s[old_index];
    }
    return StateVector(std::vector<QubitLabel>(order.begin(), order.end()), std::move(amps));
}

inline StateVector permute_to(const StateVector &s, std::initializer_list<QubitLabel> order) {
    return permute_to(s, std::span<const QubitLabel>(order.begin(), order.size()));
}

/// Renames one qubit in place (same position, same amplitudes).
inline StateVector relabel(const StateVector &s, QubitLabel from, QubitLabel to) {
    auto pos = s.position_of(from);
    if (!pos) {
        throw std::invalid_argument("label " + to_string(from) + " is not in the state");
    }
    std::vector<QubitLabel> labels(s.labels().begin(), s.labels().end());
    labels[*pos] = to;
    return StateVector(std::move(labels), std::vector<Amplitude>(s.amplitudes().begin(), s.amplitudes().end()));
}

/// Multiplies every amplitude by a unit-modulus phase.
inline StateVector with_global_phase(const StateVector &s, Amplitude phase) {
    std::vector<Amplitude> amps(s.amplitudes().begin(), s.amplitudes().end());
    for (auto &a : amps) {
        a *= phase;
    }
    return StateVector(std::vector<QubitLabel>(s.labels().begin(), s.labels().end()), std::move(amps));
}

inline bool same_label_set(std::span<const QubitLabel> a, std::span<const QubitLabel> b) {
    if (a.size() != b.size()) {
        return false;
    }
    return std::all_of(a.begin(), a.end(), [&](QubitLabel q) { return std::find(b.begin(), b.end(), q) != b.end(); });
}

/// <first|second>, with `second` permuted to the label order of `first`.
inline Amplitude inner_product(const StateVector &first, const StateVector &second) {
    if (!same_label_set(first.labels(), second.labels())) {
        throw std::invalid_argument("inner product of states over different qubits");
    }
    const StateVector aligned = std::equal(first.labels().begin(), first.labels().end(), second.labels().begin())
                                    ? second
                                    : permute_to(second, first.labels());
    Amplitude acc = 0.0;
    for (std::size_t k = 0; k < first.dimension(); ++k) {
        acc += std::conj(first[k]) * aligned[k];
    }
    return acc;
}

/// |<first|second>|^2; invariant under global phase and label order.
inline double fidelity(const StateVector &first, const StateVector &second) {
    return std::min(1.0, std::norm(inner_product(first, second)));
}

inline StateVector apply_pauli(const StateVector &s, QubitLabel q, PauliOp op) {
    auto pos = s.position_of(q);
    if (!pos) {
        throw std::invalid_argument("label " + to_string(q) + " is not in the state");
    }
    const std::size_t mask = s.mask_of_position(*pos);
    const bool flip = op == PauliOp::X || op == PauliOp::ZX;
    const bool phase = op == PauliOp::Z || op == PauliOp::ZX;
    std::vector<Amplitude> amps(s.dimension());
    for (std::size_t k = 0; k < s.dimension(); ++k) {
        const std::size_t target = flip ? (k ^ mask) : k;
        Amplitude a = s[k];
        // Z acts after X, so the sign depends on the bit value after the flip.
        if (phase && (target & mask)) {
            a = -a;
        }
        amps[target] = a;
    }
    return StateVector(std::vector<QubitLabel>(s.labels().begin(), s.labels().end()), std::move(amps));
}

/// Density matrix over labeled qubits, row-major, same bit convention as StateVector.
class DensityMatrix {
  public:
    DensityMatrix(std::vector<QubitLabel> labels, std::vector<Amplitude> entries)
        : labels_(std::move(labels)), entries_(std::move(entries)) {
        if (labels_.empty()) {
            throw std::invalid_argument("density matrix must have at least one qubit");
        }
        detail::check_size(labels_.size());
        detail::check_unique(labels_);
        const std::size_t d = std::size_t{1} << labels_.size();
        if (entries_.size() != d * d) {
            throw std::invalid_argument("density matrix entry count does not match its labels");
        }
    }

    std::span<const QubitLabel> labels() const { return labels_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dimension() const { return std::size_t{1} << labels_.size(); }
    Amplitude at(std::size_t row, std::size_t col) const { return entries_[row * dimension() + col]; }
    std::span<const Amplitude> entries() const { return entries_; }

    Amplitude trace() const {
        Amplitude t = 0.0;
        for (std::size_t k = 0; k < dimension(); ++k) {
            t += at(k, k);
        }
        return t;
    }

    /// trace(rho^2)
    double purity() const {
        const std::size_t d = dimension();
        Amplitude acc = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                acc += at(r, c) * at(c, r);
            }
        }
        return acc.real();
    }

    double max_hermiticity_error() const {
        const std::size_t d = dimension();
        double worst = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = r; c < d; ++c) {
                worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
            }
        }
        return worst;
    }

  private:
    std::vector<QubitLabel> labels_;
    std::vector<Amplitude> entries_;
};

/// Partial trace over every qubit not in `keep`. The result lists the kept
/// qubits in the order they appear in `s`.
inline DensityMatrix reduced_density(const StateVector &s, std::span<const QubitLabel> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("reduced_density needs at least one kept qubit");
    }
    detail::check_unique(keep);
    for (auto q : keep) {
        if (!s.contains(q)) {
            throw std::invalid_argument("label " + to_string(q) + " is not in the state");
        }
    }
    std::vector<QubitLabel> kept;
    std::vector<QubitLabel> order;
    for (auto q : s.labels()) {
        if (std::find(keep.begin(), keep.end(), q) != keep.end()) {
            kept.push_back(q);
        }
    }
    order = kept;
    for (auto q : s.labels()) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            order.push_back(q);
        }
    }
    // With kept qubits first, the amplitudes form a (dk x dt) matrix A and rho = A A^dagger.
    const StateVector arranged = permute_to(s, order);
    const std::size_t dk = std::size_t{1} << kept.size();
    const std::size_t dt = arranged.dimension() / dk;
    std::vector<Amplitude> rho(dk * dk);
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = r; c < dk; ++c) {
            Amplitude acc = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                acc += arranged[r * dt + t] * std::conj(arranged[c * dt + t]);
            }
            rho[r * dk + c] = acc;
            rho[c * dk + r] = std::conj(acc);
        }
    }
    return DensityMatrix(std::move(kept), std::move(rho));
}

inline DensityMatrix reduced_density(const StateVector &s, std::initializer_list<QubitLabel> keep) {
    return reduced_density(s, std::span<const QubitLabel>(keep.begin(), keep.size()));
}

/// Largest entry-wise difference between two density matrices of equal shape.
inline double max_entry_difference(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("density matrices have different dimensions");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

} // namespace qdist
