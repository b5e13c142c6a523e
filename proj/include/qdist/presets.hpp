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

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdist/bell.hpp"
#include "qdist/random.hpp"
#include "qdist/state.hpp"

namespace qdist::presets {

/// Labels 1..n.
inline std::vector<QubitLabel> default_labels(std::size_t n) {
    std::vector<QubitLabel> labels;
    for (std::size_t k = 1; k <= n; ++k) {
        labels.emplace_back(static_cast<std::int64_t>(k));
    }
    return labels;
}

namespace detail {

inline void check_n(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("a state needs at least one qubit");
    }
    qdist::detail::check_size(n);
}

} // namespace detail

/// (|0...0> + |1...1>) / sqrt(2)
inline StateVector ghz(std::size_t n) {
    detail::check_n(n);
    std::vector<Amplitude> amps(std::size_t{1} << n);
    amps.front() = 1.0;
    amps.back() = 1.0;
    return StateVector::normalized(default_labels(n), std::move(amps));
}

/// Uniform superposition of all weight-one basis states.
inline StateVector w_state(std::size_t n) {
    detail::check_n(n);
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (std::size_t k = 0; k < n; ++k) {
        amps[std::size_t{1} << k] = 1.0;
    }
    return StateVector::normalized(default_labels(n), std::move(amps));
}

/// Singlets on (1,2), (3,4), ...; n must be even.
inline StateVector bell_pairs(std::size_t n) {
    detail::check_n(n);
    if (n % 2 != 0) {
        throw std::invalid_argument("the bell preset needs an even number of qubits");
    }
    StateVector s = make_bell(BellKind::PHI_MINUS, {QubitLabel(1), QubitLabel(2)});
    for (std::size_t k = 3; k < n; k += 2) {
        s = tensor(s, make_bell(BellKind::PHI_MINUS, {QubitLabel(static_cast<std::int64_t>(k)),
                                                      QubitLabel(static_cast<std::int64_t>(k + 1))}));
    }
    return s;
}

/// Normalized vector of independent standard complex Gaussians.
inline StateVector random_state(std::span<const QubitLabel> labels, SeededRandomSource &rng) {
    if (labels.empty()) {
        throw std::invalid_argument("a state needs at least one qubit");
    }
    qdist::detail::check_size(labels.size());
    std::vector<Amplitude> amps(std::size_t{1} << labels.size());
    for (auto &a : amps) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        a = {re, im};
    }
    return StateVector::normalized(std::vector<QubitLabel>(labels.begin(), labels.end()), std::move(amps));
}

inline StateVector random_state(std::size_t n, SeededRandomSource &rng) {
    detail::check_n(n);
    const auto labels = default_labels(n);
    return random_state(labels, rng);
}

/// Tensor product of n independent random single-qubit states.
inline StateVector random_product(std::size_t n, SeededRandomSource &rng) {
    detail::check_n(n);
    const auto labels = default_labels(n);
    StateVector s = random_state(std::span(labels).first(1), rng);
    for (std::size_t k = 1; k < n; ++k) {
        s = tensor(s, random_state(std::span(labels).subspan(k, 1), rng));
    }
    return s;
}

inline const std::vector<std::string> &names() {
    static const std::vector<std::string> all{"ghz", "w", "bell", "product", "random-haar"};
    return all;
}

/// Builds a named preset. `rng` is used only by the randomized presets.
inline StateVector make(std::string_view name, std::size_t n, SeededRandomSource &rng) {
    if (name == "ghz") return ghz(n);
    if (name == "w") return w_state(n);
    if (name == "bell") return bell_pairs(n);
    if (name == "product") return random_product(n, rng);
    if (name == "random-haar") return random_state(n, rng);
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

} // namespace qdist::presets
