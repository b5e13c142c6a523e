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

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace qdist {

using Amplitude = std::complex<double>;

/// Tolerance for normalization, trace and fidelity checks.
inline constexpr double kNormTol = 1e-9;

/// Projections with squared norm below this are reported as impossible
/// instead of renormalizing numerical noise.
inline constexpr double kProbFloor = 1e-12;

/// Upper bound on live qubits in one register (2^26 amplitudes).
inline constexpr std::size_t kMaxQubits = 26;

/// Opaque qubit identifier. Labels are never recycled within a protocol run.
struct QubitLabel {
    std::int64_t id = 0;

    constexpr QubitLabel() = default;
    constexpr explicit QubitLabel(std::int64_t v) : id(v) {}

    friend constexpr auto operator<=>(const QubitLabel &, const QubitLabel &) = default;
};

inline std::string to_string(QubitLabel q) { return "q" + std::to_string(q.id); }

/// Single-qubit Pauli operators needed by the protocol. ZX means X first, then Z.
enum class PauliOp { I, X, Z, ZX };

inline const char *to_string(PauliOp op) {
    switch (op) {
    case PauliOp::I: return "I";
    case PauliOp::X: return "X";
    case PauliOp::Z: return "Z";
    case PauliOp::ZX: return "ZX";
    }
    return "?";
}

} // namespace qdist

template <>
struct std::hash<qdist::QubitLabel> {
    std::size_t operator()(const qdist::QubitLabel &q) const noexcept {
        return std::hash<std::int64_t>{}(q.id);
    }
};
