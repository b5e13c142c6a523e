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
 * Closed-form four-branch expansion of |Psi> (x) PHI_MINUS(mu, nu) about the
 * pair (i, mu), built directly from the decomposition
 *
 *   |Psi> = a|0_i>|Phi> + b|1_i>|Phi'>
 *
 * as
 *
 *   1/2 [ + |VARPHI+_{i,mu}> (a|1_nu>|Phi> - b|0_nu>|Phi'>)
 *         + |VARPHI-_{i,mu}> (a|1_nu>|Phi> + b|0_nu>|Phi'>)
 *         - |PHI+_{i,mu}>    (a|0_nu>|Phi> - b|1_nu>|Phi'>)
 *         - |PHI-_{i,mu}>    (a|0_nu>|Phi> + b|1_nu>|Phi'>) ].
 *
 * This never touches the measurement or protocol code paths; it exists to
 * cross-check them.
 */

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdist/bell.hpp"
#include "qdist/common.hpp"
#include "qdist/protocol.hpp"
#include "qdist/state.hpp"

namespace qdist::oracle {

struct SwapBranch {
    BellKind kind;
    /// Overall factor, including the sign of the term (+-1/2).
    Amplitude coefficient;
    /// Normalized state over (nu, remaining qubits in register order).
    StateVector state;
};

struct SwapExpansion {
    QubitLabel source;
    QubitLabel anchor;
    QubitLabel remote;
    std::array<SwapBranch, 4> branches;

    const SwapBranch &branch(BellKind kind) const { return branches[static_cast<std::size_t>(kind)]; }

    /// Sum over kinds of coefficient * Bell(source, anchor) (x) branch state.
    StateVector reconstruct() const {
        std::vector<QubitLabel> labels;
        std::vector<Amplitude> sum;
        for (const auto &br : branches) {
            const StateVector term = tensor(make_bell(br.kind, {source, anchor}), br.state);
            if (sum.empty()) {
                labels.assign(term.labels().begin(), term.labels().end());
                sum.assign(term.dimension(), Amplitude{0.0});
            }
            for (std::size_t k = 0; k < sum.size(); ++k) {
                sum[k] += br.coefficient * term[k];
            }
        }
        return StateVector(std::move(labels), std::move(sum));
    }
};

inline SwapExpansion expand_swap(const StateVector &state, QubitLabel i, QubitLabel mu, QubitLabel nu) {
    if (!state.contains(i)) {
        throw std::invalid_argument("source " + to_string(i) + " is not in the state");
    }
    if (state.contains(mu) || state.contains(nu) || mu == nu || mu == i || nu == i) {
        throw std::invalid_argument("mu and nu must be fresh, distinct labels");
    }

    // a|Phi> and b|Phi'> as raw blocks over the remaining qubits.
    std::vector<QubitLabel> rest;
    std::vector<Amplitude> a_phi;
    std::vector<Amplitude> b_phi_prime;
    if (state.num_qubits() == 1) {
        // No remaining qubits: the residual "states" are the scalars a and b.
        a_phi = {state[0]};
        b_phi_prime = {state[1]};
    } else {
        const DecompositionResult d = decompose(state, i);
        rest.assign(d.phi ? d.phi->labels().begin() : d.phi_prime->labels().begin(),
                    d.phi ? d.phi->labels().end() : d.phi_prime->labels().end());
        const std::size_t dim = std::size_t{1} << rest.size();
        a_phi.assign(dim, Amplitude{0.0});
        b_phi_prime.assign(dim, Amplitude{0.0});
        if (d.phi) {
            for (std::size_t k = 0; k < dim; ++k) {
                a_phi[k] = d.a * (*d.phi)[k];
            }
        }
        if (d.phi_prime) {
            for (std::size_t k = 0; k < dim; ++k) {
                b_phi_prime[k] = d.b * (*d.phi_prime)[k];
            }
        }
    }

    std::vector<QubitLabel> branch_labels{nu};
    branch_labels.insert(branch_labels.end(), rest.begin(), rest.end());

    // Branch over (nu, rest): nu=0 block = z_a*aPhi + z_b*bPhi', nu=1 block = o_a*aPhi + o_b*bPhi'.
    auto branch = [&](double z_a, double z_b, double o_a, double o_b) {
        const std::size_t dim = a_phi.size();
        std::vector<Amplitude> amps(2 * dim);
        for (std::size_t k = 0; k < dim; ++k) {
            amps[k] = z_a * a_phi[k] + z_b * b_phi_prime[k];
            amps[dim + k] = o_a * a_phi[k] + o_b * b_phi_prime[k];
        }
        return StateVector(branch_labels, std::move(amps));
    };

    return SwapExpansion{i,
                         mu,
                         nu,
                         {SwapBranch{BellKind::VARPHI_PLUS, +0.5, branch(0, -1, 1, 0)},
                          SwapBranch{BellKind::VARPHI_MINUS, +0.5, branch(0, +1, 1, 0)},
                          SwapBranch{BellKind::PHI_PLUS, -0.5, branch(1, 0, 0, -1)},
                          SwapBranch{BellKind::PHI_MINUS, -0.5, branch(1, 0, 0, +1)}}};
}

struct BranchCheck {
    BellKind outcome;
    double probability;
    double fidelity_before_correction;
    double fidelity_after_correction;
    bool passed;
};

struct CorrectionReport {
    QubitLabel source;
    std::array<BranchCheck, 4> branches;
    bool passed;
};

/// Applies correction_for(outcome) on nu to every oracle branch and compares
/// with `state` renamed i -> nu. Failures are reported, not thrown.
inline CorrectionReport verify_correction_table(const StateVector &state, QubitLabel i, QubitLabel mu,
                                                QubitLabel nu) {
    const SwapExpansion expansion = expand_swap(state, i, mu, nu);
    const StateVector target = relabel(state, i, nu);
    CorrectionReport report{i, {}, true};
    for (std::size_t k = 0; k < 4; ++k) {
        const SwapBranch &br = expansion.branches[k];
        const StateVector corrected = apply_pauli(br.state, nu, correction_for(br.kind));
        BranchCheck check{br.kind, std::norm(br.coefficient), fidelity(target, br.state),
                          fidelity(target, corrected), false};
        check.passed = check.fidelity_after_correction >= 1.0 - kNormTol;
        report.passed = report.passed && check.passed;
        report.branches[k] = check;
    }
    return report;
}

} // namespace qdist::oracle
