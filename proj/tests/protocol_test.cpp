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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

#include "qdist/oracle.hpp"
#include "qdist/presets.hpp"
#include "qdist/protocol.hpp"
#include "test_support.hpp"

using namespace qdist;
namespace ref = qdist::reference;

namespace {

QubitLabel L(std::int64_t id) { return QubitLabel(id); }

std::vector<BellKind> word_from_index(std::size_t index, std::size_t length) {
    std::vector<BellKind> word(length);
    for (std::size_t k = 0; k < length; ++k) {
        word[k] = kAllBellKinds[(index >> (2 * k)) & 3U];
    }
    return word;
}

} // namespace

TEST(correction_for, table) {
    EXPECT_EQ(correction_for(BellKind::VARPHI_PLUS), PauliOp::ZX);
    EXPECT_EQ(correction_for(BellKind::VARPHI_MINUS), PauliOp::X);
    EXPECT_EQ(correction_for(BellKind::PHI_PLUS), PauliOp::Z);
    EXPECT_EQ(correction_for(BellKind::PHI_MINUS), PauliOp::I);
}

TEST(correction_for, restores_every_oracle_branch) {
    ref::StateFactory f(101);
    for (int trial = 0; trial < 20; ++trial) {
        auto psi = f.state(3);
        for (auto i : psi.labels()) {
            auto expansion = oracle::expand_swap(psi, i, L(50), L(51));
            auto target = relabel(psi, i, L(51));
            for (const auto &br : expansion.branches) {
                auto fixed = apply_pauli(br.state, L(51), correction_for(br.kind));
                ASSERT_NEAR(fidelity(target, fixed), 1.0, kNormTol);
            }
        }
    }
}

TEST(singlet_restore, rotates_each_bell_state_to_singlet) {
    for (auto k : kAllBellKinds) {
        auto rotated = apply_pauli(make_bell(k, {L(1), L(2)}), L(1), singlet_restore_for(k));
        EXPECT_NEAR(fidelity(rotated, make_bell(BellKind::PHI_MINUS, {L(2), L(1)})), 1.0, kNormTol);
    }
}

TEST(classical_code, bijection) {
    EXPECT_EQ(encode_classical(BellKind::VARPHI_PLUS), 0b00);
    EXPECT_EQ(encode_classical(BellKind::VARPHI_MINUS), 0b01);
    EXPECT_EQ(encode_classical(BellKind::PHI_PLUS), 0b10);
    EXPECT_EQ(encode_classical(BellKind::PHI_MINUS), 0b11);
    EXPECT_EQ(cbits_to_string(encode_classical(BellKind::PHI_MINUS)), "11");
    EXPECT_EQ(decode_classical(cbits_from_string("11")), BellKind::PHI_MINUS);
    std::set<std::uint8_t> codes;
    for (auto k : kAllBellKinds) {
        codes.insert(encode_classical(k));
        EXPECT_EQ(decode_classical(encode_classical(k)), k);
        EXPECT_EQ(cbits_from_string(cbits_to_string(encode_classical(k))), encode_classical(k));
    }
    EXPECT_EQ(codes.size(), 4u);
    EXPECT_THROW(decode_classical(4), std::invalid_argument);
    EXPECT_THROW(cbits_from_string("2"), std::invalid_argument);
    EXPECT_THROW(cbits_from_string("012"), std::invalid_argument);
}

TEST(swap_step, ghz_moves_to_remote_qubit_for_every_seed) {
    auto ghz = presets::ghz(3);
    const SwapStep step{L(1), L(10), L(11), "bob"};
    std::set<BellKind> seen;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        SeededRandomSource rng(seed);
        auto [out, entry] = swap_step(ghz, step, rng);
        ASSERT_EQ(out.num_qubits(), 3u);
        EXPECT_EQ(out.labels()[0], L(11));
        EXPECT_EQ(out.labels()[1], L(2));
        EXPECT_NEAR(fidelity(out, relabel(ghz, L(1), L(11))), 1.0, kNormTol);
        EXPECT_EQ(entry.correction, correction_for(entry.outcome));
        EXPECT_EQ(decode_classical(entry.classical_bits), entry.outcome);
        EXPECT_NEAR(entry.probability, 0.25, kNormTol);
        seen.insert(entry.outcome);
    }
    EXPECT_EQ(seen.size(), 4u);
}

TEST(swap_step, single_qubit_is_teleportation) {
    ref::StateFactory f(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto amps = f.amplitudes(1);
        auto psi = StateVector({L(1)}, amps);
        SeededRandomSource rng(static_cast<std::uint64_t>(trial));
        auto [out, entry] = swap_step(psi, SwapStep{L(1), L(2), L(3), "bob"}, rng);
        ASSERT_EQ(out.num_qubits(), 1u);
        EXPECT_EQ(out.labels()[0], L(3));
        EXPECT_NEAR(fidelity(out, StateVector({L(3)}, amps)), 1.0, kNormTol);
    }
}

TEST(swap_step, ledger_delta_per_step) {
    auto psi = presets::ghz(2);
    DistributionPlan plan{"alice", {"bob"}, {SwapStep{L(1), L(10), L(11), "bob"}}};
    DistributionSession session(psi, plan);
    EXPECT_EQ(session.ledger().consumed, (ResourceCost{0, 0, 0}));
    SeededRandomSource rng(1);
    session.swap(plan.steps[0], rng);
    EXPECT_EQ(session.ledger().consumed, (ResourceCost{1, 2, 0}));
    EXPECT_EQ(session.ledger().baseline_total(), (ResourceCost{2, 2, 2}));
}

TEST(swap_step, errors) {
    auto psi = presets::ghz(3);
    SeededRandomSource rng(1);
    EXPECT_THROW(swap_step(psi, SwapStep{L(9), L(10), L(11), "bob"}, rng), std::invalid_argument);
    EXPECT_THROW(swap_step(psi, SwapStep{L(1), L(2), L(11), "bob"}, rng), std::invalid_argument);
    EXPECT_THROW(swap_step(psi, SwapStep{L(1), L(10), L(10), "bob"}, rng), std::invalid_argument);

    // Reusing a consumed pair inside one run.
    DistributionPlan plan{"alice", {"bob"}, {SwapStep{L(1), L(10), L(11), "bob"}}};
    DistributionSession session(psi, plan);
    session.swap(plan.steps[0], rng);
    EXPECT_THROW(session.swap(SwapStep{L(2), L(10), L(12), "bob"}, rng), std::invalid_argument);
    EXPECT_THROW(session.swap(SwapStep{L(2), L(12), L(11), "bob"}, rng), std::invalid_argument);
    // Source already distributed.
    EXPECT_THROW(session.swap(SwapStep{L(1), L(20), L(21), "bob"}, rng), std::invalid_argument);
    EXPECT_THROW(session.swap(SwapStep{L(2), L(20), L(21), "carol"}, rng), std::invalid_argument);
}

TEST(distribute, singlet_to_two_receivers) {
    auto psi = make_bell(BellKind::PHI_MINUS, {L(1), L(2)});
    auto plan = round_robin_plan(psi, 2);
    for (std::uint64_t seed = 0; seed < 32; ++seed) {
        SeededRandomSource rng(seed);
        auto result = distribute(psi, plan, rng);
        EXPECT_NEAR(fidelity(result.final_state, relabeled_target(psi, plan)), 1.0, kNormTol);
        EXPECT_EQ(result.receivers[0].held_qubits, std::set<QubitLabel>{plan.steps[0].remote});
        EXPECT_EQ(result.receivers[1].held_qubits, std::set<QubitLabel>{plan.steps[1].remote});
    }
}

TEST(distribute, empty_plan_is_identity) {
    ref::StateFactory f(9);
    auto psi = f.state(3);
    DistributionPlan plan{"alice", {"bob"}, {}};
    SeededRandomSource rng(3);
    auto result = distribute(psi, plan, rng);
    for (std::size_t k = 0; k < psi.dimension(); ++k) {
        ASSERT_EQ(result.final_state[k], psi[k]);
    }
    EXPECT_TRUE(result.transcript.empty());
    EXPECT_EQ(result.ledger.consumed, (ResourceCost{0, 0, 0}));
}

TEST(distribute, random_four_qubit_states) {
    ref::StateFactory f(13);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto psi = f.state(4);
        auto plan = round_robin_plan(psi, 1 + seed % 4);
        SeededRandomSource rng(seed);
        auto result = distribute(psi, plan, rng);
        ASSERT_NEAR(fidelity(result.final_state, relabeled_target(psi, plan)), 1.0, kNormTol) << seed;
    }
}

TEST(distribute, all_outcome_words_appear_under_sampling) {
    auto psi = presets::w_state(4);
    auto plan = all_to_one_plan(psi);
    std::set<std::size_t> words;
    std::uint64_t seed = 0;
    for (; seed < 6000 && words.size() < 256; ++seed) {
        SeededRandomSource rng(seed);
        auto result = distribute(psi, plan, rng);
        ASSERT_NEAR(fidelity(result.final_state, relabeled_target(psi, plan)), 1.0, kNormTol);
        std::size_t word = 0;
        for (std::size_t k = 0; k < result.transcript.size(); ++k) {
            word |= std::size_t{encode_classical(result.transcript[k].outcome)} << (2 * k);
        }
        words.insert(word);
    }
    EXPECT_EQ(words.size(), 256u) << "after " << seed << " seeds";
}

TEST(distribute, every_forced_outcome_word_recovers_state) {
    ref::StateFactory f(15);
    for (std::size_t n = 1; n <= 4; ++n) {
        auto psi = f.state(n);
        auto plan = round_robin_plan(psi, n);
        const auto target = relabeled_target(psi, plan);
        for (std::size_t index = 0; index < (std::size_t{1} << (2 * n)); ++index) {
            auto word = word_from_index(index, n);
            auto result = distribute_forced(psi, plan, word);
            ASSERT_NEAR(fidelity(result.final_state, target), 1.0, kNormTol) << n << ":" << index;
            for (std::size_t k = 0; k < n; ++k) {
                ASSERT_EQ(result.transcript[k].outcome, word[k]);
            }
        }
    }
    auto psi = f.state(2);
    EXPECT_THROW(distribute_forced(psi, all_to_one_plan(psi), std::vector<BellKind>{BellKind::PHI_PLUS}),
                 std::invalid_argument);
}

TEST(distribute, ownership_and_measured_pairs) {
    ref::StateFactory f(17);
    auto psi = f.state(5);
    auto plan = round_robin_plan(psi, 3);
    SeededRandomSource rng(99);
    auto result = distribute(psi, plan, rng);

    std::set<QubitLabel> held_by_receivers;
    for (const auto &r : result.receivers) {
        for (auto q : r.held_qubits) {
            EXPECT_TRUE(held_by_receivers.insert(q).second);
            EXPECT_FALSE(result.sender.held_qubits.contains(q));
        }
    }
    std::set<QubitLabel> remotes;
    for (const auto &s : plan.steps) remotes.insert(s.remote);
    EXPECT_EQ(held_by_receivers, remotes);

    ASSERT_EQ(result.measured_pairs.size(), plan.steps.size());
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        const auto &step = plan.steps[k];
        EXPECT_TRUE(result.sender.held_qubits.contains(step.source));
        EXPECT_TRUE(result.sender.held_qubits.contains(step.alice_anchor));
        EXPECT_NEAR(fidelity(result.measured_pairs[k], make_bell(BellKind::PHI_MINUS, {step.alice_anchor, step.source})),
                    1.0, kNormTol);
    }
}

TEST(distribute, ledger_is_exact_and_beats_baseline) {
    ref::StateFactory f(19);
    for (std::size_t n = 1; n <= 6; ++n) {
        auto psi = f.state(n);
        auto plan = all_to_one_plan(psi);
        SeededRandomSource rng(n);
        auto result = distribute(psi, plan, rng);
        const auto k = static_cast<std::int64_t>(n);
        EXPECT_EQ(result.ledger.consumed, (ResourceCost{k, 2 * k, 0}));
        EXPECT_EQ(result.ledger.baseline_total(), (ResourceCost{2 * k, 2 * k, 2 * k}));
        EXPECT_LT(result.ledger.consumed.ebits, result.ledger.baseline_total().ebits);
        EXPECT_LT(result.ledger.consumed.cbits_forward + result.ledger.consumed.cbits_backward,
                  result.ledger.baseline_total().cbits_forward + result.ledger.baseline_total().cbits_backward);
    }
}

TEST(distribute, unentangled_qubit_is_teleported) {
    ref::StateFactory f(23);
    for (int trial = 0; trial < 30; ++trial) {
        auto qubit = f.state(1, 1);
        auto psi = tensor(qubit, f.state(2, 2));
        ASSERT_TRUE(is_product_about(decompose(psi, L(1))));
        DistributionPlan plan{"alice", {"bob"}, {SwapStep{L(1), L(10), L(11), "bob"}}};
        SeededRandomSource rng(static_cast<std::uint64_t>(trial));
        auto result = distribute(psi, plan, rng);
        auto marginal = reduced_density(result.final_state, {L(11)});
        auto expected = reduced_density(qubit, {L(1)});
        EXPECT_LT(max_entry_difference(marginal, expected), kNormTol);
    }
}

TEST(distribute, step_order_does_not_change_the_result) {
    ref::StateFactory f(29);
    auto psi = f.state(4);
    auto plan = round_robin_plan(psi, 2);
    const auto target = relabeled_target(psi, plan);
    std::sort(plan.steps.begin(), plan.steps.end(),
              [](const SwapStep &a, const SwapStep &b) { return a.source < b.source; });
    std::uint64_t seed = 0;
    do {
        SeededRandomSource rng(seed++);
        auto result = distribute(psi, plan, rng);
        ASSERT_NEAR(fidelity(result.final_state, target), 1.0, kNormTol);
    } while (std::next_permutation(plan.steps.begin(), plan.steps.end(),
                                   [](const SwapStep &a, const SwapStep &b) { return a.source < b.source; }));
    EXPECT_EQ(seed, 24u);
}

TEST(distribute, invalid_plans_are_rejected) {
    auto psi = presets::ghz(2);
    SeededRandomSource rng(0);
    auto bad = [&](DistributionPlan plan) { EXPECT_THROW(distribute(psi, plan, rng), std::invalid_argument); };
    bad({"alice", {"bob"}, {SwapStep{L(1), L(10), L(11), "bob"}, SwapStep{L(1), L(12), L(13), "bob"}}});
    bad({"alice", {"bob"}, {SwapStep{L(1), L(10), L(11), "bob"}, SwapStep{L(2), L(10), L(13), "bob"}}});
    bad({"alice", {"bob"}, {SwapStep{L(1), L(2), L(11), "bob"}}});
    bad({"alice", {"bob"}, {SwapStep{L(5), L(10), L(11), "bob"}}});
    bad({"alice", {"bob"}, {SwapStep{L(1), L(10), L(11), "carol"}}});
    bad({"alice", {"bob", "carol", "dave"}, {}});
    bad({"alice", {"alice"}, {}});
    EXPECT_THROW(round_robin_plan(psi, 0), std::invalid_argument);
    EXPECT_THROW(round_robin_plan(psi, 3), std::invalid_argument);
}

TEST(round_robin_plan, allocates_fresh_pairs) {
    auto psi = presets::ghz(3);
    auto plan = round_robin_plan(psi, 2);
    ASSERT_EQ(plan.steps.size(), 3u);
    EXPECT_EQ(plan.receivers, (std::vector<std::string>{"receiver-1", "receiver-2"}));
    EXPECT_EQ(plan.steps[0].alice_anchor, L(4));
    EXPECT_EQ(plan.steps[0].remote, L(5));
    EXPECT_EQ(plan.steps[2].remote, L(9));
    EXPECT_EQ(plan.steps[2].receiver, "receiver-1");
    EXPECT_NO_THROW(validate_plan(plan, psi));
}

TEST(partial_distribution, ghz_single_qubit_is_maximally_mixed) {
    auto ghz = presets::ghz(3);
    DistributionPlan plan{"alice", {"bob"}, {SwapStep{L(1), L(10), L(11), "bob"}}};
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        SeededRandomSource rng(seed);
        auto rho = partial_distribution_reduced(ghz, plan, rng);
        EXPECT_NEAR(rho.purity(), 0.5, kNormTol);
        EXPECT_NEAR(rho.at(0, 0).real(), 0.5, kNormTol);
        EXPECT_NEAR(std::abs(rho.at(0, 1)), 0.0, kNormTol);
    }
}

TEST(partial_distribution, unentangled_subset_stays_pure) {
    const double h = std::numbers::sqrt2 / 2.0;
    auto psi = tensor(StateVector({L(1)}, {h, h}), make_basis_state({0}, {L(2)}));
    DistributionPlan plan{"alice", {"bob"}, {SwapStep{L(1), L(10), L(11), "bob"}}};
    SeededRandomSource rng(5);
    EXPECT_NEAR(partial_distribution_reduced(psi, plan, rng).purity(), 1.0, kNormTol);
}

TEST(partial_distribution, matches_brute_force_partial_trace_of_input) {
    ref::StateFactory f(31);
    for (int trial = 0; trial < 30; ++trial) {
        auto psi = f.state(4);
        std::vector<QubitLabel> sources{L(2), L(4)};
        auto plan = round_robin_plan(psi, sources, 2);
        SeededRandomSource rng(static_cast<std::uint64_t>(trial));
        auto rho = partial_distribution_reduced(psi, plan, rng);
        ref::Amps amps(psi.amplitudes().begin(), psi.amplitudes().end());
        auto expected = ref::brute_partial_trace(amps, 4, {1, 3});
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) ASSERT_LT(std::abs(rho.at(r, c) - expected[r][c]), kNormTol);
        // A random 4-qubit state is entangled across this cut.
        EXPECT_LT(rho.purity(), 1.0 - kNormTol);
    }
}

TEST(partial_distribution, errors) {
    auto ghz = presets::ghz(2);
    SeededRandomSource rng(0);
    EXPECT_THROW(partial_distribution_reduced(ghz, all_to_one_plan(ghz), rng), std::invalid_argument);
    EXPECT_THROW(partial_distribution_reduced(ghz, DistributionPlan{"alice", {"bob"}, {}}, rng), std::invalid_argument);
}
