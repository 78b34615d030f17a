// Copyright 2026 The HBSA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hbsa/protocols.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "dense_oracle.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace hbsa;
using namespace hbsa::protocols;

namespace {

oracle::Dense dense_input(const TwoQubitPhotonState &q) {
    return oracle::product_photon(q.alpha, q.beta, q.delta, q.eta);
}

oracle::Dense hyper(HyperBellLabel l) { return oracle::hyper_bell(static_cast<int>(l.pol), static_cast<int>(l.tb)); }

}  // namespace

TEST(protocols, correction_table) {
    EXPECT_EQ(correction_for({Bell::PhiPlus, Bell::PhiPlus}), (CorrectionOps{PauliOp::I, PauliOp::I}));
    EXPECT_EQ(correction_for({Bell::PsiPlus, Bell::PhiMinus}), (CorrectionOps{PauliOp::X, PauliOp::Z}));
    EXPECT_EQ(correction_for({Bell::PsiMinus, Bell::PsiMinus}), (CorrectionOps{PauliOp::ZX, PauliOp::ZX}));
}

TEST(protocols, raw_bob_state_matches_oracle_projection) {
    Rng rng(5);
    const auto q = random_two_qubit_state(rng);
    const auto v = oracle::kron(dense_input(q), hyper({Bell::PhiPlus, Bell::PhiPlus}));
    std::map<HyperBellLabel, double> prob;
    for (const auto &br : teleport(q, BranchChoice::exhaustive())) {
        const auto bob = oracle::project_pair(v, 0, 1, hyper(br.label));
        EXPECT_NEAR(oracle::norm2(bob), 1.0 / 16, 1e-12);
        // Corrections square to +-I, so applying one again undoes it.
        const auto raw = apply_correction(br.bob, PhotonId{0}, correction_for(br.label));
        EXPECT_NEAR(oracle::fidelity(testutil::to_dense(raw, {PhotonId{0}}), bob), 1.0, 1e-9) << format(br.label);
        prob[br.label] += br.probability;
    }
    ASSERT_EQ(prob.size(), 16u);
    for (const auto &[label, p] : prob) EXPECT_NEAR(p, 1.0 / 16, 1e-9) << format(label);
}

TEST(protocols, psi_plus_phi_plus_needs_a_bit_flip) {
    // Input |H>|S>: under (PsiP+, PhiT+) Bob holds |V>|S> before correction.
    TwoQubitPhotonState q;
    for (const auto &br : teleport(q, BranchChoice::exhaustive())) {
        EXPECT_NEAR(br.fidelity, 1.0, 1e-9);
        if (br.label == HyperBellLabel{Bell::PsiPlus, Bell::PhiPlus}) {
            const auto vs = StateVector::basis_state(CompositeBasis{{Polarization::V, kEarly, Path::Held}});
            EXPECT_NEAR(br.uncorrected_fidelity, 0.0, 1e-12);
            const auto undone = apply_correction(br.bob, PhotonId{0}, correction_for(br.label));
            EXPECT_NEAR(fidelity(vs, undone), 1.0, 1e-12);
        }
    }
}

TEST(protocols, teleport_random_inputs) {
    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        const auto q = random_two_qubit_state(rng);
        double uncorrected = 0.0;
        for (const auto &br : teleport(q, BranchChoice::exhaustive())) {
            EXPECT_NEAR(br.fidelity, 1.0, 1e-9);
            uncorrected += br.probability * br.uncorrected_fidelity;
        }
        EXPECT_LT(uncorrected, 1.0 - 1e-6);
    }
}

TEST(protocols, teleport_corrected_state_matches_oracle) {
    Rng rng(8);
    const auto q = random_two_qubit_state(rng);
    for (const auto &br : teleport(q, BranchChoice::exhaustive())) {
        const auto bob = testutil::to_dense(br.bob, {PhotonId{0}});
        EXPECT_NEAR(oracle::fidelity(bob, dense_input(q)), 1.0, 1e-9);
    }
}

TEST(protocols, swap_is_uniform_and_matches_charlie) {
    std::map<HyperBellLabel, double> prob;
    const auto branches = swap(BranchChoice::exhaustive());
    for (const auto &br : branches) {
        EXPECT_TRUE(br.match) << format(br.charlie);
        EXPECT_EQ(br.ab, br.charlie);
        prob[br.charlie] += br.probability;
    }
    ASSERT_EQ(prob.size(), 16u);
    for (const auto &[label, p] : prob) EXPECT_NEAR(p, 1.0 / 16, 1e-9);
    for (const auto &s : summarize(branches)) EXPECT_TRUE(s.match);
}

TEST(protocols, swap_residual_matches_oracle) {
    const auto ch = hyper({Bell::PhiPlus, Bell::PhiPlus});
    const auto v = oracle::kron(ch, ch);
    for (const auto &label : all_hyper_labels()) {
        const auto ab = oracle::project_pair(v, 1, 2, hyper(label));
        EXPECT_NEAR(oracle::norm2(ab), 1.0 / 16, 1e-12);
        EXPECT_NEAR(oracle::fidelity(ab, hyper(label)), 1.0, 1e-12) << format(label);
    }
}

TEST(protocols, random_state_draws_are_reproducible) {
    Rng a(123), b(123);
    for (int i = 0; i < 5; ++i) {
        const auto x = random_two_qubit_state(a);
        const auto y = random_two_qubit_state(b);
        EXPECT_EQ(x.alpha, y.alpha);
        EXPECT_EQ(x.eta, y.eta);
        EXPECT_NO_THROW(x.validate());
    }
}

TEST(protocols, rejects_unnormalized_input) {
    TwoQubitPhotonState q;
    q.beta = 1.0;
    EXPECT_THROW(q.validate(), InvalidArgumentError);
    EXPECT_THROW(teleport(q, BranchChoice::exhaustive()), InvalidArgumentError);
}
