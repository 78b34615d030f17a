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

#include "hbsa/qnd.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "gtest/gtest.h"
#include "hbsa/analyzer.hpp"

using namespace hbsa;
using namespace hbsa::qnd;

namespace {

StateVector pol_pair(Polarization a, Polarization b) {
    return StateVector::basis_state(CompositeBasis{{a, kEarly, Path::PortA}, {b, kEarly, Path::PortB}});
}

}  // namespace

TEST(qnd, parity_on_product_states) {
    auto hh = parity_qnd(pol_pair(Polarization::H, Polarization::H), {}, BranchChoice::exhaustive());
    auto hv = parity_qnd(pol_pair(Polarization::H, Polarization::V), {}, BranchChoice::exhaustive());
    auto vh = parity_qnd(pol_pair(Polarization::V, Polarization::H), {}, BranchChoice::exhaustive());
    ASSERT_EQ(hh.size(), 1u);
    ASSERT_EQ(hv.size(), 1u);
    ASSERT_EQ(vh.size(), 1u);
    EXPECT_EQ(hh[0].outcome, HomodyneOutcome::Zero);
    EXPECT_EQ(hv[0].outcome, HomodyneOutcome::Two);
    EXPECT_EQ(vh[0].outcome, HomodyneOutcome::Two);
    // The photons leave on their own ports again.
    EXPECT_EQ(hv[0].state.serialize(), pol_pair(Polarization::H, Polarization::V).serialize());
}

TEST(qnd, parity_on_superposition_gives_weights) {
    const double a = 0.6, b = 0.8;
    auto s = StateVector::superpose(
        {{a, pol_pair(Polarization::H, Polarization::H)}, {b, pol_pair(Polarization::H, Polarization::V)}});
    auto br = parity_qnd(s, {}, BranchChoice::exhaustive());
    ASSERT_EQ(br.size(), 2u);
    EXPECT_NEAR(br[0].probability, a * a, 1e-12);
    EXPECT_NEAR(br[1].probability, b * b, 1e-12);
}

TEST(qnd, phase_qnd_separates_phi_plus_from_phi_minus) {
    auto plus = phase_qnd(prepare_hyper_bell({Bell::PhiPlus, Bell::PsiMinus}), {}, BranchChoice::exhaustive());
    auto minus = phase_qnd(prepare_hyper_bell({Bell::PhiMinus, Bell::PsiMinus}), {}, BranchChoice::exhaustive());
    ASSERT_EQ(plus.size(), 1u);
    ASSERT_EQ(minus.size(), 1u);
    EXPECT_EQ(plus[0].outcome, HomodyneOutcome::Zero);
    EXPECT_EQ(minus[0].outcome, HomodyneOutcome::Two);
}

TEST(qnd, table1_is_a_bijection) {
    std::set<std::pair<HomodyneOutcome, HomodyneOutcome>> shifts;
    std::set<Bell> relabeled;
    for (const auto &row : table1()) {
        shifts.insert({row.shift1, row.shift2});
        relabeled.insert(row.relabeled);
        EXPECT_EQ(decode_shifts(row.shift1, row.shift2), row.original);
        EXPECT_EQ(relabel(row.original), row.relabeled);
    }
    EXPECT_EQ(shifts.size(), 4u);
    EXPECT_EQ(relabeled.size(), 4u);
}

TEST(qnd, relabel_is_an_involution) {
    for (Bell b : kAllBells) EXPECT_EQ(relabel(relabel(b)), b);
}

TEST(qnd, polarization_bsa_reproduces_every_row) {
    for (const auto &label : all_hyper_labels()) {
        const auto c = check_table1(label);
        EXPECT_TRUE(c.match) << format(label) << " " << c.error;
        EXPECT_NEAR(c.timebin_fidelity, 1.0, 1e-9) << format(label);
        EXPECT_NEAR(c.relabeled_fidelity, 1.0, 1e-9) << format(label);
    }
}

TEST(qnd, polarization_bsa_rejects_non_bell_input) {
    auto s = StateVector::superpose(
        {{0.6, pol_pair(Polarization::H, Polarization::H)}, {0.8, pol_pair(Polarization::H, Polarization::V)}});
    EXPECT_THROW(polarization_bsa(s, BranchChoice::exhaustive()), InconsistentBranchError);
}

TEST(qnd, polarization_bsa_rejects_bad_wiring) {
    auto s = prepare_hyper_bell({Bell::PhiPlus, Bell::PhiPlus}, Path::Held, Path::PortB);
    EXPECT_THROW(polarization_bsa(s, BranchChoice::exhaustive()), WiringError);
}
