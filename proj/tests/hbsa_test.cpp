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

#include <cmath>
#include <map>
#include <set>

#include "dense_oracle.hpp"
#include "gtest/gtest.h"
#include "hbsa/analyzer.hpp"
#include "test_util.hpp"

using namespace hbsa;

namespace {

std::set<DetectionPair> oracle_support(Bell relabeled, Bell tb) {
    const auto v = oracle::hyper_bell(static_cast<int>(relabeled), static_cast<int>(tb));
    std::set<DetectionPair> out;
    for (SingleBell a : kAllSingleBells) {
        for (SingleBell b : kAllSingleBells) {
            const auto bra = oracle::kron(oracle::single_bell(static_cast<int>(a)),
                                          oracle::single_bell(static_cast<int>(b)));
            const double p = std::norm(oracle::dot(bra, v));
            if (p > 1e-12) {
                EXPECT_NEAR(p, 0.25, 1e-12);
                out.insert({a, b});
            }
        }
    }
    return out;
}

}  // namespace

TEST(hbsa, labels_round_trip_through_text) {
    for (const auto &label : all_hyper_labels()) {
        const std::string text = format(label);
        const auto space = text.find(' ');
        EXPECT_EQ(parse_hyper_label(text.substr(0, space), text.substr(space + 1)), label);
    }
    EXPECT_EQ(format({Bell::PhiMinus, Bell::PsiPlus}), "PhiP- PsiT+");
    EXPECT_THROW(parse_bell("PhiT+", Dof::Polarization), ParseError);
    EXPECT_THROW(parse_bell("Chi+", Dof::TimeBin), ParseError);
    EXPECT_EQ(parse_single_bell("psi-"), SingleBell::PsiMinus);
}

TEST(hbsa, prepare_matches_oracle) {
    for (const auto &label : all_hyper_labels()) {
        auto s = prepare_hyper_bell(label);
        EXPECT_EQ(s.size(), 4u);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
        const auto d = testutil::to_dense(s, {kPhotonA, kPhotonB});
        const auto o = oracle::hyper_bell(static_cast<int>(label.pol), static_cast<int>(label.tb));
        for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(std::abs(d[i] - o[i]), 0.0, 1e-15) << format(label);
    }
}

TEST(hbsa, table2_lookup_examples) {
    EXPECT_EQ(table2_lookup(Bell::PsiPlus, SingleBell::PsiMinus, SingleBell::PhiPlus), Bell::PhiMinus);
    EXPECT_EQ(table2_lookup(Bell::PhiPlus, SingleBell::PhiPlus, SingleBell::PhiPlus), Bell::PhiPlus);
    EXPECT_EQ(table2_group_of({SingleBell::PsiMinus, SingleBell::PhiPlus}), 4);
    EXPECT_EQ(table2_group_of({SingleBell::PhiMinus, SingleBell::PsiMinus}), 2);
}

TEST(hbsa, transcription_matches_oracle) {
    for (const auto &group : table2()) {
        const std::set<DetectionPair> want(group.detections.begin(), group.detections.end());
        ASSERT_EQ(group.members.size(), 4u);
        for (const auto &[p, t] : group.members) EXPECT_EQ(oracle_support(p, t), want) << "group " << group.id;
    }
}

TEST(hbsa, reconstructed_table_matches_transcription) {
    EXPECT_NO_THROW(verify_table2());
    EXPECT_TRUE(diff_table2(table2(), reconstruct_table2()).empty());
    EXPECT_TRUE(diff_table2(table2(), reconstruct_table2({{}, {spbsa::Layout::EarlyCellFirst}})).empty());
}

TEST(hbsa, simulated_support_matches_oracle) {
    for (Bell p : kAllBells) {
        for (Bell t : kAllBells) {
            std::set<DetectionPair> got;
            for (const auto &[pair, prob] : detection_support(p, t)) {
                EXPECT_NEAR(prob, 0.25, 1e-9);
                got.insert(pair);
            }
            EXPECT_EQ(got, oracle_support(p, t));
        }
    }
}

TEST(hbsa, groups_partition_the_detection_pairs) {
    std::set<DetectionPair> seen;
    std::set<std::pair<Bell, Bell>> members;
    for (const auto &g : table2()) {
        for (const auto &d : g.detections) EXPECT_TRUE(seen.insert(d).second);
        for (const auto &m : g.members) EXPECT_TRUE(members.insert(m).second);
    }
    EXPECT_EQ(seen.size(), 16u);
    EXPECT_EQ(members.size(), 16u);
}

TEST(hbsa, worked_example_phi_minus_phi_minus) {
    const HyperBellLabel x{Bell::PhiMinus, Bell::PhiMinus};
    const auto c = classify(prepare_hyper_bell(x), BranchChoice::exhaustive());
    EXPECT_EQ(c.label, x);
    ASSERT_EQ(c.branches.size(), 4u);
    bool saw_example = false;
    for (const auto &b : c.branches) {
        EXPECT_EQ(b.record.step1.shift1, qnd::HomodyneOutcome::Zero);
        EXPECT_EQ(b.record.step1.shift2, qnd::HomodyneOutcome::Two);
        EXPECT_EQ(b.record.step1.relabeled, Bell::PsiPlus);
        EXPECT_EQ(table2_group_of({b.record.det_a, b.record.det_b}), 4);
        saw_example |= b.record.det_a == SingleBell::PsiMinus && b.record.det_b == SingleBell::PhiPlus;
    }
    EXPECT_TRUE(saw_example);
}

TEST(hbsa, all_labels_classified_in_every_branch) {
    for (const auto &label : all_hyper_labels()) {
        const auto c = classify(prepare_hyper_bell(label), BranchChoice::exhaustive());
        EXPECT_EQ(c.label, label) << format(label);
        double total = 0.0;
        for (const auto &b : c.branches) {
            EXPECT_EQ(decode(b.record), label);
            EXPECT_NEAR(b.probability, 0.25, 1e-9);
            total += b.probability;
        }
        EXPECT_EQ(c.branches.size(), 4u);
        EXPECT_NEAR(total, 1.0, 1e-9);
        EXPECT_TRUE(verify_label(label).pass);
    }
}

TEST(hbsa, sampling_agrees_with_exhaustive) {
    Rng rng(42);
    for (int rep = 0; rep < 3; ++rep) {
        for (const auto &label : all_hyper_labels()) {
            const auto c = classify(prepare_hyper_bell(label), BranchChoice::sampling(rng));
            EXPECT_EQ(c.label, label);
            EXPECT_EQ(c.branches.size(), 1u);
        }
    }
}

TEST(hbsa, layouts_agree) {
    AnalyzerOptions opts;
    opts.spbsa.layout = spbsa::Layout::EarlyCellFirst;
    for (const auto &label : all_hyper_labels()) EXPECT_TRUE(verify_label(label, opts).pass);
}

TEST(hbsa, sign_flipped_hwp_is_detected) {
    AnalyzerOptions opts;
    opts.qnd.first_hwp = optics::HwpVariant::SignFlipped;
    int failures = 0;
    for (const auto &label : all_hyper_labels()) failures += verify_label(label, opts).pass ? 0 : 1;
    EXPECT_GT(failures, 0);
}

TEST(hbsa, corrupted_transcription_is_detected) {
    EXPECT_THROW(verify_table2({}, corrupted_table2()), TableMismatchError);
    EXPECT_FALSE(diff_table2(corrupted_table2(), reconstruct_table2()).empty());
}

TEST(hbsa, classify_rejects_mixed_labels) {
    auto s = StateVector::superpose({{0.6, prepare_hyper_bell({Bell::PhiPlus, Bell::PhiPlus})},
                                     {0.8, prepare_hyper_bell({Bell::PsiMinus, Bell::PhiPlus})}});
    EXPECT_THROW(classify(s, BranchChoice::exhaustive()), InconsistentBranchError);
}
