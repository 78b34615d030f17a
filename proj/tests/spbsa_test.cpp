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

#include "hbsa/spbsa.hpp"

#include <map>
#include <random>
#include <set>

#include "dense_oracle.hpp"
#include "gtest/gtest.h"
#include "hbsa/analyzer.hpp"
#include "test_util.hpp"

using namespace hbsa;
using namespace hbsa::spbsa;

TEST(spbsa, each_state_fires_one_detector) {
    for (SingleBell b : kAllSingleBells) {
        auto br = detect(prepare_single_bell(b), kPhotonA, BranchChoice::exhaustive());
        ASSERT_EQ(br.size(), 1u) << format(b);
        EXPECT_NEAR(br[0].probability, 1.0, 1e-9);
    }
}

TEST(spbsa, derived_map_is_frozen_bijection) {
    for (Layout layout : {Layout::LateCellFirst, Layout::EarlyCellFirst}) {
        const DetectorMap m = derive_detector_map({layout});
        EXPECT_EQ(m, frozen_detector_map());
        std::set<DetectorPort> ports;
        std::set<SingleBell> bells;
        for (const auto &e : m) {
            ports.insert(e.port);
            bells.insert(e.bell);
        }
        EXPECT_EQ(ports.size(), 4u);
        EXPECT_EQ(bells.size(), 4u);
    }
}

TEST(spbsa, frozen_map_names) {
    const auto &m = frozen_detector_map();
    EXPECT_EQ(format(m[0].port), "spPhiOut+");
    EXPECT_EQ(decode(m, {Path::SpPsiOut, optics::Sign::Minus}), SingleBell::PsiMinus);
}

TEST(spbsa, slots_merge_before_detection) {
    for (SingleBell b : kAllSingleBells) {
        auto s = route_to_detectors(prepare_single_bell(b), kPhotonA);
        EXPECT_NO_THROW(optics::require_definite_slot(s, kPhotonA));
        for (const auto &t : s.terms()) EXPECT_TRUE(optics::is_detector_facing(t.basis.photon(kPhotonA).path));
    }
}

TEST(spbsa, rejects_photon_off_port) {
    EXPECT_THROW(route_to_detectors(prepare_single_bell(SingleBell::PhiPlus, Path::Held), kPhotonA), WiringError);
}

// Property: on a random one-photon input each outcome probability equals the
// overlap with the matching single-photon Bell vector.
TEST(spbsa, outcome_probabilities_match_oracle) {
    std::mt19937_64 gen(21);
    for (int i = 0; i < 50; ++i) {
        auto s = testutil::random_state(gen, testutil::one_photon_labels(Path::PortA));
        const auto dense = testutil::to_dense(s, {kPhotonA});
        std::map<SingleBell, double> expected;
        for (SingleBell b : kAllSingleBells) {
            expected[b] = oracle::fidelity(oracle::single_bell(static_cast<int>(b)), dense);
        }
        double total = 0.0;
        for (const auto &br : analyze_photon(s, kPhotonA, BranchChoice::exhaustive())) {
            EXPECT_NEAR(br.probability, expected[br.outcome.bell], 1e-9);
            total += br.probability;
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
    }
}

// Photon A of any hyperentangled Bell state is maximally mixed, so each
// detector fires with probability 1/4.
TEST(spbsa, marginal_of_hyper_bell_is_uniform) {
    for (const auto &label : all_hyper_labels()) {
        auto br = analyze_photon(prepare_hyper_bell(label), kPhotonA, BranchChoice::exhaustive());
        ASSERT_EQ(br.size(), 4u) << format(label);
        for (const auto &b : br) EXPECT_NEAR(b.probability, 0.25, 1e-9);
    }
}
