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

#include "hbsa/hbsa.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace {

struct SimGuard {
    hbsa_simulator *sim = nullptr;
    explicit SimGuard(uint64_t seed, uint32_t faults = 0) { EXPECT_EQ(hbsa_simulator_create(seed, faults, &sim), HBSA_OK); }
    ~SimGuard() { hbsa_simulator_destroy(sim); }
};

}  // namespace

TEST(c_api, status_strings) {
    EXPECT_STREQ(hbsa_status_string(HBSA_OK), "ok");
    EXPECT_STREQ(hbsa_status_string(HBSA_PARSE), "parse error");
    EXPECT_STREQ(hbsa_version(), "1.0.0");
}

TEST(c_api, label_parse_and_format) {
    hbsa_label l;
    ASSERT_EQ(hbsa_label_parse("PsiP+", "PhiT-", &l), HBSA_OK);
    EXPECT_EQ(l.pol, HBSA_PSI_PLUS);
    EXPECT_EQ(l.tb, HBSA_PHI_MINUS);
    char buf[32];
    ASSERT_EQ(hbsa_label_format(l, buf, sizeof(buf)), HBSA_OK);
    EXPECT_STREQ(buf, "PsiP+ PhiT-");
    EXPECT_EQ(hbsa_label_parse("PsiT+", "PhiT-", &l), HBSA_PARSE);
    EXPECT_NE(std::string(hbsa_last_error()), "");
    EXPECT_EQ(hbsa_label_format({7, 0}, buf, sizeof(buf)), HBSA_INVALID_ARGUMENT);
    EXPECT_EQ(hbsa_label_format(l, buf, 4), HBSA_BUFFER_TOO_SMALL);
}

TEST(c_api, rejects_null_and_unknown_flags) {
    hbsa_simulator *sim = nullptr;
    EXPECT_EQ(hbsa_simulator_create(1, 0x80, &sim), HBSA_INVALID_ARGUMENT);
    EXPECT_EQ(hbsa_simulator_create(1, 0, nullptr), HBSA_INVALID_ARGUMENT);
    EXPECT_EQ(hbsa_verify_label(nullptr, {0, 0}, nullptr), HBSA_INVALID_ARGUMENT);
}

TEST(c_api, state_round_trip) {
    hbsa_state *a = nullptr, *b = nullptr;
    ASSERT_EQ(hbsa_state_prepare({HBSA_PHI_MINUS, HBSA_PHI_MINUS}, &a), HBSA_OK);
    ASSERT_EQ(hbsa_state_prepare({HBSA_PHI_PLUS, HBSA_PHI_MINUS}, &b), HBSA_OK);
    hbsa_complex z;
    ASSERT_EQ(hbsa_state_inner(a, a, &z), HBSA_OK);
    EXPECT_NEAR(z.re, 1.0, 1e-12);
    ASSERT_EQ(hbsa_state_inner(a, b, &z), HBSA_OK);
    EXPECT_NEAR(std::hypot(z.re, z.im), 0.0, 1e-12);
    size_t needed = 0;
    EXPECT_EQ(hbsa_state_serialize(a, nullptr, 0, &needed), HBSA_BUFFER_TOO_SMALL);
    std::vector<char> text(needed);
    ASSERT_EQ(hbsa_state_serialize(a, text.data(), text.size(), &needed), HBSA_OK);
    EXPECT_EQ(std::string(text.data()).size() + 1, needed);
    EXPECT_NE(std::string(text.data()).find("portA"), std::string::npos);
    hbsa_state_destroy(a);
    hbsa_state_destroy(b);
}

TEST(c_api, classify_all_labels) {
    SimGuard g(42);
    for (int p = 0; p < 4; ++p) {
        for (int t = 0; t < 4; ++t) {
            hbsa_state *s = nullptr;
            ASSERT_EQ(hbsa_state_prepare({p, t}, &s), HBSA_OK);
            hbsa_branch out[16];
            size_t n = 0;
            ASSERT_EQ(hbsa_classify(g.sim, s, HBSA_MODE_EXHAUSTIVE, out, 16, &n), HBSA_OK);
            EXPECT_EQ(n, 4u);
            for (size_t i = 0; i < n; ++i) {
                EXPECT_EQ(out[i].label.pol, p);
                EXPECT_EQ(out[i].label.tb, t);
            }
            ASSERT_EQ(hbsa_classify(g.sim, s, HBSA_MODE_SAMPLING, out, 16, &n), HBSA_OK);
            EXPECT_EQ(n, 1u);
            EXPECT_EQ(hbsa_classify(g.sim, s, HBSA_MODE_EXHAUSTIVE, out, 2, &n), HBSA_BUFFER_TOO_SMALL);
            EXPECT_EQ(n, 4u);
            EXPECT_EQ(hbsa_classify(g.sim, s, 9, out, 16, &n), HBSA_INVALID_ARGUMENT);
            hbsa_state_destroy(s);
        }
    }
}

TEST(c_api, verify_rows_and_fault) {
    SimGuard good(42);
    SimGuard bad(42, HBSA_FAULT_HWP_SIGN);
    int good_pass = 0, bad_pass = 0;
    for (int p = 0; p < 4; ++p) {
        for (int t = 0; t < 4; ++t) {
            hbsa_verify_row row;
            ASSERT_EQ(hbsa_verify_label(good.sim, {p, t}, &row), HBSA_OK);
            good_pass += row.pass;
            EXPECT_EQ(row.detection_count, 4u);
            ASSERT_EQ(hbsa_verify_label(bad.sim, {p, t}, &row), HBSA_OK);
            bad_pass += row.pass;
        }
    }
    EXPECT_EQ(good_pass, 16);
    EXPECT_LT(bad_pass, 16);
}

TEST(c_api, tables) {
    SimGuard good(1);
    SimGuard bad(1, HBSA_FAULT_TABLE2_TRANSCRIPTION);
    EXPECT_EQ(hbsa_table2_verify(good.sim), HBSA_OK);
    EXPECT_EQ(hbsa_table2_verify(bad.sim), HBSA_TABLE_MISMATCH);
    char buf[4096];
    size_t needed = 0;
    ASSERT_EQ(hbsa_table2_diff(good.sim, buf, sizeof(buf), &needed), HBSA_OK);
    EXPECT_STREQ(buf, "");
    ASSERT_EQ(hbsa_table2_diff(bad.sim, buf, sizeof(buf), &needed), HBSA_OK);
    EXPECT_STRNE(buf, "");

    hbsa_table1_row rows[4];
    ASSERT_EQ(hbsa_table1_transcription(rows), HBSA_OK);
    EXPECT_EQ(rows[1].original, HBSA_PHI_MINUS);
    EXPECT_EQ(rows[1].shift2, 2);
    EXPECT_EQ(rows[1].relabeled, HBSA_PSI_PLUS);

    hbsa_detector_entry frozen[4], derived[4];
    ASSERT_EQ(hbsa_detector_map(good.sim, 0, frozen), HBSA_OK);
    ASSERT_EQ(hbsa_detector_map(good.sim, 1, derived), HBSA_OK);
    for (int i = 0; i < 4; ++i) {
        EXPECT_STREQ(frozen[i].port, derived[i].port);
        EXPECT_EQ(frozen[i].bell, derived[i].bell);
    }
    int group = 0;
    ASSERT_EQ(hbsa_table2_group_of(HBSA_PSI_MINUS, HBSA_PHI_PLUS, &group), HBSA_OK);
    EXPECT_EQ(group, 4);
}

TEST(c_api, teleport_and_swap) {
    SimGuard g(7);
    hbsa_photon_input in;
    ASSERT_EQ(hbsa_random_photon_input(g.sim, &in), HBSA_OK);
    hbsa_teleport_branch tb[256];
    size_t n = 0;
    ASSERT_EQ(hbsa_teleport(g.sim, &in, HBSA_MODE_EXHAUSTIVE, tb, 256, &n), HBSA_OK);
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(tb[i].fidelity, 1.0, 1e-9);
        total += tb[i].probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);

    hbsa_photon_input off{{1, 0}, {1, 0}, {1, 0}, {0, 0}};
    EXPECT_EQ(hbsa_photon_input_normalize(&off, 1e-6), HBSA_INVALID_ARGUMENT);
    hbsa_photon_input near{{0.7071068, 0}, {0.7071068, 0}, {1, 0}, {0, 0}};
    EXPECT_EQ(hbsa_photon_input_normalize(&near, 1e-6), HBSA_OK);
    EXPECT_NEAR(near.alpha.re * near.alpha.re * 2, 1.0, 1e-15);

    hbsa_swap_branch sb[256];
    ASSERT_EQ(hbsa_swap(g.sim, HBSA_MODE_EXHAUSTIVE, sb, 256, &n), HBSA_OK);
    for (size_t i = 0; i < n; ++i) EXPECT_TRUE(sb[i].match);
}
