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
#include <new>
#include <string>
#include <vector>

#include "hbsa/analyzer.hpp"
#include "hbsa/protocols.hpp"
#include "hbsa/rng.hpp"
#include "hbsa/spbsa.hpp"

struct hbsa_simulator {
    hbsa::Rng rng;
    uint32_t faults;
    hbsa::AnalyzerOptions options;
};

struct hbsa_state {
    hbsa::StateVector s;
};

namespace {

thread_local std::string last_error;

hbsa_status fail(hbsa_status status, const std::string &message) {
    last_error = message;
    return status;
}

// Runs body and turns any exception into a status code.
template <class F>
hbsa_status guarded(F &&body) noexcept {
    try {
        return body();
    } catch (const hbsa::Error &e) {
        return fail(static_cast<hbsa_status>(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(HBSA_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(HBSA_INTERNAL, e.what());
    }
}

bool valid_bell(int b) { return b >= 0 && b <= 3; }

hbsa::Bell bell_of(int b) {
    if (!valid_bell(b)) {
        throw hbsa::InvalidArgumentError("Bell label out of range: " + std::to_string(b));
    }
    return static_cast<hbsa::Bell>(b);
}

hbsa::HyperBellLabel label_of(hbsa_label l) { return {bell_of(l.pol), bell_of(l.tb)}; }

hbsa_label to_c(hbsa::HyperBellLabel l) { return {static_cast<int>(l.pol), static_cast<int>(l.tb)}; }

hbsa_record to_c(const hbsa::MeasurementRecord &r) {
    return {static_cast<int>(r.step1.shift1), static_cast<int>(r.step1.shift2), static_cast<int>(r.step1.original),
            static_cast<int>(r.step1.relabeled), static_cast<int>(r.det_a), static_cast<int>(r.det_b)};
}

hbsa::Amplitude to_cpp(hbsa_complex c) { return {c.re, c.im}; }
hbsa_complex to_c(hbsa::Amplitude a) { return {a.real(), a.imag()}; }

hbsa::BranchChoice choice_for(hbsa_simulator *sim, int mode) {
    if (mode == HBSA_MODE_EXHAUSTIVE) {
        return hbsa::BranchChoice::exhaustive();
    }
    if (mode == HBSA_MODE_SAMPLING) {
        return hbsa::BranchChoice::sampling(sim->rng);
    }
    throw hbsa::InvalidArgumentError("unknown branch mode " + std::to_string(mode));
}

void copy_message(char (&dst)[256], const std::string &src) {
    std::strncpy(dst, src.c_str(), sizeof(dst) - 1);
    dst[sizeof(dst) - 1] = '\0';
}

template <class T>
hbsa_status copy_out(const std::vector<T> &items, T *out, size_t cap, size_t *count) {
    if (count == nullptr || (out == nullptr && cap > 0)) {
        return fail(HBSA_INVALID_ARGUMENT, "null output pointer");
    }
    *count = items.size();
    if (cap < items.size()) {
        return fail(HBSA_BUFFER_TOO_SMALL, "need room for " + std::to_string(items.size()) + " entries");
    }
    std::copy(items.begin(), items.end(), out);
    return HBSA_OK;
}

hbsa_status copy_text(const std::string &text, char *buf, size_t cap, size_t *needed) {
    if (needed != nullptr) {
        *needed = text.size() + 1;
    }
    if (buf == nullptr || cap < text.size() + 1) {
        return fail(HBSA_BUFFER_TOO_SMALL, "need " + std::to_string(text.size() + 1) + " bytes");
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
    return HBSA_OK;
}

void to_c(const hbsa::Table2 &t, hbsa_table2_group out[4]) {
    if (t.size() != 4) {
        throw hbsa::TableMismatchError("detection table has " + std::to_string(t.size()) + " groups");
    }
    for (size_t g = 0; g < 4; ++g) {
        if (t[g].members.size() != 4 || t[g].detections.size() != 4) {
            throw hbsa::TableMismatchError("group " + std::to_string(t[g].id) + " is not 4 x 4");
        }
        out[g].id = t[g].id;
        for (size_t i = 0; i < 4; ++i) {
            out[g].members[i][0] = static_cast<int>(t[g].members[i].first);
            out[g].members[i][1] = static_cast<int>(t[g].members[i].second);
            out[g].detections[i][0] = static_cast<int>(t[g].detections[i].first);
            out[g].detections[i][1] = static_cast<int>(t[g].detections[i].second);
        }
    }
}

const hbsa::Table2 &transcription(const hbsa_simulator *sim) {
    static const hbsa::Table2 corrupted = hbsa::corrupted_table2();
    return (sim->faults & HBSA_FAULT_TABLE2_TRANSCRIPTION) ? corrupted : hbsa::table2();
}

hbsa::protocols::TwoQubitPhotonState to_cpp(const hbsa_photon_input &in) {
    return {to_cpp(in.alpha), to_cpp(in.beta), to_cpp(in.delta), to_cpp(in.eta)};
}

#define HBSA_REQUIRE(cond, what)                         \
    do {                                                 \
        if (!(cond)) {                                   \
            return fail(HBSA_INVALID_ARGUMENT, what);    \
        }                                                \
    } while (0)

}  // namespace

extern "C" {

const char *hbsa_version(void) { return "1.0.0"; }

const char *hbsa_status_string(hbsa_status status) {
    switch (status) {
        case HBSA_OK: return "ok";
        case HBSA_INVALID_ARGUMENT: return "invalid argument";
        case HBSA_ZERO_STATE: return "zero state";
        case HBSA_NON_UNITARY: return "non-unitary map";
        case HBSA_WIRING: return "wiring error";
        case HBSA_COUNTER_OVERFLOW: return "probe counter overflow";
        case HBSA_UNEXPECTED_COUNTER: return "unexpected probe counter";
        case HBSA_INDEFINITE_SLOT: return "indefinite time slot at detector";
        case HBSA_INCONSISTENT_BRANCH: return "inconsistent branches";
        case HBSA_AMBIGUOUS_MAPPING: return "ambiguous detector mapping";
        case HBSA_TABLE_MISMATCH: return "table mismatch";
        case HBSA_AMBIGUOUS_RESIDUAL: return "ambiguous residual state";
        case HBSA_PARSE: return "parse error";
        case HBSA_BUFFER_TOO_SMALL: return "buffer too small";
        case HBSA_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char *hbsa_last_error(void) { return last_error.c_str(); }

hbsa_status hbsa_label_parse(const char *pol_token, const char *tb_token, hbsa_label *out) {
    HBSA_REQUIRE(pol_token && tb_token && out, "null argument");
    return guarded([&] {
        *out = to_c(hbsa::parse_hyper_label(pol_token, tb_token));
        return HBSA_OK;
    });
}

hbsa_status hbsa_label_format(hbsa_label label, char *buf, size_t cap) {
    return guarded([&] { return copy_text(hbsa::format(label_of(label)), buf, cap, nullptr); });
}

const char *hbsa_bell_name(int bell, int dof) {
    static const char *const names[2][4] = {{"PhiP+", "PhiP-", "PsiP+", "PsiP-"},
                                            {"PhiT+", "PhiT-", "PsiT+", "PsiT-"}};
    if (!valid_bell(bell) || (dof != HBSA_DOF_POLARIZATION && dof != HBSA_DOF_TIME_BIN)) {
        return "?";
    }
    return names[dof][bell];
}

const char *hbsa_single_bell_name(int bell) {
    static const char *const names[4] = {"phi+", "phi-", "psi+", "psi-"};
    return valid_bell(bell) ? names[bell] : "?";
}

hbsa_status hbsa_simulator_create(uint64_t seed, uint32_t fault_flags, hbsa_simulator **out) {
    HBSA_REQUIRE(out, "null output pointer");
    HBSA_REQUIRE((fault_flags & ~(HBSA_FAULT_HWP_SIGN | HBSA_FAULT_TABLE2_TRANSCRIPTION)) == 0,
                 "unknown fault flag");
    return guarded([&] {
        hbsa::AnalyzerOptions options;
        if (fault_flags & HBSA_FAULT_HWP_SIGN) {
            options.qnd.first_hwp = hbsa::optics::HwpVariant::SignFlipped;
        }
        *out = new hbsa_simulator{hbsa::Rng(seed), fault_flags, options};
        return HBSA_OK;
    });
}

void hbsa_simulator_destroy(hbsa_simulator *sim) { delete sim; }

hbsa_status hbsa_state_prepare(hbsa_label label, hbsa_state **out) {
    HBSA_REQUIRE(out, "null output pointer");
    return guarded([&] {
        *out = new hbsa_state{hbsa::prepare_hyper_bell(label_of(label))};
        return HBSA_OK;
    });
}

void hbsa_state_destroy(hbsa_state *state) { delete state; }

hbsa_status hbsa_state_serialize(const hbsa_state *state, char *buf, size_t cap, size_t *needed) {
    HBSA_REQUIRE(state, "null state");
    return guarded([&] { return copy_text(state->s.serialize(), buf, cap, needed); });
}

hbsa_status hbsa_state_inner(const hbsa_state *a, const hbsa_state *b, hbsa_complex *out) {
    HBSA_REQUIRE(a && b && out, "null argument");
    return guarded([&] {
        *out = to_c(hbsa::inner(a->s, b->s));
        return HBSA_OK;
    });
}

hbsa_status hbsa_classify(hbsa_simulator *sim, const hbsa_state *state, int mode, hbsa_branch *out, size_t cap,
                          size_t *count) {
    HBSA_REQUIRE(sim && state, "null argument");
    return guarded([&] {
        const auto c = hbsa::classify(state->s, choice_for(sim, mode), {}, sim->options);
        std::vector<hbsa_branch> rows;
        for (const auto &b : c.branches) {
            rows.push_back({to_c(b.label), to_c(b.record), b.probability});
        }
        return copy_out(rows, out, cap, count);
    });
}

hbsa_status hbsa_verify_label(hbsa_simulator *sim, hbsa_label input, hbsa_verify_row *out) {
    HBSA_REQUIRE(sim && out, "null argument");
    return guarded([&] {
        const auto row = hbsa::verify_label(label_of(input), sim->options);
        *out = hbsa_verify_row{};
        out->input = input;
        if (row.step1) {
            out->has_step1 = 1;
            out->step1 = to_c(hbsa::MeasurementRecord{*row.step1, {}, {}});
            out->step1.det_a = out->step1.det_b = -1;
        }
        if (row.detections.size() > 16) {
            throw hbsa::InvalidArgumentError("more than 16 detection pairs");
        }
        out->detection_count = row.detections.size();
        for (size_t i = 0; i < row.detections.size(); ++i) {
            const auto &[pair, p] = row.detections[i];
            out->detections[i] = {static_cast<int>(pair.first), static_cast<int>(pair.second), p};
        }
        if (row.classified) {
            out->has_classified = 1;
            out->classified = to_c(*row.classified);
        }
        out->pass = row.pass ? 1 : 0;
        copy_message(out->error, row.error);
        return HBSA_OK;
    });
}

hbsa_status hbsa_table1_transcription(hbsa_table1_row out[4]) {
    HBSA_REQUIRE(out, "null output pointer");
    const auto &t = hbsa::qnd::table1();
    for (size_t i = 0; i < 4; ++i) {
        out[i] = {static_cast<int>(t[i].original), static_cast<int>(t[i].shift1), static_cast<int>(t[i].shift2),
                  static_cast<int>(t[i].relabeled)};
    }
    return HBSA_OK;
}

hbsa_status hbsa_table1_check_label(hbsa_simulator *sim, hbsa_label input, hbsa_table1_check *out) {
    HBSA_REQUIRE(sim && out, "null argument");
    return guarded([&] {
        const auto c = hbsa::check_table1(label_of(input), sim->options);
        *out = hbsa_table1_check{};
        out->input = input;
        out->simulated = {static_cast<int>(c.record.original), static_cast<int>(c.record.shift1),
                          static_cast<int>(c.record.shift2), static_cast<int>(c.record.relabeled)};
        out->timebin_fidelity = c.timebin_fidelity;
        out->relabeled_fidelity = c.relabeled_fidelity;
        out->match = c.match ? 1 : 0;
        copy_message(out->error, c.error);
        return HBSA_OK;
    });
}

hbsa_status hbsa_table2_transcription(hbsa_simulator *sim, hbsa_table2_group out[4]) {
    HBSA_REQUIRE(sim && out, "null argument");
    return guarded([&] {
        to_c(transcription(sim), out);
        return HBSA_OK;
    });
}

hbsa_status hbsa_table2_reconstruct(hbsa_simulator *sim, hbsa_table2_group out[4]) {
    HBSA_REQUIRE(sim && out, "null argument");
    return guarded([&] {
        to_c(hbsa::reconstruct_table2(sim->options), out);
        return HBSA_OK;
    });
}

hbsa_status hbsa_table2_verify(hbsa_simulator *sim) {
    HBSA_REQUIRE(sim, "null simulator");
    return guarded([&] {
        hbsa::verify_table2(sim->options, transcription(sim));
        return HBSA_OK;
    });
}

hbsa_status hbsa_table2_diff(hbsa_simulator *sim, char *buf, size_t cap, size_t *needed) {
    HBSA_REQUIRE(sim, "null simulator");
    return guarded([&] {
        std::string text;
        for (const auto &line : hbsa::diff_table2(transcription(sim), hbsa::reconstruct_table2(sim->options))) {
            text += line;
            text += '\n';
        }
        return copy_text(text, buf, cap, needed);
    });
}

hbsa_status hbsa_table2_group_of(int det_a, int det_b, int *group) {
    HBSA_REQUIRE(group && valid_bell(det_a) && valid_bell(det_b), "invalid argument");
    return guarded([&] {
        *group = hbsa::table2_group_of({static_cast<hbsa::SingleBell>(det_a), static_cast<hbsa::SingleBell>(det_b)});
        return HBSA_OK;
    });
}

hbsa_status hbsa_detector_map(hbsa_simulator *sim, int derived, hbsa_detector_entry out[4]) {
    HBSA_REQUIRE(sim && out, "null argument");
    return guarded([&] {
        const auto map =
            derived ? hbsa::spbsa::derive_detector_map(sim->options.spbsa) : hbsa::spbsa::frozen_detector_map();
        for (size_t i = 0; i < 4; ++i) {
            out[i] = hbsa_detector_entry{};
            const std::string name = hbsa::spbsa::format(map[i].port);
            std::strncpy(out[i].port, name.c_str(), sizeof(out[i].port) - 1);
            out[i].bell = static_cast<int>(map[i].bell);
        }
        return HBSA_OK;
    });
}

hbsa_status hbsa_random_photon_input(hbsa_simulator *sim, hbsa_photon_input *out) {
    HBSA_REQUIRE(sim && out, "null argument");
    return guarded([&] {
        const auto q = hbsa::protocols::random_two_qubit_state(sim->rng);
        *out = {to_c(q.alpha), to_c(q.beta), to_c(q.delta), to_c(q.eta)};
        return HBSA_OK;
    });
}

hbsa_status hbsa_photon_input_normalize(hbsa_photon_input *input, double tol) {
    HBSA_REQUIRE(input && tol >= 0.0, "invalid argument");
    auto rescale = [&](hbsa_complex &a, hbsa_complex &b, const char *which) {
        const double n = std::norm(to_cpp(a)) + std::norm(to_cpp(b));
        if (!(std::abs(n - 1.0) <= tol)) {
            return fail(HBSA_INVALID_ARGUMENT, std::string(which) + " factor has norm^2 " + std::to_string(n));
        }
        const double k = 1.0 / std::sqrt(n);
        a = to_c(to_cpp(a) * k);
        b = to_c(to_cpp(b) * k);
        return HBSA_OK;
    };
    hbsa_photon_input tmp = *input;
    hbsa_status s = rescale(tmp.alpha, tmp.beta, "polarization");
    if (s == HBSA_OK) {
        s = rescale(tmp.delta, tmp.eta, "time-bin");
    }
    if (s == HBSA_OK) {
        *input = tmp;
    }
    return s;
}

hbsa_status hbsa_teleport(hbsa_simulator *sim, const hbsa_photon_input *input, int mode, hbsa_teleport_branch *out,
                          size_t cap, size_t *count) {
    HBSA_REQUIRE(sim && input, "null argument");
    return guarded([&] {
        std::vector<hbsa_teleport_branch> rows;
        for (const auto &b : hbsa::protocols::teleport(to_cpp(*input), choice_for(sim, mode), sim->options)) {
            rows.push_back({to_c(b.label), to_c(b.record), b.probability, b.fidelity, b.uncorrected_fidelity});
        }
        return copy_out(rows, out, cap, count);
    });
}

hbsa_status hbsa_swap(hbsa_simulator *sim, int mode, hbsa_swap_branch *out, size_t cap, size_t *count) {
    HBSA_REQUIRE(sim, "null simulator");
    return guarded([&] {
        std::vector<hbsa_swap_branch> rows;
        for (const auto &b : hbsa::protocols::swap(choice_for(sim, mode), sim->options)) {
            rows.push_back({to_c(b.charlie), to_c(b.ab), to_c(b.record), b.probability, b.match ? 1 : 0});
        }
        return copy_out(rows, out, cap, count);
    });
}

}  // extern "C"
