/*
 * Copyright 2026 The HBSA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the hyperentangled Bell-state analyzer.
 *
 * Every call returns an hbsa_status. On failure a message is kept in
 * thread-local storage until the next failing call on the same thread and
 * can be read with hbsa_last_error(). Array outputs take a capacity and
 * report the required count; HBSA_BUFFER_TOO_SMALL is returned (with the
 * count filled in) when the capacity is short.
 */

#ifndef HBSA_HBSA_H
#define HBSA_HBSA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(HBSA_BUILDING_LIBRARY)
#define HBSA_API __declspec(dllexport)
#else
#define HBSA_API __declspec(dllimport)
#endif
#else
#define HBSA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hbsa_status {
    HBSA_OK = 0,
    HBSA_INVALID_ARGUMENT = 1,
    HBSA_ZERO_STATE = 2,
    HBSA_NON_UNITARY = 3,
    HBSA_WIRING = 4,
    HBSA_COUNTER_OVERFLOW = 5,
    HBSA_UNEXPECTED_COUNTER = 6,
    HBSA_INDEFINITE_SLOT = 7,
    HBSA_INCONSISTENT_BRANCH = 8,
    HBSA_AMBIGUOUS_MAPPING = 9,
    HBSA_TABLE_MISMATCH = 10,
    HBSA_AMBIGUOUS_RESIDUAL = 11,
    HBSA_PARSE = 12,
    HBSA_BUFFER_TOO_SMALL = 13,
    HBSA_INTERNAL = 14
} hbsa_status;

/* Bell labels; the same numbering is used for two-photon and single-photon states. */
enum { HBSA_PHI_PLUS = 0, HBSA_PHI_MINUS = 1, HBSA_PSI_PLUS = 2, HBSA_PSI_MINUS = 3 };
enum { HBSA_DOF_POLARIZATION = 0, HBSA_DOF_TIME_BIN = 1 };
enum { HBSA_MODE_EXHAUSTIVE = 0, HBSA_MODE_SAMPLING = 1 };

/* Fault-injection flags for hbsa_simulator_create. */
#define HBSA_FAULT_HWP_SIGN 0x1u            /* sign-flipped HWP on the first photon of the phase QND */
#define HBSA_FAULT_TABLE2_TRANSCRIPTION 0x2u /* two detection pairs swapped between groups 1 and 2 */

typedef struct hbsa_simulator hbsa_simulator;
typedef struct hbsa_state hbsa_state;

typedef struct hbsa_label {
    int pol;
    int tb;
} hbsa_label;

typedef struct hbsa_record {
    int shift1; /* 0 or 2 */
    int shift2;
    int original;
    int relabeled;
    int det_a; /* single-photon label fired at photon A's analyzer */
    int det_b;
} hbsa_record;

typedef struct hbsa_branch {
    hbsa_label label;
    hbsa_record record;
    double probability;
} hbsa_branch;

typedef struct hbsa_detection {
    int det_a;
    int det_b;
    double probability;
} hbsa_detection;

typedef struct hbsa_verify_row {
    hbsa_label input;
    int has_step1;
    hbsa_record step1; /* only shift1, shift2, original, relabeled are set */
    size_t detection_count;
    hbsa_detection detections[16];
    int has_classified;
    hbsa_label classified;
    int pass;
    char error[256];
} hbsa_verify_row;

typedef struct hbsa_table1_row {
    int original;
    int shift1;
    int shift2;
    int relabeled;
} hbsa_table1_row;

typedef struct hbsa_table1_check {
    hbsa_label input;
    hbsa_table1_row simulated;
    double timebin_fidelity;
    double relabeled_fidelity;
    int match;
    char error[256];
} hbsa_table1_check;

typedef struct hbsa_table2_group {
    int id;
    int members[4][2];    /* (relabeled polarization, time bin) */
    int detections[4][2]; /* (photon A, photon B) */
} hbsa_table2_group;

typedef struct hbsa_detector_entry {
    char port[16]; /* e.g. "spPhiOut+" */
    int bell;
} hbsa_detector_entry;

typedef struct hbsa_complex {
    double re;
    double im;
} hbsa_complex;

/* (alpha|H> + beta|V>) x (delta|S> + eta|L>) */
typedef struct hbsa_photon_input {
    hbsa_complex alpha;
    hbsa_complex beta;
    hbsa_complex delta;
    hbsa_complex eta;
} hbsa_photon_input;

typedef struct hbsa_teleport_branch {
    hbsa_label label;
    hbsa_record record;
    double probability;
    double fidelity;
    double uncorrected_fidelity;
} hbsa_teleport_branch;

typedef struct hbsa_swap_branch {
    hbsa_label charlie;
    hbsa_label ab;
    hbsa_record record;
    double probability;
    int match;
} hbsa_swap_branch;

HBSA_API const char *hbsa_version(void);
HBSA_API const char *hbsa_status_string(hbsa_status status);
HBSA_API const char *hbsa_last_error(void);

/* Labels. Tokens follow (Phi|Psi)(P|T)(+|-); single-photon names are "phi+" etc. */
HBSA_API hbsa_status hbsa_label_parse(const char *pol_token, const char *tb_token, hbsa_label *out);
HBSA_API hbsa_status hbsa_label_format(hbsa_label label, char *buf, size_t cap);
HBSA_API const char *hbsa_bell_name(int bell, int dof);
HBSA_API const char *hbsa_single_bell_name(int bell);

/* Simulator: owns the random stream and the fault flags. */
HBSA_API hbsa_status hbsa_simulator_create(uint64_t seed, uint32_t fault_flags, hbsa_simulator **out);
HBSA_API void hbsa_simulator_destroy(hbsa_simulator *sim);

/* States. */
HBSA_API hbsa_status hbsa_state_prepare(hbsa_label label, hbsa_state **out);
HBSA_API void hbsa_state_destroy(hbsa_state *state);
/* Writes the canonical text form including the trailing NUL; *needed gets the full size. */
HBSA_API hbsa_status hbsa_state_serialize(const hbsa_state *state, char *buf, size_t cap, size_t *needed);
HBSA_API hbsa_status hbsa_state_inner(const hbsa_state *a, const hbsa_state *b, hbsa_complex *out);

/* Full two-step analysis. Sampling mode returns one branch drawn from the simulator's stream. */
HBSA_API hbsa_status hbsa_classify(hbsa_simulator *sim, const hbsa_state *state, int mode, hbsa_branch *out,
                                   size_t cap, size_t *count);
HBSA_API hbsa_status hbsa_verify_label(hbsa_simulator *sim, hbsa_label input, hbsa_verify_row *out);

/* Tables. */
HBSA_API hbsa_status hbsa_table1_transcription(hbsa_table1_row out[4]);
HBSA_API hbsa_status hbsa_table1_check_label(hbsa_simulator *sim, hbsa_label input, hbsa_table1_check *out);
HBSA_API hbsa_status hbsa_table2_transcription(hbsa_simulator *sim, hbsa_table2_group out[4]);
HBSA_API hbsa_status hbsa_table2_reconstruct(hbsa_simulator *sim, hbsa_table2_group out[4]);
/* Reconstructs and compares with the transcription; HBSA_TABLE_MISMATCH on any difference. */
HBSA_API hbsa_status hbsa_table2_verify(hbsa_simulator *sim);
/* Newline-separated differences, empty when the tables agree. */
HBSA_API hbsa_status hbsa_table2_diff(hbsa_simulator *sim, char *buf, size_t cap, size_t *needed);
HBSA_API hbsa_status hbsa_table2_group_of(int det_a, int det_b, int *group);
/* derived = 0 gives the frozen decoding map, 1 re-derives it by simulation. */
HBSA_API hbsa_status hbsa_detector_map(hbsa_simulator *sim, int derived, hbsa_detector_entry out[4]);

/* Protocols. */
HBSA_API hbsa_status hbsa_random_photon_input(hbsa_simulator *sim, hbsa_photon_input *out);
/* Rejects inputs off unit norm per factor by more than tol, then rescales exactly. */
HBSA_API hbsa_status hbsa_photon_input_normalize(hbsa_photon_input *input, double tol);
HBSA_API hbsa_status hbsa_teleport(hbsa_simulator *sim, const hbsa_photon_input *input, int mode,
                                   hbsa_teleport_branch *out, size_t cap, size_t *count);
HBSA_API hbsa_status hbsa_swap(hbsa_simulator *sim, int mode, hbsa_swap_branch *out, size_t cap, size_t *count);

#ifdef __cplusplus
}
#endif

#endif /* HBSA_HBSA_H */
