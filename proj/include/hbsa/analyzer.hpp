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

// Two-step hyperentangled Bell-state analyzer.
//
// Step 1 (qnd) reads the polarization Bell state nondestructively and leaves
// it relabeled. Step 2 sends each photon through its own SPBSA. The pair of
// single-photon outcomes picks one of four detection groups; within a group
// the relabeled polarization state fixes the time-bin state.

#ifndef HBSA_ANALYZER_HPP
#define HBSA_ANALYZER_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hbsa/labels.hpp"
#include "hbsa/qnd.hpp"
#include "hbsa/spbsa.hpp"
#include "hbsa/statevec.hpp"

namespace hbsa {

using DetectionPair = std::pair<SingleBell, SingleBell>;  // (photon A, photon B)

struct MeasurementRecord {
    qnd::Step1Record step1;
    SingleBell det_a = SingleBell::PhiPlus;
    SingleBell det_b = SingleBell::PhiPlus;
    friend bool operator==(const MeasurementRecord &, const MeasurementRecord &) = default;
};

/// One group of the detection table: four (relabeled polarization, time-bin)
/// products sharing the same four possible detection pairs.
struct Table2Group {
    int id = 0;
    std::vector<std::pair<Bell, Bell>> members;
    std::vector<DetectionPair> detections;
    friend bool operator==(const Table2Group &, const Table2Group &) = default;
};
using Table2 = std::vector<Table2Group>;

/// Hard-coded transcription of the four detection groups.
const Table2 &table2();

/// Group id (1..4) of a detection pair in the transcription.
int table2_group_of(DetectionPair detections);

/// Time-bin label paired with `relabeled` in the group holding the detections.
Bell table2_lookup(Bell relabeled, SingleBell det_a, SingleBell det_b);

/// Pure classifier over the record: (shift1, shift2) -> polarization,
/// then the detection table -> time bin.
HyperBellLabel decode(const MeasurementRecord &record);

/// (Bell_P)_{AB} x (Bell_T)_{AB} with photon A on path_a and B on path_b.
StateVector prepare_hyper_bell(HyperBellLabel label, Path path_a = Path::PortA, Path path_b = Path::PortB);

struct AnalyzerOptions {
    qnd::QndOptions qnd;
    spbsa::SpbsaOptions spbsa;
};

struct AnalysisBranch {
    HyperBellLabel label;
    MeasurementRecord record;
    double probability;
    StateVector state;
};

/// Runs both steps on the given photon pair without assuming a Bell input.
/// Exhaustive mode enumerates every (shift1, shift2, detA, detB) outcome.
std::vector<AnalysisBranch> analyze(const StateVector &s, qnd::AnalyzerPair pair, const BranchChoice &choice,
                                    const AnalyzerOptions &options = {});

struct Classification {
    HyperBellLabel label;
    /// Every branch in exhaustive mode; the single sampled one otherwise.
    std::vector<AnalysisBranch> branches;
};

/// Classifies a hyperentangled Bell state. All branches are always computed
/// and must agree (InconsistentBranchError otherwise), so sampling and
/// exhaustive modes report the same label.
Classification classify(const StateVector &s, const BranchChoice &choice, qnd::AnalyzerPair pair = {},
                        const AnalyzerOptions &options = {});

/// Detection pairs and probabilities produced by step 2 alone on the product
/// (relabeled polarization) x (time bin), in ascending pair order.
std::vector<std::pair<DetectionPair, double>> detection_support(Bell relabeled, Bell tb,
                                                                const AnalyzerOptions &options = {});

/// Groups rebuilt purely from simulation, ordered like the transcription
/// (the group holding PhiP+ x PhiT+, PsiT+, PhiT-, PsiT- in turn).
Table2 reconstruct_table2(const AnalyzerOptions &options = {});

/// Reconstructs the table and compares it with `transcribed`. Throws
/// TableMismatchError on any difference in membership or support, or when a
/// branch probability is not 1/4 within kNormTolerance.
Table2 verify_table2(const AnalyzerOptions &options = {}, const Table2 &transcribed = table2());

/// Human-readable differences; empty when the tables agree.
std::vector<std::string> diff_table2(const Table2 &transcribed, const Table2 &simulated);

/// Table2 with two detection pairs swapped between groups 1 and 2.
Table2 corrupted_table2();

struct Table1Check {
    HyperBellLabel input;
    qnd::Step1Record record;
    double timebin_fidelity = 0.0;
    /// Fidelity of the post-step-1 polarization state with the table's new state.
    double relabeled_fidelity = 0.0;
    bool match = false;
    std::string error;
};

Table1Check check_table1(HyperBellLabel input, const AnalyzerOptions &options = {});

struct VerifyRow {
    HyperBellLabel input;
    std::optional<qnd::Step1Record> step1;
    std::vector<std::pair<DetectionPair, double>> detections;
    std::optional<HyperBellLabel> classified;
    bool pass = false;
    std::string error;
};

/// Prepares, classifies exhaustively and records every branch. Never throws
/// for analyzer failures; they become a failing row.
VerifyRow verify_label(HyperBellLabel input, const AnalyzerOptions &options = {});

}  // namespace hbsa

#endif  // HBSA_ANALYZER_HPP
