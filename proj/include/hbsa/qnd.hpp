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

// Nondestructive polarization Bell-state analysis with two cross-Kerr QNDs.
//
//   portA --+              +-- kerr(+1) on up ---+             +--> portA
//           |-- PBS (mix) -+                     +-- PBS (mix) |
//   portB --+              +-- kerr(-1) on down -+             +--> portB
//
// The parity QND uses probe 1 on qnd1Up/qnd1Down. The phase QND first puts
// an HWP on each photon and then repeats the same structure with probe 2 on
// qnd2Up/qnd2Down. A |V_A H_B> pair bunches on the up mode (+2), |H_A V_B>
// on the down mode (-2), HH and VV split one photon per mode (0).

#ifndef HBSA_QND_HPP
#define HBSA_QND_HPP

#include <array>
#include <vector>

#include "hbsa/labels.hpp"
#include "hbsa/optics.hpp"
#include "hbsa/statevec.hpp"

namespace hbsa::qnd {

using optics::HomodyneOutcome;

/// Which photons enter the analyzer's A and B ports.
struct AnalyzerPair {
    PhotonId first = kPhotonA;
    PhotonId second = kPhotonB;
};

struct QndOptions {
    /// HWP used on the first photon inside the phase QND (fault hook).
    optics::HwpVariant first_hwp = optics::HwpVariant::Hadamard;
};

struct Step1Record {
    HomodyneOutcome shift1 = HomodyneOutcome::Zero;
    HomodyneOutcome shift2 = HomodyneOutcome::Zero;
    Bell original = Bell::PhiPlus;
    Bell relabeled = Bell::PhiPlus;
    friend bool operator==(const Step1Record &, const Step1Record &) = default;
};

struct Table1Row {
    Bell original;
    HomodyneOutcome shift1;
    HomodyneOutcome shift2;
    Bell relabeled;
};

/// Hard-coded rows: original state, probe-1 shift, probe-2 shift, new state.
const std::array<Table1Row, 4> &table1();

/// Inverse of the (shift1, shift2) column pair.
Bell decode_shifts(HomodyneOutcome shift1, HomodyneOutcome shift2);

/// The "new state" column as a map original -> relabeled.
Bell relabel(Bell original);

std::vector<Branch<HomodyneOutcome>> parity_qnd(const StateVector &s, AnalyzerPair pair,
                                                const BranchChoice &choice);
std::vector<Branch<HomodyneOutcome>> phase_qnd(const StateVector &s, AnalyzerPair pair, const BranchChoice &choice,
                                               const QndOptions &options = {});

struct Step1Branch {
    Step1Record record;
    double probability;
    StateVector state;
};

/// Parity QND followed by phase QND on an arbitrary input, one entry per
/// (shift1, shift2) outcome. No Bell-input check.
std::vector<Step1Branch> measure_polarization(const StateVector &s, AnalyzerPair pair, const BranchChoice &choice,
                                              const QndOptions &options = {});

struct PolarizationAnalysis {
    Step1Record record;
    StateVector state;
    /// Re Tr(rho_before rho_after) over the pair's (slot, slot) labels.
    double timebin_fidelity;
};

/// Step 1 on a Bell-state polarization input. All branches are enumerated
/// and must agree on one outcome (InconsistentBranchError otherwise), so the
/// result is the same in either branch mode and no random draw is consumed.
PolarizationAnalysis polarization_bsa(const StateVector &s, const BranchChoice &choice, AnalyzerPair pair = {},
                                      const QndOptions &options = {});

}  // namespace hbsa::qnd

#endif  // HBSA_QND_HPP
