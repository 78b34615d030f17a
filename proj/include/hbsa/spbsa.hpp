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

// Single-photon Bell-state analyzer: projects one photon onto
// phi+- = (HL +- VS)/sqrt2 and psi+- = (HS +- VL)/sqrt2.
//
//   port -> PC_L -> PBS --V--> spPhi -> PC_S -> [ H long (+1) / V short ] -> spPhiOut -> HWP -> PBS -> D(phi,+-)
//                       \-H--> spPsi -> PC_S -> [ V long (+1) / H short ] -> spPsiOut -> HWP -> PBS -> D(psi,+-)
//
// After PC_L the polarization tells phi from psi. After PC_S each arm holds a
// fixed pairing between polarization and slot, so one unbalanced
// interferometer per arm moves the early component to the late slot and the
// relative sign becomes a diagonal-basis polarization.

#ifndef HBSA_SPBSA_HPP
#define HBSA_SPBSA_HPP

#include <array>
#include <compare>
#include <vector>

#include "hbsa/labels.hpp"
#include "hbsa/optics.hpp"
#include "hbsa/statevec.hpp"

namespace hbsa::spbsa {

using optics::DetectorPort;

enum class Layout {
    LateCellFirst,   // PC_L, family PBS, PC_S
    EarlyCellFirst,  // PC_S, family PBS (outputs swapped), PC_L
};

struct SpbsaOptions {
    Layout layout = Layout::LateCellFirst;
    optics::HwpVariant hwp = optics::HwpVariant::Hadamard;
};

struct DetectorEntry {
    DetectorPort port;
    SingleBell bell;
    friend constexpr bool operator==(const DetectorEntry &, const DetectorEntry &) = default;
};
using DetectorMap = std::array<DetectorEntry, 4>;

/// Port assignment used for decoding. derive_detector_map must reproduce it.
const DetectorMap &frozen_detector_map();

SingleBell decode(const DetectorMap &map, DetectorPort port);

/// Stable text name of a port, e.g. "spPhiOut+".
std::string format(DetectorPort port);

/// One-photon state |b> on `port` with probes at zero.
StateVector prepare_single_bell(SingleBell b, Path port = Path::PortA);

/// Everything up to (not including) the detectors: the photon leaves on
/// spPhiOut or spPsiOut at a single slot. Throws IndefiniteSlotError if the
/// slots fail to merge and WiringError if the photon is not on portA/portB.
StateVector route_to_detectors(const StateVector &s, PhotonId photon, const SpbsaOptions &options = {});

/// Full chain ending in the raw detector click.
std::vector<Branch<DetectorPort>> detect(const StateVector &s, PhotonId photon, const BranchChoice &choice,
                                         const SpbsaOptions &options = {});

struct Detection {
    DetectorPort port;
    SingleBell bell;
    friend constexpr auto operator<=>(const Detection &, const Detection &) = default;
};

/// Full chain with the click decoded through the frozen map. The measured
/// photon stays in the returned (collapsed) state on its detector path.
std::vector<Branch<Detection>> analyze_photon(const StateVector &s, PhotonId photon, const BranchChoice &choice,
                                              const SpbsaOptions &options = {});

/// Sends each single-photon Bell state through the chain and records which
/// port fires. Throws AmbiguousMappingError unless each input fires exactly
/// one port with probability 1 and the result is a bijection.
DetectorMap derive_detector_map(const SpbsaOptions &options = {});

}  // namespace hbsa::spbsa

#endif  // HBSA_SPBSA_HPP
