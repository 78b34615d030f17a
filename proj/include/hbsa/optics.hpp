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

#ifndef HBSA_OPTICS_HPP
#define HBSA_OPTICS_HPP

#include <compare>
#include <optional>
#include <vector>

#include "hbsa/statevec.hpp"

namespace hbsa::optics {

/// A two-port polarizing beam splitter. H is transmitted (in1 -> out1,
/// in2 -> out2) and V is reflected (in1 -> out2, in2 -> out1). An absent in2
/// is an unused vacuum port.
struct Pbs {
    Path in1;
    std::optional<Path> in2;
    Path out1;
    Path out2;
};

/// One photon pushed through a bank of PBSs that sit side by side. Every term
/// must place the photon on one of the bank's input ports.
struct PbsWiring {
    PhotonId photon;
    std::vector<Pbs> bank;
};

StateVector pbs(const StateVector &s, const PbsWiring &w);

enum class HwpVariant {
    Hadamard,
    /// Fault-injection hook: H -> (H - V)/sqrt2, V -> (H + V)/sqrt2.
    SignFlipped,
};

/// Half-wave plate on one photon, whatever its path.
StateVector hwp(const StateVector &s, PhotonId photon, HwpVariant variant = HwpVariant::Hadamard);

/// Pockels cell: H <-> V on terms where the photon sits in active_slot.
StateVector pockels(const StateVector &s, PhotonId photon, TimeSlot active_slot);

/// Shifts the slot of the photon by `shift` on terms where it occupies `path`.
StateVector delay(const StateVector &s, PhotonId photon, Path path, int shift);

inline constexpr int kMaxCounter = 2;

/// Cross-Kerr phase tagger: adds sign * (photons on watched_path) to the
/// probe counter. Throws CounterOverflowError if any |counter| exceeds 2.
StateVector kerr_tag(const StateVector &s, Path watched_path, Probe probe, int sign);

/// Homodyne magnitude class |k| of a probe; the sign of k is never exposed.
enum class HomodyneOutcome { Zero = 0, Two = 2 };

/// X-quadrature readout of one probe. Collapses onto |k| and then resets the
/// counter to zero with the feed-forward phase correction applied, so a TWO
/// outcome keeps both sign branches coherent and restores the photonic part.
std::vector<Branch<HomodyneOutcome>> homodyne(const StateVector &s, Probe probe,
                                              const BranchChoice &choice);

enum class Sign { Plus, Minus };
enum class PolarizationBasis { Rectilinear, Diagonal };

/// A detector is addressed by the path feeding it and the sign of the
/// polarization eigenstate it projects onto.
struct DetectorPort {
    Path arm;
    Sign sign;
    friend constexpr auto operator<=>(const DetectorPort &, const DetectorPort &) = default;
};

/// Paths that terminate in a detector pair.
bool is_detector_facing(Path p);

/// Polarization measurement on a detector-facing path. Diagonal basis is an
/// HWP followed by a PBS onto the +/- detectors; the photon ends on the fired
/// detector path. Throws IndefiniteSlotError if the photon's slot differs
/// between terms, WiringError if it is not on a detector-facing path.
std::vector<Branch<DetectorPort>> detect_polarization(const StateVector &s, PhotonId photon,
                                                      PolarizationBasis basis,
                                                      const BranchChoice &choice,
                                                      HwpVariant variant = HwpVariant::Hadamard);

/// Throws IndefiniteSlotError unless the photon has the same slot on every term.
TimeSlot require_definite_slot(const StateVector &s, PhotonId photon);

}  // namespace hbsa::optics

#endif  // HBSA_OPTICS_HPP
