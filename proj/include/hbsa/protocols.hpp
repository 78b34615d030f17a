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

#ifndef HBSA_PROTOCOLS_HPP
#define HBSA_PROTOCOLS_HPP

#include <vector>

#include "hbsa/analyzer.hpp"
#include "hbsa/rng.hpp"
#include "hbsa/statevec.hpp"

namespace hbsa::protocols {

/// (alpha|H> + beta|V>) x (delta|S> + eta|L>) on one photon.
struct TwoQubitPhotonState {
    Amplitude alpha{1.0, 0.0};
    Amplitude beta{0.0, 0.0};
    Amplitude delta{1.0, 0.0};
    Amplitude eta{0.0, 0.0};

    /// Throws InvalidArgumentError unless each factor has unit norm within tol.
    void validate(double tol = kNormTolerance) const;
};

/// Two independent Haar-random qubits. Draw order: Re alpha, Im alpha,
/// Re beta, Im beta (each Rng::normal), normalize; then delta, eta likewise.
TwoQubitPhotonState random_two_qubit_state(Rng &rng);

StateVector photon_state(const TwoQubitPhotonState &q, Path path = Path::Held);

enum class PauliOp { I, Z, X, ZX };  // ZX: bit flip first, then phase flip

struct CorrectionOps {
    PauliOp pol = PauliOp::I;
    PauliOp tb = PauliOp::I;
    friend constexpr bool operator==(const CorrectionOps &, const CorrectionOps &) = default;
};

/// Phi+ -> I, Phi- -> Z, Psi+ -> X, Psi- -> ZX, independently per DOF.
CorrectionOps correction_for(HyperBellLabel label);

StateVector apply_correction(const StateVector &s, PhotonId photon, CorrectionOps ops);

struct TeleportBranch {
    HyperBellLabel label;
    MeasurementRecord record;
    double probability = 0.0;
    double fidelity = 0.0;              // after correction
    double uncorrected_fidelity = 0.0;  // Bob's raw state vs the input
    StateVector bob;                    // after correction
};

/// Teleports one photon's two qubits over the shared PhiP+ x PhiT+ channel.
/// Photon X (input) and A enter the analyzer; Bob's photon B is held.
std::vector<TeleportBranch> teleport(const TwoQubitPhotonState &input, const BranchChoice &choice,
                                     const AnalyzerOptions &options = {});

struct SwapBranch {
    HyperBellLabel charlie;
    HyperBellLabel ab;
    MeasurementRecord record;
    double probability = 0.0;
    bool match = false;
};

/// Entanglement swapping between (A, C1) and (C2, B), both PhiP+ x PhiT+.
/// Charlie analyzes (C1, C2); the residual (A, B) state is identified by
/// overlap against all 16 hyperentangled Bell states. Throws
/// AmbiguousResidualError unless exactly one overlap has unit magnitude.
std::vector<SwapBranch> swap(const BranchChoice &choice, const AnalyzerOptions &options = {});

/// Per-label roll-up of branches sharing a measured label, in label order.
struct LabelSummary {
    HyperBellLabel label;
    double probability = 0.0;
    double min_fidelity = 1.0;  // teleport: corrected fidelity; swap: 1 if AB matches, else 0
    double mean_uncorrected_fidelity = 0.0;
    HyperBellLabel ab;          // swap only
    bool match = true;          // swap only
    int branches = 0;
};

std::vector<LabelSummary> summarize(const std::vector<TeleportBranch> &branches);
std::vector<LabelSummary> summarize(const std::vector<SwapBranch> &branches);

}  // namespace hbsa::protocols

#endif  // HBSA_PROTOCOLS_HPP
