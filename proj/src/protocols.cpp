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

#include "hbsa/protocols.hpp"

#include <cmath>
#include <map>

namespace hbsa::protocols {

void TwoQubitPhotonState::validate(double tol) const {
    const double p = std::norm(alpha) + std::norm(beta);
    const double t = std::norm(delta) + std::norm(eta);
    if (std::abs(p - 1.0) > tol || std::abs(t - 1.0) > tol) {
        throw InvalidArgumentError("two-qubit photon state is not normalized per degree of freedom");
    }
}

namespace {

std::pair<Amplitude, Amplitude> haar_qubit(Rng &rng) {
    const double a = rng.normal();
    const double b = rng.normal();
    const double c = rng.normal();
    const double d = rng.normal();
    const double n = std::sqrt(a * a + b * b + c * c + d * d);
    return {{a / n, b / n}, {c / n, d / n}};
}

}  // namespace

TwoQubitPhotonState random_two_qubit_state(Rng &rng) {
    TwoQubitPhotonState q;
    std::tie(q.alpha, q.beta) = haar_qubit(rng);
    std::tie(q.delta, q.eta) = haar_qubit(rng);
    return q;
}

StateVector photon_state(const TwoQubitPhotonState &q, Path path) {
    q.validate();
    std::vector<Term> terms;
    const std::pair<Polarization, Amplitude> pol[] = {{Polarization::H, q.alpha}, {Polarization::V, q.beta}};
    const std::pair<TimeSlot, Amplitude> tb[] = {{kEarly, q.delta}, {kLate, q.eta}};
    for (const auto &[p, a] : pol) {
        for (const auto &[t, b] : tb) {
            terms.push_back({CompositeBasis{{p, t, path}}, a * b});
        }
    }
    return StateVector::from_terms(std::move(terms));
}

namespace {

PauliOp op_for(Bell b) {
    switch (b) {
        case Bell::PhiPlus: return PauliOp::I;
        case Bell::PhiMinus: return PauliOp::Z;
        case Bell::PsiPlus: return PauliOp::X;
        case Bell::PsiMinus: return PauliOp::ZX;
    }
    return PauliOp::I;
}

bool flips(PauliOp op) { return op == PauliOp::X || op == PauliOp::ZX; }
bool phases(PauliOp op) { return op == PauliOp::Z || op == PauliOp::ZX; }

}  // namespace

CorrectionOps correction_for(HyperBellLabel label) { return {op_for(label.pol), op_for(label.tb)}; }

StateVector apply_correction(const StateVector &s, PhotonId photon, CorrectionOps ops) {
    return s.apply_label_map([&](const CompositeBasis &b, TermSink &sink) {
        CompositeBasis out = b;
        PhotonBasis &p = out.photon(photon);
        double sign = 1.0;
        if (flips(ops.pol)) {
            p.pol = p.pol == Polarization::H ? Polarization::V : Polarization::H;
        }
        if (phases(ops.pol) && p.pol == Polarization::V) {
            sign = -sign;
        }
        if (flips(ops.tb)) {
            p.slot = p.slot == kEarly ? kLate : kEarly;
        }
        if (phases(ops.tb) && p.slot == kLate) {
            sign = -sign;
        }
        sink.emit(sign, out);
    });
}

std::vector<TeleportBranch> teleport(const TwoQubitPhotonState &input, const BranchChoice &choice,
                                     const AnalyzerOptions &options) {
    // Photon 0 = X on portA, 1 = A on portB, 2 = Bob's B held aside.
    const StateVector start =
        photon_state(input, Path::PortA)
            .tensor(prepare_hyper_bell({Bell::PhiPlus, Bell::PhiPlus}, Path::PortB, Path::Held));
    const StateVector target = photon_state(input, Path::Held);
    std::vector<TeleportBranch> out;
    for (auto &br : analyze(start, {PhotonId{0}, PhotonId{1}}, choice, options)) {
        const StateVector raw = br.state.without_photon(PhotonId{1}).without_photon(PhotonId{0});
        TeleportBranch t;
        t.label = br.label;
        t.record = br.record;
        t.probability = br.probability;
        t.uncorrected_fidelity = fidelity(target, raw);
        t.bob = apply_correction(raw, PhotonId{0}, correction_for(br.label));
        t.fidelity = fidelity(target, t.bob);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<SwapBranch> swap(const BranchChoice &choice, const AnalyzerOptions &options) {
    // Photon 0 = A (held), 1 = C1 on portA, 2 = C2 on portB, 3 = B (held).
    const HyperBellLabel channel{Bell::PhiPlus, Bell::PhiPlus};
    const StateVector start = prepare_hyper_bell(channel, Path::Held, Path::PortA)
                                  .tensor(prepare_hyper_bell(channel, Path::PortB, Path::Held));
    std::vector<StateVector> references;
    for (const auto &label : all_hyper_labels()) {
        references.push_back(prepare_hyper_bell(label, Path::Held, Path::Held));
    }
    std::vector<SwapBranch> out;
    for (auto &br : analyze(start, {PhotonId{1}, PhotonId{2}}, choice, options)) {
        const StateVector ab = br.state.without_photon(PhotonId{2}).without_photon(PhotonId{1});
        int unit = -1;
        for (std::size_t i = 0; i < references.size(); ++i) {
            const double f = fidelity(references[i], ab);
            if (std::abs(f - 1.0) <= kNormTolerance) {
                if (unit >= 0) {
                    throw AmbiguousResidualError("residual state matches more than one hyperentangled Bell state");
                }
                unit = static_cast<int>(i);
            } else if (f > kNormTolerance) {
                throw AmbiguousResidualError("residual state is not a hyperentangled Bell state");
            }
        }
        if (unit < 0) {
            throw AmbiguousResidualError("residual state matches no hyperentangled Bell state");
        }
        SwapBranch s;
        s.charlie = br.label;
        s.ab = all_hyper_labels()[unit];
        s.record = br.record;
        s.probability = br.probability;
        s.match = s.charlie == s.ab;
        out.push_back(s);
    }
    return out;
}

std::vector<LabelSummary> summarize(const std::vector<TeleportBranch> &branches) {
    std::map<HyperBellLabel, LabelSummary> acc;
    for (const auto &b : branches) {
        auto &s = acc[b.label];
        s.label = b.label;
        s.probability += b.probability;
        s.min_fidelity = std::min(s.min_fidelity, b.fidelity);
        s.mean_uncorrected_fidelity += b.probability * b.uncorrected_fidelity;
        s.ab = b.label;
        ++s.branches;
    }
    std::vector<LabelSummary> out;
    for (auto &[label, s] : acc) {
        s.mean_uncorrected_fidelity /= s.probability;
        out.push_back(s);
    }
    return out;
}

std::vector<LabelSummary> summarize(const std::vector<SwapBranch> &branches) {
    std::map<HyperBellLabel, LabelSummary> acc;
    for (const auto &b : branches) {
        auto &s = acc[b.charlie];
        const bool first = s.branches == 0;
        s.label = b.charlie;
        s.probability += b.probability;
        s.match = s.match && b.match && (first || s.ab == b.ab);
        s.min_fidelity = std::min(s.min_fidelity, b.match ? 1.0 : 0.0);
        s.ab = b.ab;
        ++s.branches;
    }
    std::vector<LabelSummary> out;
    for (auto &[label, s] : acc) {
        out.push_back(s);
    }
    return out;
}

}  // namespace hbsa::protocols
