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

#include "hbsa/optics.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace hbsa::optics {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::string where(PhotonId photon, Path path) {
    return "photon " + std::to_string(photon.index) + " on " + std::string(to_string(path));
}

Polarization flipped(Polarization p) { return p == Polarization::H ? Polarization::V : Polarization::H; }

}  // namespace

StateVector pbs(const StateVector &s, const PbsWiring &w) {
    for (std::size_t i = 0; i < w.bank.size(); ++i) {
        for (std::size_t j = i + 1; j < w.bank.size(); ++j) {
            const auto &a = w.bank[i];
            const auto &b = w.bank[j];
            if (a.in1 == b.in1 || (a.in2 && (*a.in2 == b.in1 || *a.in2 == b.in2)) ||
                (b.in2 && *b.in2 == a.in1)) {
                throw WiringError("PBS bank has overlapping input ports");
            }
        }
        if (w.bank[i].out1 == w.bank[i].out2) {
            throw WiringError("PBS outputs must be distinct");
        }
    }
    return s.apply_label_map([&](const CompositeBasis &b, TermSink &sink) {
        CompositeBasis out = b;
        PhotonBasis &p = out.photon(w.photon);
        for (const auto &cube : w.bank) {
            const bool transmitted = p.pol == Polarization::H;
            if (p.path == cube.in1) {
                p.path = transmitted ? cube.out1 : cube.out2;
                sink.emit(1.0, out);
                return;
            }
            if (cube.in2 && p.path == *cube.in2) {
                p.path = transmitted ? cube.out2 : cube.out1;
                sink.emit(1.0, out);
                return;
            }
        }
        throw WiringError(where(w.photon, p.path) + " is not on any PBS input");
    });
}

StateVector hwp(const StateVector &s, PhotonId photon, HwpVariant variant) {
    const double sign = variant == HwpVariant::Hadamard ? 1.0 : -1.0;
    return s.apply_label_map([&](const CompositeBasis &b, TermSink &sink) {
        CompositeBasis h = b;
        CompositeBasis v = b;
        h.photon(photon).pol = Polarization::H;
        v.photon(photon).pol = Polarization::V;
        if (b.photon(photon).pol == Polarization::H) {
            sink.emit(kInvSqrt2, h);
            sink.emit(sign * kInvSqrt2, v);
        } else {
            sink.emit(kInvSqrt2, h);
            sink.emit(-sign * kInvSqrt2, v);
        }
    });
}

StateVector pockels(const StateVector &s, PhotonId photon, TimeSlot active_slot) {
    return s.apply_label_map([&](const CompositeBasis &b, TermSink &sink) {
        CompositeBasis out = b;
        PhotonBasis &p = out.photon(photon);
        if (p.slot == active_slot) {
            p.pol = flipped(p.pol);
        }
        sink.emit(1.0, out);
    });
}

StateVector delay(const StateVector &s, PhotonId photon, Path path, int shift) {
    return s.apply_label_map([&](const CompositeBasis &b, TermSink &sink) {
        CompositeBasis out = b;
        PhotonBasis &p = out.photon(photon);
        if (p.path == path) {
            p.slot.value = static_cast<std::int8_t>(p.slot.value + shift);
        }
        sink.emit(1.0, out);
    });
}

StateVector kerr_tag(const StateVector &s, Path watched_path, Probe probe, int sign) {
    return s.apply_label_map([&](const CompositeBasis &b, TermSink &sink) {
        CompositeBasis out = b;
        int n = 0;
        for (const auto &p : b.photons()) {
            n += p.path == watched_path ? 1 : 0;
        }
        int &k = out.probes()[probe];
        k += sign * n;
        if (std::abs(k) > kMaxCounter) {
            throw CounterOverflowError("probe " + std::to_string(static_cast<int>(probe)) + " counter reached " +
                                       std::to_string(k));
        }
        sink.emit(1.0, out);
    });
}

std::vector<Branch<HomodyneOutcome>> homodyne(const StateVector &s, Probe probe, const BranchChoice &choice) {
    for (const auto &t : s.terms()) {
        const int k = t.basis.probes()[probe];
        if (k != 0 && k != 2 && k != -2) {
            throw UnexpectedCounterError("probe " + std::to_string(static_cast<int>(probe)) + " holds " +
                                         std::to_string(k) + ", outside {-2, 0, +2}");
        }
    }
    auto branches = measure<HomodyneOutcome>(
        s, [&](const CompositeBasis &b) { return b.probes()[probe] == 0 ? HomodyneOutcome::Zero : HomodyneOutcome::Two; },
        choice);
    // The X-quadrature result leaves a relative phase between the +2 and -2
    // branches that the feed-forward cancels. The counter model never
    // materializes that phase, so the corrected state is the collapsed one
    // with the probe returned to its reference.
    for (auto &br : branches) {
        std::vector<Term> reset;
        reset.reserve(br.state.size());
        for (const auto &t : br.state.terms()) {
            Term r = t;
            r.basis.probes()[probe] = 0;
            reset.push_back(r);
        }
        br.state = StateVector::from_terms(std::move(reset), true);
    }
    return branches;
}

bool is_detector_facing(Path p) { return p == Path::SpPhiOut || p == Path::SpPsiOut; }

TimeSlot require_definite_slot(const StateVector &s, PhotonId photon) {
    if (s.empty()) {
        throw ZeroStateError("empty state");
    }
    const TimeSlot slot = s.terms().front().basis.photon(photon).slot;
    for (const auto &t : s.terms()) {
        if (t.basis.photon(photon).slot != slot) {
            throw IndefiniteSlotError("photon " + std::to_string(photon.index) +
                                      " reaches the detector in more than one time slot");
        }
    }
    return slot;
}

std::vector<Branch<DetectorPort>> detect_polarization(const StateVector &s, PhotonId photon, PolarizationBasis basis,
                                                      const BranchChoice &choice, HwpVariant variant) {
    for (const auto &t : s.terms()) {
        const Path p = t.basis.photon(photon).path;
        if (!is_detector_facing(p)) {
            throw WiringError(where(photon, p) + " does not face a detector");
        }
    }
    require_definite_slot(s, photon);

    StateVector routed = basis == PolarizationBasis::Diagonal ? hwp(s, photon, variant) : s;
    routed = pbs(routed, PbsWiring{photon,
                                   {Pbs{Path::SpPhiOut, std::nullopt, Path::DetPhiPlus, Path::DetPhiMinus},
                                    Pbs{Path::SpPsiOut, std::nullopt, Path::DetPsiPlus, Path::DetPsiMinus}}});
    return measure<DetectorPort>(
        routed,
        [&](const CompositeBasis &b) {
            switch (b.photon(photon).path) {
                case Path::DetPhiPlus: return DetectorPort{Path::SpPhiOut, Sign::Plus};
                case Path::DetPhiMinus: return DetectorPort{Path::SpPhiOut, Sign::Minus};
                case Path::DetPsiPlus: return DetectorPort{Path::SpPsiOut, Sign::Plus};
                default: return DetectorPort{Path::SpPsiOut, Sign::Minus};
            }
        },
        choice);
}

}  // namespace hbsa::optics
