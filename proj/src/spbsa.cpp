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

#include "hbsa/spbsa.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hbsa::spbsa {

using optics::Pbs;
using optics::PbsWiring;
using optics::Sign;

const DetectorMap &frozen_detector_map() {
    static const DetectorMap map = {{
        {{Path::SpPhiOut, Sign::Plus}, SingleBell::PhiPlus},
        {{Path::SpPhiOut, Sign::Minus}, SingleBell::PhiMinus},
        {{Path::SpPsiOut, Sign::Plus}, SingleBell::PsiPlus},
        {{Path::SpPsiOut, Sign::Minus}, SingleBell::PsiMinus},
    }};
    return map;
}

SingleBell decode(const DetectorMap &map, DetectorPort port) {
    for (const auto &e : map) {
        if (e.port == port) {
            return e.bell;
        }
    }
    throw AmbiguousMappingError("detector " + format(port) + " has no assigned Bell state");
}

std::string format(DetectorPort port) {
    return std::string(to_string(port.arm)) + (port.sign == Sign::Plus ? "+" : "-");
}

StateVector prepare_single_bell(SingleBell b, Path port) {
    const double r = 1.0 / std::numbers::sqrt2;
    const double sign = (b == SingleBell::PhiMinus || b == SingleBell::PsiMinus) ? -1.0 : 1.0;
    const bool phi = b == SingleBell::PhiPlus || b == SingleBell::PhiMinus;
    const PhotonBasis first{Polarization::H, phi ? kLate : kEarly, port};
    const PhotonBasis second{Polarization::V, phi ? kEarly : kLate, port};
    return StateVector::from_terms({{CompositeBasis{first}, r}, {CompositeBasis{second}, sign * r}});
}

StateVector route_to_detectors(const StateVector &s, PhotonId photon, const SpbsaOptions &options) {
    if (s.empty()) {
        throw ZeroStateError("empty state");
    }
    const Path port = s.terms().front().basis.photon(photon).path;
    for (const auto &t : s.terms()) {
        const Path p = t.basis.photon(photon).path;
        if (p != port || (p != Path::PortA && p != Path::PortB)) {
            throw WiringError("SPBSA input must be a single analyzer port");
        }
    }

    const bool late_first = options.layout == Layout::LateCellFirst;
    // With PC_L first the phi family leaves the cell vertical; with PC_S
    // first it leaves horizontal. The family PBS follows suit.
    const Pbs family = late_first ? Pbs{port, std::nullopt, Path::SpPsi, Path::SpPhi}
                                  : Pbs{port, std::nullopt, Path::SpPhi, Path::SpPsi};

    StateVector out = optics::pockels(s, photon, late_first ? kLate : kEarly);
    out = optics::pbs(out, PbsWiring{photon, {family}});
    out = optics::pockels(out, photon, late_first ? kEarly : kLate);

    // In spPhi the early component is H, in spPsi it is V; each goes long.
    out = optics::pbs(out, PbsWiring{photon,
                                     {Pbs{Path::SpPhi, std::nullopt, Path::SpPhiLong, Path::SpPhiShort},
                                      Pbs{Path::SpPsi, std::nullopt, Path::SpPsiShort, Path::SpPsiLong}}});
    out = optics::delay(out, photon, Path::SpPhiLong, +1);
    out = optics::delay(out, photon, Path::SpPsiLong, +1);
    out = optics::pbs(out, PbsWiring{photon,
                                     {Pbs{Path::SpPhiLong, Path::SpPhiShort, Path::SpPhiOut, Path::SpPhiDump},
                                      Pbs{Path::SpPsiShort, Path::SpPsiLong, Path::SpPsiOut, Path::SpPsiDump}}});

    for (const auto &t : out.terms()) {
        const Path p = t.basis.photon(photon).path;
        if (p == Path::SpPhiDump || p == Path::SpPsiDump) {
            throw WiringError("photon left an interferometer through its unmonitored port");
        }
    }
    optics::require_definite_slot(out, photon);
    return out;
}

std::vector<Branch<DetectorPort>> detect(const StateVector &s, PhotonId photon, const BranchChoice &choice,
                                         const SpbsaOptions &options) {
    return optics::detect_polarization(route_to_detectors(s, photon, options), photon,
                                       optics::PolarizationBasis::Diagonal, choice, options.hwp);
}

std::vector<Branch<Detection>> analyze_photon(const StateVector &s, PhotonId photon, const BranchChoice &choice,
                                              const SpbsaOptions &options) {
    std::vector<Branch<Detection>> out;
    for (auto &br : detect(s, photon, choice, options)) {
        const Detection d{br.outcome, decode(frozen_detector_map(), br.outcome)};
        out.push_back({d, br.probability, std::move(br.state)});
    }
    return out;
}

DetectorMap derive_detector_map(const SpbsaOptions &options) {
    DetectorMap map{};
    for (std::size_t i = 0; i < kAllSingleBells.size(); ++i) {
        const SingleBell b = kAllSingleBells[i];
        const auto branches = detect(prepare_single_bell(b), PhotonId{0}, BranchChoice::exhaustive(), options);
        if (branches.size() != 1 || std::abs(branches.front().probability - 1.0) > kNormTolerance) {
            throw AmbiguousMappingError("input " + hbsa::format(b) + " fires " + std::to_string(branches.size()) +
                                        " detectors");
        }
        map[i] = {branches.front().outcome, b};
        for (std::size_t j = 0; j < i; ++j) {
            if (map[j].port == map[i].port) {
                throw AmbiguousMappingError("inputs " + hbsa::format(map[j].bell) + " and " + hbsa::format(b) +
                                            " fire the same detector");
            }
        }
    }
    return map;
}

}  // namespace hbsa::spbsa
