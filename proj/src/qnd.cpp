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

#include "hbsa/qnd.hpp"

#include <string>
#include <utility>

namespace hbsa::qnd {

using optics::Pbs;
using optics::PbsWiring;

const std::array<Table1Row, 4> &table1() {
    static const std::array<Table1Row, 4> rows = {{
        {Bell::PhiPlus, HomodyneOutcome::Zero, HomodyneOutcome::Zero, Bell::PhiPlus},
        {Bell::PhiMinus, HomodyneOutcome::Zero, HomodyneOutcome::Two, Bell::PsiPlus},
        {Bell::PsiPlus, HomodyneOutcome::Two, HomodyneOutcome::Zero, Bell::PhiMinus},
        {Bell::PsiMinus, HomodyneOutcome::Two, HomodyneOutcome::Two, Bell::PsiMinus},
    }};
    return rows;
}

Bell decode_shifts(HomodyneOutcome shift1, HomodyneOutcome shift2) {
    for (const auto &row : table1()) {
        if (row.shift1 == shift1 && row.shift2 == shift2) {
            return row.original;
        }
    }
    throw InvalidArgumentError("unknown homodyne outcome pair");
}

Bell relabel(Bell original) {
    for (const auto &row : table1()) {
        if (row.original == original) {
            return row.relabeled;
        }
    }
    throw InvalidArgumentError("unknown Bell label");
}

namespace {

void require_on_ports(const StateVector &s, AnalyzerPair pair, Probe probe) {
    for (const auto &t : s.terms()) {
        if (t.basis.photon(pair.first).path != Path::PortA || t.basis.photon(pair.second).path != Path::PortB) {
            throw WiringError("QND expects one photon on portA and one on portB");
        }
        if (t.basis.probes()[probe] != 0) {
            throw UnexpectedCounterError("QND probe counter must start at zero");
        }
    }
}

std::vector<Branch<HomodyneOutcome>> qnd_block(StateVector s, AnalyzerPair pair, Path up, Path down, Probe probe,
                                               const BranchChoice &choice) {
    require_on_ports(s, pair, probe);
    const Pbs mix{Path::PortA, Path::PortB, down, up};
    const Pbs unmix{down, up, Path::PortA, Path::PortB};
    s = optics::pbs(s, PbsWiring{pair.first, {mix}});
    s = optics::pbs(s, PbsWiring{pair.second, {mix}});
    s = optics::kerr_tag(s, up, probe, +1);
    s = optics::kerr_tag(s, down, probe, -1);
    s = optics::pbs(s, PbsWiring{pair.first, {unmix}});
    s = optics::pbs(s, PbsWiring{pair.second, {unmix}});
    return optics::homodyne(s, probe, choice);
}

}  // namespace

std::vector<Branch<HomodyneOutcome>> parity_qnd(const StateVector &s, AnalyzerPair pair, const BranchChoice &choice) {
    return qnd_block(s, pair, Path::Qnd1Up, Path::Qnd1Down, Probe::One, choice);
}

std::vector<Branch<HomodyneOutcome>> phase_qnd(const StateVector &s, AnalyzerPair pair, const BranchChoice &choice,
                                               const QndOptions &options) {
    StateVector rotated = optics::hwp(s, pair.first, options.first_hwp);
    rotated = optics::hwp(rotated, pair.second);
    return qnd_block(std::move(rotated), pair, Path::Qnd2Up, Path::Qnd2Down, Probe::Two, choice);
}

std::vector<Step1Branch> measure_polarization(const StateVector &s, AnalyzerPair pair, const BranchChoice &choice,
                                              const QndOptions &options) {
    std::vector<Step1Branch> out;
    for (auto &parity : parity_qnd(s, pair, choice)) {
        for (auto &phase : phase_qnd(parity.state, pair, choice, options)) {
            Step1Record rec;
            rec.shift1 = parity.outcome;
            rec.shift2 = phase.outcome;
            rec.original = decode_shifts(rec.shift1, rec.shift2);
            rec.relabeled = relabel(rec.original);
            out.push_back({rec, parity.probability * phase.probability, std::move(phase.state)});
        }
    }
    return out;
}

namespace {

ReducedState<std::pair<int, int>> timebin_state(const StateVector &s, AnalyzerPair pair) {
    return reduce<std::pair<int, int>>(
        s,
        [&](const CompositeBasis &b) {
            return std::pair<int, int>{b.photon(pair.first).slot.value, b.photon(pair.second).slot.value};
        },
        [&](const CompositeBasis &b) {
            CompositeBasis rest = b;
            rest.photon(pair.first).slot = kEarly;
            rest.photon(pair.second).slot = kEarly;
            return rest;
        });
}

}  // namespace

PolarizationAnalysis polarization_bsa(const StateVector &s, const BranchChoice &, AnalyzerPair pair,
                                      const QndOptions &options) {
    auto branches = measure_polarization(s, pair, BranchChoice::exhaustive(), options);
    if (branches.size() != 1) {
        throw InconsistentBranchError("polarization analysis produced " + std::to_string(branches.size()) +
                                      " distinct outcomes; input is not a polarization Bell state");
    }
    auto &only = branches.front();
    const double f = overlap(timebin_state(s, pair), timebin_state(only.state, pair));
    return {only.record, std::move(only.state), f};
}

}  // namespace hbsa::qnd
