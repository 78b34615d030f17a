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

#include "hbsa/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hbsa {

namespace {

using SB = SingleBell;

Table2Group group(int id, std::vector<std::pair<Bell, Bell>> members, std::vector<DetectionPair> detections) {
    return {id, std::move(members), std::move(detections)};
}

}  // namespace

const Table2 &table2() {
    static const Table2 t = {
        group(1,
              {{Bell::PhiPlus, Bell::PhiPlus},
               {Bell::PhiMinus, Bell::PhiMinus},
               {Bell::PsiPlus, Bell::PsiPlus},
               {Bell::PsiMinus, Bell::PsiMinus}},
              {{SB::PhiPlus, SB::PhiPlus},
               {SB::PhiMinus, SB::PhiMinus},
               {SB::PsiPlus, SB::PsiPlus},
               {SB::PsiMinus, SB::PsiMinus}}),
        group(2,
              {{Bell::PhiPlus, Bell::PsiPlus},
               {Bell::PhiMinus, Bell::PsiMinus},
               {Bell::PsiPlus, Bell::PhiPlus},
               {Bell::PsiMinus, Bell::PhiMinus}},
              {{SB::PhiPlus, SB::PsiPlus},
               {SB::PhiMinus, SB::PsiMinus},
               {SB::PsiPlus, SB::PhiPlus},
               {SB::PsiMinus, SB::PhiMinus}}),
        group(3,
              {{Bell::PhiPlus, Bell::PhiMinus},
               {Bell::PhiMinus, Bell::PhiPlus},
               {Bell::PsiPlus, Bell::PsiMinus},
               {Bell::PsiMinus, Bell::PsiPlus}},
              {{SB::PhiPlus, SB::PhiMinus},
               {SB::PhiMinus, SB::PhiPlus},
               {SB::PsiPlus, SB::PsiMinus},
               {SB::PsiMinus, SB::PsiPlus}}),
        group(4,
              {{Bell::PhiPlus, Bell::PsiMinus},
               {Bell::PhiMinus, Bell::PsiPlus},
               {Bell::PsiPlus, Bell::PhiMinus},
               {Bell::PsiMinus, Bell::PhiPlus}},
              {{SB::PhiPlus, SB::PsiMinus},
               {SB::PhiMinus, SB::PsiPlus},
               {SB::PsiPlus, SB::PhiMinus},
               {SB::PsiMinus, SB::PhiPlus}}),
    };
    return t;
}

Table2 corrupted_table2() {
    Table2 t = table2();
    std::swap(t[0].detections[0], t[1].detections[0]);
    return t;
}

int table2_group_of(DetectionPair detections) {
    for (const auto &g : table2()) {
        if (std::find(g.detections.begin(), g.detections.end(), detections) != g.detections.end()) {
            return g.id;
        }
    }
    throw TableMismatchError("detection pair is in no group");
}

Bell table2_lookup(Bell relabeled, SingleBell det_a, SingleBell det_b) {
    const auto &g = table2()[table2_group_of({det_a, det_b}) - 1];
    for (const auto &[pol, tb] : g.members) {
        if (pol == relabeled) {
            return tb;
        }
    }
    throw TableMismatchError("group has no member for the relabeled state");
}

HyperBellLabel decode(const MeasurementRecord &record) {
    const Bell original = qnd::decode_shifts(record.step1.shift1, record.step1.shift2);
    return {original, table2_lookup(qnd::relabel(original), record.det_a, record.det_b)};
}

namespace {

struct Component {
    int first;   // 0 for H / S, 1 for V / L
    int second;
    double sign;
};

std::array<Component, 2> bell_components(Bell b) {
    const double s = is_minus(b) ? -1.0 : 1.0;
    if (is_phi(b)) {
        return {{{0, 0, 1.0}, {1, 1, s}}};
    }
    return {{{0, 1, 1.0}, {1, 0, s}}};
}

Polarization pol_of(int bit) { return bit == 0 ? Polarization::H : Polarization::V; }
TimeSlot slot_of(int bit) { return bit == 0 ? kEarly : kLate; }

}  // namespace

StateVector prepare_hyper_bell(HyperBellLabel label, Path path_a, Path path_b) {
    std::vector<Term> terms;
    for (const auto &p : bell_components(label.pol)) {
        for (const auto &t : bell_components(label.tb)) {
            terms.push_back({CompositeBasis{{pol_of(p.first), slot_of(t.first), path_a},
                                            {pol_of(p.second), slot_of(t.second), path_b}},
                             0.5 * p.sign * t.sign});
        }
    }
    return StateVector::from_terms(std::move(terms));
}

std::vector<AnalysisBranch> analyze(const StateVector &s, qnd::AnalyzerPair pair, const BranchChoice &choice,
                                    const AnalyzerOptions &options) {
    std::vector<AnalysisBranch> out;
    for (auto &step1 : qnd::measure_polarization(s, pair, choice, options.qnd)) {
        for (auto &a : spbsa::analyze_photon(step1.state, pair.first, choice, options.spbsa)) {
            for (auto &b : spbsa::analyze_photon(a.state, pair.second, choice, options.spbsa)) {
                MeasurementRecord rec{step1.record, a.outcome.bell, b.outcome.bell};
                out.push_back(
                    {decode(rec), rec, step1.probability * a.probability * b.probability, std::move(b.state)});
            }
        }
    }
    return out;
}

Classification classify(const StateVector &s, const BranchChoice &choice, qnd::AnalyzerPair pair,
                        const AnalyzerOptions &options) {
    auto all = analyze(s, pair, BranchChoice::exhaustive(), options);
    double total = 0.0;
    for (const auto &b : all) {
        total += b.probability;
        if (b.label != all.front().label) {
            throw InconsistentBranchError("branches disagree: " + format(all.front().label) + " vs " +
                                          format(b.label));
        }
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw NonUnitaryError("branch probabilities sum to " + std::to_string(total));
    }
    const HyperBellLabel label = all.front().label;
    if (choice.is_exhaustive()) {
        return {label, std::move(all)};
    }
    std::vector<AnalysisBranch> one;
    one.push_back(sample_branch(std::move(all), choice.rng()));
    return {label, std::move(one)};
}

std::vector<std::pair<DetectionPair, double>> detection_support(Bell relabeled, Bell tb,
                                                                const AnalyzerOptions &options) {
    const StateVector s = prepare_hyper_bell({relabeled, tb});
    std::map<DetectionPair, double> acc;
    for (const auto &a : spbsa::analyze_photon(s, kPhotonA, BranchChoice::exhaustive(), options.spbsa)) {
        for (const auto &b : spbsa::analyze_photon(a.state, kPhotonB, BranchChoice::exhaustive(), options.spbsa)) {
            acc[{a.outcome.bell, b.outcome.bell}] += a.probability * b.probability;
        }
    }
    return {acc.begin(), acc.end()};
}

namespace {

struct Reconstruction {
    Table2 groups;
    double max_probability_error = 0.0;
};

Reconstruction reconstruct(const AnalyzerOptions &options) {
    Reconstruction r;
    std::map<std::vector<DetectionPair>, std::vector<std::pair<Bell, Bell>>> by_support;
    std::map<std::pair<Bell, Bell>, std::vector<DetectionPair>> support_of;
    for (Bell p : kAllBells) {
        for (Bell t : kAllBells) {
            std::vector<DetectionPair> support;
            for (const auto &[pair, prob] : detection_support(p, t, options)) {
                support.push_back(pair);
                r.max_probability_error = std::max(r.max_probability_error, std::abs(prob - 0.25));
            }
            by_support[support].push_back({p, t});
            support_of[{p, t}] = support;
        }
    }
    auto take = [&](const std::vector<DetectionPair> &support) {
        auto it = by_support.find(support);
        if (it == by_support.end()) {
            return;
        }
        r.groups.push_back({static_cast<int>(r.groups.size()) + 1, it->second, it->first});
        by_support.erase(it);
    };
    for (Bell t : {Bell::PhiPlus, Bell::PsiPlus, Bell::PhiMinus, Bell::PsiMinus}) {
        take(support_of[{Bell::PhiPlus, t}]);
    }
    while (!by_support.empty()) {
        take(by_support.begin()->first);
    }
    return r;
}

std::string describe(const std::vector<std::pair<Bell, Bell>> &members) {
    std::string s;
    for (const auto &[p, t] : members) {
        s += (s.empty() ? "" : ", ") + format(p, Dof::Polarization) + "x" + format(t, Dof::TimeBin);
    }
    return "{" + s + "}";
}

std::string describe(const std::vector<DetectionPair> &detections) {
    std::string s;
    for (const auto &[a, b] : detections) {
        s += (s.empty() ? "" : ", ") + format(a) + "_A " + format(b) + "_B";
    }
    return "{" + s + "}";
}

}  // namespace

Table2 reconstruct_table2(const AnalyzerOptions &options) { return reconstruct(options).groups; }

std::vector<std::string> diff_table2(const Table2 &transcribed, const Table2 &simulated) {
    std::vector<std::string> out;
    const std::size_t n = std::max(transcribed.size(), simulated.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::string tag = "group " + std::to_string(i + 1);
        if (i >= transcribed.size() || i >= simulated.size()) {
            out.push_back(tag + ": present in only one table");
            continue;
        }
        if (transcribed[i].members != simulated[i].members) {
            out.push_back(tag + " members: transcribed " + describe(transcribed[i].members) + " simulated " +
                          describe(simulated[i].members));
        }
        if (transcribed[i].detections != simulated[i].detections) {
            out.push_back(tag + " detections: transcribed " + describe(transcribed[i].detections) +
                          " simulated " + describe(simulated[i].detections));
        }
    }
    return out;
}

Table2 verify_table2(const AnalyzerOptions &options, const Table2 &transcribed) {
    auto r = reconstruct(options);
    const auto diffs = diff_table2(transcribed, r.groups);
    if (!diffs.empty()) {
        std::ostringstream msg;
        msg << "detection table mismatch:";
        for (const auto &d : diffs) {
            msg << "\n  " << d;
        }
        throw TableMismatchError(msg.str());
    }
    if (r.max_probability_error > kNormTolerance) {
        throw TableMismatchError("detection probabilities deviate from 1/4 by " +
                                 std::to_string(r.max_probability_error));
    }
    return std::move(r.groups);
}

namespace {

ReducedState<std::pair<int, int>> polarization_state(const StateVector &s) {
    return reduce<std::pair<int, int>>(
        s,
        [](const CompositeBasis &b) {
            return std::pair<int, int>{static_cast<int>(b.photon(kPhotonA).pol),
                                       static_cast<int>(b.photon(kPhotonB).pol)};
        },
        [](const CompositeBasis &b) {
            CompositeBasis rest = b;
            rest.photon(kPhotonA).pol = Polarization::H;
            rest.photon(kPhotonB).pol = Polarization::H;
            return rest;
        });
}

}  // namespace

Table1Check check_table1(HyperBellLabel input, const AnalyzerOptions &options) {
    Table1Check out;
    out.input = input;
    try {
        const StateVector s = prepare_hyper_bell(input);
        auto analysis = qnd::polarization_bsa(s, BranchChoice::exhaustive(), {}, options.qnd);
        out.record = analysis.record;
        out.timebin_fidelity = analysis.timebin_fidelity;
        out.relabeled_fidelity = overlap(polarization_state(prepare_hyper_bell({analysis.record.relabeled, input.tb})),
                                         polarization_state(analysis.state));
        const auto &row = qnd::table1()[static_cast<int>(input.pol)];
        out.match = analysis.record.original == row.original && analysis.record.shift1 == row.shift1 &&
                    analysis.record.shift2 == row.shift2 && analysis.record.relabeled == row.relabeled &&
                    std::abs(out.timebin_fidelity - 1.0) <= kNormTolerance &&
                    std::abs(out.relabeled_fidelity - 1.0) <= kNormTolerance;
    } catch (const Error &e) {
        out.error = e.what();
        out.match = false;
    }
    return out;
}

VerifyRow verify_label(HyperBellLabel input, const AnalyzerOptions &options) {
    VerifyRow row;
    row.input = input;
    try {
        auto result = classify(prepare_hyper_bell(input), BranchChoice::exhaustive(), {}, options);
        row.step1 = result.branches.front().record.step1;
        for (const auto &b : result.branches) {
            row.detections.push_back({{b.record.det_a, b.record.det_b}, b.probability});
        }
        row.classified = result.label;
        row.pass = result.label == input;
    } catch (const Error &e) {
        row.error = e.what();
        row.pass = false;
    }
    return row;
}

}  // namespace hbsa
