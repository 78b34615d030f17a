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

#include "hbsa/statevec.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hbsa {

std::string_view to_string(Polarization pol) { return pol == Polarization::H ? "H" : "V"; }

std::string_view to_string(Path path) {
    switch (path) {
        case Path::PortA: return "portA";
        case Path::PortB: return "portB";
        case Path::Held: return "held";
        case Path::Qnd1Up: return "qnd1Up";
        case Path::Qnd1Down: return "qnd1Down";
        case Path::Qnd2Up: return "qnd2Up";
        case Path::Qnd2Down: return "qnd2Down";
        case Path::SpPhi: return "spPhi";
        case Path::SpPsi: return "spPsi";
        case Path::SpPhiLong: return "spPhiLong";
        case Path::SpPhiShort: return "spPhiShort";
        case Path::SpPsiLong: return "spPsiLong";
        case Path::SpPsiShort: return "spPsiShort";
        case Path::SpPhiOut: return "spPhiOut";
        case Path::SpPsiOut: return "spPsiOut";
        case Path::SpPhiDump: return "spPhiDump";
        case Path::SpPsiDump: return "spPsiDump";
        case Path::DetPhiPlus: return "detPhiPlus";
        case Path::DetPhiMinus: return "detPhiMinus";
        case Path::DetPsiPlus: return "detPsiPlus";
        case Path::DetPsiMinus: return "detPsiMinus";
    }
    return "?";
}

CompositeBasis::CompositeBasis(std::initializer_list<PhotonBasis> photons, ProbeCounters probes)
    : probes_(probes) {
    if (photons.size() > kMaxPhotons) {
        throw InvalidArgumentError("too many photons in one basis label");
    }
    for (const auto &p : photons) {
        photons_[count_++] = p;
    }
}

std::size_t CompositeBasis::checked(PhotonId id) const {
    if (id.index >= count_) {
        throw InvalidArgumentError("photon index " + std::to_string(id.index) + " out of range");
    }
    return id.index;
}

CompositeBasis CompositeBasis::concat(const CompositeBasis &other) const {
    if (count_ + other.count_ > kMaxPhotons) {
        throw InvalidArgumentError("tensor product exceeds photon capacity");
    }
    CompositeBasis out = *this;
    for (std::size_t i = 0; i < other.count_; ++i) {
        out.photons_[out.count_++] = other.photons_[i];
    }
    out.probes_.k1 += other.probes_.k1;
    out.probes_.k2 += other.probes_.k2;
    return out;
}

CompositeBasis CompositeBasis::without(PhotonId id) const {
    const std::size_t skip = checked(id);
    CompositeBasis out;
    out.probes_ = probes_;
    for (std::size_t i = 0; i < count_; ++i) {
        if (i != skip) {
            out.photons_[out.count_++] = photons_[i];
        }
    }
    return out;
}

namespace {

bool finite(Amplitude a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); }

double sum_norm(const std::vector<Term> &terms) {
    double n = 0.0;
    for (const auto &t : terms) {
        n += std::norm(t.amplitude);
    }
    return n;
}

}  // namespace

std::vector<Term> StateVector::canonicalize(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.basis < b.basis; });
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (auto &t : terms) {
        if (!finite(t.amplitude)) {
            throw InvalidArgumentError("non-finite amplitude");
        }
        if (!merged.empty() && merged.back().basis == t.basis) {
            merged.back().amplitude += t.amplitude;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [](const Term &t) { return std::abs(t.amplitude) < kPruneTolerance; });
    return merged;
}

StateVector StateVector::basis_state(const CompositeBasis &b) {
    StateVector s;
    s.terms_.push_back({b, Amplitude{1.0, 0.0}});
    return s;
}

StateVector StateVector::from_terms(std::vector<Term> terms, bool renormalize) {
    StateVector s;
    s.terms_ = canonicalize(std::move(terms));
    if (s.terms_.empty()) {
        throw ZeroStateError("all amplitudes cancel");
    }
    const double n = sum_norm(s.terms_);
    if (renormalize) {
        const double scale = 1.0 / std::sqrt(n);
        for (auto &t : s.terms_) {
            t.amplitude *= scale;
        }
    } else if (std::abs(n - 1.0) > kNormTolerance) {
        throw InvalidArgumentError("state is not normalized (norm^2 = " + std::to_string(n) + ")");
    }
    return s;
}

StateVector StateVector::superpose(std::span<const std::pair<Amplitude, StateVector>> pairs,
                                   bool renormalize) {
    if (pairs.empty()) {
        throw InvalidArgumentError("superpose needs at least one term");
    }
    std::vector<Term> all;
    for (const auto &[c, s] : pairs) {
        for (const auto &t : s.terms_) {
            all.push_back({t.basis, c * t.amplitude});
        }
    }
    return from_terms(std::move(all), renormalize);
}

double StateVector::norm_squared() const { return sum_norm(terms_); }

Amplitude StateVector::amplitude_of(const CompositeBasis &b) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), b,
                               [](const Term &t, const CompositeBasis &key) { return t.basis < key; });
    if (it != terms_.end() && it->basis == b) {
        return it->amplitude;
    }
    return {0.0, 0.0};
}

std::size_t StateVector::photon_count() const {
    return terms_.empty() ? 0 : terms_.front().basis.photon_count();
}

StateVector StateVector::finish_map(std::vector<Term> out) const {
    StateVector s;
    s.terms_ = canonicalize(std::move(out));
    const double before = norm_squared();
    const double after = s.norm_squared();
    if (std::abs(after - before) > kNormTolerance) {
        std::ostringstream msg;
        msg << "label map changed the norm from " << before << " to " << after;
        throw NonUnitaryError(msg.str());
    }
    return s;
}

StateVector StateVector::scaled(Amplitude factor) const {
    StateVector s = *this;
    for (auto &t : s.terms_) {
        t.amplitude *= factor;
    }
    return s;
}

StateVector StateVector::tensor(const StateVector &other) const {
    std::vector<Term> out;
    out.reserve(terms_.size() * other.terms_.size());
    for (const auto &a : terms_) {
        for (const auto &b : other.terms_) {
            out.push_back({a.basis.concat(b.basis), a.amplitude * b.amplitude});
        }
    }
    StateVector s;
    s.terms_ = canonicalize(std::move(out));
    return s;
}

StateVector StateVector::without_photon(PhotonId id) const {
    if (terms_.empty()) {
        return *this;
    }
    const PhotonBasis fixed = terms_.front().basis.photon(id);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_) {
        if (t.basis.photon(id) != fixed) {
            throw WiringError("photon " + std::to_string(id.index) +
                              " is not in a definite mode and cannot be removed");
        }
        out.push_back({t.basis.without(id), t.amplitude});
    }
    StateVector s;
    s.terms_ = canonicalize(std::move(out));
    return s;
}

std::string StateVector::serialize() const {
    std::string out;
    char buf[96];
    for (const auto &t : terms_) {
        // + 0.0 folds negative zero so the sign column is stable.
        std::snprintf(buf, sizeof buf, "%+.12g%+.12gi |", t.amplitude.real() + 0.0, t.amplitude.imag() + 0.0);
        out += buf;
        for (const auto &p : t.basis.photons()) {
            out += to_string(p.pol);
            out += ' ';
            out += std::to_string(p.slot.value);
            out += ' ';
            out += to_string(p.path);
            out += " ; ";
        }
        out += std::to_string(t.basis.probes().k1);
        out += ' ';
        out += std::to_string(t.basis.probes().k2);
        out += "⟩\n";
    }
    return out;
}

}  // namespace hbsa
