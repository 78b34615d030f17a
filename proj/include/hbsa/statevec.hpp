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

// Sparse state vector over labeled photonic modes plus two integer probe phase
// counters. Every optical element in the library is a label map applied
// through apply_label_map; every readout goes through measure.

#ifndef HBSA_STATEVEC_HPP
#define HBSA_STATEVEC_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hbsa/errors.hpp"
#include "hbsa/rng.hpp"

namespace hbsa {

using Amplitude = std::complex<double>;

inline constexpr double kPruneTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-9;
inline constexpr std::size_t kMaxPhotons = 4;

enum class Polarization : std::uint8_t { H = 0, V = 1 };

/// Arrival slot in units of one time-bin interval. Prepared states use
/// kEarly/kLate only; the analyzer delay line can push a component to 2.
struct TimeSlot {
    std::int8_t value = 0;
    friend constexpr auto operator<=>(TimeSlot, TimeSlot) = default;
};
inline constexpr TimeSlot kEarly{0};
inline constexpr TimeSlot kLate{1};

/// Spatial modes of the analyzer circuits. Photons carry their own labels, so
/// two photons on the same Path are two distinct occupations of that mode.
enum class Path : std::uint8_t {
    PortA,
    PortB,
    Held,  // a photon that is not routed through any analyzer
    Qnd1Up,
    Qnd1Down,
    Qnd2Up,
    Qnd2Down,
    SpPhi,
    SpPsi,
    SpPhiLong,
    SpPhiShort,
    SpPsiLong,
    SpPsiShort,
    SpPhiOut,
    SpPsiOut,
    SpPhiDump,
    SpPsiDump,
    DetPhiPlus,
    DetPhiMinus,
    DetPsiPlus,
    DetPsiMinus,
};

std::string_view to_string(Polarization pol);
std::string_view to_string(Path path);

struct PhotonBasis {
    Polarization pol = Polarization::H;
    TimeSlot slot = kEarly;
    Path path = Path::PortA;
    friend constexpr auto operator<=>(const PhotonBasis &, const PhotonBasis &) = default;
};

/// Index of a photon inside a CompositeBasis.
struct PhotonId {
    std::uint8_t index = 0;
    friend constexpr auto operator<=>(PhotonId, PhotonId) = default;
};
inline constexpr PhotonId kPhotonA{0};
inline constexpr PhotonId kPhotonB{1};

enum class Probe : std::uint8_t { One = 1, Two = 2 };

/// Accumulated probe phase, in units of the per-photon Kerr phase.
struct ProbeCounters {
    int k1 = 0;
    int k2 = 0;

    int &operator[](Probe p) { return p == Probe::One ? k1 : k2; }
    int operator[](Probe p) const { return p == Probe::One ? k1 : k2; }
    friend constexpr auto operator<=>(const ProbeCounters &, const ProbeCounters &) = default;
};

/// Full label of one basis ket: up to kMaxPhotons photons and both probes.
/// Ordering is photon count, then photons in index order, then probes.
class CompositeBasis {
   public:
    CompositeBasis() = default;
    CompositeBasis(std::initializer_list<PhotonBasis> photons, ProbeCounters probes = {});

    std::size_t photon_count() const { return count_; }
    const PhotonBasis &photon(PhotonId id) const { return photons_[checked(id)]; }
    PhotonBasis &photon(PhotonId id) { return photons_[checked(id)]; }
    std::span<const PhotonBasis> photons() const { return {photons_.data(), count_}; }

    const ProbeCounters &probes() const { return probes_; }
    ProbeCounters &probes() { return probes_; }

    /// Photons of *this followed by photons of other; counters add.
    CompositeBasis concat(const CompositeBasis &other) const;
    CompositeBasis without(PhotonId id) const;

    friend auto operator<=>(const CompositeBasis &, const CompositeBasis &) = default;
    friend bool operator==(const CompositeBasis &, const CompositeBasis &) = default;

   private:
    std::size_t checked(PhotonId id) const;

    std::uint8_t count_ = 0;
    std::array<PhotonBasis, kMaxPhotons> photons_{};
    ProbeCounters probes_{};
};

struct Term {
    CompositeBasis basis;
    Amplitude amplitude;
};

/// Collects the image of one basis ket under a label map. The sink scales by
/// the source amplitude, so maps only ever describe the action on a single
/// basis ket.
class TermSink {
   public:
    void emit(Amplitude coefficient, const CompositeBasis &basis) {
        out_.push_back({basis, scale_ * coefficient});
    }

   private:
    friend class StateVector;
    Amplitude scale_{1.0, 0.0};
    std::vector<Term> out_;
};

class StateVector;
Amplitude inner(const StateVector &a, const StateVector &b);

/// Immutable sparse superposition. Terms are stored sorted by CompositeBasis
/// with like terms merged and anything below the prune tolerance dropped.
class StateVector {
   public:
    StateVector() = default;

    static StateVector basis_state(const CompositeBasis &b);

    /// Builds sum(c_i * s_i). When renormalize is false the result must
    /// already have unit norm.
    static StateVector superpose(std::span<const std::pair<Amplitude, StateVector>> pairs,
                                 bool renormalize = false);
    static StateVector superpose(std::initializer_list<std::pair<Amplitude, StateVector>> pairs,
                                 bool renormalize = false) {
        return superpose(std::span<const std::pair<Amplitude, StateVector>>(pairs.begin(), pairs.size()),
                         renormalize);
    }

    /// Builds a normalized state directly from raw terms (merged and pruned).
    static StateVector from_terms(std::vector<Term> terms, bool renormalize = false);

    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    double norm_squared() const;
    Amplitude amplitude_of(const CompositeBasis &b) const;
    std::size_t photon_count() const;

    /// Applies a basis-level map to every term. The map must act as an
    /// isometry on the support; a norm change beyond kNormTolerance throws
    /// NonUnitaryError.
    template <class Map>
    StateVector apply_label_map(Map &&map) const {
        TermSink sink;
        sink.out_.reserve(terms_.size() * 2);
        for (const auto &t : terms_) {
            sink.scale_ = t.amplitude;
            map(t.basis, sink);
        }
        return finish_map(std::move(sink.out_));
    }

    StateVector scaled(Amplitude factor) const;

    /// Tensor product; photons of *this come first.
    StateVector tensor(const StateVector &other) const;

    /// Removes a photon whose labels are identical on every term.
    StateVector without_photon(PhotonId id) const;

    /// One line per term in canonical order:
    ///   +a+bi |H 0 portA ; V 1 portB ; k1 k2⟩
    std::string serialize() const;

   private:
    static std::vector<Term> canonicalize(std::vector<Term> terms);
    StateVector finish_map(std::vector<Term> out) const;

    std::vector<Term> terms_;
};

inline Amplitude inner(const StateVector &a, const StateVector &b) {
    Amplitude acc{0.0, 0.0};
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() && ib != b.terms().end()) {
        auto c = ia->basis <=> ib->basis;
        if (c < 0) {
            ++ia;
        } else if (c > 0) {
            ++ib;
        } else {
            acc += std::conj(ia->amplitude) * ib->amplitude;
            ++ia;
            ++ib;
        }
    }
    return acc;
}

inline double fidelity(const StateVector &a, const StateVector &b) { return std::norm(inner(a, b)); }

/// How measurements pick outcomes. Exhaustive returns every outcome with its
/// probability; sampling draws one from the attached generator.
class BranchChoice {
   public:
    static BranchChoice exhaustive() { return BranchChoice(nullptr); }
    static BranchChoice sampling(Rng &rng) { return BranchChoice(&rng); }

    bool is_exhaustive() const { return rng_ == nullptr; }
    Rng &rng() const { return *rng_; }

   private:
    explicit BranchChoice(Rng *rng) : rng_(rng) {}
    Rng *rng_;
};

template <class Outcome>
struct Branch {
    Outcome outcome;
    double probability;
    StateVector state;
};

/// Picks one branch from a complete list according to its probabilities.
/// Branches are consumed in list order, so the draw is reproducible.
template <class T>
T sample_branch(std::vector<T> branches, Rng &rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (auto &b : branches) {
        cumulative += b.probability;
        if (u < cumulative) {
            return std::move(b);
        }
    }
    return std::move(branches.back());
}

/// Projective measurement over a labeled partition. Outcomes appear in
/// ascending order of Outcome; collapsed states are renormalized.
template <class Outcome, class Partition>
std::vector<Branch<Outcome>> measure(const StateVector &s, Partition &&partition,
                                     const BranchChoice &choice) {
    std::map<Outcome, std::vector<Term>> groups;
    for (const auto &t : s.terms()) {
        groups[partition(t.basis)].push_back(t);
    }
    std::vector<Branch<Outcome>> branches;
    branches.reserve(groups.size());
    for (auto &[outcome, terms] : groups) {
        double p = 0.0;
        for (const auto &t : terms) {
            p += std::norm(t.amplitude);
        }
        branches.push_back({outcome, p, StateVector::from_terms(std::move(terms), true)});
    }
    if (choice.is_exhaustive()) {
        return branches;
    }
    std::vector<Branch<Outcome>> one;
    one.push_back(sample_branch(std::move(branches), choice.rng()));
    return one;
}

/// Reduced density matrix over the labels selected by `key`, tracing out
/// everything else. Rows/columns follow ascending key order.
template <class Key>
struct ReducedState {
    std::vector<Key> keys;
    std::vector<std::vector<Amplitude>> rho;
};

template <class Key, class KeyFn, class RestFn>
ReducedState<Key> reduce(const StateVector &s, KeyFn &&key, RestFn &&rest) {
    using Rest = decltype(rest(std::declval<const CompositeBasis &>()));
    std::map<Key, std::size_t> index;
    for (const auto &t : s.terms()) {
        index.emplace(key(t.basis), 0);
    }
    ReducedState<Key> out;
    for (auto &[k, i] : index) {
        i = out.keys.size();
        out.keys.push_back(k);
    }
    const std::size_t n = out.keys.size();
    out.rho.assign(n, std::vector<Amplitude>(n));
    std::map<Rest, std::vector<std::pair<std::size_t, Amplitude>>> by_rest;
    for (const auto &t : s.terms()) {
        by_rest[rest(t.basis)].emplace_back(index[key(t.basis)], t.amplitude);
    }
    for (const auto &[r, column] : by_rest) {
        for (const auto &[i, ai] : column) {
            for (const auto &[j, aj] : column) {
                out.rho[i][j] += ai * std::conj(aj);
            }
        }
    }
    return out;
}

/// Re Tr(rho1 rho2). Equals the fidelity when either argument is pure.
template <class Key>
double overlap(const ReducedState<Key> &a, const ReducedState<Key> &b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.keys.size(); ++i) {
        for (std::size_t j = 0; j < a.keys.size(); ++j) {
            auto bi = std::find(b.keys.begin(), b.keys.end(), a.keys[i]);
            auto bj = std::find(b.keys.begin(), b.keys.end(), a.keys[j]);
            if (bi == b.keys.end() || bj == b.keys.end()) {
                continue;
            }
            acc += (a.rho[i][j] * b.rho[bj - b.keys.begin()][bi - b.keys.begin()]).real();
        }
    }
    return acc;
}

}  // namespace hbsa

#endif  // HBSA_STATEVEC_HPP
