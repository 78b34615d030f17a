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

// Test-only dense model: each photon is two qubits (polarization, time bin)
// and states are plain amplitude vectors. It never touches optical elements;
// every expectation comes from basis changes and projections written out by
// hand, so it stays independent of the element-level simulation.

#ifndef HBSA_TESTS_DENSE_ORACLE_HPP
#define HBSA_TESTS_DENSE_ORACLE_HPP

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Dense = std::vector<C>;  // photon k occupies bits (pol, tb), photon 0 most significant

constexpr double kR = 1.0 / std::numbers::sqrt2;

// Label indices match hbsa::Bell / hbsa::SingleBell: 0 = Phi+, 1 = Phi-, 2 = Psi+, 3 = Psi-.

/// Two-qubit Bell vector over (first, second) with index first*2 + second.
inline std::vector<C> bell(int label) {
    const double s = (label == 1 || label == 3) ? -1.0 : 1.0;
    std::vector<C> v(4);
    if (label < 2) {
        v[0] = kR;      // 00
        v[3] = s * kR;  // 11
    } else {
        v[1] = kR;      // 01
        v[2] = s * kR;  // 10
    }
    return v;
}

/// Single photon (pol, tb) index pol*2 + tb. phi = (HL +- VS), psi = (HS +- VL).
inline Dense single_bell(int label) {
    const double s = (label == 1 || label == 3) ? -1.0 : 1.0;
    Dense v(4);
    if (label < 2) {
        v[0 * 2 + 1] = kR;
        v[1 * 2 + 0] = s * kR;
    } else {
        v[0 * 2 + 0] = kR;
        v[1 * 2 + 1] = s * kR;
    }
    return v;
}

/// (Bell_P)_{AB} x (Bell_T)_{AB}, index polA*8 + tbA*4 + polB*2 + tbB.
inline Dense hyper_bell(int pol, int tb) {
    const auto p = bell(pol);
    const auto t = bell(tb);
    Dense v(16);
    for (int pa = 0; pa < 2; ++pa)
        for (int ta = 0; ta < 2; ++ta)
            for (int pb = 0; pb < 2; ++pb)
                for (int tbb = 0; tbb < 2; ++tbb) v[pa * 8 + ta * 4 + pb * 2 + tbb] = p[pa * 2 + pb] * t[ta * 2 + tbb];
    return v;
}

/// One photon (a|H> + b|V>) x (d|S> + e|L>).
inline Dense product_photon(C a, C b, C d, C e) { return {a * d, a * e, b * d, b * e}; }

inline Dense kron(const Dense &x, const Dense &y) {
    Dense out(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = x[i] * y[j];
    return out;
}

inline std::size_t photons_of(const Dense &v) {
    std::size_t n = 0;
    for (std::size_t d = v.size(); d > 1; d /= 4) ++n;
    return n;
}

/// Contracts photons `first` and `second` (first < second) with <bra| over
/// their combined 16-dim (first, second) space, leaving the rest in order.
inline Dense project_pair(const Dense &v, std::size_t first, std::size_t second, const Dense &bra16) {
    const std::size_t n = photons_of(v);
    assert(first < second && second < n);
    const std::size_t rest_n = n - 2;
    Dense out(std::size_t(1) << (2 * rest_n));
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
        std::size_t digits[8];
        for (std::size_t k = 0; k < n; ++k) digits[k] = (idx >> (2 * (n - 1 - k))) & 3;
        std::size_t rest = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (k != first && k != second) rest = rest * 4 + digits[k];
        out[rest] += std::conj(bra16[digits[first] * 4 + digits[second]]) * v[idx];
    }
    return out;
}

/// Same for a single photon with a 4-dim bra.
inline Dense project_one(const Dense &v, std::size_t photon, const Dense &bra4) {
    const std::size_t n = photons_of(v);
    Dense out(std::size_t(1) << (2 * (n - 1)));
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
        std::size_t rest = 0;
        std::size_t mine = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t d = (idx >> (2 * (n - 1 - k))) & 3;
            if (k == photon) mine = d;
            else rest = rest * 4 + d;
        }
        out[rest] += std::conj(bra4[mine]) * v[idx];
    }
    return out;
}

inline double norm2(const Dense &v) {
    double n = 0.0;
    for (const auto &c : v) n += std::norm(c);
    return n;
}

inline C dot(const Dense &a, const Dense &b) {
    C acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

/// |<a|b>|^2 / (|a|^2 |b|^2).
inline double fidelity(const Dense &a, const Dense &b) { return std::norm(dot(a, b)) / (norm2(a) * norm2(b)); }

}  // namespace oracle

#endif  // HBSA_TESTS_DENSE_ORACLE_HPP
