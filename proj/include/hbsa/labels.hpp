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

#ifndef HBSA_LABELS_HPP
#define HBSA_LABELS_HPP

#include <array>
#include <compare>
#include <string>
#include <string_view>

namespace hbsa {

/// Two-photon Bell state of one degree of freedom. Polarization:
/// Phi = (HH +- VV)/sqrt2, Psi = (HV +- VH)/sqrt2. Time-bin: same with S, L.
enum class Bell : int { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };
inline constexpr std::array<Bell, 4> kAllBells = {Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus};

/// Single-photon Bell state over its own polarization and time bin:
/// phi = (HL +- VS)/sqrt2, psi = (HS +- VL)/sqrt2.
enum class SingleBell : int { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };
inline constexpr std::array<SingleBell, 4> kAllSingleBells = {SingleBell::PhiPlus, SingleBell::PhiMinus,
                                                              SingleBell::PsiPlus, SingleBell::PsiMinus};

enum class Dof { Polarization, TimeBin };

struct HyperBellLabel {
    Bell pol = Bell::PhiPlus;
    Bell tb = Bell::PhiPlus;
    friend constexpr auto operator<=>(const HyperBellLabel &, const HyperBellLabel &) = default;
};

/// All 16 labels, polarization-major.
std::array<HyperBellLabel, 16> all_hyper_labels();

inline constexpr bool is_phi(Bell b) { return b == Bell::PhiPlus || b == Bell::PhiMinus; }
inline constexpr bool is_minus(Bell b) { return b == Bell::PhiMinus || b == Bell::PsiMinus; }

/// Token grammar (Phi|Psi)(P|T)(+|-), e.g. "PhiP+" or "PsiT-".
std::string format(Bell b, Dof dof);
std::string format(const HyperBellLabel &label);  // "PhiP- PhiT-"
std::string format(SingleBell b);                  // "phi+", "psi-"

/// Throws ParseError on anything outside the grammar or on the wrong DOF tag.
Bell parse_bell(std::string_view token, Dof dof);
HyperBellLabel parse_hyper_label(std::string_view pol_token, std::string_view tb_token);
SingleBell parse_single_bell(std::string_view token);

}  // namespace hbsa

#endif  // HBSA_LABELS_HPP
