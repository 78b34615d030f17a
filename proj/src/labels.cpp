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

#include "hbsa/labels.hpp"

#include "hbsa/errors.hpp"

namespace hbsa {

std::array<HyperBellLabel, 16> all_hyper_labels() {
    std::array<HyperBellLabel, 16> out{};
    std::size_t i = 0;
    for (Bell p : kAllBells) {
        for (Bell t : kAllBells) {
            out[i++] = {p, t};
        }
    }
    return out;
}

std::string format(Bell b, Dof dof) {
    std::string s = is_phi(b) ? "Phi" : "Psi";
    s += dof == Dof::Polarization ? 'P' : 'T';
    s += is_minus(b) ? '-' : '+';
    return s;
}

std::string format(const HyperBellLabel &label) {
    return format(label.pol, Dof::Polarization) + " " + format(label.tb, Dof::TimeBin);
}

std::string format(SingleBell b) {
    switch (b) {
        case SingleBell::PhiPlus: return "phi+";
        case SingleBell::PhiMinus: return "phi-";
        case SingleBell::PsiPlus: return "psi+";
        case SingleBell::PsiMinus: return "psi-";
    }
    return "?";
}

Bell parse_bell(std::string_view token, Dof dof) {
    const char want = dof == Dof::Polarization ? 'P' : 'T';
    if (token.size() != 5 || token[3] != want || (token[4] != '+' && token[4] != '-')) {
        throw ParseError("malformed " + std::string(dof == Dof::Polarization ? "polarization" : "time-bin") +
                         " label '" + std::string(token) + "'");
    }
    const bool minus = token[4] == '-';
    const auto head = token.substr(0, 3);
    if (head == "Phi") {
        return minus ? Bell::PhiMinus : Bell::PhiPlus;
    }
    if (head == "Psi") {
        return minus ? Bell::PsiMinus : Bell::PsiPlus;
    }
    throw ParseError("malformed label '" + std::string(token) + "'");
}

HyperBellLabel parse_hyper_label(std::string_view pol_token, std::string_view tb_token) {
    return {parse_bell(pol_token, Dof::Polarization), parse_bell(tb_token, Dof::TimeBin)};
}

SingleBell parse_single_bell(std::string_view token) {
    for (SingleBell b : kAllSingleBells) {
        if (format(b) == token) {
            return b;
        }
    }
    throw ParseError("malformed single-photon Bell label '" + std::string(token) + "'");
}

}  // namespace hbsa
