// Copyright 2026 The dickenet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Named states: Dicke states, the Bell basis, the hyperentangled source
 * state, the white-noise Dicke resource and the (optionally dephased)
 * client qubit.
 */
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dickenet/register.hpp"

namespace dickenet {

/// Default register labels: server qubits a, b, c, d and client X.
inline const std::vector<Label> kServerLabels{"a", "b", "c", "d"};
inline const Label kClientLabel{"X"};

/// Client qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, optionally
/// dephased: off-diagonal elements are multiplied by (1 - dephase_lambda).
struct ClientParams {
    double theta = 0.0;
    double phi = 0.0;
    double dephase_lambda = 0.0;

    void validate() const;
};

struct WernerParams {
    double p = 1.0;
};

enum class Bell { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

[[nodiscard]] std::string_view to_string(Bell b) noexcept;

/// Equal superposition of all weight-k bitstrings on n qubits. Labels default
/// to a, b, c, ... .
[[nodiscard]] PureState dicke(std::size_t n, std::size_t k,
                              std::vector<Label> labels = {});

[[nodiscard]] PureState bell(Bell which, Label q1 = "a", Label q2 = "b");

/// [|00>(|01> - |10>) + 2|11>|01>]/sqrt(6) on (a, b, c, d), with H, r -> 0
/// and V, l -> 1.
[[nodiscard]] PureState xi_state();

/// [|HHll> + |VVrr> + (|VH> + |HV>)(|rl> + |lr>)]/sqrt(6) on
/// (a, b, c, d) = (polarization A, polarization B, path A, path B).
[[nodiscard]] PureState dicke_physical();

/// p |D4(2)><D4(2)| + (1 - p) I/16 on (a, b, c, d).
[[nodiscard]] MixedState werner_dicke(double p);

/// Fidelity of werner_dicke(p) with |D4(2)>: p + (1 - p)/16.
[[nodiscard]] double werner_dicke_fidelity(double p) noexcept;
/// Inverse of werner_dicke_fidelity.
[[nodiscard]] double werner_p_for_fidelity(double fidelity) noexcept;

/// The pure client ket (dephasing ignored).
[[nodiscard]] PureState client_ket(const ClientParams &params,
                                   Label label = kClientLabel);
/// Client density matrix; pure state when dephase_lambda == 0.
[[nodiscard]] State client_state(const ClientParams &params,
                                 Label label = kClientLabel);

/// First label order (lexicographic over permutations of `candidate`'s
/// layout) under which `candidate` matches `reference` with unit fidelity.
/// Returns the order, or nullopt when no permutation matches.
[[nodiscard]] std::optional<std::vector<Label>>
find_matching_order(const PureState &candidate, const PureState &reference,
                    double tolerance = 1e-9);

} // namespace dickenet
