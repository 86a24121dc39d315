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
 * Branch-resolved 1->3 telecloning and open-destination teleportation over
 * a four-qubit server register (a, b, c, d) and a client qubit X.
 *
 * The Bell measurement on (X, p) is CX_{X,p} followed by a sigma_x
 * projection of X and a sigma_z projection of p. The four outcomes map to
 * Bell elements as (+,0) = phi+, (+,1) = psi+, (-,0) = phi-, (-,1) = psi-.
 */
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dickenet/register.hpp"
#include "dickenet/states.hpp"

namespace dickenet {

struct BranchOutcome {
    Bell outcome = Bell::PhiPlus;
    std::string measured;            ///< e.g. "+0": sigma_x sign, sigma_z bit
    double probability = 0.0;
    std::optional<State> post_state; ///< absent when probability vanishes
    char correction = 'I';           ///< Pauli applied to each remaining qubit
};

/// All four Bell-measurement branches on (q1, q2), uncorrected, in the order
/// phi+, psi+, phi-, psi-. Branches below the impossible-branch threshold
/// come back with probability 0 and no post-state.
[[nodiscard]] std::array<BranchOutcome, 4>
bell_measure(const State &s, const Label &q1, const Label &q2);

using CorrectionTable = std::map<Bell, char>;

/// For each Bell outcome, the Pauli P in {I, X, Y, Z} such that P on every
/// remaining server qubit maps the post-measurement state onto
/// alpha|D3(1)> + beta|D3(2)>. `resource` must be the ideal D4(2) on
/// (a, b, c, d). Throws naming the branch when no Pauli works.
[[nodiscard]] CorrectionTable derive_correction_table(const PureState &resource,
                                                      const Label &port = "b");

struct QtcResult {
    std::vector<Label> clones;           ///< S_tc in register order
    std::array<BranchOutcome, 4> branches;
    /// reduced clone states, [branch][clone]; empty for vanished branches
    std::vector<std::vector<MixedState>> clone_states;
    /// fidelity with the client density matrix, [branch][clone]
    std::vector<std::vector<double>> clone_fidelities;
    /// fidelity with the pure client ket |alpha>, [branch][clone]
    std::vector<std::vector<double>> clone_fidelities_vs_ket;
    double average_clone_fidelity = 0.0; ///< probability-weighted
    double average_clone_fidelity_vs_ket = 0.0;
};

/// Tensor the client with the resource, Bell-measure (X, port), apply the
/// correction table and score every clone.
[[nodiscard]] QtcResult run_qtc(const ClientParams &client, const State &resource,
                                const Label &port = "b",
                                const std::optional<CorrectionTable> &table =
                                    std::nullopt);

/// [9 - cos(2 theta)]/12.
[[nodiscard]] double qtc_theory_fidelity(double theta);

/// 7/9, the universal symmetric 1->3 cloner.
inline constexpr double kUniversalCloner13 = 7.0 / 9.0;

struct QtcBand {
    double low = 0.0;
    double high = 0.0;
    double nominal = 0.0; ///< at p itself
};

/// Average clone fidelity under werner_dicke(p -/+ dp) with a dephased
/// client, scored against the client density matrix.
[[nodiscard]] QtcBand qtc_mixed_band(double theta, double p, double lambda,
                                     double p_uncertainty, double phi = 0.0);

enum class SodtProjection { P01, P10 };
[[nodiscard]] std::string_view to_string(SodtProjection p) noexcept;

struct OdtResult {
    SodtProjection projection = SodtProjection::P01;
    Label port;
    Label receiver;
    std::vector<Label> sodt;          ///< the two projected server qubits
    double success_probability = 0.0;
    State intermediate;               ///< on (X, port, receiver)
    MixedState receiver_state;
    double teleport_fidelity = 0.0;
    /// other (X, port) outcomes: label ("+0", "-0", "-1") -> probability,
    /// conditional on the S_odt projection; reported, not corrected
    std::map<std::string, double> other_outcomes;
};

[[nodiscard]] OdtResult run_odt(const ClientParams &client, const State &resource,
                                const Label &port, const Label &receiver,
                                SodtProjection projection);

} // namespace dickenet
