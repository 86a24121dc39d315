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
 * Collective-spin operators, entanglement witnesses for D4(2) and D3(k),
 * and the biseparability bound b4(gamma).
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dickenet/register.hpp"

namespace dickenet {

/// coefficient * (P_1 (x) P_2 (x) ... ), paulis drawn from "IXYZ".
struct PauliTerm {
    double coefficient = 0.0;
    std::string paulis;

    bool operator==(const PauliTerm &) const = default;
};

[[nodiscard]] Matrix pauli_string_matrix(std::string_view paulis);

/// Full Pauli expansion of a Hermitian matrix; terms with |coefficient| below
/// `threshold` are dropped. Strings come out in lexicographic I<X<Y<Z order.
[[nodiscard]] std::vector<PauliTerm> pauli_decompose(const Matrix &m,
                                                     double threshold = 1e-12);

/// Sum of terms; all strings must have the same length.
[[nodiscard]] Matrix matrix_from_terms(const std::vector<PauliTerm> &terms);

/// Hermitian operator with an optional decomposition into weighted Pauli
/// strings, one string per local measurement setting group.
class Observable {
  public:
    Observable(std::string name, Matrix matrix,
               std::optional<std::vector<PauliTerm>> settings = std::nullopt);
    /// Matrix rebuilt from `terms`.
    static Observable from_terms(std::string name, std::vector<PauliTerm> terms);

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] const Matrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] const std::optional<std::vector<PauliTerm>> &
    settings() const noexcept {
        return settings_;
    }
    [[nodiscard]] std::size_t num_qubits() const noexcept { return qubits_; }

  private:
    std::string name_;
    Matrix matrix_;
    std::optional<std::vector<PauliTerm>> settings_;
    std::size_t qubits_;
};

[[nodiscard]] double expectation(const State &s, const Observable &o);

/// J_k = sum_i sigma^k_i / 2 and S_k = (J_k^2 - I)/2.
struct CollectiveSpinSet {
    Observable jx, jy, jz;
    Observable sx, sy, sz;
};

[[nodiscard]] CollectiveSpinSet collective_spin(std::size_t n);
/// J_k^2 for axis 'x', 'y' or 'z', with its Pauli decomposition
/// n/4 I + 1/2 sum_{i<j} sigma^k_i sigma^k_j.
[[nodiscard]] Observable collective_spin_squared(std::size_t n, char axis);

/// [24 I + Jx^2 Sx + Jy^2 Sy + Jz^2 (31 I - 7 Jz^2)]/12, evaluated as written.
/// This operator is positive definite (lowest eigenvalue 2), so it cannot
/// flag entanglement; see witness_wm_reconstructed.
[[nodiscard]] Observable witness_wm();

/// Reconstructed D4(2) witness 2 I - 3 |D4(2)><D4(2)|: value -1 on the ideal
/// state and F >= (2 - <W>)/3 holds with equality.
[[nodiscard]] Observable witness_wm_reconstructed();

struct FidelityBound {
    double value = 0.0;
    bool clamped = false;
};

/// (2 - value)/3, clamped to [0, 1].
[[nodiscard]] FidelityBound fidelity_bound_from_wm(double value);
/// 2/3 - value for W = 2/3 I - |D3(k)><D3(k)|, clamped to [0, 1].
[[nodiscard]] FidelityBound fidelity_bound_from_projector(double value);

/// b4 I - (Jx^2 + Jy^2 + gamma Jz^2) on four qubits.
[[nodiscard]] Observable witness_wcs(double gamma, double b4);

/// <Jx^2>, <Jy^2>, <Jz^2> and their one-sigma uncertainties.
struct SpinMoments {
    double jx2 = 0.0, jy2 = 0.0, jz2 = 0.0;
    double djx2 = 0.0, djy2 = 0.0, djz2 = 0.0;
};

/// The laboratory moments of the four-qubit resource.
inline constexpr SpinMoments kLabSpinMoments{2.568, 2.617, 0.039,
                                             0.015, 0.011, 0.028};

/// b4 - (jx2 + jy2 + gamma jz2).
[[nodiscard]] double wcs_value(double gamma, double b4, const SpinMoments &m);

/// sqrt(dJx2^2 + dJy2^2 + gamma^2 dJz2^2).
[[nodiscard]] double propagate_wcs_error(double gamma, double djx2, double djy2,
                                         double djz2);

struct BiseparableOptions {
    std::size_t restarts = 24;
    std::size_t max_iterations = 5000;
    double tolerance = 1e-11;
    std::uint64_t seed = 20130;
    std::size_t grid_theta = 13; ///< polar grid points for the 1|3 estimate
    std::size_t grid_phi = 24;   ///< azimuthal grid points
};

struct BipartitionResult {
    std::string name;         ///< e.g. "a|bcd"
    double value = 0.0;       ///< best see-saw value
    std::size_t converged = 0;
    std::size_t restarts = 0;
};

struct BiseparableBound {
    double gamma = 0.0;
    double value = 0.0;                   ///< max over bipartitions
    std::string best_bipartition;
    std::vector<BipartitionResult> bipartitions;
    double grid_estimate = 0.0;           ///< coarse 1|3 grid cross-check
};

/// Raised when a bipartition has no converged see-saw restart.
class NotConverged : public Error {
  public:
    NotConverged(const std::string &what, double best,
                 std::vector<BipartitionResult> diagnostics)
        : Error(what), best_(best), diagnostics_(std::move(diagnostics)) {}
    [[nodiscard]] double best_value() const noexcept { return best_; }
    [[nodiscard]] const std::vector<BipartitionResult> &
    diagnostics() const noexcept {
        return diagnostics_;
    }

  private:
    double best_;
    std::vector<BipartitionResult> diagnostics_;
};

/// Largest value of <psi_A (x) psi_B| op |psi_A (x) psi_B> over product
/// states across the cut `part_a` | rest, by alternating leading-eigenvector
/// iteration from random starts.
[[nodiscard]] BipartitionResult
product_state_max(const Matrix &op, std::size_t num_qubits,
                  const std::vector<std::size_t> &part_a,
                  const BiseparableOptions &options = {});

/// Every bipartition of n qubits, each listed once as the side holding
/// qubit 0.
[[nodiscard]] std::vector<std::vector<std::size_t>>
bipartitions(std::size_t num_qubits);

/// Maximum of <Jx^2 + Jy^2 + gamma Jz^2> over biseparable four-qubit states,
/// for -10 <= gamma <= 0.
[[nodiscard]] BiseparableBound
biseparable_bound(double gamma, const BiseparableOptions &options = {});

/// 2/3 I - |D3(k)><D3(k)| carrying the eight-group rearranged Pauli form.
[[nodiscard]] Observable witness_projector_d3(int k);
/// Same projector carrying the five-setting optimal form, expanded into
/// Pauli strings.
[[nodiscard]] Observable witness_projector_d3_optimal(int k);

struct DecompositionCheck {
    bool equal = false;
    double deviation = 0.0; ///< max |entry| of (rebuilt - matrix)
};

/// Compares the settings expansion against the matrix (tolerance 1e-10).
/// Throws when the observable has no settings.
[[nodiscard]] DecompositionCheck decomposition_check(const Observable &w);

enum class Verdict { MultipartiteEntangled, Inconclusive };
[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

struct WitnessReport {
    std::string witness;
    std::map<std::string, double> parameters;
    double value = 0.0;
    double uncertainty = 0.0;
    double significance = 1.0; ///< sigma multiplier used for the verdict
    Verdict verdict = Verdict::Inconclusive;
    std::optional<double> fidelity_bound;
    bool fidelity_bound_clamped = false;
};

/// Verdict is entangled iff value + significance * uncertainty < 0.
[[nodiscard]] WitnessReport make_witness_report(
    std::string witness, double value, double uncertainty,
    std::map<std::string, double> parameters = {}, double significance = 1.0);

} // namespace dickenet
