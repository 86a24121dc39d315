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
 * Finite-statistics layer: Poisson coincidence counts per local measurement
 * setting, correlator and witness estimation, and linear-inversion
 * tomography of one or two qubits.
 *
 * Outcome strings list one bit per qubit in register order; '0' is the +1
 * eigenvector of the measured basis.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dickenet/register.hpp"
#include "dickenet/witness.hpp"

namespace dickenet {

/// sigma_z, or an equatorial basis (|0> +- e^{i phi}|1>)/sqrt2 measuring
/// cos(phi) sigma_x + sin(phi) sigma_y. A path phase plate at phi maps to
/// the equatorial basis at the same phi.
struct MeasurementBasis {
    enum class Kind { Z, Equatorial };
    Kind kind = Kind::Z;
    double phi = 0.0;

    static MeasurementBasis z() { return {Kind::Z, 0.0}; }
    static MeasurementBasis x() { return {Kind::Equatorial, 0.0}; }
    static MeasurementBasis y();
    static MeasurementBasis path_phase(double phi) { return {Kind::Equatorial, phi}; }

    /// 'X', 'Y', 'Z' when the basis is a Pauli eigenbasis, otherwise '\0'.
    [[nodiscard]] char pauli() const noexcept;
    [[nodiscard]] std::string label() const;

    bool operator==(const MeasurementBasis &) const = default;
};

struct MeasurementSetting {
    std::vector<MeasurementBasis> bases; ///< one per register qubit

    /// From a string over "XYZ", one letter per qubit.
    static MeasurementSetting from_paulis(std::string_view paulis);
    [[nodiscard]] std::string label() const;
    /// True when every non-identity letter of `paulis` matches this setting.
    [[nodiscard]] bool covers(std::string_view paulis) const;

    bool operator==(const MeasurementSetting &) const = default;
};

struct CountsRecord {
    std::vector<Label> labels;
    MeasurementSetting setting;
    std::map<std::string, std::uint64_t> counts; ///< outcome -> count
    std::uint64_t total_requested = 0;           ///< N
    std::optional<std::uint64_t> seed;
    /// Exact Born probabilities; when present, estimators use them instead of
    /// counts and report zero uncertainty.
    std::optional<std::map<std::string, double>> exact;

    [[nodiscard]] std::uint64_t total() const noexcept;
};

/// Born probabilities of every outcome, keyed by outcome string.
[[nodiscard]] std::map<std::string, double>
outcome_probabilities(const State &s, const MeasurementSetting &setting);

/// Each outcome's count is an independent Poisson(N p) draw, seeded.
[[nodiscard]] CountsRecord simulate_counts(const State &s,
                                           const MeasurementSetting &setting,
                                           std::uint64_t n, std::uint64_t seed);

/// Infinite-statistics record carrying the exact probabilities.
[[nodiscard]] CountsRecord exact_counts(const State &s,
                                        const MeasurementSetting &setting);

/// All 3^k Pauli settings on k qubits, lexicographic over "XYZ".
[[nodiscard]] std::vector<MeasurementSetting> pauli_settings(std::size_t k);

/// The full-Pauli record set; record i uses seed + i.
[[nodiscard]] std::vector<CountsRecord>
simulate_pauli_records(const State &s, std::uint64_t n, std::uint64_t seed);
[[nodiscard]] std::vector<CountsRecord> exact_pauli_records(const State &s);

struct Estimate {
    double value = 0.0;
    double uncertainty = 0.0;
};

/// Raised when no record covers a requested Pauli string.
class MissingSetting : public Error {
  public:
    MissingSetting(const std::string &what, std::vector<std::string> missing)
        : Error(what), missing_(std::move(missing)) {}
    [[nodiscard]] const std::vector<std::string> &missing() const noexcept {
        return missing_;
    }

  private:
    std::vector<std::string> missing_;
};

/// Parity-weighted mean of the first record covering `paulis`; the Poisson
/// uncertainty is sqrt(sum_i (s_i - E)^2 n_i) / sum_i n_i.
[[nodiscard]] Estimate estimate_correlator(const std::vector<CountsRecord> &records,
                                           std::string_view paulis);

/// Weighted sum of correlators over w's settings. Terms sharing a record are
/// combined per outcome before propagation; records add in quadrature.
[[nodiscard]] WitnessReport estimate_witness(const std::vector<CountsRecord> &records,
                                             const Observable &w,
                                             double significance = 1.0);

/// Nearest unit-trace PSD matrix in Frobenius norm.
[[nodiscard]] Matrix project_to_density_matrix(const Matrix &m);

/// rho = 2^-k sum_P <P> P, pooling every record that covers P.
[[nodiscard]] Matrix linear_inversion(const std::vector<CountsRecord> &records);

/// Linear inversion followed by projection onto the density matrices. Needs
/// all 3^k Pauli settings, k <= 2.
[[nodiscard]] MixedState tomography_linear(const std::vector<CountsRecord> &records);

struct BootstrapFidelity {
    double point = 0.0;       ///< fidelity of the reconstruction from `records`
    double mean = 0.0;
    double uncertainty = 0.0; ///< sample standard deviation over trials
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

/// Redraws every count as Poisson(observed), reconstructs, and collects the
/// fidelity against `target`. Trial t uses seed + t. Exact records give zero
/// width.
[[nodiscard]] BootstrapFidelity fidelity_with_error(const std::vector<CountsRecord> &records,
                                                    const State &target,
                                                    std::size_t trials,
                                                    std::uint64_t seed);

} // namespace dickenet
