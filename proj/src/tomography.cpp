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
#include "dickenet/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

namespace dickenet {

namespace {

constexpr double kPhiTolerance = 1e-12;

bool angle_is(double phi, double target) {
    return std::abs(std::remainder(phi - target, 2.0 * std::numbers::pi)) <
           kPhiTolerance;
}

std::string outcome_string(std::size_t index, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t q = 0; q < n; ++q) {
        if (index & (std::size_t{1} << (n - 1 - q))) {
            s[q] = '1';
        }
    }
    return s;
}

/// Rows are the conjugated basis vectors, so |U psi|^2 gives outcome
/// probabilities.
Matrix basis_rotation(const MeasurementBasis &b) {
    if (b.kind == MeasurementBasis::Kind::Z) {
        return gates::identity(2);
    }
    const double r = 1.0 / std::numbers::sqrt2;
    const cplx e = std::polar(1.0, -b.phi);
    Matrix u(2, 2);
    u << r, r * e, r, -r * e;
    return u;
}

/// +1 / -1 eigenvalue product of `outcome` restricted to the non-identity
/// letters of `paulis`.
int parity(std::string_view outcome, std::string_view paulis) {
    int s = 1;
    for (std::size_t q = 0; q < paulis.size(); ++q) {
        if (paulis[q] != 'I' && outcome[q] == '1') {
            s = -s;
        }
    }
    return s;
}

const CountsRecord *find_covering(const std::vector<CountsRecord> &records,
                                  std::string_view paulis) {
    for (const auto &r : records) {
        if (r.setting.bases.size() == paulis.size() && r.setting.covers(paulis)) {
            return &r;
        }
    }
    return nullptr;
}

bool is_identity(std::string_view paulis) {
    return std::all_of(paulis.begin(), paulis.end(), [](char c) { return c == 'I'; });
}

std::vector<std::string> all_pauli_strings(std::size_t k) {
    static constexpr std::string_view alphabet = "IXYZ";
    std::vector<std::string> out;
    const std::size_t count = std::size_t{1} << (2 * k);
    for (std::size_t code = 0; code < count; ++code) {
        std::string s(k, 'I');
        for (std::size_t q = 0; q < k; ++q) {
            s[q] = alphabet[(code >> (2 * (k - 1 - q))) & 3U];
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::size_t record_qubits(const std::vector<CountsRecord> &records) {
    if (records.empty()) {
        throw Error("no measurement records");
    }
    const auto &labels = records.front().labels;
    for (const auto &r : records) {
        if (r.labels != labels || r.setting.bases.size() != labels.size()) {
            throw Error("measurement records disagree on the register");
        }
    }
    return labels.size();
}

double pooled_expectation(const std::vector<CountsRecord> &records,
                          std::string_view paulis, bool &covered) {
    double num = 0.0, den = 0.0;
    double exact_sum = 0.0;
    std::size_t exact_n = 0;
    covered = false;
    for (const auto &r : records) {
        if (!r.setting.covers(paulis)) {
            continue;
        }
        covered = true;
        if (r.exact) {
            double v = 0.0;
            for (const auto &[o, p] : *r.exact) {
                v += parity(o, paulis) * p;
            }
            exact_sum += v;
            ++exact_n;
        } else {
            for (const auto &[o, n] : r.counts) {
                num += parity(o, paulis) * static_cast<double>(n);
                den += static_cast<double>(n);
            }
        }
    }
    if (exact_n > 0) {
        return exact_sum / static_cast<double>(exact_n);
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

// settings ---------------------------------------------------------------------

MeasurementBasis MeasurementBasis::y() {
    return {Kind::Equatorial, std::numbers::pi / 2.0};
}

char MeasurementBasis::pauli() const noexcept {
    if (kind == Kind::Z) {
        return 'Z';
    }
    if (angle_is(phi, 0.0)) {
        return 'X';
    }
    if (angle_is(phi, std::numbers::pi / 2.0)) {
        return 'Y';
    }
    return '\0';
}

std::string MeasurementBasis::label() const {
    const char p = pauli();
    if (p != '\0') {
        return std::string(1, p);
    }
    return fmt::format("E({:.12g})", phi);
}

MeasurementSetting MeasurementSetting::from_paulis(std::string_view paulis) {
    MeasurementSetting s;
    for (char c : paulis) {
        switch (c) {
        case 'X':
            s.bases.push_back(MeasurementBasis::x());
            break;
        case 'Y':
            s.bases.push_back(MeasurementBasis::y());
            break;
        case 'Z':
            s.bases.push_back(MeasurementBasis::z());
            break;
        default:
            throw Error(fmt::format("setting letter '{}' is not X, Y or Z", c));
        }
    }
    if (s.bases.empty()) {
        throw Error("empty measurement setting");
    }
    return s;
}

std::string MeasurementSetting::label() const {
    std::string out;
    for (const auto &b : bases) {
        out += b.label();
    }
    return out;
}

bool MeasurementSetting::covers(std::string_view paulis) const {
    if (paulis.size() != bases.size()) {
        return false;
    }
    for (std::size_t q = 0; q < paulis.size(); ++q) {
        if (paulis[q] != 'I' && paulis[q] != bases[q].pauli()) {
            return false;
        }
    }
    return true;
}

std::uint64_t CountsRecord::total() const noexcept {
    std::uint64_t t = 0;
    for (const auto &[o, n] : counts) {
        t += n;
    }
    return t;
}

// simulation -------------------------------------------------------------------

std::map<std::string, double> outcome_probabilities(const State &s,
                                                    const MeasurementSetting &setting) {
    const Layout &layout = layout_of(s);
    const std::size_t n = layout.size();
    if (setting.bases.size() != n) {
        throw Error(fmt::format("setting '{}' has {} bases for {} qubits",
                                setting.label(), setting.bases.size(), n));
    }
    Matrix u = basis_rotation(setting.bases[0]);
    for (std::size_t q = 1; q < n; ++q) {
        u = gates::kron(u, basis_rotation(setting.bases[q]));
    }
    std::map<std::string, double> out;
    if (const auto *p = std::get_if<PureState>(&s)) {
        const Vector v = u * p->amplitudes();
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            out[outcome_string(static_cast<std::size_t>(i), n)] = std::norm(v(i));
        }
    } else {
        const Matrix r = u * std::get<MixedState>(s).matrix() * u.adjoint();
        for (Eigen::Index i = 0; i < r.rows(); ++i) {
            out[outcome_string(static_cast<std::size_t>(i), n)] =
                std::max(0.0, r(i, i).real());
        }
    }
    return out;
}

CountsRecord simulate_counts(const State &s, const MeasurementSetting &setting,
                             std::uint64_t n, std::uint64_t seed) {
    if (n < 1) {
        throw Error("shot count N must be at least 1");
    }
    CountsRecord rec;
    rec.labels = layout_of(s).labels();
    rec.setting = setting;
    rec.total_requested = n;
    rec.seed = seed;
    std::mt19937_64 rng(seed);
    for (const auto &[outcome, p] : outcome_probabilities(s, setting)) {
        const double mean = static_cast<double>(n) * p;
        std::uint64_t draw = 0;
        if (mean > 0.0) {
            std::poisson_distribution<std::uint64_t> poisson(mean);
            draw = poisson(rng);
        }
        rec.counts[outcome] = draw;
    }
    return rec;
}

CountsRecord exact_counts(const State &s, const MeasurementSetting &setting) {
    CountsRecord rec;
    rec.labels = layout_of(s).labels();
    rec.setting = setting;
    rec.exact = outcome_probabilities(s, setting);
    return rec;
}

std::vector<MeasurementSetting> pauli_settings(std::size_t k) {
    if (k < 1) {
        throw Error("settings need at least one qubit");
    }
    static constexpr std::string_view letters = "XYZ";
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        total *= 3;
    }
    std::vector<MeasurementSetting> out;
    for (std::size_t code = 0; code < total; ++code) {
        std::string s(k, 'X');
        std::size_t c = code;
        for (std::size_t q = k; q-- > 0;) {
            s[q] = letters[c % 3];
            c /= 3;
        }
        out.push_back(MeasurementSetting::from_paulis(s));
    }
    return out;
}

std::vector<CountsRecord> simulate_pauli_records(const State &s, std::uint64_t n,
                                                 std::uint64_t seed) {
    std::vector<CountsRecord> out;
    std::uint64_t i = 0;
    for (const auto &setting : pauli_settings(layout_of(s).size())) {
        out.push_back(simulate_counts(s, setting, n, seed + i++));
    }
    return out;
}

std::vector<CountsRecord> exact_pauli_records(const State &s) {
    std::vector<CountsRecord> out;
    for (const auto &setting : pauli_settings(layout_of(s).size())) {
        out.push_back(exact_counts(s, setting));
    }
    return out;
}

// estimation -------------------------------------------------------------------

Estimate estimate_correlator(const std::vector<CountsRecord> &records,
                             std::string_view paulis) {
    if (is_identity(paulis)) {
        return {1.0, 0.0};
    }
    const CountsRecord *r = find_covering(records, paulis);
    if (r == nullptr) {
        throw MissingSetting(
            fmt::format("no record covers Pauli string '{}'", paulis),
            {std::string(paulis)});
    }
    if (r->exact) {
        double v = 0.0;
        for (const auto &[o, p] : *r->exact) {
            v += parity(o, paulis) * p;
        }
        return {v, 0.0};
    }
    const double total = static_cast<double>(r->total());
    if (total <= 0.0) {
        throw Error(fmt::format("record '{}' holds no counts", r->setting.label()));
    }
    double mean = 0.0;
    for (const auto &[o, n] : r->counts) {
        mean += parity(o, paulis) * static_cast<double>(n);
    }
    mean /= total;
    double var = 0.0;
    for (const auto &[o, n] : r->counts) {
        const double d = parity(o, paulis) - mean;
        var += d * d * static_cast<double>(n);
    }
    return {mean, std::sqrt(var) / total};
}

WitnessReport estimate_witness(const std::vector<CountsRecord> &records,
                               const Observable &w, double significance) {
    if (!w.settings()) {
        throw Error(fmt::format("observable '{}' carries no settings", w.name()));
    }
    double constant = 0.0;
    std::map<const CountsRecord *, std::vector<const PauliTerm *>> groups;
    std::vector<const CountsRecord *> order;
    std::vector<std::string> missing;
    for (const auto &t : *w.settings()) {
        if (is_identity(t.paulis)) {
            constant += t.coefficient;
            continue;
        }
        const CountsRecord *r = find_covering(records, t.paulis);
        if (r == nullptr) {
            missing.push_back(t.paulis);
            continue;
        }
        if (!groups.contains(r)) {
            order.push_back(r);
        }
        groups[r].push_back(&t);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto &m : missing) {
            list += (list.empty() ? "" : ", ") + m;
        }
        throw MissingSetting(
            fmt::format("witness '{}' needs settings for: {}", w.name(), list),
            std::move(missing));
    }
    double value = constant;
    double var = 0.0;
    for (const CountsRecord *r : order) {
        const auto &terms = groups[r];
        auto f = [&](const std::string &outcome) {
            double acc = 0.0;
            for (const PauliTerm *t : terms) {
                acc += t->coefficient * parity(outcome, t->paulis);
            }
            return acc;
        };
        if (r->exact) {
            for (const auto &[o, p] : *r->exact) {
                value += f(o) * p;
            }
            continue;
        }
        const double total = static_cast<double>(r->total());
        if (total <= 0.0) {
            throw Error(fmt::format("record '{}' holds no counts", r->setting.label()));
        }
        double mean = 0.0;
        for (const auto &[o, n] : r->counts) {
            mean += f(o) * static_cast<double>(n);
        }
        mean /= total;
        double v = 0.0;
        for (const auto &[o, n] : r->counts) {
            const double d = f(o) - mean;
            v += d * d * static_cast<double>(n);
        }
        value += mean;
        var += v / (total * total);
    }
    return make_witness_report(w.name(), value, std::sqrt(var), {}, significance);
}

// tomography -------------------------------------------------------------------

Matrix project_to_density_matrix(const Matrix &m) {
    const Matrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    const Eigen::VectorXd ev = eig.eigenvalues();
    // Euclidean projection of the spectrum onto the probability simplex.
    std::vector<double> sorted(ev.data(), ev.data() + ev.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double shift = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        cumulative += sorted[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - t > 0.0) {
            shift = t;
        }
    }
    Eigen::VectorXd clipped = (ev.array() - shift).cwiseMax(0.0);
    Matrix out = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().adjoint();
    out = (out + out.adjoint()).eval() * 0.5;
    return out;
}

Matrix linear_inversion(const std::vector<CountsRecord> &records) {
    const std::size_t k = record_qubits(records);
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << k);
    Matrix rho = Matrix::Zero(d, d);
    std::vector<std::string> missing;
    for (const auto &p : all_pauli_strings(k)) {
        double e = 1.0;
        if (!is_identity(p)) {
            bool covered = false;
            e = pooled_expectation(records, p, covered);
            if (!covered) {
                missing.push_back(p);
                continue;
            }
        }
        rho += e * pauli_string_matrix(p);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto &m : missing) {
            list += (list.empty() ? "" : ", ") + m;
        }
        throw MissingSetting(fmt::format("tomography lacks Pauli data for: {}", list),
                             std::move(missing));
    }
    return rho / static_cast<double>(d);
}

MixedState tomography_linear(const std::vector<CountsRecord> &records) {
    const std::size_t k = record_qubits(records);
    if (k > 2) {
        throw Error(fmt::format("linear tomography supports 1 or 2 qubits, got {}", k));
    }
    std::vector<std::string> missing;
    for (const auto &s : pauli_settings(k)) {
        const std::string label = s.label();
        if (find_covering(records, label) == nullptr) {
            missing.push_back(label);
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto &m : missing) {
            list += (list.empty() ? "" : ", ") + m;
        }
        throw MissingSetting(fmt::format("tomography needs settings: {}", list),
                             std::move(missing));
    }
    Matrix rho = project_to_density_matrix(linear_inversion(records));
    rho /= rho.trace().real();
    return {Layout(records.front().labels), std::move(rho)};
}

BootstrapFidelity fidelity_with_error(const std::vector<CountsRecord> &records,
                                      const State &target, std::size_t trials,
                                      std::uint64_t seed) {
    if (trials < 10) {
        throw Error(fmt::format("bootstrap needs at least 10 trials, got {}", trials));
    }
    BootstrapFidelity out;
    out.trials = trials;
    out.seed = seed;
    out.point = fidelity(tomography_linear(records), target);
    if (std::all_of(records.begin(), records.end(),
                    [](const CountsRecord &r) { return r.exact.has_value(); })) {
        out.mean = out.point;
        return out;
    }
    std::vector<double> values;
    values.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + t);
        std::vector<CountsRecord> redrawn = records;
        for (auto &r : redrawn) {
            if (r.exact) {
                continue;
            }
            for (auto &[o, n] : r.counts) {
                if (n > 0) {
                    std::poisson_distribution<std::uint64_t> poisson(
                        static_cast<double>(n));
                    n = poisson(rng);
                }
            }
        }
        values.push_back(fidelity(tomography_linear(redrawn), target));
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    out.mean = mean;
    out.uncertainty = std::sqrt(var / static_cast<double>(trials - 1));
    return out;
}

} // namespace dickenet
