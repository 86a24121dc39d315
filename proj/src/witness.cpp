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
#include "dickenet/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <fmt/format.h>

#include "dickenet/states.hpp"

namespace dickenet {

// Pauli algebra ----------------------------------------------------------------

Matrix pauli_string_matrix(std::string_view paulis) {
    if (paulis.empty()) {
        throw Error("empty Pauli string");
    }
    Matrix m = gates::pauli(paulis[0]);
    for (std::size_t i = 1; i < paulis.size(); ++i) {
        m = gates::kron(m, gates::pauli(paulis[i]));
    }
    return m;
}

std::vector<PauliTerm> pauli_decompose(const Matrix &m, double threshold) {
    const auto d = m.rows();
    std::size_t n = 0;
    while ((Eigen::Index{1} << n) < d) {
        ++n;
    }
    if ((Eigen::Index{1} << n) != d || m.cols() != d) {
        throw Error("Pauli decomposition needs a square 2^n matrix");
    }
    static constexpr std::string_view alphabet = "IXYZ";
    std::vector<PauliTerm> out;
    const std::size_t count = std::size_t{1} << (2 * n);
    std::string s(n, 'I');
    for (std::size_t code = 0; code < count; ++code) {
        for (std::size_t q = 0; q < n; ++q) {
            s[q] = alphabet[(code >> (2 * (n - 1 - q))) & 3U];
        }
        const cplx c = (pauli_string_matrix(s) * m).trace() /
                       static_cast<double>(d);
        if (std::abs(c.real()) > threshold) {
            out.push_back({c.real(), s});
        }
    }
    return out;
}

Matrix matrix_from_terms(const std::vector<PauliTerm> &terms) {
    if (terms.empty()) {
        throw Error("no Pauli terms");
    }
    const std::size_t n = terms.front().paulis.size();
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
    Matrix m = Matrix::Zero(d, d);
    for (const auto &t : terms) {
        if (t.paulis.size() != n) {
            throw Error("Pauli terms of different lengths");
        }
        m += t.coefficient * pauli_string_matrix(t.paulis);
    }
    return m;
}

namespace {

/// Distinct permutations of `s`, each with coefficient c.
void add_permutations(std::vector<PauliTerm> &out, double c, std::string s) {
    std::sort(s.begin(), s.end());
    do {
        out.push_back({c, s});
    } while (std::next_permutation(s.begin(), s.end()));
}

std::vector<PauliTerm> merge_terms(const std::vector<PauliTerm> &terms) {
    std::map<std::string, double> acc;
    for (const auto &t : terms) {
        acc[t.paulis] += t.coefficient;
    }
    std::vector<PauliTerm> out;
    for (const auto &[p, c] : acc) {
        if (std::abs(c) > 1e-15) {
            out.push_back({c, p});
        }
    }
    return out;
}

std::vector<PauliTerm> scale(std::vector<PauliTerm> terms, double f) {
    for (auto &t : terms) {
        t.coefficient *= f;
    }
    return terms;
}

/// Terms conjugated by X on every qubit: Y and Z each flip sign.
std::vector<PauliTerm> conjugate_by_x(std::vector<PauliTerm> terms) {
    for (auto &t : terms) {
        const auto flips = std::count_if(t.paulis.begin(), t.paulis.end(),
                                         [](char c) { return c == 'Y' || c == 'Z'; });
        if (flips % 2 != 0) {
            t.coefficient = -t.coefficient;
        }
    }
    return terms;
}

} // namespace

// Observable -------------------------------------------------------------------

Observable::Observable(std::string name, Matrix matrix,
                       std::optional<std::vector<PauliTerm>> settings)
    : name_(std::move(name)), matrix_(std::move(matrix)),
      settings_(std::move(settings)), qubits_(0) {
    const auto d = matrix_.rows();
    while ((Eigen::Index{1} << qubits_) < d) {
        ++qubits_;
    }
    if ((Eigen::Index{1} << qubits_) != d || matrix_.cols() != d || d < 2) {
        throw Error(fmt::format("observable '{}' is not a 2^n square matrix",
                                name_));
    }
    const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kNormTolerance) {
        throw Error(fmt::format("observable '{}' is not Hermitian ({:.3e})",
                                name_, herm));
    }
    if (settings_) {
        for (const auto &t : *settings_) {
            if (t.paulis.size() != qubits_) {
                throw Error(fmt::format("observable '{}': Pauli term '{}' does "
                                        "not span {} qubits",
                                        name_, t.paulis, qubits_));
            }
        }
    }
}

Observable Observable::from_terms(std::string name, std::vector<PauliTerm> terms) {
    Matrix m = matrix_from_terms(terms);
    return {std::move(name), std::move(m), std::move(terms)};
}

double expectation(const State &s, const Observable &o) {
    return expectation(s, o.matrix()).real();
}

// collective spin --------------------------------------------------------------

namespace {

std::vector<PauliTerm> spin_terms(std::size_t n, char axis) {
    std::vector<PauliTerm> terms;
    for (std::size_t i = 0; i < n; ++i) {
        std::string s(n, 'I');
        s[i] = axis;
        terms.push_back({0.5, s});
    }
    return terms;
}

std::vector<PauliTerm> spin_squared_terms(std::size_t n, char axis, double scale_by,
                                          double shift) {
    std::vector<PauliTerm> terms;
    terms.push_back({scale_by * static_cast<double>(n) / 4.0 + shift,
                     std::string(n, 'I')});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::string s(n, 'I');
            s[i] = s[j] = axis;
            terms.push_back({scale_by * 0.5, s});
        }
    }
    return terms;
}

char upper_axis(char axis) {
    switch (axis) {
    case 'x':
    case 'X':
        return 'X';
    case 'y':
    case 'Y':
        return 'Y';
    case 'z':
    case 'Z':
        return 'Z';
    default:
        throw Error(fmt::format("unknown spin axis '{}'", axis));
    }
}

void check_spin_size(std::size_t n) {
    if (n < 1 || n > 8) {
        throw Error(fmt::format("collective spin needs 1 <= n <= 8, got {}", n));
    }
}

} // namespace

Observable collective_spin_squared(std::size_t n, char axis) {
    check_spin_size(n);
    const char a = upper_axis(axis);
    return Observable::from_terms(fmt::format("J{}^2", char(a + 32)),
                                  spin_squared_terms(n, a, 1.0, 0.0));
}

CollectiveSpinSet collective_spin(std::size_t n) {
    check_spin_size(n);
    auto j = [n](char a) {
        return Observable::from_terms(fmt::format("J{}", char(a + 32)),
                                      spin_terms(n, a));
    };
    // S = (J^2 - I)/2 = (n/4 - 1)/2 I + 1/4 sum_{i<j} s_i s_j
    auto s = [n](char a) {
        return Observable::from_terms(fmt::format("S{}", char(a + 32)),
                                      spin_squared_terms(n, a, 0.5, -0.5));
    };
    return {j('X'), j('Y'), j('Z'), s('X'), s('Y'), s('Z')};
}

// witnesses --------------------------------------------------------------------

Observable witness_wm() {
    const auto cs = collective_spin(4);
    const Matrix id = Matrix::Identity(16, 16);
    const Matrix jx2 = cs.jx.matrix() * cs.jx.matrix();
    const Matrix jy2 = cs.jy.matrix() * cs.jy.matrix();
    const Matrix jz2 = cs.jz.matrix() * cs.jz.matrix();
    Matrix w = (24.0 * id + jx2 * cs.sx.matrix() + jy2 * cs.sy.matrix() +
                jz2 * (31.0 * id - 7.0 * jz2)) /
               12.0;
    w = (w + w.adjoint()).eval() * 0.5;
    auto terms = pauli_decompose(w);
    return {"W_m", std::move(w), std::move(terms)};
}

Observable witness_wm_reconstructed() {
    const PureState d = dicke(4, 2, kServerLabels);
    Matrix w = 2.0 * Matrix::Identity(16, 16) -
               3.0 * (d.amplitudes() * d.amplitudes().adjoint());
    auto terms = pauli_decompose(w);
    return {"W_m(reconstructed)", std::move(w), std::move(terms)};
}

FidelityBound fidelity_bound_from_wm(double value) {
    const double raw = (2.0 - value) / 3.0;
    const double v = std::clamp(raw, 0.0, 1.0);
    return {v, v != raw};
}

FidelityBound fidelity_bound_from_projector(double value) {
    const double raw = 2.0 / 3.0 - value;
    const double v = std::clamp(raw, 0.0, 1.0);
    return {v, v != raw};
}

Observable witness_wcs(double gamma, double b4) {
    std::vector<PauliTerm> terms;
    terms.push_back({b4, "IIII"});
    const std::pair<char, double> axes[] = {{'X', 1.0}, {'Y', 1.0}, {'Z', gamma}};
    for (const auto &[a, w] : axes) {
        for (auto t : spin_squared_terms(4, a, -w, 0.0)) {
            terms.push_back(std::move(t));
        }
    }
    terms = merge_terms(terms);
    return Observable::from_terms(fmt::format("W_cs({:.6g})", gamma),
                                  std::move(terms));
}

double wcs_value(double gamma, double b4, const SpinMoments &m) {
    return b4 - (m.jx2 + m.jy2 + gamma * m.jz2);
}

double propagate_wcs_error(double gamma, double djx2, double djy2, double djz2) {
    if (djx2 < 0 || djy2 < 0 || djz2 < 0) {
        throw Error("moment uncertainties must be non-negative");
    }
    return std::sqrt(djx2 * djx2 + djy2 * djy2 + gamma * gamma * djz2 * djz2);
}

Observable witness_projector_d3(int k) {
    if (k != 1 && k != 2) {
        throw Error(fmt::format("projector witness needs k in {{1, 2}}, got {}",
                                k));
    }
    const PureState d = dicke(3, static_cast<std::size_t>(k));
    Matrix w = (2.0 / 3.0) * Matrix::Identity(8, 8) -
               d.amplitudes() * d.amplitudes().adjoint();
    // Rearranged form for D3(1):
    // {13 III + 3 ZZZ - P[ZII] + P[ZZI] - 2 P[XXI] - 2 P[YYI] - 2 P[XXZ]
    //  - 2 P[YYZ]}/24
    std::vector<PauliTerm> terms;
    terms.push_back({13.0, "III"});
    terms.push_back({3.0, "ZZZ"});
    add_permutations(terms, -1.0, "ZII");
    add_permutations(terms, 1.0, "ZZI");
    add_permutations(terms, -2.0, "XXI");
    add_permutations(terms, -2.0, "YYI");
    add_permutations(terms, -2.0, "XXZ");
    add_permutations(terms, -2.0, "YYZ");
    terms = scale(std::move(terms), 1.0 / 24.0);
    if (k == 2) {
        terms = conjugate_by_x(std::move(terms));
    }
    return {fmt::format("W_D3({})", k), std::move(w), std::move(terms)};
}

Observable witness_projector_d3_optimal(int k) {
    if (k != 1 && k != 2) {
        throw Error(fmt::format("projector witness needs k in {{1, 2}}, got {}",
                                k));
    }
    const PureState d = dicke(3, static_cast<std::size_t>(k));
    Matrix w = (2.0 / 3.0) * Matrix::Identity(8, 8) -
               d.amplitudes() * d.amplitudes().adjoint();
    // {17 III + 7 ZZZ + 3 P[ZII] + 5 P[ZZI]
    //  - sum_{l=x,y} sum_{s=+-} (I + Z + s l)^(x)3}/24
    std::vector<PauliTerm> terms;
    terms.push_back({17.0, "III"});
    terms.push_back({7.0, "ZZZ"});
    add_permutations(terms, 3.0, "ZII");
    add_permutations(terms, 5.0, "ZZI");
    for (char l : {'X', 'Y'}) {
        for (double sgn : {1.0, -1.0}) {
            const std::pair<char, double> factor[] = {
                {'I', 1.0}, {'Z', 1.0}, {l, sgn}};
            for (const auto &[p0, c0] : factor) {
                for (const auto &[p1, c1] : factor) {
                    for (const auto &[p2, c2] : factor) {
                        terms.push_back({-c0 * c1 * c2, std::string{p0, p1, p2}});
                    }
                }
            }
        }
    }
    terms = scale(merge_terms(terms), 1.0 / 24.0);
    if (k == 2) {
        terms = conjugate_by_x(std::move(terms));
    }
    return {fmt::format("W_D3({})(optimal)", k), std::move(w), std::move(terms)};
}

DecompositionCheck decomposition_check(const Observable &w) {
    if (!w.settings()) {
        throw Error(fmt::format("observable '{}' carries no settings", w.name()));
    }
    const Matrix rebuilt = matrix_from_terms(*w.settings());
    const double dev = (rebuilt - w.matrix()).cwiseAbs().maxCoeff();
    return {dev <= kNormTolerance, dev};
}

// biseparability bound ---------------------------------------------------------

std::vector<std::vector<std::size_t>> bipartitions(std::size_t num_qubits) {
    if (num_qubits < 2) {
        throw Error("bipartitions need at least two qubits");
    }
    std::vector<std::vector<std::size_t>> out;
    const std::size_t full = (std::size_t{1} << num_qubits) - 1;
    const std::size_t top = std::size_t{1} << (num_qubits - 1);
    // masks containing qubit 0 (MSB), excluding the full set
    for (std::size_t mask = top; mask < full; ++mask) {
        std::vector<std::size_t> part;
        for (std::size_t q = 0; q < num_qubits; ++q) {
            if (mask & (std::size_t{1} << (num_qubits - 1 - q))) {
                part.push_back(q);
            }
        }
        out.push_back(std::move(part));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto &a, const auto &b) { return a.size() < b.size(); });
    return out;
}

namespace {

std::string bipartition_name(std::size_t n, const std::vector<std::size_t> &a) {
    static constexpr std::string_view names = "abcdefghij";
    std::string left, right;
    for (std::size_t q = 0; q < n; ++q) {
        (std::find(a.begin(), a.end(), q) != a.end() ? left : right) += names[q];
    }
    return left + "|" + right;
}

/// `op` with rows/columns reordered so that the A qubits are most
/// significant: index (i_A * dB + j_B).
Matrix reorder_for_cut(const Matrix &op, std::size_t n,
                       const std::vector<std::size_t> &a,
                       const std::vector<std::size_t> &b) {
    std::vector<std::size_t> order = a;
    order.insert(order.end(), b.begin(), b.end());
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Eigen::Index> map(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t full = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (idx & (std::size_t{1} << (n - 1 - k))) {
                full |= std::size_t{1} << (n - 1 - order[k]);
            }
        }
        map[idx] = static_cast<Eigen::Index>(full);
    }
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix out(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            out(i, j) = op(map[static_cast<std::size_t>(i)],
                           map[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

Vector random_unit(Eigen::Index d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        v(i) = cplx(g(rng), g(rng));
    }
    v.normalize();
    return v;
}

/// Leading eigenpair of a Hermitian matrix.
std::pair<double, Vector> top_eigen(const Matrix &m) {
    Matrix h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    const auto last = h.rows() - 1;
    return {eig.eigenvalues()(last), eig.eigenvectors().col(last)};
}

} // namespace

BipartitionResult product_state_max(const Matrix &op, std::size_t num_qubits,
                                    const std::vector<std::size_t> &part_a,
                                    const BiseparableOptions &options) {
    std::vector<std::size_t> part_b;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (std::find(part_a.begin(), part_a.end(), q) == part_a.end()) {
            part_b.push_back(q);
        }
    }
    if (part_a.empty() || part_b.empty()) {
        throw Error("bipartition sides must both be non-empty");
    }
    const Matrix m = reorder_for_cut(op, num_qubits, part_a, part_b);
    const auto da = static_cast<Eigen::Index>(std::size_t{1} << part_a.size());
    const auto db = static_cast<Eigen::Index>(std::size_t{1} << part_b.size());

    auto conditioned_a = [&](const Vector &b) {
        Matrix out(da, da);
        for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index k = 0; k < da; ++k) {
                out(i, k) = b.dot(m.block(i * db, k * db, db, db) * b);
            }
        }
        return out;
    };
    auto conditioned_b = [&](const Vector &a) {
        Matrix out = Matrix::Zero(db, db);
        for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index k = 0; k < da; ++k) {
                out += std::conj(a(i)) * a(k) * m.block(i * db, k * db, db, db);
            }
        }
        return out;
    };

    BipartitionResult res;
    res.name = bipartition_name(num_qubits, part_a);
    res.restarts = options.restarts;
    res.value = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < options.restarts; ++r) {
        std::mt19937_64 rng(options.seed + 7919 * r + 104729 * part_a.size() +
                            part_a.back());
        Vector b = random_unit(db, rng);
        double value = -std::numeric_limits<double>::infinity();
        bool converged = false;
        for (std::size_t it = 0; it < options.max_iterations; ++it) {
            auto [va, a] = top_eigen(conditioned_a(b));
            auto [vb, nb] = top_eigen(conditioned_b(a));
            b = nb;
            if (std::abs(vb - value) <= options.tolerance * std::max(1.0, std::abs(vb))) {
                value = vb;
                converged = true;
                break;
            }
            value = vb;
        }
        if (converged) {
            ++res.converged;
        }
        res.value = std::max(res.value, value);
    }
    return res;
}

BiseparableBound biseparable_bound(double gamma, const BiseparableOptions &options) {
    if (!(gamma <= 0.0 && gamma >= -10.0)) {
        throw Error(fmt::format("biseparable bound needs -10 <= gamma <= 0, got {}",
                                gamma));
    }
    if (options.restarts < 1) {
        throw Error("biseparable bound needs at least one restart");
    }
    constexpr std::size_t n = 4;
    const Matrix op = collective_spin_squared(n, 'x').matrix() +
                      collective_spin_squared(n, 'y').matrix() +
                      gamma * collective_spin_squared(n, 'z').matrix();

    BiseparableBound out;
    out.gamma = gamma;
    out.value = -std::numeric_limits<double>::infinity();
    for (const auto &cut : bipartitions(n)) {
        auto r = product_state_max(op, n, cut, options);
        if (r.value > out.value) {
            out.value = r.value;
            out.best_bipartition = r.name;
        }
        out.bipartitions.push_back(std::move(r));
    }
    for (const auto &r : out.bipartitions) {
        if (r.converged == 0) {
            throw NotConverged(
                fmt::format("see-saw for bipartition {} did not converge in {} "
                            "iterations (best {:.12g})",
                            r.name, options.max_iterations, out.value),
                out.value, out.bipartitions);
        }
    }

    // Coarse cross-check: qubit a on a Bloch-sphere grid, the other three
    // optimized exactly.
    const Matrix m = reorder_for_cut(op, n, {0}, {1, 2, 3});
    out.grid_estimate = -std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < options.grid_theta; ++it) {
        const double t = std::numbers::pi * static_cast<double>(it) /
                         static_cast<double>(options.grid_theta - 1);
        for (std::size_t ip = 0; ip < options.grid_phi; ++ip) {
            const double p = 2.0 * std::numbers::pi * static_cast<double>(ip) /
                             static_cast<double>(options.grid_phi);
            Vector a(2);
            a << std::cos(t / 2), std::polar(std::sin(t / 2), p);
            Matrix cond = Matrix::Zero(8, 8);
            for (Eigen::Index i = 0; i < 2; ++i) {
                for (Eigen::Index k = 0; k < 2; ++k) {
                    cond += std::conj(a(i)) * a(k) * m.block(i * 8, k * 8, 8, 8);
                }
            }
            out.grid_estimate = std::max(out.grid_estimate, top_eigen(cond).first);
            if (it == 0 || it + 1 == options.grid_theta) {
                break; // poles: phi is irrelevant
            }
        }
    }
    return out;
}

// reports ----------------------------------------------------------------------

std::string_view to_string(Verdict v) noexcept {
    return v == Verdict::MultipartiteEntangled ? "multipartite-entangled"
                                               : "inconclusive";
}

WitnessReport make_witness_report(std::string witness, double value,
                                  double uncertainty,
                                  std::map<std::string, double> parameters,
                                  double significance) {
    if (uncertainty < 0) {
        throw Error("witness uncertainty must be non-negative");
    }
    WitnessReport r;
    r.witness = std::move(witness);
    r.parameters = std::move(parameters);
    r.value = value;
    r.uncertainty = uncertainty;
    r.significance = significance;
    r.verdict = value + significance * uncertainty < 0.0
                    ? Verdict::MultipartiteEntangled
                    : Verdict::Inconclusive;
    return r;
}

} // namespace dickenet
