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
#include "dickenet/register.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <fmt/format.h>

namespace dickenet {

ImpossibleBranch::ImpossibleBranch(double probability)
    : Error(fmt::format("impossible branch: projection probability {:.3e} is "
                        "below {:.0e}",
                        probability, kImpossibleBranch)),
      probability_(probability) {}

// Layout ---------------------------------------------------------------------

Layout::Layout(std::vector<Label> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw Error("register layout needs at least one qubit");
    }
    if (labels_.size() > kMaxQubits) {
        throw Error(fmt::format("register of {} qubits exceeds the dense limit "
                                "of {}",
                                labels_.size(), kMaxQubits));
    }
    std::set<std::string_view> seen;
    for (const auto &l : labels_) {
        if (l.empty()) {
            throw LabelError("empty qubit label", l);
        }
        if (!seen.insert(l).second) {
            throw LabelError(fmt::format("duplicate qubit label '{}'", l), l);
        }
    }
}

bool Layout::contains(std::string_view label) const noexcept {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t Layout::position(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw LabelError(fmt::format("unknown qubit label '{}'", label),
                         Label(label));
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::size_t> Layout::positions(std::span<const Label> labels) const {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    std::set<std::string_view> seen;
    for (const auto &l : labels) {
        if (!seen.insert(l).second) {
            throw LabelError(fmt::format("qubit label '{}' given twice", l), l);
        }
        out.push_back(position(l));
    }
    return out;
}

Layout Layout::concat(const Layout &other) const {
    for (const auto &l : other.labels_) {
        if (contains(l)) {
            throw LabelError(
                fmt::format("cannot combine registers: label '{}' appears in "
                            "both",
                            l),
                l);
        }
    }
    std::vector<Label> all = labels_;
    all.insert(all.end(), other.labels_.begin(), other.labels_.end());
    return Layout(std::move(all));
}

Layout Layout::without(std::span<const Label> drop) const {
    (void)positions(drop);
    std::vector<Label> rest;
    for (const auto &l : labels_) {
        if (std::find(drop.begin(), drop.end(), l) == drop.end()) {
            rest.push_back(l);
        }
    }
    return Layout(std::move(rest));
}

// index helpers ----------------------------------------------------------------

namespace {

/// Scatter the bits of `sub` (MSB first over `positions`) into a full index.
std::size_t scatter(const Layout &layout, std::span<const std::size_t> positions,
                    std::size_t sub) {
    std::size_t full = 0;
    const std::size_t k = positions.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (sub & (std::size_t{1} << (k - 1 - i))) {
            full |= layout.bit(positions[i]);
        }
    }
    return full;
}

std::vector<std::size_t> complement(const Layout &layout,
                                    std::span<const std::size_t> positions) {
    std::vector<std::size_t> rest;
    for (std::size_t p = 0; p < layout.size(); ++p) {
        if (std::find(positions.begin(), positions.end(), p) ==
            positions.end()) {
            rest.push_back(p);
        }
    }
    return rest;
}

bool is_unitary(const Matrix &m) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const Matrix prod = m.adjoint() * m;
    return (prod - Matrix::Identity(m.rows(), m.cols()))
               .cwiseAbs()
               .maxCoeff() <= kNormTolerance;
}

} // namespace

// states -----------------------------------------------------------------------

PureState::PureState(Layout layout, Vector amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != layout_.dim()) {
        throw Error(fmt::format("amplitude vector has length {}, register "
                                "needs {}",
                                amps_.size(), layout_.dim()));
    }
    const double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw Error(fmt::format("state is not normalized: squared norm {:.12g}",
                                norm2));
    }
}

PureState PureState::basis(Layout layout, std::string_view bits) {
    if (bits.size() != layout.size()) {
        throw Error(fmt::format("basis string '{}' does not match {} qubits",
                                bits, layout.size()));
    }
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error(fmt::format("invalid basis string '{}'", bits));
        }
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.dim()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return {std::move(layout), std::move(v)};
}

MixedState::MixedState(Layout layout, Matrix matrix)
    : layout_(std::move(layout)), rho_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(layout_.dim());
    if (rho_.rows() != d || rho_.cols() != d) {
        throw Error(fmt::format("density matrix is {}x{}, register needs {}x{}",
                                rho_.rows(), rho_.cols(), d, d));
    }
    const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kNormTolerance) {
        throw Error(
            fmt::format("density matrix is not Hermitian (deviation {:.3e})",
                        herm));
    }
    const cplx tr = rho_.trace();
    if (std::abs(tr - 1.0) > kNormTolerance) {
        throw Error(fmt::format("density matrix trace is {:.12g}", tr.real()));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -kPsdTolerance) {
        throw Error(fmt::format("density matrix has eigenvalue {:.3e}",
                                eig.eigenvalues().minCoeff()));
    }
}

MixedState::MixedState(const PureState &pure)
    : layout_(pure.layout()),
      rho_(pure.amplitudes() * pure.amplitudes().adjoint()) {}

const Layout &layout_of(const State &s) {
    return std::visit([](const auto &x) -> const Layout & { return x.layout(); },
                      s);
}

bool is_pure(const State &s) noexcept {
    return std::holds_alternative<PureState>(s);
}

MixedState to_mixed(const State &s) {
    if (const auto *p = std::get_if<PureState>(&s)) {
        return MixedState(*p);
    }
    return std::get<MixedState>(s);
}

Matrix density_matrix(const State &s) {
    if (const auto *p = std::get_if<PureState>(&s)) {
        return p->amplitudes() * p->amplitudes().adjoint();
    }
    return std::get<MixedState>(s).matrix();
}

Gate::Gate(std::vector<Label> t, Matrix m)
    : targets(std::move(t)), matrix(std::move(m)) {
    if (targets.empty()) {
        throw Error("gate acts on no qubits");
    }
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
    if (matrix.rows() != d || matrix.cols() != d) {
        throw Error(fmt::format("gate on {} qubits needs a {}x{} matrix",
                                targets.size(), d, d));
    }
    if (!is_unitary(matrix)) {
        throw Error("gate matrix is not unitary");
    }
}

// tensor -----------------------------------------------------------------------

PureState tensor(const PureState &lhs, const PureState &rhs) {
    Layout layout = lhs.layout().concat(rhs.layout());
    Vector v = gates::kron(lhs.amplitudes(), rhs.amplitudes());
    return {std::move(layout), std::move(v)};
}

MixedState tensor(const MixedState &lhs, const MixedState &rhs) {
    Layout layout = lhs.layout().concat(rhs.layout());
    Matrix m = gates::kron(lhs.matrix(), rhs.matrix());
    return {std::move(layout), std::move(m)};
}

State tensor(const State &lhs, const State &rhs) {
    if (is_pure(lhs) && is_pure(rhs)) {
        return tensor(std::get<PureState>(lhs), std::get<PureState>(rhs));
    }
    return tensor(to_mixed(lhs), to_mixed(rhs));
}

// gates ------------------------------------------------------------------------

Matrix embed(const Gate &gate, const Layout &layout) {
    const auto pos = layout.positions(gate.targets);
    const auto rest = complement(layout, pos);
    const std::size_t k = pos.size();
    const std::size_t sub_dim = std::size_t{1} << k;
    const std::size_t rest_dim = std::size_t{1} << rest.size();
    const auto d = static_cast<Eigen::Index>(layout.dim());
    Matrix full = Matrix::Zero(d, d);
    for (std::size_t r = 0; r < rest_dim; ++r) {
        const std::size_t base = scatter(layout, rest, r);
        for (std::size_t i = 0; i < sub_dim; ++i) {
            const auto row =
                static_cast<Eigen::Index>(base | scatter(layout, pos, i));
            for (std::size_t j = 0; j < sub_dim; ++j) {
                const auto col =
                    static_cast<Eigen::Index>(base | scatter(layout, pos, j));
                full(row, col) = gate.matrix(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(j));
            }
        }
    }
    return full;
}

PureState apply_gate(const PureState &s, const Gate &gate) {
    const Matrix u = embed(gate, s.layout());
    Vector v = u * s.amplitudes();
    return {s.layout(), std::move(v)};
}

MixedState apply_gate(const MixedState &s, const Gate &gate) {
    const Matrix u = embed(gate, s.layout());
    Matrix m = u * s.matrix() * u.adjoint();
    m = (m + m.adjoint()).eval() * 0.5;
    return {s.layout(), std::move(m)};
}

State apply_gate(const State &s, const Gate &gate) {
    return std::visit([&](const auto &x) -> State { return apply_gate(x, gate); },
                      s);
}

// projection -------------------------------------------------------------------

namespace {

void check_projection_ket(std::span<const Label> labels, const Vector &onto) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << labels.size());
    if (onto.size() != d) {
        throw Error(fmt::format("projection ket has length {}, {} labels need {}",
                                onto.size(), labels.size(), d));
    }
    if (std::abs(onto.squaredNorm() - 1.0) > kNormTolerance) {
        throw Error("projection ket is not normalized");
    }
}

} // namespace

Projection<PureState> project(const PureState &s, std::span<const Label> labels,
                              const Vector &onto) {
    check_projection_ket(labels, onto);
    const Layout &layout = s.layout();
    const auto pos = layout.positions(labels);
    const auto rest = complement(layout, pos);
    Layout out_layout = layout.without(labels);
    const std::size_t sub_dim = std::size_t{1} << pos.size();
    const std::size_t rest_dim = out_layout.dim();
    Vector out = Vector::Zero(static_cast<Eigen::Index>(rest_dim));
    for (std::size_t r = 0; r < rest_dim; ++r) {
        const std::size_t base = scatter(layout, rest, r);
        cplx acc = 0.0;
        for (std::size_t q = 0; q < sub_dim; ++q) {
            acc += std::conj(onto(static_cast<Eigen::Index>(q))) *
                   s.amplitudes()(static_cast<Eigen::Index>(
                       base | scatter(layout, pos, q)));
        }
        out(static_cast<Eigen::Index>(r)) = acc;
    }
    const double prob = out.squaredNorm();
    if (prob < kImpossibleBranch) {
        throw ImpossibleBranch(prob);
    }
    out /= std::sqrt(prob);
    return {prob, PureState(std::move(out_layout), std::move(out))};
}

Projection<MixedState> project(const MixedState &s,
                               std::span<const Label> labels,
                               const Vector &onto) {
    check_projection_ket(labels, onto);
    const Layout &layout = s.layout();
    const auto pos = layout.positions(labels);
    const auto rest = complement(layout, pos);
    Layout out_layout = layout.without(labels);
    const std::size_t sub_dim = std::size_t{1} << pos.size();
    const auto rest_dim = static_cast<Eigen::Index>(out_layout.dim());
    // K = (<onto| (x) I_rest) as a rest_dim x dim matrix.
    Matrix k = Matrix::Zero(rest_dim, static_cast<Eigen::Index>(layout.dim()));
    for (Eigen::Index r = 0; r < rest_dim; ++r) {
        const std::size_t base =
            scatter(layout, rest, static_cast<std::size_t>(r));
        for (std::size_t q = 0; q < sub_dim; ++q) {
            k(r, static_cast<Eigen::Index>(base | scatter(layout, pos, q))) =
                std::conj(onto(static_cast<Eigen::Index>(q)));
        }
    }
    Matrix out = k * s.matrix() * k.adjoint();
    const double prob = out.trace().real();
    if (prob < kImpossibleBranch) {
        throw ImpossibleBranch(prob);
    }
    out /= prob;
    out = (out + out.adjoint()).eval() * 0.5;
    return {prob, MixedState(std::move(out_layout), std::move(out))};
}

Projection<State> project(const State &s, std::span<const Label> labels,
                          const Vector &onto) {
    return std::visit(
        [&](const auto &x) -> Projection<State> {
            auto p = project(x, labels, onto);
            return {p.probability, std::move(p.state)};
        },
        s);
}

Projection<State> project(const State &s, std::span<const Label> labels,
                          std::string_view bits) {
    if (bits.size() != labels.size()) {
        throw Error(fmt::format("projection string '{}' does not match {} "
                                "labels",
                                bits, labels.size()));
    }
    std::vector<Label> names(labels.begin(), labels.end());
    const PureState ket = PureState::basis(Layout(std::move(names)), bits);
    return project(s, labels, ket.amplitudes());
}

// partial trace ----------------------------------------------------------------

MixedState partial_trace(const State &s, std::span<const Label> keep) {
    if (keep.empty()) {
        throw Error("partial trace needs a non-empty set of kept labels");
    }
    const Layout &layout = layout_of(s);
    auto keep_pos = layout.positions(keep);
    std::sort(keep_pos.begin(), keep_pos.end());
    const auto traced = complement(layout, keep_pos);
    std::vector<Label> kept_labels;
    for (auto p : keep_pos) {
        kept_labels.push_back(layout[p]);
    }
    Layout out_layout(std::move(kept_labels));
    const auto kd = static_cast<Eigen::Index>(out_layout.dim());
    const std::size_t td = std::size_t{1} << traced.size();
    Matrix out = Matrix::Zero(kd, kd);

    if (const auto *p = std::get_if<PureState>(&s)) {
        // Reshape amplitudes into kept x traced and form A A^dagger.
        Matrix a(kd, static_cast<Eigen::Index>(td));
        for (Eigen::Index i = 0; i < kd; ++i) {
            const std::size_t ib =
                scatter(layout, keep_pos, static_cast<std::size_t>(i));
            for (std::size_t t = 0; t < td; ++t) {
                a(i, static_cast<Eigen::Index>(t)) =
                    p->amplitudes()(static_cast<Eigen::Index>(
                        ib | scatter(layout, traced, t)));
            }
        }
        out = a * a.adjoint();
    } else {
        const Matrix &rho = std::get<MixedState>(s).matrix();
        for (Eigen::Index i = 0; i < kd; ++i) {
            const std::size_t ib =
                scatter(layout, keep_pos, static_cast<std::size_t>(i));
            for (Eigen::Index j = 0; j < kd; ++j) {
                const std::size_t jb =
                    scatter(layout, keep_pos, static_cast<std::size_t>(j));
                cplx acc = 0.0;
                for (std::size_t t = 0; t < td; ++t) {
                    const std::size_t tb = scatter(layout, traced, t);
                    acc += rho(static_cast<Eigen::Index>(ib | tb),
                               static_cast<Eigen::Index>(jb | tb));
                }
                out(i, j) = acc;
            }
        }
    }
    out = (out + out.adjoint()).eval() * 0.5;
    out /= out.trace().real();
    return {std::move(out_layout), std::move(out)};
}

// permutation ------------------------------------------------------------------

namespace {

/// perm[new_index] = old_index for a reordering of `layout` into `order`.
std::vector<std::size_t> index_map(const Layout &layout,
                                   std::span<const Label> order) {
    if (order.size() != layout.size()) {
        throw Error("permutation must list every qubit exactly once");
    }
    const auto pos = layout.positions(order);
    std::vector<std::size_t> map(layout.dim());
    for (std::size_t n = 0; n < layout.dim(); ++n) {
        map[n] = scatter(layout, pos, n);
    }
    return map;
}

} // namespace

PureState permute(const PureState &s, std::span<const Label> order) {
    const auto map = index_map(s.layout(), order);
    Vector v(static_cast<Eigen::Index>(map.size()));
    for (std::size_t n = 0; n < map.size(); ++n) {
        v(static_cast<Eigen::Index>(n)) =
            s.amplitudes()(static_cast<Eigen::Index>(map[n]));
    }
    return {Layout(std::vector<Label>(order.begin(), order.end())), std::move(v)};
}

MixedState permute(const MixedState &s, std::span<const Label> order) {
    const auto map = index_map(s.layout(), order);
    const auto d = static_cast<Eigen::Index>(map.size());
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = s.matrix()(static_cast<Eigen::Index>(map[i]),
                                 static_cast<Eigen::Index>(map[j]));
        }
    }
    return {Layout(std::vector<Label>(order.begin(), order.end())), std::move(m)};
}

State permute(const State &s, std::span<const Label> order) {
    return std::visit([&](const auto &x) -> State { return permute(x, order); },
                      s);
}

PureState relabel(const PureState &s, std::vector<Label> labels) {
    if (labels.size() != s.num_qubits()) {
        throw Error("relabel needs one label per qubit");
    }
    return {Layout(std::move(labels)), s.amplitudes()};
}

MixedState relabel(const MixedState &s, std::vector<Label> labels) {
    if (labels.size() != s.num_qubits()) {
        throw Error("relabel needs one label per qubit");
    }
    return {Layout(std::move(labels)), s.matrix()};
}

// fidelity ---------------------------------------------------------------------

Matrix psd_sqrt(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    Eigen::VectorXd ev = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().adjoint();
}

double fidelity(const State &a, const State &b) {
    if (layout_of(a).dim() != layout_of(b).dim()) {
        throw Error(fmt::format("fidelity between registers of dimension {} "
                                "and {}",
                                layout_of(a).dim(), layout_of(b).dim()));
    }
    double f = 0.0;
    const auto *pa = std::get_if<PureState>(&a);
    const auto *pb = std::get_if<PureState>(&b);
    if (pa && pb) {
        f = std::norm(pa->amplitudes().dot(pb->amplitudes()));
    } else if (pa || pb) {
        const Vector &psi = pa ? pa->amplitudes() : pb->amplitudes();
        const Matrix &rho = pa ? std::get<MixedState>(b).matrix()
                               : std::get<MixedState>(a).matrix();
        f = psi.dot(rho * psi).real();
    } else {
        const Matrix sa = psd_sqrt(std::get<MixedState>(a).matrix());
        Matrix inner = sa * std::get<MixedState>(b).matrix() * sa;
        inner = (inner + inner.adjoint()).eval() * 0.5;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(inner, Eigen::EigenvaluesOnly);
        const double root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
        f = root * root;
    }
    return std::clamp(f, 0.0, 1.0);
}

cplx expectation(const State &s, const Matrix &op) {
    const auto d = static_cast<Eigen::Index>(layout_of(s).dim());
    if (op.rows() != d || op.cols() != d) {
        throw Error("observable dimension does not match the register");
    }
    if (const auto *p = std::get_if<PureState>(&s)) {
        return p->amplitudes().dot(op * p->amplitudes());
    }
    return (std::get<MixedState>(s).matrix() * op).trace();
}

// gate constants ---------------------------------------------------------------

namespace gates {

Matrix identity(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return Matrix::Identity(d, d);
}

Matrix pauli(char which) {
    Matrix m = Matrix::Zero(2, 2);
    switch (which) {
    case 'I':
        m(0, 0) = m(1, 1) = 1.0;
        break;
    case 'X':
        m(0, 1) = m(1, 0) = 1.0;
        break;
    case 'Y':
        m(0, 1) = cplx(0, -1);
        m(1, 0) = cplx(0, 1);
        break;
    case 'Z':
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    default:
        throw Error(fmt::format("unknown Pauli '{}'", which));
    }
    return m;
}

Matrix hadamard() {
    Matrix h(2, 2);
    const double r = 1.0 / std::numbers::sqrt2;
    h << r, r, r, -r;
    return h;
}

Matrix phase(double phi) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = std::polar(1.0, phi);
    return m;
}

Matrix controlled(const Matrix &target_op) {
    const auto d = target_op.rows();
    Matrix m = Matrix::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = Matrix::Identity(d, d);
    m.bottomRightCorner(d, d) = target_op;
    return m;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

} // namespace gates

} // namespace dickenet
