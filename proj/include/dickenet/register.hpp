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
 * Dense labeled qubit registers: pure and mixed states, gate embedding,
 * projective measurement, partial trace and fidelity.
 *
 * Basis ordering is big-endian in layout order: the first label is the most
 * significant bit of the basis index.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace dickenet {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Label = std::string;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-8;
inline constexpr double kImpossibleBranch = 1e-12;
inline constexpr std::size_t kMaxQubits = 10;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Duplicate, unknown or otherwise invalid qubit labels.
class LabelError : public Error {
  public:
    LabelError(const std::string &what, Label label)
        : Error(what), label_(std::move(label)) {}
    [[nodiscard]] const Label &label() const noexcept { return label_; }

  private:
    Label label_;
};

/// A projection whose Born probability is below kImpossibleBranch.
class ImpossibleBranch : public Error {
  public:
    explicit ImpossibleBranch(double probability);
    [[nodiscard]] double probability() const noexcept { return probability_; }

  private:
    double probability_;
};

/// Ordered, duplicate-free list of qubit labels.
class Layout {
  public:
    explicit Layout(std::vector<Label> labels);

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept {
        return std::size_t{1} << labels_.size();
    }
    [[nodiscard]] const std::vector<Label> &labels() const noexcept {
        return labels_;
    }
    [[nodiscard]] const Label &operator[](std::size_t i) const {
        return labels_[i];
    }
    [[nodiscard]] bool contains(std::string_view label) const noexcept;
    /// Throws LabelError when the label is absent.
    [[nodiscard]] std::size_t position(std::string_view label) const;
    [[nodiscard]] std::vector<std::size_t>
    positions(std::span<const Label> labels) const;

    /// Bit mask of qubit `pos` inside a basis index.
    [[nodiscard]] std::size_t bit(std::size_t pos) const noexcept {
        return std::size_t{1} << (labels_.size() - 1 - pos);
    }

    [[nodiscard]] Layout concat(const Layout &other) const;
    [[nodiscard]] Layout without(std::span<const Label> drop) const;

    bool operator==(const Layout &) const = default;

  private:
    std::vector<Label> labels_;
};

/// Normalized ket over a labeled register.
class PureState {
  public:
    PureState(Layout layout, Vector amplitudes);

    /// Computational basis state; `bits` holds one '0'/'1' per label.
    static PureState basis(Layout layout, std::string_view bits);

    [[nodiscard]] const Layout &layout() const noexcept { return layout_; }
    [[nodiscard]] const Vector &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::size_t num_qubits() const noexcept {
        return layout_.size();
    }

  private:
    Layout layout_;
    Vector amps_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class MixedState {
  public:
    MixedState(Layout layout, Matrix matrix);
    explicit MixedState(const PureState &pure);

    [[nodiscard]] const Layout &layout() const noexcept { return layout_; }
    [[nodiscard]] const Matrix &matrix() const noexcept { return rho_; }
    [[nodiscard]] std::size_t num_qubits() const noexcept {
        return layout_.size();
    }

  private:
    Layout layout_;
    Matrix rho_;
};

using State = std::variant<PureState, MixedState>;

[[nodiscard]] const Layout &layout_of(const State &s);
[[nodiscard]] bool is_pure(const State &s) noexcept;
[[nodiscard]] MixedState to_mixed(const State &s);
[[nodiscard]] Matrix density_matrix(const State &s);

/// Unitary acting on an ordered list of labels (first label = MSB of the
/// gate matrix index).
struct Gate {
    Gate(std::vector<Label> targets, Matrix matrix);

    std::vector<Label> targets;
    Matrix matrix;
};

/// Result of a projective measurement on part of a register.
template <typename StateT> struct Projection {
    double probability;
    StateT state;
};

// tensor ---------------------------------------------------------------------
[[nodiscard]] PureState tensor(const PureState &lhs, const PureState &rhs);
[[nodiscard]] MixedState tensor(const MixedState &lhs, const MixedState &rhs);
/// Pure when both operands are pure.
[[nodiscard]] State tensor(const State &lhs, const State &rhs);

// gates ----------------------------------------------------------------------
/// Full 2^n x 2^n operator of `gate` embedded in `layout`.
[[nodiscard]] Matrix embed(const Gate &gate, const Layout &layout);
[[nodiscard]] PureState apply_gate(const PureState &s, const Gate &gate);
[[nodiscard]] MixedState apply_gate(const MixedState &s, const Gate &gate);
[[nodiscard]] State apply_gate(const State &s, const Gate &gate);

// projection -----------------------------------------------------------------
[[nodiscard]] Projection<PureState> project(const PureState &s,
                                            std::span<const Label> labels,
                                            const Vector &onto);
[[nodiscard]] Projection<MixedState> project(const MixedState &s,
                                             std::span<const Label> labels,
                                             const Vector &onto);
[[nodiscard]] Projection<State> project(const State &s,
                                        std::span<const Label> labels,
                                        const Vector &onto);
/// Projection onto a computational basis string, e.g. project(s, {"c","d"},
/// "10").
[[nodiscard]] Projection<State> project(const State &s,
                                        std::span<const Label> labels,
                                        std::string_view bits);

// reduction ------------------------------------------------------------------
/// Reduced operator on `keep`; the result keeps the original register order.
[[nodiscard]] MixedState partial_trace(const State &s,
                                       std::span<const Label> keep);

// relabelling ----------------------------------------------------------------
/// Same physical state, re-expressed with its qubits in `order`.
[[nodiscard]] PureState permute(const PureState &s,
                                std::span<const Label> order);
[[nodiscard]] MixedState permute(const MixedState &s,
                                 std::span<const Label> order);
[[nodiscard]] State permute(const State &s, std::span<const Label> order);
/// Same amplitudes with new names (position-wise).
[[nodiscard]] PureState relabel(const PureState &s, std::vector<Label> labels);
[[nodiscard]] MixedState relabel(const MixedState &s, std::vector<Label> labels);

// fidelity -------------------------------------------------------------------
/// Squared-overlap convention: |<a|b>|^2, <a|rho|a>, or Uhlmann
/// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Layout dimensions must agree.
[[nodiscard]] double fidelity(const State &a, const State &b);

[[nodiscard]] cplx expectation(const State &s, const Matrix &op);

/// Principal square root of a Hermitian PSD matrix (negative eigenvalues
/// clipped to zero).
[[nodiscard]] Matrix psd_sqrt(const Matrix &m);

// single-qubit constants -----------------------------------------------------
namespace gates {
[[nodiscard]] Matrix identity(std::size_t dim);
[[nodiscard]] Matrix pauli(char which); // 'I', 'X', 'Y', 'Z'
[[nodiscard]] Matrix hadamard();
[[nodiscard]] Matrix phase(double phi);
/// |0><0| (x) I + |1><1| (x) target_op on (control, target).
[[nodiscard]] Matrix controlled(const Matrix &target_op);
[[nodiscard]] Matrix kron(const Matrix &a, const Matrix &b);
} // namespace gates

} // namespace dickenet
