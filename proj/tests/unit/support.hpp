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
// Shared oracles and random generators for the unit suites.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dickenet/register.hpp"

namespace testing {

using dickenet::cplx;
using dickenet::Label;
using dickenet::Layout;
using dickenet::Matrix;
using dickenet::MixedState;
using dickenet::PureState;
using dickenet::Vector;

inline std::vector<Label> labels(std::size_t n, char first = 'a') {
    std::vector<Label> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(1, static_cast<char>(first + i));
    }
    return out;
}

inline Vector random_ket(Eigen::Index dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = cplx(g(rng), g(rng));
    }
    return v.normalized();
}

inline PureState random_pure(std::size_t n, std::mt19937_64 &rng, char first = 'a') {
    return {Layout(labels(n, first)), random_ket(Eigen::Index{1} << n, rng)};
}

/// Random full-rank density matrix from a Ginibre draw.
inline MixedState random_mixed(std::size_t n, std::mt19937_64 &rng, char first = 'a') {
    std::normal_distribution<double> g;
    const auto d = Eigen::Index{1} << n;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index k = 0; k < d; ++k) {
            a(i, k) = cplx(g(rng), g(rng));
        }
    }
    Matrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    rho = (rho + rho.adjoint()).eval() * 0.5;
    return {Layout(labels(n, first)), rho};
}

/// Haar-ish random unitary via QR of a Ginibre matrix.
inline Matrix random_unitary(Eigen::Index d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index k = 0; k < d; ++k) {
            a(i, k) = cplx(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(d, d);
}

/// Kronecker product by explicit index arithmetic.
inline Matrix kron_oracle(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            for (Eigen::Index p = 0; p < b.rows(); ++p) {
                for (Eigen::Index q = 0; q < b.cols(); ++q) {
                    out(i * b.rows() + p, k * b.cols() + q) = a(i, k) * b(p, q);
                }
            }
        }
    }
    return out;
}

inline double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

} // namespace testing
