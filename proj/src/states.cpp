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
#include "dickenet/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace dickenet {

namespace {

std::vector<Label> default_labels(std::size_t n) {
    static constexpr std::string_view names = "abcdefghij";
    std::vector<Label> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(1, names[i]);
    }
    return out;
}

Vector from_terms(std::size_t n,
                  std::initializer_list<std::pair<std::string_view, double>> terms) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
    for (const auto &[bits, coeff] : terms) {
        std::size_t idx = 0;
        for (char c : bits) {
            idx = (idx << 1) | static_cast<std::size_t>(c == '1');
        }
        v(static_cast<Eigen::Index>(idx)) += coeff;
    }
    return v;
}

} // namespace

void ClientParams::validate() const {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw Error(fmt::format("client theta {} outside [0, pi]", theta));
    }
    if (!std::isfinite(phi)) {
        throw Error("client phi must be finite");
    }
    if (!(dephase_lambda >= 0.0 && dephase_lambda <= 1.0)) {
        throw Error(
            fmt::format("dephasing lambda {} outside [0, 1]", dephase_lambda));
    }
}

std::string_view to_string(Bell b) noexcept {
    switch (b) {
    case Bell::PsiPlus:
        return "psi+";
    case Bell::PsiMinus:
        return "psi-";
    case Bell::PhiPlus:
        return "phi+";
    case Bell::PhiMinus:
        return "phi-";
    }
    return "?";
}

PureState dicke(std::size_t n, std::size_t k, std::vector<Label> labels) {
    if (n < 1 || n > 8) {
        throw Error(fmt::format("Dicke state needs 1 <= n <= 8, got n = {}", n));
    }
    if (k > n) {
        throw Error(fmt::format("Dicke state excitation k = {} exceeds n = {}", k,
                                n));
    }
    if (labels.empty()) {
        labels = default_labels(n);
    }
    if (labels.size() != n) {
        throw Error("Dicke state needs one label per qubit");
    }
    const std::size_t dim = std::size_t{1} << n;
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    std::size_t count = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        if (static_cast<std::size_t>(std::popcount(i)) == k) {
            v(static_cast<Eigen::Index>(i)) = 1.0;
            ++count;
        }
    }
    v /= std::sqrt(static_cast<double>(count));
    return {Layout(std::move(labels)), std::move(v)};
}

PureState bell(Bell which, Label q1, Label q2) {
    const double r = 1.0 / std::numbers::sqrt2;
    Vector v;
    switch (which) {
    case Bell::PsiPlus:
        v = from_terms(2, {{"01", r}, {"10", r}});
        break;
    case Bell::PsiMinus:
        v = from_terms(2, {{"01", r}, {"10", -r}});
        break;
    case Bell::PhiPlus:
        v = from_terms(2, {{"00", r}, {"11", r}});
        break;
    case Bell::PhiMinus:
        v = from_terms(2, {{"00", r}, {"11", -r}});
        break;
    }
    return {Layout({std::move(q1), std::move(q2)}), std::move(v)};
}

PureState xi_state() {
    const double s = 1.0 / std::sqrt(6.0);
    // |HH>(|rl> - |lr>) + 2|VV>|rl>
    return {Layout(kServerLabels),
            from_terms(4, {{"0001", s}, {"0010", -s}, {"1101", 2.0 * s}})};
}

PureState dicke_physical() {
    const double s = 1.0 / std::sqrt(6.0);
    // |HHll> + |VVrr> + (|VH> + |HV>)(|rl> + |lr>)
    return {Layout(kServerLabels), from_terms(4, {{"0011", s},
                                                  {"1100", s},
                                                  {"1001", s},
                                                  {"1010", s},
                                                  {"0101", s},
                                                  {"0110", s}})};
}

MixedState werner_dicke(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(fmt::format("Werner weight p = {} outside [0, 1]", p));
    }
    const PureState d = dicke(4, 2, kServerLabels);
    Matrix rho = p * (d.amplitudes() * d.amplitudes().adjoint()) +
                 ((1.0 - p) / 16.0) * Matrix::Identity(16, 16);
    return {Layout(kServerLabels), std::move(rho)};
}

double werner_dicke_fidelity(double p) noexcept {
    return p + (1.0 - p) / 16.0;
}

double werner_p_for_fidelity(double fidelity) noexcept {
    return (fidelity - 1.0 / 16.0) / (15.0 / 16.0);
}

PureState client_ket(const ClientParams &params, Label label) {
    params.validate();
    Vector v(2);
    v(0) = std::cos(params.theta / 2.0);
    v(1) = std::polar(std::sin(params.theta / 2.0), params.phi);
    return {Layout({std::move(label)}), std::move(v)};
}

State client_state(const ClientParams &params, Label label) {
    PureState ket = client_ket(params, std::move(label));
    if (params.dephase_lambda == 0.0) {
        return ket;
    }
    Matrix rho = ket.amplitudes() * ket.amplitudes().adjoint();
    rho(0, 1) *= 1.0 - params.dephase_lambda;
    rho(1, 0) *= 1.0 - params.dephase_lambda;
    return MixedState(ket.layout(), std::move(rho));
}

std::optional<std::vector<Label>>
find_matching_order(const PureState &candidate, const PureState &reference,
                    double tolerance) {
    if (candidate.layout().dim() != reference.layout().dim()) {
        return std::nullopt;
    }
    std::vector<Label> order = candidate.layout().labels();
    std::sort(order.begin(), order.end());
    do {
        const PureState p = permute(candidate, order);
        if (fidelity(p, reference) >= 1.0 - tolerance) {
            return order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
}

} // namespace dickenet
