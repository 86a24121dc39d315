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
#include "dickenet/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fmt/format.h>

#include "dickenet/circuit.hpp"

namespace dickenet {

namespace {

constexpr double kMatchTolerance = 1e-9;

Vector sigma_x_eigen(int sign) {
    Vector v(2);
    const double r = 1.0 / std::numbers::sqrt2;
    v << r, sign * r;
    return v;
}

Vector z_eigen(int bit) {
    Vector v = Vector::Zero(2);
    v(bit) = 1.0;
    return v;
}

void check_server_label(const Label &l, std::string_view role) {
    if (std::find(kServerLabels.begin(), kServerLabels.end(), l) ==
        kServerLabels.end()) {
        throw LabelError(fmt::format("{} '{}' is not a server qubit (a, b, c, d)",
                                     role, l),
                         l);
    }
}

std::vector<Label> server_minus(std::initializer_list<Label> drop) {
    std::vector<Label> out;
    for (const auto &l : kServerLabels) {
        if (std::find(drop.begin(), drop.end(), l) == drop.end()) {
            out.push_back(l);
        }
    }
    return out;
}

State apply_on_each(const State &s, char pauli, const std::vector<Label> &qubits) {
    if (pauli == 'I') {
        return s;
    }
    State out = s;
    for (const auto &q : qubits) {
        out = apply_gate(out, Gate({q}, gates::pauli(pauli)));
    }
    return out;
}

/// alpha|D3(1)> + beta|D3(2)> on `labels`.
PureState telecloned_target(const ClientParams &c, const std::vector<Label> &labels) {
    const PureState ket = client_ket(c);
    const Vector d1 = dicke(3, 1, labels).amplitudes();
    const Vector d2 = dicke(3, 2, labels).amplitudes();
    Vector v = ket.amplitudes()(0) * d1 + ket.amplitudes()(1) * d2;
    return {Layout(labels), std::move(v)};
}

} // namespace

std::array<BranchOutcome, 4> bell_measure(const State &s, const Label &q1,
                                          const Label &q2) {
    if (q1 == q2) {
        throw LabelError("Bell measurement needs two distinct qubits", q1);
    }
    const State rotated = apply_gate(s, cx(q1, q2).to_gate());
    const std::vector<Label> pair{q1, q2};
    struct Slot {
        Bell bell;
        int sign;
        int bit;
    };
    static constexpr Slot slots[] = {{Bell::PhiPlus, +1, 0},
                                     {Bell::PsiPlus, +1, 1},
                                     {Bell::PhiMinus, -1, 0},
                                     {Bell::PsiMinus, -1, 1}};
    std::array<BranchOutcome, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto &slot = slots[i];
        BranchOutcome b;
        b.outcome = slot.bell;
        b.measured = fmt::format("{}{}", slot.sign > 0 ? '+' : '-', slot.bit);
        const Vector ket = gates::kron(sigma_x_eigen(slot.sign), z_eigen(slot.bit));
        try {
            auto p = project(rotated, pair, ket);
            b.probability = p.probability;
            b.post_state = std::move(p.state);
        } catch (const ImpossibleBranch &) {
            b.probability = 0.0;
        }
        out[i] = std::move(b);
    }
    return out;
}

CorrectionTable derive_correction_table(const PureState &resource,
                                        const Label &port) {
    check_server_label(port, "port");
    if (resource.layout().labels() != kServerLabels) {
        throw Error("correction table needs a resource on (a, b, c, d)");
    }
    if (fidelity(resource, dicke(4, 2, kServerLabels)) < 1.0 - kMatchTolerance) {
        throw Error("correction table needs the ideal D4(2) resource");
    }
    const std::vector<Label> clones = server_minus({port});
    // Generic samples: theta away from 0 and pi, non-trivial phase.
    const ClientParams samples[] = {{1.1, 0.4, 0.0}, {2.3, 1.9, 0.0}};

    CorrectionTable table;
    std::array<std::array<bool, 4>, 4> works{};
    for (auto &row : works) {
        row.fill(true);
    }
    static constexpr char paulis[] = {'I', 'X', 'Y', 'Z'};
    for (const auto &c : samples) {
        const State joint = tensor(State{client_ket(c)}, State{resource});
        const auto branches = bell_measure(joint, kClientLabel, port);
        const PureState target = telecloned_target(c, clones);
        for (std::size_t b = 0; b < 4; ++b) {
            if (!branches[b].post_state) {
                throw Error(fmt::format("Bell outcome {} vanished on the ideal "
                                        "resource",
                                        to_string(branches[b].outcome)));
            }
            for (std::size_t k = 0; k < 4; ++k) {
                const State corrected =
                    apply_on_each(*branches[b].post_state, paulis[k], clones);
                if (fidelity(corrected, target) < 1.0 - kMatchTolerance) {
                    works[b][k] = false;
                }
            }
        }
    }
    static constexpr Bell order[] = {Bell::PhiPlus, Bell::PsiPlus, Bell::PhiMinus,
                                     Bell::PsiMinus};
    for (std::size_t b = 0; b < 4; ++b) {
        const auto it = std::find(works[b].begin(), works[b].end(), true);
        if (it == works[b].end()) {
            throw Error(fmt::format("no Pauli correction restores the clones for "
                                    "Bell outcome {}",
                                    to_string(order[b])));
        }
        table[order[b]] = paulis[it - works[b].begin()];
    }
    return table;
}

namespace {

const CorrectionTable &cached_table(const Label &port) {
    static std::mutex mu;
    static std::map<Label, CorrectionTable> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(port);
    if (it == cache.end()) {
        it = cache.emplace(port, derive_correction_table(dicke(4, 2, kServerLabels),
                                                         port))
                 .first;
    }
    return it->second;
}

} // namespace

QtcResult run_qtc(const ClientParams &client, const State &resource,
                  const Label &port, const std::optional<CorrectionTable> &table) {
    check_server_label(port, "port");
    if (layout_of(resource).labels() != kServerLabels) {
        throw Error("telecloning needs a resource on (a, b, c, d)");
    }
    const CorrectionTable &corr = table ? *table : cached_table(port);
    const State client_rho = client_state(client);
    const State client_pure = client_ket(client);

    QtcResult out;
    out.clones = server_minus({port});
    out.branches = bell_measure(tensor(client_rho, resource), kClientLabel, port);
    for (auto &b : out.branches) {
        std::vector<MixedState> states;
        std::vector<double> f, fk;
        if (b.post_state) {
            b.correction = corr.at(b.outcome);
            b.post_state = apply_on_each(*b.post_state, b.correction, out.clones);
            for (const auto &q : out.clones) {
                const std::vector<Label> keep{q};
                MixedState r = partial_trace(*b.post_state, keep);
                f.push_back(fidelity(r, client_rho));
                fk.push_back(fidelity(r, client_pure));
                states.push_back(std::move(r));
            }
            const double n = static_cast<double>(f.size());
            double sf = 0.0, sfk = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                sf += f[i];
                sfk += fk[i];
            }
            out.average_clone_fidelity += b.probability * sf / n;
            out.average_clone_fidelity_vs_ket += b.probability * sfk / n;
        }
        out.clone_states.push_back(std::move(states));
        out.clone_fidelities.push_back(std::move(f));
        out.clone_fidelities_vs_ket.push_back(std::move(fk));
    }
    return out;
}

double qtc_theory_fidelity(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw Error(fmt::format("theta {} outside [0, pi]", theta));
    }
    return (9.0 - std::cos(2.0 * theta)) / 12.0;
}

QtcBand qtc_mixed_band(double theta, double p, double lambda, double p_uncertainty,
                       double phi) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(fmt::format("Werner weight p = {} outside [0, 1]", p));
    }
    if (!(p_uncertainty >= 0.0)) {
        throw Error("p uncertainty must be non-negative");
    }
    const ClientParams client{theta, phi, lambda};
    auto at = [&](double pp) {
        return run_qtc(client, werner_dicke(std::clamp(pp, 0.0, 1.0)))
            .average_clone_fidelity;
    };
    QtcBand band;
    band.nominal = at(p);
    const double lo = at(p - p_uncertainty);
    const double hi = at(p + p_uncertainty);
    band.low = std::min({lo, hi, band.nominal});
    band.high = std::max({lo, hi, band.nominal});
    return band;
}

std::string_view to_string(SodtProjection p) noexcept {
    return p == SodtProjection::P01 ? "01" : "10";
}

OdtResult run_odt(const ClientParams &client, const State &resource,
                  const Label &port, const Label &receiver,
                  SodtProjection projection) {
    check_server_label(port, "port");
    check_server_label(receiver, "receiver");
    if (port == receiver) {
        throw LabelError("port and receiver must differ", port);
    }
    if (layout_of(resource).labels() != kServerLabels) {
        throw Error("teleportation needs a resource on (a, b, c, d)");
    }
    const State client_rho = client_state(client);
    const std::vector<Label> sodt = server_minus({port, receiver});

    State s = tensor(client_rho, resource);
    s = apply_gate(s, cx(kClientLabel, port).to_gate());
    auto first = project(s, sodt, to_string(projection));
    const std::vector<Label> xpr{kClientLabel, port, receiver};
    State intermediate = permute(first.state, xpr);

    const std::vector<Label> xp{kClientLabel, port};
    auto accepted =
        project(intermediate, xp, Vector(gates::kron(sigma_x_eigen(+1), z_eigen(1))));

    std::map<std::string, double> others;
    for (auto [sign, bit] : {std::pair{+1, 0}, std::pair{-1, 0}, std::pair{-1, 1}}) {
        const std::string key = fmt::format("{}{}", sign > 0 ? '+' : '-', bit);
        try {
            others[key] =
                project(intermediate, xp,
                        Vector(gates::kron(sigma_x_eigen(sign), z_eigen(bit))))
                    .probability;
        } catch (const ImpossibleBranch &) {
            others[key] = 0.0;
        }
    }

    MixedState received = to_mixed(accepted.state);
    const double f = fidelity(received, client_rho);
    return OdtResult{projection,
                     port,
                     receiver,
                     sodt,
                     first.probability * accepted.probability,
                     std::move(intermediate),
                     std::move(received),
                     f,
                     std::move(others)};
}

} // namespace dickenet
