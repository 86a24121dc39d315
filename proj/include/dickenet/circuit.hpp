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
#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dickenet/register.hpp"

namespace dickenet {

enum class GateKind { H, X, Z, Phase, CX, CZbar };

/// One step of a circuit. CX = |0><0| (x) I + |1><1| (x) X and
/// CZbar = |1><1| (x) I + |0><0| (x) Z on (control, target).
struct GateSpec {
    GateKind kind = GateKind::H;
    std::optional<Label> control;
    Label target;
    double phi = std::numbers::pi; ///< only used by Phase

    [[nodiscard]] Gate to_gate() const;
    [[nodiscard]] bool self_inverse() const noexcept;
    [[nodiscard]] std::string name() const;

    bool operator==(const GateSpec &) const = default;
};

[[nodiscard]] GateSpec h(Label target);
[[nodiscard]] GateSpec x(Label target);
[[nodiscard]] GateSpec z(Label target);
[[nodiscard]] GateSpec phase(Label target, double phi = std::numbers::pi);
[[nodiscard]] GateSpec cx(Label control, Label target);
[[nodiscard]] GateSpec czbar(Label control, Label target);

struct Circuit {
    std::vector<GateSpec> steps;

    bool operator==(const Circuit &) const = default;
};

[[nodiscard]] State run_circuit(const State &s, const Circuit &c);
[[nodiscard]] PureState run_circuit(const PureState &s, const Circuit &c);

/// H_c, H_d, CX_{c,a}, CX_{d,b}, CZbar_{c,a}, CZbar_{d,b}, PHASE(pi)_c,
/// PHASE(pi)_d, in that order.
[[nodiscard]] std::vector<GateSpec> conversion_pool();

struct SearchResult {
    bool found = false;
    Circuit circuit;           ///< valid when found
    double best_fidelity = 0;  ///< best fidelity over everything explored
    Circuit best_circuit;      ///< circuit achieving best_fidelity
    std::size_t explored = 0;  ///< sequences evaluated
    std::size_t depth_reached = 0;
};

inline constexpr std::size_t kMaxSearchDepth = 8;

/// Shortest gate sequence from `pool` mapping `source` onto `target` up to a
/// global phase (fidelity >= 1 - tolerance). Sequences of equal length are
/// tried in lexicographic pool order; a self-inverse gate is never repeated
/// back to back. Exhaustion is reported through SearchResult, not thrown.
[[nodiscard]] SearchResult find_conversion_circuit(const PureState &source,
                                                   const PureState &target,
                                                   const std::vector<GateSpec> &pool,
                                                   std::size_t max_depth,
                                                   double tolerance = 1e-9);

/// One gate per line: "KIND CONTROL TARGET", '-' for no control. Phase gates
/// are written PHASE(phi). Lines starting with '#' are comments.
[[nodiscard]] std::string to_text(const Circuit &c);
[[nodiscard]] Circuit parse_circuit(std::string_view text);

} // namespace dickenet
