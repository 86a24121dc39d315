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
#include "dickenet/circuit.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace dickenet {

namespace {

std::string_view kind_name(GateKind k) {
    switch (k) {
    case GateKind::H:
        return "H";
    case GateKind::X:
        return "X";
    case GateKind::Z:
        return "Z";
    case GateKind::Phase:
        return "PHASE";
    case GateKind::CX:
        return "CX";
    case GateKind::CZbar:
        return "CZbar";
    }
    return "?";
}

bool two_qubit(GateKind k) { return k == GateKind::CX || k == GateKind::CZbar; }

} // namespace

Gate GateSpec::to_gate() const {
    if (two_qubit(kind) != control.has_value()) {
        throw Error(fmt::format("gate {} {} a control qubit", kind_name(kind),
                                two_qubit(kind) ? "needs" : "takes no"));
    }
    switch (kind) {
    case GateKind::H:
        return {{target}, gates::hadamard()};
    case GateKind::X:
        return {{target}, gates::pauli('X')};
    case GateKind::Z:
        return {{target}, gates::pauli('Z')};
    case GateKind::Phase:
        return {{target}, gates::phase(phi)};
    case GateKind::CX:
        return {{*control, target}, gates::controlled(gates::pauli('X'))};
    case GateKind::CZbar: {
        // |1><1| (x) I + |0><0| (x) Z
        Matrix m = Matrix::Zero(4, 4);
        m.topLeftCorner(2, 2) = gates::pauli('Z');
        m.bottomRightCorner(2, 2) = gates::identity(2);
        return {{*control, target}, std::move(m)};
    }
    }
    throw Error("unknown gate kind");
}

bool GateSpec::self_inverse() const noexcept {
    if (kind == GateKind::Phase) {
        const double r = std::remainder(phi, 2.0 * std::numbers::pi);
        return std::abs(std::abs(r) - std::numbers::pi) < 1e-12 ||
               std::abs(r) < 1e-12;
    }
    return true;
}

std::string GateSpec::name() const {
    std::string k(kind_name(kind));
    if (kind == GateKind::Phase) {
        k = fmt::format("PHASE({:.17g})", phi);
    }
    return fmt::format("{} {} {}", k, control ? *control : "-", target);
}

GateSpec h(Label target) { return {GateKind::H, std::nullopt, std::move(target)}; }
GateSpec x(Label target) { return {GateKind::X, std::nullopt, std::move(target)}; }
GateSpec z(Label target) { return {GateKind::Z, std::nullopt, std::move(target)}; }
GateSpec phase(Label target, double phi) {
    return {GateKind::Phase, std::nullopt, std::move(target), phi};
}
GateSpec cx(Label control, Label target) {
    return {GateKind::CX, std::move(control), std::move(target)};
}
GateSpec czbar(Label control, Label target) {
    return {GateKind::CZbar, std::move(control), std::move(target)};
}

State run_circuit(const State &s, const Circuit &c) {
    State out = s;
    for (const auto &step : c.steps) {
        out = apply_gate(out, step.to_gate());
    }
    return out;
}

PureState run_circuit(const PureState &s, const Circuit &c) {
    return std::get<PureState>(run_circuit(State{s}, c));
}

std::vector<GateSpec> conversion_pool() {
    return {h("c"),        h("d"),        cx("c", "a"), cx("d", "b"),
            czbar("c", "a"), czbar("d", "b"), phase("c"),  phase("d")};
}

namespace {

struct Searcher {
    const Vector &target;
    std::vector<Matrix> ops;
    const std::vector<GateSpec> &pool;
    double tolerance;
    SearchResult result;
    std::vector<std::size_t> stack;

    double score(const Vector &v) const { return std::norm(target.dot(v)); }

    void record(double f) {
        if (f > result.best_fidelity) {
            result.best_fidelity = f;
            result.best_circuit.steps.clear();
            for (auto i : stack) {
                result.best_circuit.steps.push_back(pool[i]);
            }
        }
    }

    // Depth-limited DFS in lexicographic pool order; returns true on a hit at
    // exactly `remaining == 0`.
    bool dfs(const Vector &v, std::size_t remaining) {
        if (remaining == 0) {
            ++result.explored;
            const double f = score(v);
            record(f);
            return f >= 1.0 - tolerance;
        }
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (!stack.empty() && stack.back() == i && pool[i].self_inverse()) {
                continue;
            }
            stack.push_back(i);
            if (dfs(ops[i] * v, remaining - 1)) {
                return true;
            }
            stack.pop_back();
        }
        return false;
    }
};

} // namespace

SearchResult find_conversion_circuit(const PureState &source,
                                     const PureState &target,
                                     const std::vector<GateSpec> &pool,
                                     std::size_t max_depth, double tolerance) {
    if (max_depth > kMaxSearchDepth) {
        throw Error(fmt::format("search depth {} exceeds the limit of {}",
                                max_depth, kMaxSearchDepth));
    }
    if (source.layout() != target.layout()) {
        throw Error("source and target must share a register layout");
    }
    Searcher s{target.amplitudes(), {}, pool, tolerance, {}, {}};
    s.ops.reserve(pool.size());
    for (const auto &g : pool) {
        s.ops.push_back(embed(g.to_gate(), source.layout()));
    }
    // Iterative deepening reproduces breadth-first order with O(depth) memory.
    for (std::size_t depth = 0; depth <= max_depth; ++depth) {
        s.result.depth_reached = depth;
        s.stack.clear();
        if (s.dfs(source.amplitudes(), depth)) {
            s.result.found = true;
            for (auto i : s.stack) {
                s.result.circuit.steps.push_back(pool[i]);
            }
            return s.result;
        }
    }
    return s.result;
}

std::string to_text(const Circuit &c) {
    std::string out;
    for (const auto &g : c.steps) {
        out += g.name();
        out += '\n';
    }
    return out;
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string kind, control, target, extra;
        if (!(fields >> kind >> control >> target) || (fields >> extra)) {
            throw Error(fmt::format("circuit line {}: expected 'KIND CONTROL "
                                    "TARGET', got '{}'",
                                    lineno, line));
        }
        GateSpec g;
        g.target = target;
        if (control != "-") {
            g.control = control;
        }
        if (kind == "H") {
            g.kind = GateKind::H;
        } else if (kind == "X") {
            g.kind = GateKind::X;
        } else if (kind == "Z") {
            g.kind = GateKind::Z;
        } else if (kind == "CX") {
            g.kind = GateKind::CX;
        } else if (kind == "CZbar") {
            g.kind = GateKind::CZbar;
        } else if (kind.starts_with("PHASE(") && kind.ends_with(")")) {
            g.kind = GateKind::Phase;
            const std::string arg = kind.substr(6, kind.size() - 7);
            std::size_t used = 0;
            try {
                g.phi = std::stod(arg, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != arg.size() || arg.empty()) {
                throw Error(fmt::format("circuit line {}: bad phase '{}'", lineno,
                                        arg));
            }
        } else {
            throw Error(
                fmt::format("circuit line {}: unknown gate '{}'", lineno, kind));
        }
        if (two_qubit(g.kind) != g.control.has_value()) {
            throw Error(fmt::format("circuit line {}: gate {} control mismatch",
                                    lineno, kind));
        }
        c.steps.push_back(std::move(g));
    }
    return c;
}

} // namespace dickenet
