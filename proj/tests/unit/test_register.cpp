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
#include <doctest.h>

#include <numbers>

#include "dickenet/circuit.hpp"
#include "dickenet/states.hpp"
#include "support.hpp"

using namespace dickenet;
using testing::kron_oracle;
using testing::max_abs;

namespace {

Vector ket(std::initializer_list<cplx> amps) {
    Vector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (auto a : amps) {
        v(i++) = a;
    }
    return v;
}

} // namespace

TEST_SUITE("register") {

TEST_CASE("tensor of basis states") {
    const auto s = tensor(PureState::basis(Layout({"a"}), "0"),
                          PureState::basis(Layout({"b"}), "0"));
    CHECK(s.layout().labels() == std::vector<Label>{"a", "b"});
    CHECK(std::abs(s.amplitudes()(0) - 1.0) < 1e-15);
}

TEST_CASE("tensor expands |+>|1>") {
    const double r = 1.0 / std::numbers::sqrt2;
    const auto s = tensor(PureState(Layout({"X"}), ket({r, r})),
                          PureState::basis(Layout({"b"}), "1"));
    CHECK((s.amplitudes() - ket({0, r, 0, r})).norm() < 1e-15);
}

TEST_CASE("tensor of D4(2) and client matches the Kronecker oracle") {
    const auto d4 = dicke(4, 2, kServerLabels);
    const auto client = client_ket({std::numbers::pi, 0.0, 0.0});
    const auto s = tensor(d4, client);
    const Matrix oracle = kron_oracle(d4.amplitudes(), client.amplitudes());
    CHECK((s.amplitudes() - Vector(oracle.col(0))).norm() < 1e-14);
    int nonzero = 0;
    for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
        if (std::abs(s.amplitudes()(i)) > 1e-12) {
            ++nonzero;
            CHECK(std::abs(std::abs(s.amplitudes()(i)) - 1.0 / std::sqrt(6.0)) < 1e-12);
        }
    }
    CHECK(nonzero == 6);
}

TEST_CASE("mixed tensor matches the Kronecker oracle") {
    std::mt19937_64 rng(11);
    const auto r1 = testing::random_mixed(2, rng, 'a');
    const auto r2 = testing::random_mixed(1, rng, 'x');
    const auto t = tensor(r1, r2);
    CHECK(max_abs(t.matrix() - kron_oracle(r1.matrix(), r2.matrix())) < 1e-14);
}

TEST_CASE("tensor rejects a duplicate label and names it") {
    const auto a = PureState::basis(Layout({"a", "b"}), "00");
    const auto b = PureState::basis(Layout({"b"}), "0");
    try {
        (void)tensor(a, b);
        FAIL("expected LabelError");
    } catch (const LabelError &e) {
        CHECK(e.label() == "b");
    }
}

TEST_CASE("X and CX on basis states") {
    const auto one = apply_gate(PureState::basis(Layout({"a"}), "0"), Gate({"a"}, gates::pauli('X')));
    CHECK(fidelity(one, PureState::basis(Layout({"a"}), "1")) == doctest::Approx(1.0));
    const auto s = apply_gate(PureState::basis(Layout({"X", "b"}), "10"), cx("X", "b").to_gate());
    CHECK(fidelity(s, PureState::basis(Layout({"X", "b"}), "11")) == doctest::Approx(1.0));
}

TEST_CASE("H on c of xi matches the dense oracle") {
    const auto xi = xi_state();
    const auto s = apply_gate(xi, h("c").to_gate());
    const Matrix i2 = gates::identity(2);
    const Matrix full = kron_oracle(kron_oracle(kron_oracle(i2, i2), gates::hadamard()), i2);
    CHECK((s.amplitudes() - full * xi.amplitudes()).norm() < 1e-14);
}

TEST_CASE("gate on non-adjacent reversed qubits matches a permuted oracle") {
    std::mt19937_64 rng(5);
    const auto psi = testing::random_pure(3, rng);
    const Matrix u = testing::random_unitary(4, rng);
    // u acts on (c, a); swap to (a, c) order and pad b in the middle.
    const auto s = apply_gate(psi, Gate({"c", "a"}, u));
    Matrix full = Matrix::Zero(8, 8);
    for (int row = 0; row < 8; ++row) {
        for (int col = 0; col < 8; ++col) {
            const int ra = (row >> 2) & 1, rb = (row >> 1) & 1, rc = row & 1;
            const int ca = (col >> 2) & 1, cb = (col >> 1) & 1, cc = col & 1;
            if (rb != cb) {
                continue;
            }
            full(row, col) = u(rc * 2 + ra, cc * 2 + ca);
        }
    }
    CHECK((s.amplitudes() - full * psi.amplitudes()).norm() < 1e-13);
}

TEST_CASE("apply_gate rejects non-unitary matrices and unknown labels") {
    Matrix m = gates::identity(2);
    m(0, 0) = 2.0;
    CHECK_THROWS_AS(Gate({"a"}, m), Error);
    const auto s = PureState::basis(Layout({"a"}), "0");
    CHECK_THROWS_AS((void)apply_gate(s, Gate({"z"}, gates::hadamard())), LabelError);
}

TEST_CASE("random unitaries preserve norm and trace") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 100; ++t) {
        const auto psi = testing::random_pure(3, rng);
        const auto rho = testing::random_mixed(3, rng);
        const Matrix u = testing::random_unitary(4, rng);
        const Gate g({"c", "a"}, u);
        CHECK(std::abs(apply_gate(psi, g).amplitudes().norm() - 1.0) < 1e-10);
        CHECK(std::abs(apply_gate(rho, g).matrix().trace().real() - 1.0) < 1e-10);
    }
}

TEST_CASE("single-qubit projections of D4(2)") {
    const auto d4 = dicke(4, 2, kServerLabels);
    const std::vector<Label> d{"d"};
    const auto p0 = project(d4, d, Vector(ket({1, 0})));
    CHECK(p0.probability == doctest::Approx(0.5));
    CHECK(fidelity(p0.state, dicke(3, 2, {"a", "b", "c"})) > 1 - 1e-12);
    const auto p1 = project(d4, d, Vector(ket({0, 1})));
    CHECK(fidelity(p1.state, dicke(3, 1, {"a", "b", "c"})) > 1 - 1e-12);
}

TEST_CASE("two-qubit projection of D4(2) gives psi+") {
    const std::vector<Label> cd{"c", "d"};
    const auto p = project(State(dicke(4, 2, kServerLabels)), cd, "10");
    CHECK(p.probability == doctest::Approx(1.0 / 3.0));
    CHECK(layout_of(p.state).labels() == std::vector<Label>{"a", "b"});
    CHECK(fidelity(p.state, bell(Bell::PsiPlus)) > 1 - 1e-12);
}

TEST_CASE("impossible branch carries its probability") {
    const auto s = PureState::basis(Layout({"a", "b"}), "00");
    const std::vector<Label> a{"a"};
    try {
        (void)project(s, a, Vector(ket({0, 1})));
        FAIL("expected ImpossibleBranch");
    } catch (const ImpossibleBranch &e) {
        CHECK(e.probability() < 1e-12);
    }
}

TEST_CASE("complete projection sets sum to one") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 20; ++t) {
        const State s = (t % 2 == 0) ? State(testing::random_pure(4, rng))
                                     : State(testing::random_mixed(4, rng));
        const std::vector<Label> which{"d", "b"};
        double total = 0.0;
        for (const char *bits : {"00", "01", "10", "11"}) {
            total += project(s, which, bits).probability;
        }
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("mixed projection agrees with pure projection") {
    std::mt19937_64 rng(8);
    const auto psi = testing::random_pure(3, rng);
    const std::vector<Label> b{"b"};
    const Vector onto = testing::random_ket(2, rng);
    const auto pp = project(psi, b, onto);
    const auto pm = project(MixedState(psi), b, onto);
    CHECK(std::abs(pp.probability - pm.probability) < 1e-12);
    CHECK(fidelity(pp.state, pm.state) > 1 - 1e-10);
}

TEST_CASE("partial traces") {
    const std::vector<Label> a{"a"};
    const auto r = partial_trace(bell(Bell::PsiPlus), a);
    CHECK(max_abs(r.matrix() - gates::identity(2) * 0.5) < 1e-14);

    const auto d3 = dicke(3, 2, {"a", "c", "d"});
    const std::vector<Label> c{"c"};
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 0) = 1.0 / 3.0;
    expect(1, 1) = 2.0 / 3.0;
    CHECK(max_abs(partial_trace(d3, c).matrix() - expect) < 1e-14);

    const auto prod = PureState::basis(Layout({"a", "b"}), "01");
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    CHECK(max_abs(partial_trace(prod, a).matrix() - zero) < 1e-14);

    CHECK_THROWS_AS((void)partial_trace(prod, std::vector<Label>{}), Error);
}

TEST_CASE("partial trace of a tensor recovers the factor") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 20; ++t) {
        const auto r1 = testing::random_mixed(2, rng, 'a');
        const auto r2 = testing::random_mixed(2, rng, 'p');
        const std::vector<Label> keep{"a", "b"};
        CHECK(max_abs(partial_trace(tensor(r1, r2), keep).matrix() - r1.matrix()) < 1e-10);
    }
}

TEST_CASE("partial trace keeps register order") {
    std::mt19937_64 rng(3);
    const auto psi = testing::random_pure(3, rng);
    const std::vector<Label> keep{"c", "a"};
    CHECK(partial_trace(psi, keep).layout().labels() == std::vector<Label>{"a", "c"});
}

TEST_CASE("fidelity examples") {
    const auto z0 = PureState::basis(Layout({"a"}), "0");
    const auto z1 = PureState::basis(Layout({"a"}), "1");
    CHECK(fidelity(z0, z0) == doctest::Approx(1.0));
    CHECK(fidelity(z0, z1) == doctest::Approx(0.0));
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 2.0 / 3.0;
    m(1, 1) = 1.0 / 3.0;
    CHECK(fidelity(MixedState(Layout({"a"}), m), z1) == doctest::Approx(1.0 / 3.0));
    for (double p : {0.0, 0.3, 0.7653, 1.0}) {
        CHECK(std::abs(fidelity(werner_dicke(p), dicke(4, 2, kServerLabels)) -
                       (p + (1 - p) / 16)) < 1e-10);
    }
    CHECK_THROWS_AS((void)fidelity(z0, bell(Bell::PsiPlus)), Error);
}

TEST_CASE("mixed fidelity is symmetric and detects equality") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 20; ++t) {
        const auto r1 = testing::random_mixed(2, rng);
        const auto r2 = testing::random_mixed(2, rng);
        CHECK(std::abs(fidelity(r1, r2) - fidelity(r2, r1)) < 1e-10);
        CHECK(std::abs(fidelity(r1, r1) - 1.0) < 1e-10);
        CHECK(fidelity(r1, r2) < 1.0 - 1e-6);
    }
}

TEST_CASE("state validation") {
    CHECK_THROWS_AS(PureState(Layout({"a"}), ket({1, 1})), Error);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(MixedState(Layout({"a"}), bad), Error);
    CHECK_THROWS_AS(Layout({"a", "a"}), LabelError);
}

TEST_CASE("permute reorders amplitudes") {
    const auto s = PureState::basis(Layout({"a", "b", "c"}), "100");
    const std::vector<Label> order{"c", "a", "b"};
    const auto p = permute(s, order);
    CHECK(fidelity(p, PureState::basis(Layout(order), "010")) == doctest::Approx(1.0));
}

} // TEST_SUITE
