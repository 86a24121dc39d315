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

#include "dickenet/states.hpp"
#include "dickenet/witness.hpp"
#include "support.hpp"

using namespace dickenet;
using testing::max_abs;

namespace {

const double kB4Zero = 5.232050807568882;
const double kB4M012 = 5.156954000512812;
const double kB4M1 = 4.645751311064401;
const double kB4M25 = 4.03125;

/// Random pure state that is a product across a random bipartition.
PureState random_biseparable(std::mt19937_64 &rng) {
    const auto cuts = bipartitions(4);
    std::uniform_int_distribution<std::size_t> pick(0, cuts.size() - 1);
    const auto &side = cuts[pick(rng)];
    std::vector<Label> a_labels, b_labels;
    for (std::size_t q = 0; q < 4; ++q) {
        const bool in_a = std::find(side.begin(), side.end(), q) != side.end();
        (in_a ? a_labels : b_labels).push_back(kServerLabels[q]);
    }
    const PureState a(Layout(a_labels), testing::random_ket(Eigen::Index{1} << a_labels.size(), rng));
    const PureState b(Layout(b_labels), testing::random_ket(Eigen::Index{1} << b_labels.size(), rng));
    return permute(tensor(a, b), kServerLabels);
}

} // namespace

TEST_SUITE("witness") {

TEST_CASE("pauli decomposition round trip") {
    std::mt19937_64 rng(4);
    const auto rho = testing::random_mixed(3, rng);
    const auto terms = pauli_decompose(rho.matrix());
    CHECK(max_abs(matrix_from_terms(terms) - rho.matrix()) < 1e-12);
    CHECK(terms.front().paulis == "III");
    CHECK(std::abs(terms.front().coefficient - 0.125) < 1e-14);
    CHECK(max_abs(pauli_string_matrix("XZ") -
                  testing::kron_oracle(gates::pauli('X'), gates::pauli('Z'))) < 1e-15);
    CHECK_THROWS_AS((void)pauli_string_matrix("XQ"), Error);
}

TEST_CASE("observable validation") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(Observable("bad", m), Error);
    CHECK_THROWS_AS(Observable("bad", gates::identity(2), std::vector<PauliTerm>{{1.0, "II"}}),
                    Error);
    const auto trivial = Observable("I", gates::identity(8), std::vector<PauliTerm>{{1.0, "III"}});
    CHECK(decomposition_check(trivial).equal);
    CHECK_THROWS_AS((void)decomposition_check(Observable("m", gates::identity(2))), Error);
}

TEST_CASE("collective spin operators") {
    const auto one = collective_spin(1);
    CHECK(max_abs(one.jx.matrix() - gates::pauli('X') * 0.5) < 1e-15);
    const auto four = collective_spin(4);
    const auto d4 = dicke(4, 2, kServerLabels);
    const Matrix jz2 = four.jz.matrix() * four.jz.matrix();
    const Matrix jx2 = four.jx.matrix() * four.jx.matrix();
    const Matrix jy2 = four.jy.matrix() * four.jy.matrix();
    CHECK(std::abs(expectation(d4, jz2).real()) < 1e-10);
    CHECK(std::abs(expectation(d4, jx2 + jy2).real() - 6.0) < 1e-10);
    CHECK(max_abs(four.sz.matrix() - (jz2 - gates::identity(16)) * 0.5) < 1e-14);
    for (char axis : {'x', 'y', 'z'}) {
        const auto sq = collective_spin_squared(4, axis);
        const Matrix j = axis == 'x' ? four.jx.matrix() : axis == 'y' ? four.jy.matrix() : four.jz.matrix();
        CHECK(max_abs(sq.matrix() - j * j) < 1e-13);
        CHECK(decomposition_check(sq).equal);
    }
    for (const auto *o : {&four.jx, &four.jy, &four.jz, &four.sx, &four.sy, &four.sz}) {
        CHECK(max_abs(o->matrix() - o->matrix().adjoint()) < 1e-14);
    }
    CHECK_THROWS_AS((void)collective_spin(0), Error);
    CHECK_THROWS_AS((void)collective_spin(9), Error);
}

TEST_CASE("transcribed W_m dense values") {
    const auto w = witness_wm();
    CHECK(max_abs(w.matrix() - w.matrix().adjoint()) < 1e-12);
    CHECK(decomposition_check(w).equal);
    CHECK(std::abs(expectation(dicke(4, 2, kServerLabels), w) - 2.75) < 1e-10);
    CHECK(std::abs(expectation(werner_dicke(0.0), w) - 3.25) < 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(w.matrix());
    CHECK(std::abs(eig.eigenvalues().minCoeff() - 2.0) < 1e-10);
}

TEST_CASE("reconstructed W_m") {
    const auto w = witness_wm_reconstructed();
    CHECK(decomposition_check(w).equal);
    CHECK(std::abs(expectation(dicke(4, 2, kServerLabels), w) + 1.0) < 1e-10);
    const double p = werner_p_for_fidelity(0.78);
    const double v = expectation(werner_dicke(p), w);
    CHECK(std::abs(fidelity_bound_from_wm(v).value - 0.78) < 1e-10);
}

TEST_CASE("fidelity bound maps") {
    CHECK(std::abs(fidelity_bound_from_wm(-0.341).value - 0.780) < 0.001);
    CHECK(fidelity_bound_from_wm(2.0).value == doctest::Approx(0.0));
    CHECK_FALSE(fidelity_bound_from_wm(2.0).clamped);
    CHECK(fidelity_bound_from_wm(-1.0).value == doctest::Approx(1.0));
    const auto high = fidelity_bound_from_wm(2.75);
    CHECK(high.clamped);
    CHECK(high.value == 0.0);
    CHECK(fidelity_bound_from_wm(-1.6).clamped);
    // affine and order reversing
    for (double v : {-0.9, -0.3, 0.0, 0.4, 1.7}) {
        CHECK(fidelity_bound_from_wm(v).value > fidelity_bound_from_wm(v + 0.1).value);
        CHECK(std::abs(fidelity_bound_from_wm(v).value - fidelity_bound_from_wm(v + 0.1).value -
                       0.1 / 3) < 1e-12);
    }
    CHECK(std::abs(fidelity_bound_from_projector(-0.21).value - 0.876) < 0.002);
    CHECK(std::abs(fidelity_bound_from_projector(-0.24).value - 0.908) < 0.002);
}

TEST_CASE("projector witnesses") {
    for (int k : {1, 2}) {
        const auto w = witness_projector_d3(k);
        CHECK(decomposition_check(w).equal);
        const auto d = dicke(3, static_cast<std::size_t>(k));
        CHECK(std::abs(expectation(d, w) + 1.0 / 3.0) < 1e-10);
        const auto opt = witness_projector_d3_optimal(k);
        CHECK(decomposition_check(opt).equal);
        CHECK(decomposition_check(opt).deviation < 1e-12);
        CHECK(std::abs(expectation(d, opt) + 1.0 / 3.0) < 1e-10);
    }
    CHECK(std::abs(expectation(PureState::basis(Layout({"a", "b", "c"}), "000"),
                               witness_projector_d3(1)) -
                   2.0 / 3.0) < 1e-12);
    CHECK_THROWS_AS((void)witness_projector_d3(3), Error);
}

TEST_CASE("rearranged form bookkeeping on D3(1)") {
    // 24 * <W> = 13 - 3 - 1 - 1 - 4 - 4 - 4 - 4 grouped by pattern.
    const auto d = dicke(3, 1);
    const auto w = witness_projector_d3(1);
    const auto &terms = *w.settings();
    std::map<std::string, double> groups;
    for (const auto &t : terms) {
        std::string pattern = t.paulis;
        std::sort(pattern.begin(), pattern.end());
        groups[pattern] += 24.0 * t.coefficient *
                           expectation(d, pauli_string_matrix(t.paulis)).real();
    }
    CHECK(groups["III"] == doctest::Approx(13.0));
    CHECK(groups["ZZZ"] == doctest::Approx(-3.0));
    CHECK(groups["IIZ"] == doctest::Approx(-1.0));
    CHECK(groups["IZZ"] == doctest::Approx(-1.0));
    CHECK(groups["IXX"] == doctest::Approx(-4.0));
    CHECK(groups["IYY"] == doctest::Approx(-4.0));
    CHECK(groups["XXZ"] == doctest::Approx(-4.0));
    CHECK(groups["YYZ"] == doctest::Approx(-4.0));
}

TEST_CASE("collective-spin witness arithmetic") {
    const auto m = kLabSpinMoments;
    for (double g : {0.0, -0.12, -2.5}) {
        CHECK(std::abs(wcs_value(g, 5.2, m) - (5.2 - (5.185 + 0.039 * g))) < 1e-12);
        const auto w = witness_wcs(g, 5.2);
        CHECK(std::abs(expectation(dicke(4, 2, kServerLabels), w) - (5.2 - 6.0)) < 1e-10);
    }
    const auto four = collective_spin(4);
    const Matrix std_form = 5.2 * gates::identity(16) -
                            (four.jx.matrix() * four.jx.matrix() + four.jy.matrix() * four.jy.matrix());
    CHECK(max_abs(witness_wcs(0.0, 5.2).matrix() - std_form) < 1e-12);
    CHECK(std::abs(propagate_wcs_error(0.0, 0.015, 0.011, 0.028) - 0.0186) < 1e-4);
    CHECK(std::abs(propagate_wcs_error(-2.5, 0.015, 0.011, 0.028) - 0.0724) < 1e-4);
    CHECK(propagate_wcs_error(-1.0, 0, 0, 0) == 0.0);
    CHECK_THROWS_AS((void)propagate_wcs_error(0.0, -1.0, 0.0, 0.0), Error);
}

TEST_CASE("product-state maximum on known operators") {
    const Matrix phi = bell(Bell::PhiPlus).amplitudes() * bell(Bell::PhiPlus).amplitudes().adjoint();
    const auto r = product_state_max(phi, 2, {0});
    CHECK(std::abs(r.value - 0.5) < 1e-10);
    CHECK(r.converged > 0);
    Matrix zz = Matrix::Zero(4, 4);
    zz(0, 0) = 1.0;
    CHECK(std::abs(product_state_max(zz, 2, {0}).value - 1.0) < 1e-10);
    CHECK(bipartitions(4).size() == 7);
    CHECK(bipartitions(3).size() == 3);
}

TEST_CASE("biseparable bound values") {
    const auto b0 = biseparable_bound(0.0);
    CHECK(b0.value >= 5.185);
    CHECK(b0.value < 6.0);
    CHECK(std::abs(b0.value - kB4Zero) < 1e-8);
    CHECK(std::abs(b0.value - (3.5 + std::sqrt(3.0))) < 1e-8);
    CHECK(std::abs(biseparable_bound(-0.12).value - kB4M012) < 1e-8);
    CHECK(std::abs(biseparable_bound(-1.0).value - kB4M1) < 1e-8);
    const auto b25 = biseparable_bound(-2.5);
    CHECK(std::abs(b25.value - kB4M25) < 1e-8);
    CHECK(b25.bipartitions.size() == 7);
    CHECK(b25.best_bipartition.find('|') == 2);
    for (const auto &r : b25.bipartitions) {
        CHECK(r.restarts >= 20);
    }
}

TEST_CASE("see-saw never falls below the grid oracle") {
    for (double g : {0.0, -0.12, -0.5, -1.0, -2.0, -2.5}) {
        const auto b = biseparable_bound(g);
        CHECK(b.value >= b.grid_estimate - 1e-9);
    }
}

TEST_CASE("random biseparable states respect the bound") {
    std::mt19937_64 rng(271828);
    for (double g : {0.0, -0.12, -1.0, -2.5}) {
        const auto b = biseparable_bound(g);
        const auto w = witness_wcs(g, b.value);
        double least = 1e9;
        for (int t = 0; t < 2000; ++t) {
            least = std::min(least, expectation(random_biseparable(rng), w));
        }
        CHECK(least >= -1e-9);
    }
}

TEST_CASE("biseparable bound errors") {
    CHECK_THROWS_AS((void)biseparable_bound(0.5), Error);
    CHECK_THROWS_AS((void)biseparable_bound(-11.0), Error);
    BiseparableOptions tight;
    tight.max_iterations = 1;
    try {
        (void)biseparable_bound(-1.0, tight);
        FAIL("expected NotConverged");
    } catch (const NotConverged &e) {
        CHECK(e.diagnostics().size() == 7);
        CHECK(e.best_value() > 4.0);
    }
}

TEST_CASE("witness reports") {
    const auto r = make_witness_report("W", -0.05, 0.02);
    CHECK(r.verdict == Verdict::MultipartiteEntangled);
    const auto r3 = make_witness_report("W", -0.05, 0.02, {}, 3.0);
    CHECK(r3.verdict == Verdict::Inconclusive);
    CHECK(make_witness_report("W", 0.1, 0.0).verdict == Verdict::Inconclusive);
    CHECK_THROWS_AS((void)make_witness_report("W", 0.1, -1.0), Error);
    CHECK(to_string(Verdict::MultipartiteEntangled) == "multipartite-entangled");
}

} // TEST_SUITE
