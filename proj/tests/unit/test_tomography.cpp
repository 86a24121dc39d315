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
#include "dickenet/tomography.hpp"
#include "support.hpp"

using namespace dickenet;
using testing::max_abs;

namespace {

double trace_distance(const Matrix &a, const Matrix &b) {
    const Matrix d = (a - b + (a - b).adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(d);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

} // namespace

TEST_SUITE("tomography") {

TEST_CASE("settings and labels") {
    CHECK(MeasurementBasis::x().pauli() == 'X');
    CHECK(MeasurementBasis::y().pauli() == 'Y');
    CHECK(MeasurementBasis::path_phase(std::numbers::pi / 2).pauli() == 'Y');
    CHECK(MeasurementBasis::path_phase(0.3).pauli() == '\0');
    CHECK(MeasurementBasis::path_phase(0.3).label().starts_with("E("));
    const auto s = MeasurementSetting::from_paulis("XZ");
    CHECK(s.covers("XI"));
    CHECK(s.covers("IZ"));
    CHECK_FALSE(s.covers("ZZ"));
    CHECK_FALSE(s.covers("X"));
    CHECK(pauli_settings(2).size() == 9);
    CHECK(pauli_settings(2).front().label() == "XX");
    CHECK(pauli_settings(2).back().label() == "ZZ");
    CHECK_THROWS_AS((void)MeasurementSetting::from_paulis("XI"), Error);
}

TEST_CASE("equatorial basis probabilities") {
    const auto plus = client_ket({std::numbers::pi / 2, 0.0, 0.0}, "a");
    const auto px = outcome_probabilities(plus, MeasurementSetting::from_paulis("X"));
    CHECK(std::abs(px.at("0") - 1.0) < 1e-14);
    const auto py = outcome_probabilities(plus, MeasurementSetting::from_paulis("Y"));
    CHECK(std::abs(py.at("0") - 0.5) < 1e-14);
    const auto along = client_ket({std::numbers::pi / 2, 0.8, 0.0}, "a");
    MeasurementSetting tilted{{MeasurementBasis::path_phase(0.8)}};
    CHECK(std::abs(outcome_probabilities(along, tilted).at("0") - 1.0) < 1e-14);
}

TEST_CASE("deterministic outcome counts") {
    const auto zero = PureState::basis(Layout({"a"}), "0");
    const auto rec = simulate_counts(zero, MeasurementSetting::from_paulis("Z"), 1000, 3);
    CHECK(rec.counts.at("1") == 0);
    CHECK(rec.counts.at("0") > 800);
    CHECK(rec.total_requested == 1000);
    CHECK(rec.seed == 3u);
    CHECK_THROWS_AS((void)simulate_counts(zero, MeasurementSetting::from_paulis("Z"), 0, 3), Error);
}

TEST_CASE("seeded counts are reproducible") {
    std::mt19937_64 rng(1);
    const auto psi = testing::random_pure(2, rng);
    const auto s = MeasurementSetting::from_paulis("XY");
    const auto a = simulate_counts(psi, s, 5000, 99);
    const auto b = simulate_counts(psi, s, 5000, 99);
    CHECK(a.counts == b.counts);
    const auto c = simulate_counts(psi, s, 5000, 100);
    CHECK(a.counts != c.counts);
}

TEST_CASE("plus state frequencies at N = 1e6") {
    const auto plus = client_ket({std::numbers::pi / 2, 0.0, 0.0}, "a");
    const auto rec = simulate_counts(plus, MeasurementSetting::from_paulis("Z"), 1000000, 5);
    const double f0 = static_cast<double>(rec.counts.at("0")) / static_cast<double>(rec.total());
    CHECK(std::abs(f0 - 0.5) < 0.002);
}

TEST_CASE("frequencies converge to Born probabilities") {
    std::mt19937_64 rng(123);
    const std::uint64_t n = 1000000;
    for (int t = 0; t < 20; ++t) {
        const auto psi = testing::random_pure(2, rng);
        const auto setting = pauli_settings(2)[static_cast<std::size_t>(t) % 9];
        const auto probs = outcome_probabilities(psi, setting);
        const auto rec = simulate_counts(psi, setting, n, 1000 + t);
        const double total = static_cast<double>(rec.total());
        for (const auto &[o, p] : probs) {
            const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(n));
            const double freq = static_cast<double>(rec.counts.at(o)) / total;
            CHECK(std::abs(freq - p) < 5 * sigma + 1e-12);
        }
    }
}

TEST_CASE("correlators") {
    const auto all0 = PureState::basis(Layout({"a", "b", "c", "d"}), "0000");
    const auto exact = exact_pauli_records(all0);
    CHECK(estimate_correlator(exact, "ZZZZ").value == doctest::Approx(1.0));
    CHECK(estimate_correlator(exact, "ZZZZ").uncertainty == 0.0);
    const auto sampled = simulate_pauli_records(all0, 100000, 8);
    const auto e = estimate_correlator(sampled, "ZZZZ");
    CHECK(e.value == doctest::Approx(1.0));
    CHECK(e.uncertainty < 1e-9);
    CHECK(estimate_correlator(sampled, "IIII").value == 1.0);
    const std::vector<CountsRecord> only_x{exact_counts(all0, MeasurementSetting::from_paulis("XXXX"))};
    CHECK_THROWS_AS((void)estimate_correlator(only_x, "ZIII"), MissingSetting);
}

TEST_CASE("Jz^2 on D4(2) from counts") {
    const auto d4 = dicke(4, 2, kServerLabels);
    const auto jz2 = collective_spin_squared(4, 'z');
    const std::vector<CountsRecord> recs{
        simulate_counts(d4, MeasurementSetting::from_paulis("ZZZZ"), 100000, 61)};
    const auto r = estimate_witness(recs, jz2);
    CHECK(std::abs(r.value) <= 5 * r.uncertainty + 1e-12);
}

TEST_CASE("lab-like moments and their uncertainties") {
    // A Werner-like resource with a small dephasing of the Jz sector
    // reproduces the laboratory regime at a few thousand counts per setting.
    const auto rho = werner_dicke(0.75);
    std::vector<CountsRecord> recs;
    std::uint64_t seed = 300;
    for (const char *s : {"XXXX", "YYYY", "ZZZZ"}) {
        recs.push_back(simulate_counts(rho, MeasurementSetting::from_paulis(s), 3000, seed++));
    }
    const auto jx = estimate_witness(recs, collective_spin_squared(4, 'x'));
    const auto jy = estimate_witness(recs, collective_spin_squared(4, 'y'));
    const auto jz = estimate_witness(recs, collective_spin_squared(4, 'z'));
    CHECK(jx.value == doctest::Approx(2.5).epsilon(0.05));
    CHECK(jy.value == doctest::Approx(2.5).epsilon(0.05));
    CHECK(jz.value < 0.4);
    for (const auto *r : {&jx, &jy, &jz}) {
        CHECK(r->uncertainty > 0.005);
        CHECK(r->uncertainty < 0.05);
    }
}

TEST_CASE("witness estimation from exact records") {
    const auto d3 = dicke(3, 1);
    CHECK(std::abs(estimate_witness(exact_pauli_records(d3), witness_projector_d3_optimal(1)).value +
                   1.0 / 3.0) < 1e-10);
    CHECK(std::abs(estimate_witness(exact_pauli_records(d3), witness_projector_d3(1)).value +
                   1.0 / 3.0) < 1e-10);
    const auto zero = PureState::basis(Layout({"a", "b", "c"}), "000");
    CHECK(std::abs(estimate_witness(exact_pauli_records(zero), witness_projector_d3(1)).value -
                   2.0 / 3.0) < 1e-10);
}

TEST_CASE("witness estimation equals dense expectation when decompositions agree") {
    std::mt19937_64 rng(64);
    const Observable ws[] = {witness_projector_d3(1), witness_projector_d3(2),
                             witness_projector_d3_optimal(1), witness_projector_d3_optimal(2)};
    for (int t = 0; t < 10; ++t) {
        const auto rho = testing::random_mixed(3, rng);
        const auto recs = exact_pauli_records(rho);
        for (const auto &w : ws) {
            REQUIRE(decomposition_check(w).equal);
            CHECK(std::abs(estimate_witness(recs, w).value - expectation(rho, w)) < 1e-10);
        }
    }
    const auto rho4 = testing::random_mixed(4, rng);
    const auto w4 = witness_wm();
    CHECK(std::abs(estimate_witness(exact_pauli_records(rho4), w4).value - expectation(rho4, w4)) <
          1e-10);
}

TEST_CASE("noisy D3(1) replay lands in the laboratory corridor") {
    // Werner admixture chosen so that the D3(1) fidelity is about 0.88.
    const double q = (0.88 - 1.0 / 8.0) / (7.0 / 8.0);
    const auto d = dicke(3, 1);
    Matrix rho = q * d.amplitudes() * d.amplitudes().adjoint() + (1 - q) * gates::identity(8) / 8.0;
    const MixedState noisy(d.layout(), rho);
    const auto recs = simulate_pauli_records(noisy, 20000, 900);
    const auto r = estimate_witness(recs, witness_projector_d3_optimal(1));
    CHECK(r.value < -0.18);
    CHECK(r.value > -0.24);
    CHECK(r.uncertainty > 0.0);
    CHECK(r.uncertainty < 0.02);
}

TEST_CASE("missing settings are enumerated") {
    const auto d = dicke(3, 1);
    const std::vector<CountsRecord> recs{exact_counts(d, MeasurementSetting::from_paulis("ZZZ"))};
    try {
        (void)estimate_witness(recs, witness_projector_d3(1));
        FAIL("expected MissingSetting");
    } catch (const MissingSetting &e) {
        CHECK(e.missing().size() == 12);
    }
    CHECK_THROWS_AS((void)estimate_witness(recs, Observable("m", gates::identity(8))), Error);
}

TEST_CASE("exact linear inversion recovers random states") {
    std::mt19937_64 rng(2718);
    for (int t = 0; t < 20; ++t) {
        const std::size_t k = 1 + static_cast<std::size_t>(t % 2);
        const State s = t % 4 < 2 ? State(testing::random_pure(k, rng))
                                  : State(testing::random_mixed(k, rng));
        const auto rho = tomography_linear(exact_pauli_records(s));
        CHECK(fidelity(rho, s) >= 1 - 1e-9);
    }
}

TEST_CASE("clone state recovered from exact records") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0 / 3.0;
    m(1, 1) = 2.0 / 3.0;
    const MixedState clone(Layout({"a"}), m);
    const auto rho = tomography_linear(exact_pauli_records(clone));
    CHECK(max_abs(rho.matrix() - m) < 1e-12);
}

TEST_CASE("psi+ at N = 1e4 per setting") {
    const auto psi = bell(Bell::PsiPlus);
    int good = 0;
    for (int t = 0; t < 50; ++t) {
        const auto rho = tomography_linear(simulate_pauli_records(psi, 10000, 5000 + 100 * t));
        good += fidelity(rho, psi) >= 0.99;
    }
    CHECK(good >= 48);
}

TEST_CASE("tomography requires all settings and at most two qubits") {
    const auto psi = bell(Bell::PsiPlus);
    auto recs = exact_pauli_records(psi);
    recs.pop_back();
    CHECK_THROWS_AS((void)tomography_linear(recs), MissingSetting);
    CHECK_THROWS_AS((void)tomography_linear(exact_pauli_records(dicke(3, 1))), Error);
    CHECK_THROWS_AS((void)tomography_linear({}), Error);
}

TEST_CASE("PSD projection") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.2;
    m(1, 1) = -0.2;
    const Matrix p = project_to_density_matrix(m);
    CHECK(std::abs(p(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(p(1, 1)) < 1e-12);
    // Eigenvalues (0.6, 0.5, 0, -0.1) -> (0.55, 0.45, 0, 0).
    Matrix d = Matrix::Zero(4, 4);
    d.diagonal() << 0.6, 0.5, 0.0, -0.1;
    const Matrix q = project_to_density_matrix(d);
    CHECK(std::abs(q(0, 0).real() - 0.55) < 1e-12);
    CHECK(std::abs(q(1, 1).real() - 0.45) < 1e-12);
    CHECK(std::abs(q(2, 2).real()) < 1e-12);
    CHECK(std::abs(q(3, 3).real()) < 1e-12);
}

TEST_CASE("PSD projection does not move the estimate further than it sat from the truth") {
    std::mt19937_64 rng(555);
    for (int t = 0; t < 100; ++t) {
        const State truth = t % 2 ? State(testing::random_pure(2, rng))
                                  : State(testing::random_mixed(2, rng));
        const auto recs = simulate_pauli_records(truth, 300, 40000 + 10 * t);
        const Matrix raw = linear_inversion(recs);
        const Matrix proj = project_to_density_matrix(raw);
        const Matrix target = density_matrix(truth);
        const double before = trace_distance(raw, target);
        const double moved = trace_distance(proj, raw);
        // The physical estimate stays within the raw error ball's diameter.
        CHECK(trace_distance(proj, target) <= 2 * before + 1e-12);
        CHECK(moved <= 2 * before + 1e-12);
        const double fid_err = 1 - fidelity(MixedState(Layout({"a", "b"}), proj), truth);
        CHECK(fid_err >= -1e-9);
    }
}

TEST_CASE("bootstrap fidelity") {
    const auto psi = bell(Bell::PsiPlus);
    const auto exact = fidelity_with_error(exact_pauli_records(psi), psi, 10, 1);
    CHECK(exact.uncertainty == 0.0);
    CHECK(exact.point >= 1 - 1e-9);
    const auto noisy = fidelity_with_error(simulate_pauli_records(psi, 10000, 7), psi, 50, 9);
    CHECK(noisy.uncertainty > 0.0);
    CHECK(noisy.uncertainty < 1e-2);
    CHECK(noisy.trials == 50);
    const auto again = fidelity_with_error(simulate_pauli_records(psi, 10000, 7), psi, 50, 9);
    CHECK(again.uncertainty == noisy.uncertainty);
    CHECK_THROWS_AS((void)fidelity_with_error(exact_pauli_records(psi), psi, 5, 1), Error);
}

TEST_CASE("bootstrap width scales as 1/sqrt(N) on a noisy source") {
    const auto psi = bell(Bell::PsiPlus);
    Matrix m = 0.9 * density_matrix(psi) + 0.1 * gates::identity(4) / 4.0;
    const MixedState werner(psi.layout(), m);
    double prev = 0.0;
    for (std::uint64_t n : {1000u, 10000u, 100000u}) {
        const auto b = fidelity_with_error(simulate_pauli_records(werner, n, 11), psi, 50, 13);
        if (prev > 0.0) {
            const double ratio = prev / b.uncertainty;
            CHECK(ratio > std::sqrt(10.0) / 2);
            CHECK(ratio < std::sqrt(10.0) * 2);
        }
        prev = b.uncertainty;
    }
}

} // TEST_SUITE
