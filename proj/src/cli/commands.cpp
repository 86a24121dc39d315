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
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "dickenet/circuit.hpp"
#include "dickenet/cli.hpp"
#include "dickenet/protocol.hpp"
#include "dickenet/states.hpp"
#include "dickenet/tomography.hpp"
#include "dickenet/witness.hpp"

namespace dickenet::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

constexpr double kExact = 1e-9;
constexpr double kFixtureTolerance = 1e-8;
constexpr std::uint64_t kDefaultSeed = 20130;
const std::vector<double> kFixtureGammas{0.0, -0.12, -1.0, -2.5};

const fs::path kCircuitFixture = "conversion_circuit.txt";
const fs::path kCorrectionFixture = "correction_table.json";
const fs::path kB4Fixture = "b4_samples.json";

std::string num(double v) { return io::format_double(v); }

Report start(const std::string &command, const Config &c) {
    Report r;
    r.command = command;
    r.seed = static_cast<std::uint64_t>(c.integer("run.seed"));
    r.config = c.values();
    return r;
}

void check(Report &r, std::string name, bool pass, std::string detail = {}) {
    r.checks.push_back({std::move(name), pass, std::move(detail)});
}

std::optional<std::string> read_file(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &p, const std::string &text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw Error(fmt::format("cannot write fixture {}", p.string()));
    }
    out << text;
}

double unit_interval(const Config &c, const std::string &key) {
    const double v = c.real(key);
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ConfigError(fmt::format("config key '{}' = {} outside [0, 1]", key, v));
    }
    return v;
}

std::size_t positive(const Config &c, const std::string &key) {
    const auto v = c.integer(key);
    if (v < 1) {
        throw ConfigError(fmt::format("config key '{}' must be at least 1", key));
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> grid(const Config &c, const std::string &list_key, double lo,
                         double hi, const std::string &points_key) {
    std::vector<double> g = c.reals(list_key);
    if (!g.empty()) {
        return g;
    }
    const std::size_t n = positive(c, points_key);
    if (n == 1) {
        return {lo};
    }
    for (std::size_t i = 0; i < n; ++i) {
        g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return g;
}

Label server_label(const Config &c, const std::string &key) {
    const std::string v = c.str(key);
    if (std::find(kServerLabels.begin(), kServerLabels.end(), v) == kServerLabels.end()) {
        throw ConfigError(fmt::format("config key '{}' = '{}' is not one of a, b, c, d", key, v));
    }
    return v;
}

// b4 fixture ---------------------------------------------------------------------

struct B4Sample {
    double gamma;
    double b4;
    std::string bipartition;
};

std::vector<B4Sample> load_b4_fixture(const fs::path &dir) {
    const auto text = read_file(dir / kB4Fixture);
    if (!text) {
        return {};
    }
    std::vector<B4Sample> out;
    const Json j = Json::parse(*text);
    for (const auto &s : j.at("samples")) {
        out.push_back({s.at("gamma").get<double>(), s.at("b4").get<double>(),
                       s.at("bipartition").get<std::string>()});
    }
    return out;
}

void write_b4_fixture(const fs::path &dir, const BiseparableOptions &opts) {
    Json samples = Json::array();
    for (double g : kFixtureGammas) {
        const auto b = biseparable_bound(g, opts);
        samples.push_back({{"gamma", g}, {"b4", b.value}, {"bipartition", b.best_bipartition}});
    }
    write_file(dir / kB4Fixture, Json{{"samples", samples}}.dump(2) + "\n");
}

/// Compares computed bounds against fixture samples at matching gammas.
void check_b4_fixture(Report &r, const fs::path &dir,
                      const std::map<double, double> &computed) {
    const auto samples = load_b4_fixture(dir);
    if (samples.empty()) {
        check(r, "b4_fixture_present", false,
              "missing " + kB4Fixture.string() + "; rerun with --regen-fixtures");
        return;
    }
    for (const auto &s : samples) {
        const auto it = computed.find(s.gamma);
        if (it == computed.end()) {
            continue;
        }
        const double dev = std::abs(it->second - s.b4);
        check(r, fmt::format("b4_fixture[gamma={}]", num(s.gamma)), dev <= kFixtureTolerance,
              fmt::format("computed {} fixture {}", num(it->second), num(s.b4)));
    }
}

// circuits -----------------------------------------------------------------

SearchResult fresh_conversion() {
    return find_conversion_circuit(xi_state(), dicke(4, 2, kServerLabels),
                                   conversion_pool(), kMaxSearchDepth);
}

// odt configurations ----------------------------------------------------------

struct OdtRow {
    SodtProjection projection;
    double theta;
    Label receiver;
    std::optional<double> lab;
    std::optional<double> lab_uncertainty;
};

const std::string kOdtRows = "10,0,a;10,0,b;01,0,a;01,0,b;10,pi,a;10,pi,b;"
                                  "01,pi,a;01,pi,b;10,1.46,a;10,1.46,b;01,1.37,a;01,1.37,b";

struct LabEntry {
    SodtProjection projection;
    double theta;
    const char *receiver;
    double fidelity;
    double uncertainty;
};

constexpr LabEntry kLabOdtFidelities[] = {
    {SodtProjection::P10, 0.0, "a", 0.93, 0.01},
    {SodtProjection::P10, 0.0, "b", 0.95, 0.01},
    {SodtProjection::P01, 0.0, "a", 0.97, 0.01},
    {SodtProjection::P01, 0.0, "b", 0.97, 0.01},
    {SodtProjection::P10, std::numbers::pi, "a", 0.96, 0.01},
    {SodtProjection::P10, std::numbers::pi, "b", 0.98, 0.01},
    {SodtProjection::P01, std::numbers::pi, "a", 0.98, 0.01},
    {SodtProjection::P01, std::numbers::pi, "b", 0.97, 0.01},
    {SodtProjection::P10, 1.46, "a", 0.92, 0.02},
    {SodtProjection::P10, 1.46, "b", 0.98, 0.01},
    {SodtProjection::P01, 1.37, "a", 0.97, 0.02},
    {SodtProjection::P01, 1.37, "b", 0.96, 0.02},
};

std::vector<OdtRow> parse_odt_rows(const std::string &text) {
    std::vector<OdtRow> rows;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto semi = rest.find(';');
        std::string entry(rest.substr(0, semi));
        rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
        entry.erase(std::remove_if(entry.begin(), entry.end(), ::isspace), entry.end());
        if (entry.empty()) {
            continue;
        }
        std::vector<std::string> parts;
        std::stringstream ss(entry);
        for (std::string p; std::getline(ss, p, ',');) {
            parts.push_back(p);
        }
        if (parts.size() != 3) {
            throw ConfigError(fmt::format("table.rows entry '{}' must be projection,theta,receiver", entry));
        }
        OdtRow row{};
        if (parts[0] == "01") {
            row.projection = SodtProjection::P01;
        } else if (parts[0] == "10") {
            row.projection = SodtProjection::P10;
        } else {
            throw ConfigError(fmt::format("table.rows projection '{}' must be 01 or 10", parts[0]));
        }
        if (parts[1] == "pi") {
            row.theta = std::numbers::pi;
        } else {
            Config tmp({{"x", parts[1]}}, {});
            row.theta = tmp.real("x");
        }
        if (parts[2] != "a" && parts[2] != "b") {
            throw ConfigError(fmt::format("table.rows receiver '{}' must be a or b", parts[2]));
        }
        row.receiver = parts[2];
        for (const auto &e : kLabOdtFidelities) {
            if (e.projection == row.projection && e.theta == row.theta &&
                row.receiver == e.receiver) {
                row.lab = e.fidelity;
                row.lab_uncertainty = e.uncertainty;
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ConfigError("table.rows lists no configurations");
    }
    return rows;
}

Json opt(const std::optional<double> &v) { return v ? Json(*v) : Json(nullptr); }

} // namespace

// schema ----------------------------------------------------------------------

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{"resource-check", "qtc-sweep", "odt-table",
                                                "witness-scan", "tomography-demo"};
    return names;
}

std::map<std::string, std::string> default_config(const std::string &command) {
    std::map<std::string, std::string> d{{"run.seed", std::to_string(kDefaultSeed)},
                                         {"output.path", ""}};
    if (command == "resource-check") {
        d["output.format"] = "json";
        d["resource.p"] = "1";
        d["resource.circuit"] = "fixture";
        d["witness.gamma_grid"] = "-3,-2.5,-2,-1.5,-1,-0.5,-0.12,0";
        d["witness.significance"] = "1";
    } else if (command == "qtc-sweep") {
        d["output.format"] = "csv";
        d["sweep.theta_grid"] = "";
        d["sweep.theta_points"] = "25";
        d["client.phi"] = "0";
        d["noise.p"] = "0.7653";
        d["noise.lambda"] = "0.18";
        d["noise.p_uncertainty"] = "0.00533";
        d["protocol.port"] = "b";
    } else if (command == "odt-table") {
        d["output.format"] = "csv";
        d["table.rows"] = kOdtRows;
        d["noise.p"] = "1";
        d["noise.lambda"] = "0";
        d["tomography.shots"] = "10000";
        d["tomography.trials"] = "50";
    } else if (command == "witness-scan") {
        d["output.format"] = "csv";
        d["scan.gamma_grid"] = "";
        d["scan.gamma_min"] = "-3";
        d["scan.gamma_max"] = "0";
        d["scan.gamma_points"] = "13";
        d["moments.jx2"] = num(kLabSpinMoments.jx2);
        d["moments.jy2"] = num(kLabSpinMoments.jy2);
        d["moments.jz2"] = num(kLabSpinMoments.jz2);
        d["moments.djx2"] = num(kLabSpinMoments.djx2);
        d["moments.djy2"] = num(kLabSpinMoments.djy2);
        d["moments.djz2"] = num(kLabSpinMoments.djz2);
        d["witness.significance"] = "1";
        d["seesaw.restarts"] = "24";
    } else if (command == "tomography-demo") {
        d["output.format"] = "json";
        d["demo.state"] = "psi+";
        d["demo.shots"] = "10000";
        d["demo.trials"] = "50";
    } else {
        throw ConfigError(fmt::format("unknown command '{}'", command));
    }
    return d;
}

// resource-check ------------------------------------------------------------------

Report cmd_resource_check(const Config &c, const RunOptions &o) {
    Report r = start("resource-check", c);
    const double p = unit_interval(c, "resource.p");
    const std::string mode = c.str("resource.circuit");
    if (mode != "fixture" && mode != "search") {
        throw ConfigError("resource.circuit must be 'fixture' or 'search'");
    }
    const double significance = c.real("witness.significance");
    const std::vector<double> gammas = c.reals("witness.gamma_grid");
    for (double g : gammas) {
        if (!(g >= -10.0 && g <= 0.0)) {
            throw ConfigError(fmt::format("witness.gamma_grid value {} outside [-10, 0]", g));
        }
    }
    const PureState d4 = dicke(4, 2, kServerLabels);

    // conversion
    const SearchResult fresh = fresh_conversion();
    check(r, "conversion_search_found", fresh.found,
          fmt::format("{} gates, best fidelity {}", fresh.best_circuit.steps.size(),
                      num(fresh.best_fidelity)));
    const fs::path circuit_path = o.fixture_dir / kCircuitFixture;
    if (o.regen_fixtures && fresh.found) {
        write_file(circuit_path, "# xi -> D4(2) conversion over the default pool\n" +
                                     to_text(fresh.circuit));
    }
    Circuit used = fresh.found ? fresh.circuit : fresh.best_circuit;
    if (const auto text = read_file(circuit_path)) {
        const Circuit fixture = parse_circuit(*text);
        check(r, "conversion_fixture_matches_search", fixture == fresh.circuit);
        if (mode == "fixture") {
            used = fixture;
        }
    } else {
        check(r, "conversion_fixture_present", false,
              "missing " + kCircuitFixture.string() + "; rerun with --regen-fixtures");
    }
    const PureState converted = run_circuit(xi_state(), used);
    const double conv_f = fidelity(converted, d4);
    check(r, "conversion_fidelity", conv_f >= 1.0 - kExact, num(conv_f));
    const auto order = find_matching_order(dicke_physical(), d4);
    check(r, "physical_form_is_logical_order", order && *order == kServerLabels);
    r.results["conversion_circuit"] = to_text(used);
    r.results["conversion_fidelity"] = conv_f;

    const State resource = p == 1.0 ? State(converted) : State(werner_dicke(p));
    const double resource_f = fidelity(resource, d4);
    r.results["resource_fidelity"] = resource_f;
    check(r, "resource_fidelity_closed_form",
          std::abs(resource_f - werner_dicke_fidelity(p)) < 1e-10, num(resource_f));

    // witnesses on the four-qubit resource
    Table wt{"witnesses", {"witness", "value", "fidelity_bound", "clamped", "verdict"}, {}};
    Json reports = Json::array();
    {
        const double v = expectation(resource, witness_wm());
        auto rep = make_witness_report("W_m", v, 0.0, {{"p", p}}, significance);
        const auto fb = fidelity_bound_from_wm(v);
        rep.fidelity_bound = fb.value;
        rep.fidelity_bound_clamped = fb.clamped;
        wt.rows.push_back({rep.witness, v, fb.value, fb.clamped, std::string(to_string(rep.verdict))});
        reports.push_back(io::report_to_json(rep));
    }
    {
        const double v = expectation(resource, witness_wm_reconstructed());
        auto rep = make_witness_report("W_m_reconstructed", v, 0.0, {{"p", p}}, significance);
        const auto fb = fidelity_bound_from_wm(v);
        rep.fidelity_bound = fb.value;
        rep.fidelity_bound_clamped = fb.clamped;
        wt.rows.push_back({rep.witness, v, fb.value, fb.clamped, std::string(to_string(rep.verdict))});
        reports.push_back(io::report_to_json(rep));
        check(r, "wm_reconstructed_bound_equals_fidelity",
              std::abs(fb.value - resource_f) < kExact,
              fmt::format("bound {} fidelity {}", num(fb.value), num(resource_f)));
    }

    // single-qubit projections
    Table st{"single_projections",
             {"qubit", "outcome", "probability", "target", "fidelity", "projector_witness",
              "fidelity_bound"},
             {}};
    bool single_ok = true;
    for (const auto &q : kServerLabels) {
        for (const char bit : {'0', '1'}) {
            const std::vector<Label> which{q};
            const auto proj = project(resource, which, std::string(1, bit));
            const int k = bit == '0' ? 2 : 1;
            const auto rest = layout_of(proj.state).labels();
            const double f = fidelity(proj.state, dicke(3, static_cast<std::size_t>(k), rest));
            const double wv = expectation(proj.state, witness_projector_d3(k));
            const auto fb = fidelity_bound_from_projector(wv);
            st.rows.push_back({q, std::string(1, bit), proj.probability,
                               fmt::format("D3({})", k), f, wv, fb.value});
            single_ok = single_ok && (p == 1.0 ? f >= 1.0 - kExact
                                               : std::abs(fb.value - f) < kExact);
            auto rep = make_witness_report(fmt::format("W_D3({})[{}={}]", k, q, bit), wv, 0.0,
                                           {{"p", p}}, significance);
            rep.fidelity_bound = fb.value;
            rep.fidelity_bound_clamped = fb.clamped;
            reports.push_back(io::report_to_json(rep));
        }
    }
    check(r, p == 1.0 ? "single_projections_give_d3" : "projector_bounds_equal_fidelity",
          single_ok);

    // two-qubit projections
    Table pt{"pair_projections", {"projected", "outcome", "probability", "remaining", "psi_plus_fidelity"}, {}};
    bool pair_ok = true;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = i + 1; k < 4; ++k) {
            const std::vector<Label> pair{kServerLabels[i], kServerLabels[k]};
            for (const char *bits : {"01", "10"}) {
                const auto proj = project(resource, pair, bits);
                const auto rest = layout_of(proj.state).labels();
                const double f = fidelity(proj.state, bell(Bell::PsiPlus, rest[0], rest[1]));
                pt.rows.push_back({pair[0] + pair[1], std::string(bits), proj.probability,
                                   rest[0] + rest[1], f});
                pair_ok = pair_ok && f >= 1.0 - kExact;
            }
        }
    }
    if (p == 1.0) {
        check(r, "pair_projections_give_psi_plus", pair_ok);
    }

    // collective-spin scan
    BiseparableOptions opts;
    opts.seed = r.seed;
    Table gt{"gamma_scan",
             {"gamma", "b4", "simulated_value", "lab_value", "delta", "significance"},
             {}};
    std::map<double, double> b4s;
    for (double g : gammas) {
        const auto b = biseparable_bound(g, opts);
        b4s[g] = b.value;
        const double sim = expectation(resource, witness_wcs(g, b.value));
        const double lab = wcs_value(g, b.value, kLabSpinMoments);
        const double delta = propagate_wcs_error(g, kLabSpinMoments.djx2, kLabSpinMoments.djy2,
                                                 kLabSpinMoments.djz2);
        gt.rows.push_back({g, b.value, sim, lab, delta, lab / delta});
    }
    if (o.regen_fixtures) {
        write_b4_fixture(o.fixture_dir, opts);
    }
    check_b4_fixture(r, o.fixture_dir, b4s);

    r.results["witness_reports"] = reports;
    r.tables = {std::move(wt), std::move(st), std::move(pt), std::move(gt)};
    return r;
}

// qtc-sweep -------------------------------------------------------------------

Report cmd_qtc_sweep(const Config &c, const RunOptions &o) {
    Report r = start("qtc-sweep", c);
    const std::vector<double> thetas =
        grid(c, "sweep.theta_grid", 0.0, std::numbers::pi, "sweep.theta_points");
    for (double t : thetas) {
        if (!(t >= 0.0 && t <= std::numbers::pi)) {
            throw ConfigError(fmt::format("theta {} outside [0, pi]", t));
        }
    }
    const double phi = c.real("client.phi");
    const double p = unit_interval(c, "noise.p");
    const double lambda = unit_interval(c, "noise.lambda");
    const double dp = c.real("noise.p_uncertainty");
    if (dp < 0.0) {
        throw ConfigError("noise.p_uncertainty must be non-negative");
    }
    const Label port = server_label(c, "protocol.port");
    const PureState d4 = dicke(4, 2, kServerLabels);

    const CorrectionTable table = derive_correction_table(d4, port);
    const fs::path table_path = o.fixture_dir / kCorrectionFixture;
    if (o.regen_fixtures) {
        write_file(table_path, Json{{"port", port}, {"table", io::correction_table_to_json(table)}}
                                       .dump(2) +
                                   "\n");
    }
    if (const auto text = read_file(table_path)) {
        const Json j = Json::parse(*text);
        if (j.at("port").get<std::string>() == port) {
            check(r, "correction_table_fixture",
                  io::correction_table_from_json(j.at("table")) == table);
        }
    } else {
        check(r, "correction_table_fixture_present", false,
              "missing " + kCorrectionFixture.string() + "; rerun with --regen-fixtures");
    }
    r.results["correction_table"] = io::correction_table_to_json(table);

    Table t{"qtc_sweep",
            {"theta", "theory", "ideal", "ideal_min_clone", "ideal_max_clone", "band_low",
             "band_nominal", "band_high"},
            {}};
    double worst = 0.0;
    double spread = 0.0;
    bool band_ok = true;
    for (double theta : thetas) {
        const double theory = qtc_theory_fidelity(theta);
        const QtcResult q = run_qtc({theta, phi, 0.0}, d4, port, table);
        double lo = 1.0, hi = 0.0;
        for (const auto &branch : q.clone_fidelities) {
            for (double f : branch) {
                lo = std::min(lo, f);
                hi = std::max(hi, f);
            }
        }
        worst = std::max(worst, std::abs(q.average_clone_fidelity - theory));
        spread = std::max({spread, std::abs(lo - theory), std::abs(hi - theory)});
        const QtcBand band = qtc_mixed_band(theta, p, lambda, dp, phi);
        if (p == 1.0 && lambda == 0.0) {
            band_ok = band_ok && band.low <= theory + kExact && band.high >= theory - kExact;
        }
        t.rows.push_back({theta, theory, q.average_clone_fidelity, lo, hi, band.low,
                          band.nominal, band.high});
    }
    check(r, "ideal_equals_theory", worst < kExact, fmt::format("max deviation {}", num(worst)));
    check(r, "clones_symmetric_across_branches", spread < kExact,
          fmt::format("max deviation {}", num(spread)));
    if (p == 1.0 && lambda == 0.0) {
        check(r, "band_contains_theory", band_ok);
    }
    r.results["universal_cloner"] = kUniversalCloner13;
    r.tables.push_back(std::move(t));
    return r;
}

// odt-table -------------------------------------------------------------------

Report cmd_odt_table(const Config &c, const RunOptions &) {
    Report r = start("odt-table", c);
    const std::vector<OdtRow> rows = parse_odt_rows(c.str("table.rows"));
    const double p = unit_interval(c, "noise.p");
    const double lambda = unit_interval(c, "noise.lambda");
    const std::size_t shots = positive(c, "tomography.shots");
    const std::size_t trials = positive(c, "tomography.trials");
    if (trials < 10) {
        throw ConfigError("tomography.trials must be at least 10");
    }
    const bool noisy = p < 1.0 || lambda > 0.0;
    const PureState d4 = dicke(4, 2, kServerLabels);
    const State noisy_resource = State(werner_dicke(p));

    Table t{"odt_table",
            {"projection", "theta", "receiver", "port", "success_probability", "ideal_fidelity",
             "intermediate_fidelity", "noisy_fidelity", "shot_fidelity", "shot_uncertainty",
             "lab_fidelity", "lab_uncertainty"},
            {}};
    bool ideal_ok = true;
    bool inter_ok = true;
    double noisy_sum = 0.0, shot_sum = 0.0, shot_var = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const OdtRow &row = rows[i];
        const Label port = row.receiver == "a" ? "b" : "a";
        const ClientParams pure{row.theta, 0.0, 0.0};
        const OdtResult ideal = run_odt(pure, d4, port, row.receiver, row.projection);
        ideal_ok = ideal_ok && std::abs(ideal.teleport_fidelity - 1.0) < kExact;

        const Vector ab = client_ket(pure).amplitudes();
        Vector expect = Vector::Zero(8);
        expect(0b001) = ab(0);
        expect(0b010) = ab(0);
        expect(0b111) = ab(1);
        expect(0b100) = ab(1);
        expect.normalize();
        const std::vector<Label> xpr{kClientLabel, port, row.receiver};
        const double inter_f =
            fidelity(ideal.intermediate, PureState(Layout(xpr), std::move(expect)));
        inter_ok = inter_ok && inter_f >= 1.0 - kExact;

        Json noisy_f = nullptr, shot_f = nullptr, shot_u = nullptr;
        if (noisy) {
            const ClientParams client{row.theta, 0.0, lambda};
            const OdtResult n = run_odt(client, noisy_resource, port, row.receiver, row.projection);
            const auto records = simulate_pauli_records(n.receiver_state, shots,
                                                        r.seed + 100000 * i);
            const auto boot = fidelity_with_error(records, client_state(client), trials,
                                                  r.seed + 100000 * i + 50000);
            noisy_f = n.teleport_fidelity;
            shot_f = boot.point;
            shot_u = boot.uncertainty;
            noisy_sum += n.teleport_fidelity;
            shot_sum += boot.point;
            shot_var += boot.uncertainty * boot.uncertainty;
        }
        t.rows.push_back({std::string(to_string(row.projection)), row.theta, row.receiver, port,
                          ideal.success_probability, ideal.teleport_fidelity, inter_f, noisy_f,
                          shot_f, shot_u, opt(row.lab), opt(row.lab_uncertainty)});
    }
    check(r, "ideal_fidelity_one", ideal_ok);
    check(r, "intermediate_state_matches", inter_ok);
    if (noisy) {
        const double n = static_cast<double>(rows.size());
        r.results["mean_noisy_fidelity"] = noisy_sum / n;
        r.results["mean_shot_fidelity"] = shot_sum / n;
        r.results["mean_shot_uncertainty"] = std::sqrt(shot_var) / n;
    }
    r.results["lab_mean_fidelity"] = 0.96;
    r.tables.push_back(std::move(t));
    return r;
}

// witness-scan ----------------------------------------------------------------

Report cmd_witness_scan(const Config &c, const RunOptions &o) {
    Report r = start("witness-scan", c);
    const std::vector<double> gammas =
        grid(c, "scan.gamma_grid", c.real("scan.gamma_min"), c.real("scan.gamma_max"),
             "scan.gamma_points");
    for (double g : gammas) {
        if (!(g >= -10.0 && g <= 0.0)) {
            throw ConfigError(fmt::format("gamma {} outside [-10, 0]", g));
        }
    }
    SpinMoments m{c.real("moments.jx2"),  c.real("moments.jy2"),  c.real("moments.jz2"),
                  c.real("moments.djx2"), c.real("moments.djy2"), c.real("moments.djz2")};
    if (m.djx2 < 0.0 || m.djy2 < 0.0 || m.djz2 < 0.0) {
        throw ConfigError("moment uncertainties must be non-negative");
    }
    const double significance = c.real("witness.significance");
    BiseparableOptions opts;
    opts.seed = r.seed;
    opts.restarts = positive(c, "seesaw.restarts");

    Table t{"witness_scan",
            {"gamma", "b4", "grid_estimate", "bipartition", "value", "delta", "significance",
             "verdict"},
            {}};
    std::map<double, double> b4s;
    bool bracket_ok = true;
    Json reports = Json::array();
    for (double g : gammas) {
        const auto b = biseparable_bound(g, opts);
        b4s[g] = b.value;
        bracket_ok = bracket_ok && b.value >= b.grid_estimate - kExact && b.value <= 6.0 + kExact;
        const double v = wcs_value(g, b.value, m);
        const double delta = propagate_wcs_error(g, m.djx2, m.djy2, m.djz2);
        const auto rep = make_witness_report("W_cs", v, delta, {{"gamma", g}, {"b4", b.value}},
                                             significance);
        reports.push_back(io::report_to_json(rep));
        t.rows.push_back({g, b.value, b.grid_estimate, b.best_bipartition, v, delta,
                          delta > 0.0 ? Json(v / delta) : Json(nullptr),
                          std::string(to_string(rep.verdict))});
    }
    check(r, "b4_brackets_grid_estimate", bracket_ok);
    if (o.regen_fixtures) {
        write_b4_fixture(o.fixture_dir, opts);
    }
    check_b4_fixture(r, o.fixture_dir, b4s);
    r.results["witness_reports"] = reports;
    r.tables.push_back(std::move(t));
    return r;
}

// tomography-demo ---------------------------------------------------------------

Report cmd_tomography_demo(const Config &c, const RunOptions &) {
    Report r = start("tomography-demo", c);
    const std::string name = c.str("demo.state");
    const std::size_t shots = positive(c, "demo.shots");
    const std::size_t trials = positive(c, "demo.trials");
    if (trials < 10) {
        throw ConfigError("demo.trials must be at least 10");
    }
    State target = bell(Bell::PsiPlus);
    if (name == "psi+") {
        target = bell(Bell::PsiPlus);
    } else if (name == "psi-") {
        target = bell(Bell::PsiMinus);
    } else if (name == "phi+") {
        target = bell(Bell::PhiPlus);
    } else if (name == "phi-") {
        target = bell(Bell::PhiMinus);
    } else if (name == "clone") {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = 1.0 / 3.0;
        m(1, 1) = 2.0 / 3.0;
        target = MixedState(Layout({"a"}), m);
    } else if (name == "plus") {
        target = client_ket({std::numbers::pi / 2.0, 0.0, 0.0}, "a");
    } else {
        throw ConfigError(fmt::format(
            "demo.state '{}' must be one of psi+, psi-, phi+, phi-, clone, plus", name));
    }

    const MixedState exact = tomography_linear(exact_pauli_records(target));
    const double exact_f = fidelity(exact, target);
    check(r, "exact_inversion", exact_f >= 1.0 - kExact, num(exact_f));

    const auto records = simulate_pauli_records(target, shots, r.seed);
    const MixedState rho = tomography_linear(records);
    const auto boot = fidelity_with_error(records, target, trials, r.seed + 1000);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
    check(r, "reconstruction_is_density_matrix",
          eig.eigenvalues().minCoeff() >= -kPsdTolerance &&
              std::abs(rho.matrix().trace().real() - 1.0) < 1e-10);

    Table counts{"counts", {"setting", "outcome", "count"}, {}};
    Json recs = Json::array();
    for (const auto &rec : records) {
        for (const auto &[outcome, n] : rec.counts) {
            counts.rows.push_back({rec.setting.label(), outcome, n});
        }
        recs.push_back(io::record_to_json(rec));
    }
    Table summary{"fidelity",
                  {"state", "shots", "trials", "point", "mean", "uncertainty"},
                  {{name, shots, trials, boot.point, boot.mean, boot.uncertainty}}};
    r.results["records"] = recs;
    r.results["reconstructed"] = io::matrix_to_json(rho.matrix());
    r.results["target"] = io::state_to_json(target);
    r.results["bootstrap_seed"] = boot.seed;
    r.tables = {std::move(summary), std::move(counts)};
    return r;
}

// dispatch --------------------------------------------------------------------

CommandOutput run_command(const std::string &command, const RunOptions &options) {
    CommandOutput out;
    try {
        std::map<std::string, std::string> file_values;
        if (options.config_path) {
            const auto text = read_file(*options.config_path);
            if (!text) {
                throw ConfigError(
                    fmt::format("cannot read config file {}", options.config_path->string()));
            }
            file_values = parse_config_text(*text);
        }
        Config cfg(default_config(command), file_values);
        if (options.seed) {
            cfg.set("run.seed", std::to_string(*options.seed));
        }
        if (options.format) {
            cfg.set("output.format", *options.format);
        }
        if (options.out) {
            cfg.set("output.path", options.out->string());
        }
        const std::string format = cfg.str("output.format");
        if (format != "csv" && format != "json") {
            throw ConfigError(fmt::format("format '{}' must be csv or json", format));
        }
        if (cfg.integer("run.seed") < 0) {
            throw ConfigError("run.seed must be non-negative");
        }
        if (!cfg.str("output.path").empty()) {
            out.out_path = cfg.str("output.path");
        }

        Report report;
        if (command == "resource-check") {
            report = cmd_resource_check(cfg, options);
        } else if (command == "qtc-sweep") {
            report = cmd_qtc_sweep(cfg, options);
        } else if (command == "odt-table") {
            report = cmd_odt_table(cfg, options);
        } else if (command == "witness-scan") {
            report = cmd_witness_scan(cfg, options);
        } else {
            report = cmd_tomography_demo(cfg, options);
        }
        out.text = format == "csv" ? report.to_csv() : report.to_json();
        out.exit_code = report.passed() ? 0 : 1;
        for (const auto &chk : report.checks) {
            if (!chk.pass) {
                out.diagnostics += fmt::format("check failed: {}{}\n", chk.name,
                                               chk.detail.empty() ? "" : " (" + chk.detail + ")");
            }
        }
    } catch (const ConfigError &e) {
        out.text.clear();
        out.diagnostics = fmt::format("config error: {}\n", e.what());
        out.exit_code = 2;
    } catch (const std::exception &e) {
        out.text.clear();
        out.diagnostics = fmt::format("error: {}\n", e.what());
        out.exit_code = 1;
    }
    return out;
}

} // namespace dickenet::cli
