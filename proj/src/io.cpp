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
#include "dickenet/io.hpp"

#include <fmt/format.h>

namespace dickenet::io {

Json matrix_to_json(const Matrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back({m(i, k).real(), m(i, k).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) {
        throw Error("matrix JSON must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json &row = j.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw Error(fmt::format("matrix row {} has the wrong length", i));
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            const Json &e = row.at(static_cast<std::size_t>(k));
            m(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

Json vector_to_json(const Vector &v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back({v(i).real(), v(i).imag()});
    }
    return out;
}

Json state_to_json(const State &s) {
    Json j;
    j["labels"] = layout_of(s).labels();
    j["matrix"] = matrix_to_json(density_matrix(s));
    return j;
}

Json setting_to_json(const MeasurementSetting &s) {
    Json bases = Json::array();
    for (const auto &b : s.bases) {
        if (b.kind == MeasurementBasis::Kind::Z) {
            bases.push_back("Z");
        } else {
            bases.push_back(Json{{"phi", b.phi}});
        }
    }
    return Json{{"label", s.label()}, {"bases", bases}};
}

MeasurementSetting setting_from_json(const Json &j) {
    MeasurementSetting s;
    for (const auto &b : j.at("bases")) {
        if (b.is_string()) {
            if (b.get<std::string>() != "Z") {
                throw Error("basis string must be \"Z\"");
            }
            s.bases.push_back(MeasurementBasis::z());
        } else {
            s.bases.push_back(MeasurementBasis::path_phase(b.at("phi").get<double>()));
        }
    }
    return s;
}

Json record_to_json(const CountsRecord &r) {
    Json j;
    j["labels"] = r.labels;
    j["setting"] = setting_to_json(r.setting);
    j["total_requested"] = r.total_requested;
    j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    Json counts = Json::object();
    for (const auto &[o, n] : r.counts) {
        counts[o] = n;
    }
    j["counts"] = counts;
    if (r.exact) {
        Json exact = Json::object();
        for (const auto &[o, p] : *r.exact) {
            exact[o] = p;
        }
        j["exact"] = exact;
    }
    return j;
}

CountsRecord record_from_json(const Json &j) {
    CountsRecord r;
    r.labels = j.at("labels").get<std::vector<Label>>();
    r.setting = setting_from_json(j.at("setting"));
    r.total_requested = j.value("total_requested", std::uint64_t{0});
    if (j.contains("seed") && !j.at("seed").is_null()) {
        r.seed = j.at("seed").get<std::uint64_t>();
    }
    for (const auto &[o, n] : j.at("counts").items()) {
        r.counts[o] = n.get<std::uint64_t>();
    }
    if (j.contains("exact")) {
        std::map<std::string, double> exact;
        for (const auto &[o, p] : j.at("exact").items()) {
            exact[o] = p.get<double>();
        }
        r.exact = std::move(exact);
    }
    return r;
}

std::string records_to_csv(const std::vector<CountsRecord> &records) {
    std::string out = "setting,outcome,count\n";
    for (const auto &r : records) {
        for (const auto &[o, n] : r.counts) {
            out += fmt::format("{},{},{}\n", r.setting.label(), o, n);
        }
    }
    return out;
}

Json report_to_json(const WitnessReport &r) {
    Json params = Json::object();
    for (const auto &[k, v] : r.parameters) {
        params[k] = v;
    }
    Json j;
    j["witness"] = r.witness;
    j["parameters"] = params;
    j["value"] = r.value;
    j["uncertainty"] = r.uncertainty;
    j["verdict"] = std::string(to_string(r.verdict));
    j["fidelity_bound"] = r.fidelity_bound ? Json(*r.fidelity_bound) : Json(nullptr);
    if (r.fidelity_bound) {
        j["fidelity_bound_clamped"] = r.fidelity_bound_clamped;
    }
    return j;
}

Json correction_table_to_json(const CorrectionTable &t) {
    Json j = Json::object();
    for (Bell b : {Bell::PhiPlus, Bell::PsiPlus, Bell::PhiMinus, Bell::PsiMinus}) {
        if (auto it = t.find(b); it != t.end()) {
            j[std::string(to_string(b))] = std::string(1, it->second);
        }
    }
    return j;
}

CorrectionTable correction_table_from_json(const Json &j) {
    CorrectionTable t;
    for (Bell b : {Bell::PhiPlus, Bell::PsiPlus, Bell::PhiMinus, Bell::PsiMinus}) {
        const std::string key(to_string(b));
        const std::string p = j.at(key).get<std::string>();
        if (p.size() != 1 || std::string_view("IXYZ").find(p[0]) == std::string_view::npos) {
            throw Error(fmt::format("correction for {} must be one of I, X, Y, Z", key));
        }
        t[b] = p[0];
    }
    return t;
}

Json qtc_to_json(const QtcResult &r) {
    Json branches = Json::array();
    for (std::size_t b = 0; b < r.branches.size(); ++b) {
        const auto &br = r.branches[b];
        Json jb;
        jb["outcome"] = std::string(to_string(br.outcome));
        jb["measured"] = br.measured;
        jb["probability"] = br.probability;
        jb["correction"] = std::string(1, br.correction);
        jb["clone_fidelities"] = r.clone_fidelities[b];
        jb["clone_fidelities_vs_ket"] = r.clone_fidelities_vs_ket[b];
        branches.push_back(std::move(jb));
    }
    Json j;
    j["clones"] = r.clones;
    j["branches"] = branches;
    j["average_clone_fidelity"] = r.average_clone_fidelity;
    j["average_clone_fidelity_vs_ket"] = r.average_clone_fidelity_vs_ket;
    return j;
}

Json odt_to_json(const OdtResult &r) {
    Json j;
    j["projection"] = std::string(to_string(r.projection));
    j["port"] = r.port;
    j["receiver"] = r.receiver;
    j["sodt"] = r.sodt;
    j["success_probability"] = r.success_probability;
    j["teleport_fidelity"] = r.teleport_fidelity;
    j["receiver_state"] = matrix_to_json(r.receiver_state.matrix());
    Json others = Json::object();
    for (const auto &[k, v] : r.other_outcomes) {
        others[k] = v;
    }
    j["other_outcomes"] = others;
    return j;
}

std::string format_double(double v) { return fmt::format("{}", v); }

} // namespace dickenet::io
