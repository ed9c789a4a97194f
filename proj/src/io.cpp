// Copyright 2026 The trapwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trapwalk/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace trapwalk::io {

namespace {

const char *const kBasis[4] = {"L", "D", "U", "R"};

// Shortest decimal form that parses back to the same double.
std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double get_number(const json &j, const char *key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) {
        throw Error(ErrorKind::InvalidInput, std::string("parameter '") + key + "' is not a number");
    }
    return j.at(key).get<double>();
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorKind::InvalidInput, "complex numbers must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json params_to_json(const FamilyParams &params) {
    json j;
    if (const auto *p = std::get_if<TypeIParams>(&params)) {
        j = {{"delta1", p->delta1}, {"delta2", p->delta2}, {"phi_d", p->phi_d},
             {"phi_e", p->phi_e},   {"phi_f", p->phi_f},   {"phi_g", p->phi_g},
             {"phi_h", p->phi_h}};
    } else if (const auto *p = std::get_if<TypeIIaParams>(&params)) {
        j = {{"delta1", p->delta1}, {"delta2", p->delta2}, {"delta3", p->delta3},
             {"eta", p->eta},       {"phi_d", p->phi_d},   {"phi_e", p->phi_e},
             {"phi_f", p->phi_f},   {"phi_g", p->phi_g},   {"phi_h", p->phi_h}};
    } else {
        const auto &q = std::get<TypeIIbParams>(params);
        j = {{"variant", q.variant}, {"delta", q.delta}, {"varphi", q.varphi},
             {"alpha", q.alpha},     {"beta", q.beta},   {"gamma", q.gamma},
             {"phi_f", q.phi_f}};
    }
    return j;
}

FamilyParams params_from_json(const std::string &family, const json &j) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "params must be a JSON object");
    if (family == "TypeI") {
        TypeIParams p;
        p.delta1 = get_number(j, "delta1", 0.0);
        p.delta2 = get_number(j, "delta2", 0.0);
        p.phi_d = get_number(j, "phi_d", 0.0);
        p.phi_e = get_number(j, "phi_e", 0.0);
        p.phi_f = get_number(j, "phi_f", 0.0);
        p.phi_g = get_number(j, "phi_g", 0.0);
        p.phi_h = get_number(j, "phi_h", 0.0);
        return p;
    }
    if (family == "TypeIIa") {
        TypeIIaParams p;
        p.delta1 = get_number(j, "delta1", 0.0);
        p.delta2 = get_number(j, "delta2", 0.0);
        p.delta3 = get_number(j, "delta3", 0.0);
        p.eta = get_number(j, "eta", kPi);
        p.phi_d = get_number(j, "phi_d", 0.0);
        p.phi_e = get_number(j, "phi_e", 0.0);
        p.phi_f = get_number(j, "phi_f", 0.0);
        p.phi_g = get_number(j, "phi_g", 0.0);
        p.phi_h = get_number(j, "phi_h", 0.0);
        return p;
    }
    if (family == "TypeIIb") {
        TypeIIbParams p;
        p.variant = static_cast<int>(get_number(j, "variant", 1));
        p.delta = get_number(j, "delta", 0.0);
        p.varphi = get_number(j, "varphi", 0.0);
        p.alpha = get_number(j, "alpha", 0.0);
        p.beta = get_number(j, "beta", 0.0);
        p.gamma = get_number(j, "gamma", 0.0);
        p.phi_f = get_number(j, "phi_f", 0.0);
        return p;
    }
    throw Error(ErrorKind::InvalidInput, "unknown family '" + family + "'");
}

json coin_to_json(const Matrix4 &coin, const std::optional<FamilyParams> &params) {
    json j;
    j["basis"] = json::array({kBasis[0], kBasis[1], kBasis[2], kBasis[3]});
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back(complex_to_json(coin(r, c)));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    if (params) {
        j["family"] = family_label(*params);
        j["params"] = params_to_json(*params);
    }
    return j;
}

Matrix4 coin_from_json(const json &j) {
    if (!j.is_object() || !j.contains("matrix")) {
        throw Error(ErrorKind::InvalidInput, "coin JSON needs a 'matrix' field");
    }
    if (j.contains("basis")) {
        const json &b = j.at("basis");
        if (!b.is_array() || b.size() != 4) {
            throw Error(ErrorKind::InvalidInput, "coin basis must list four directions");
        }
        for (int i = 0; i < 4; ++i) {
            if (!b[i].is_string() || b[i].get<std::string>() != kBasis[i]) {
                throw Error(ErrorKind::InvalidInput, "coin basis must be [\"L\",\"D\",\"U\",\"R\"]");
            }
        }
    }
    const json &m = j.at("matrix");
    if (!m.is_array() || m.size() != 4) {
        throw Error(ErrorKind::InvalidInput, "coin matrix must have four rows");
    }
    Matrix4 coin;
    for (int r = 0; r < 4; ++r) {
        if (!m[r].is_array() || m[r].size() != 4) {
            throw Error(ErrorKind::InvalidInput, "coin matrix rows must have four entries");
        }
        for (int c = 0; c < 4; ++c) coin(r, c) = complex_from_json(m[r][c]);
    }
    if (!is_finite(coin)) throw Error(ErrorKind::InvalidInput, "coin matrix has non-finite entries");
    return coin;
}

json classification_to_json(const ClassificationResult &r) {
    json j;
    j["trapping"] = r.trapping;
    json phases = json::array();
    json mult = json::array();
    for (const auto &p : r.eigenphases) {
        phases.push_back(complex_to_json(p.value));
        mult.push_back(p.multiplicity);
    }
    j["eigenphases"] = phases;
    j["multiplicities"] = mult;
    j["family"] = family_name(r.family);
    if (r.family == Family::TypeIIb) j["variant"] = r.iib_variant;
    j["rankA"] = r.rank_of_A ? json(*r.rank_of_A) : json(nullptr);
    j["escaping_dim"] = r.escaping_dimension ? json(*r.escaping_dimension) : json(nullptr);
    j["params"] = r.recovered_params ? params_to_json(*r.recovered_params) : json(nullptr);
    j["fully_trapped"] = r.fully_trapped;
    j["near_tolerance"] = r.near_tolerance;
    return j;
}

json escaping_to_json(const MatrixX &basis) {
    json vecs = json::array();
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        json v = json::array();
        for (Eigen::Index r = 0; r < basis.rows(); ++r) v.push_back(complex_to_json(basis(r, c)));
        vecs.push_back(v);
    }
    return {{"basis", json::array({kBasis[0], kBasis[1], kBasis[2], kBasis[3]})},
            {"dimension", basis.cols()},
            {"vectors", vecs}};
}

json region_to_json(const SpreadRegion &r) {
    return {{"a1", r.a1},         {"b1", r.b1},         {"a2", r.a2},
            {"b2", r.b2},         {"vx_int", r.vx_int}, {"theta1", r.theta1},
            {"theta2", r.theta2}, {"S", r.S},           {"coincident", r.coincident},
            {"segment", r.segment}, {"empty", r.empty}};
}

json error_to_json(const Error &e) {
    return {{"error", {{"kind", std::string(error_kind_name(e.kind()))}, {"message", e.what()}}}};
}

std::string distribution_csv(const Distribution &d, double floor) {
    std::string out = "x,y,P\n";
    for (int y = -d.radius; y <= d.radius; ++y) {
        for (int x = -d.radius; x <= d.radius; ++x) {
            const double p = d.at(x, y);
            if (p <= floor) continue;
            out += std::to_string(x) + "," + std::to_string(y) + "," + num(p) + "\n";
        }
    }
    return out;
}

std::string trajectory_csv(const Trajectory &t) {
    std::string out = "t,P_origin\n";
    for (size_t i = 0; i < t.origin_probability.size(); ++i) {
        out += std::to_string(i) + "," + num(t.origin_probability[i]) + "\n";
    }
    return out;
}

std::string spectrum_csv(const std::vector<SpectrumSample> &samples) {
    std::string out = "kx,ky,omega,vx,vy,detH\n";
    for (const auto &s : samples) {
        out += num(s.kx) + "," + num(s.ky) + "," + num(s.omega) + "," + num(s.vx) + "," +
               num(s.vy) + "," + num(s.det_h) + "\n";
    }
    return out;
}

std::string area_sweep_csv(const AreaSweep &sweep) {
    std::string out = "delta1,delta2,S\n";
    for (int i = 0; i < sweep.n; ++i) {
        for (int j = 0; j < sweep.n; ++j) {
            out += num(sweep.delta1[i]) + "," + num(sweep.delta2[j]) + "," +
                   num(sweep.S[static_cast<size_t>(i) * sweep.n + j]) + "\n";
        }
    }
    return out;
}

void write_file_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create directory for " + path);
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) throw Error(ErrorKind::Io, "write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot move output into place at " + path);
    }
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace trapwalk::io
