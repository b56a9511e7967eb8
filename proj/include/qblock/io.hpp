// Copyright 2026 The qblock authors
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

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "qblock/errors.hpp"
#include "qblock/linalg.hpp"
#include "qblock/matfunc.hpp"

// File formats.
//   matrix:     {"n": <qubits>, "entries": [[re, im], ...]}  row-major, 4^n entries
//   quadrature: {"r": <real>, "nodes": [{"w": [re,im], "y": [re,im], "z": [re,im]}, ...]}
//   config:     see ExperimentConfig below
// Complex numbers are always a [re, im] pair of IEEE-754 doubles.

namespace qblock {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace detail {

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

inline cplx parse_complex(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw config_error(what + ": complex numbers are [re, im] pairs");
    }
    return cplx{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline CMatrix read_matrix(const std::string& path) {
    const json j = detail::load_json_file(path);
    if (!j.contains("n") || !j.contains("entries")) {
        throw config_error(path + ": matrix files need fields \"n\" and \"entries\"");
    }
    const std::size_t n = j["n"].get<std::size_t>();
    const std::size_t dim = pow2(n);
    const auto& entries = j["entries"];
    if (!entries.is_array() || entries.size() != dim * dim) {
        throw config_error(path + ": expected " + std::to_string(dim * dim) +
                           " entries for n = " + std::to_string(n));
    }
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            m(i, k) = detail::parse_complex(entries[i * dim + k], path);
        }
    }
    if (!m.all_finite()) {
        throw config_error(path + ": matrix entries must be finite");
    }
    return m;
}

inline void write_matrix(const std::string& path, const CMatrix& m) {
    std::size_t n = 0;
    while (pow2(n) < m.rows()) {
        ++n;
    }
    if (!m.is_square() || pow2(n) != m.rows()) {
        throw std::invalid_argument("write_matrix: need a square power-of-two matrix");
    }
    ordered_json j;
    j["n"] = n;
    ordered_json entries = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k) {
            entries.push_back({m(i, k).real(), m(i, k).imag()});
        }
    }
    j["entries"] = std::move(entries);
    std::ofstream out(path);
    if (!out) {
        throw config_error("cannot write file: " + path);
    }
    out << j.dump(2) << "\n";
}

inline QuadratureScheme read_quadrature(const std::string& path) {
    const json j = detail::load_json_file(path);
    if (!j.contains("r") || !j.contains("nodes") || !j["nodes"].is_array()) {
        throw config_error(path + ": quadrature files need fields \"r\" and \"nodes\"");
    }
    QuadratureScheme q;
    q.r = j["r"].get<double>();
    const std::size_t count = j["nodes"].size();
    q.w = CVector(count);
    q.y = CVector(count);
    q.z = CVector(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto& node = j["nodes"][k];
        q.w[k] = detail::parse_complex(node.at("w"), path);
        q.y[k] = detail::parse_complex(node.at("y"), path);
        q.z[k] = detail::parse_complex(node.at("z"), path);
    }
    try {
        q.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(path + ": " + e.what());
    }
    return q;
}

/// One matrix-function experiment: which matrix, which function, and either a
/// circle contour or a quadrature file, plus the inversion accuracy delta.
struct ExperimentConfig {
    std::string matrix_path;
    std::string function_id;             // "exp" | "log" | "inv_sqrt" (contour mode)
    std::vector<cplx> function_coeffs;   // used when function_id == "series"
    std::optional<CircleContour> contour;
    std::optional<std::string> quadrature_path;
    double delta = 1e-3;
    std::uint64_t seed = 0;
    std::optional<double> alpha;         // encoding scale override
    std::optional<std::string> output;

    ScalarFunction function(cplx center) const {
        if (function_id == "exp") {
            return ScalarFunction::exponential();
        }
        if (function_id == "log") {
            return ScalarFunction::logarithm();
        }
        if (function_id == "inv_sqrt") {
            return ScalarFunction::inverse_sqrt();
        }
        if (function_id == "series") {
            return ScalarFunction::taylor_series(function_coeffs, center);
        }
        throw config_error("unknown function id: " + function_id);
    }
};

inline ExperimentConfig read_config(const std::string& path) {
    const json j = detail::load_json_file(path);
    ExperimentConfig cfg;
    if (!j.contains("matrix")) {
        throw config_error(path + ": config needs a \"matrix\" path");
    }
    cfg.matrix_path = j["matrix"].get<std::string>();

    const bool has_contour = j.contains("contour");
    const bool has_quadrature = j.contains("quadrature");
    if (has_contour == has_quadrature) {
        throw config_error(path + ": exactly one of \"contour\" and \"quadrature\" required");
    }
    if (has_contour) {
        const auto& c = j["contour"];
        CircleContour cc;
        cc.z0 = detail::parse_complex(c.at("z0"), path);
        cc.r = c.at("r").get<double>();
        cc.R = c.at("R").get<double>();
        cc.M = c.at("M").get<std::size_t>();
        cc.L = c.at("L").get<std::size_t>();
        try {
            cc.validate();
        } catch (const std::invalid_argument& e) {
            throw config_error(path + ": " + e.what());
        }
        cfg.contour = cc;

        if (!j.contains("function")) {
            throw config_error(path + ": contour mode needs a \"function\"");
        }
        const auto& f = j["function"];
        if (f.is_string()) {
            cfg.function_id = f.get<std::string>();
        } else if (f.is_object() && f.contains("coefficients")) {
            cfg.function_id = "series";
            for (const auto& coeff : f["coefficients"]) {
                cfg.function_coeffs.push_back(detail::parse_complex(coeff, path));
            }
        } else {
            throw config_error(path + ": \"function\" is an id string or "
                               "{\"coefficients\": [[re,im], ...]}");
        }
    } else {
        cfg.quadrature_path = j["quadrature"].get<std::string>();
    }

    if (j.contains("delta")) {
        cfg.delta = j["delta"].get<double>();
    }
    if (!(cfg.delta > 0.0 && cfg.delta <= 0.5)) {
        throw config_error(path + ": delta must be in (0, 1/2]");
    }
    if (j.contains("seed")) {
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("alpha")) {
        cfg.alpha = j["alpha"].get<double>();
    }
    if (j.contains("output")) {
        cfg.output = j["output"].get<std::string>();
    }
    return cfg;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw config_error("cannot write file: " + path);
    }
    out << content;
}

}  // namespace qblock
