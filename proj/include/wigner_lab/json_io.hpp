// Copyright 2026 The wigner_lab Authors
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

// State and matrix JSON:
//   {"num_qubits": n, "amplitudes": [[re, im], ...]}
//   {"dim": d, "entries": [[[re, im], ...], ...]}      (row-major)
// Doubles are always written with 17 significant digits.

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "wigner_lab/matrix.hpp"
#include "wigner_lab/state_vector.hpp"

namespace wigner_lab {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cannot serialize a non-finite number to JSON");
    }
    if (x == 0) {
        x = 0;  // no "-0" in output
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace detail {

inline void dump_to(std::string &out, const Json &j, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    switch (j.type()) {
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto &e : j) {
                flat = flat && !e.is_structured();
            }
            out += '[';
            bool first = true;
            for (const auto &e : j) {
                if (!first) {
                    out += (indent >= 0 && flat) ? ", " : ",";
                }
                if (!flat) {
                    newline(depth + 1);
                }
                dump_to(out, e, indent, depth + 1);
                first = false;
            }
            if (!flat) {
                newline(depth);
            }
            out += ']';
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto &[key, value] : j.items()) {
                if (!first) {
                    out += ',';
                }
                newline(depth + 1);
                out += Json(key).dump();
                out += indent < 0 ? ":" : ": ";
                dump_to(out, value, indent, depth + 1);
                first = false;
            }
            newline(depth);
            out += '}';
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

inline double require_number(const Json &j, const char *what) {
    if (!j.is_number()) {
        throw std::invalid_argument(std::string(what) + " must be a number");
    }
    return j.get<double>();
}

}  // namespace detail

/// Serializes `j`; indent < 0 gives a single line.
inline std::string dump_json(const Json &j, int indent = 2) {
    std::string out;
    detail::dump_to(out, j, indent, 0);
    return out;
}

inline Json amplitude_to_json(Amplitude a) { return Json::array({a.real(), a.imag()}); }

inline Amplitude amplitude_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("amplitude must be a [re, im] pair");
    }
    return {detail::require_number(j[0], "re"), detail::require_number(j[1], "im")};
}

inline Json state_to_json(const StateVector &v) {
    Json amps = Json::array();
    for (const auto &a : v.amplitudes()) {
        amps.push_back(amplitude_to_json(a));
    }
    return Json{{"num_qubits", v.num_qubits()}, {"amplitudes", std::move(amps)}};
}

/// Raw amplitudes of a state document, without the normalization check.
inline std::vector<Amplitude> amplitudes_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("num_qubits") || !j.contains("amplitudes")) {
        throw std::invalid_argument("state JSON needs \"num_qubits\" and \"amplitudes\"");
    }
    if (!j["num_qubits"].is_number_unsigned() && !j["num_qubits"].is_number_integer()) {
        throw std::invalid_argument("num_qubits must be an integer");
    }
    auto n = j["num_qubits"].get<long long>();
    if (n < 1 || n > 30) {
        throw std::invalid_argument("num_qubits out of range: " + std::to_string(n));
    }
    const auto &arr = j["amplitudes"];
    if (!arr.is_array() || arr.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("expected 2^" + std::to_string(n) + " amplitudes");
    }
    std::vector<Amplitude> amps;
    amps.reserve(arr.size());
    for (const auto &a : arr) {
        amps.push_back(amplitude_from_json(a));
    }
    return amps;
}

inline StateVector state_from_json(const Json &j) { return StateVector(amplitudes_from_json(j)); }

inline Json matrix_to_json(const Matrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("matrix JSON holds square matrices only");
    }
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); c++) {
            row.push_back(amplitude_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return Json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

inline Matrix matrix_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw std::invalid_argument("matrix JSON needs \"dim\" and \"entries\"");
    }
    auto d = j["dim"].get<long long>();
    if (d < 1) {
        throw std::invalid_argument("dim must be positive");
    }
    const auto &rows = j["entries"];
    auto ud = static_cast<std::size_t>(d);
    if (!rows.is_array() || rows.size() != ud) {
        throw std::invalid_argument("expected " + std::to_string(d) + " rows");
    }
    Matrix m(ud, ud);
    for (std::size_t r = 0; r < ud; r++) {
        if (!rows[r].is_array() || rows[r].size() != ud) {
            throw std::invalid_argument("row " + std::to_string(r) + " does not have " + std::to_string(d) +
                                        " entries");
        }
        for (std::size_t c = 0; c < ud; c++) {
            m(r, c) = amplitude_from_json(rows[r][c]);
        }
    }
    return m;
}

}  // namespace wigner_lab
