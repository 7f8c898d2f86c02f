// Copyright 2026 The ovmkit Authors.
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

#include "ovmkit/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

namespace ovmkit {

using nlohmann::json;

namespace {

void require_schema_version(const json &j, const char *where) {
    if (!j.is_object()) {
        throw SchemaError(std::string(where) + ": expected a JSON object");
    }
    const auto it = j.find("schema_version");
    if (it == j.end() || !it->is_string() ||
        it->get<std::string>() != kSchemaVersion) {
        throw SchemaError(std::string(where) +
                          ": missing or unsupported schema_version");
    }
}

bool is_complex_field(const json &j, const char *where) {
    const auto it = j.find("field");
    if (it == j.end()) {
        return false;
    }
    const std::string field = it->get<std::string>();
    if (field == "real") {
        return false;
    }
    if (field == "complex") {
        return true;
    }
    throw SchemaError(std::string(where) + ": field must be real or complex");
}

Complex entry_from_json(const json &cell, bool complex_field,
                        const char *where) {
    if (complex_field) {
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
            !cell[1].is_number()) {
            throw SchemaError(std::string(where) +
                              ": complex entries must be [re, im] pairs");
        }
        return Complex(cell[0].get<double>(), cell[1].get<double>());
    }
    if (!cell.is_number()) {
        throw SchemaError(std::string(where) + ": entries must be numbers");
    }
    return Complex(cell.get<double>(), 0.0);
}

HermitianMatrix matrix_from_json(const json &rows, Eigen::Index dim,
                                 bool complex_field, const std::string &where) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
        throw SchemaError(where + ": expected " + std::to_string(dim) +
                          " rows");
    }
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const json &row = rows[i];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw SchemaError(where + ", row " + std::to_string(i) +
                              ": expected " + std::to_string(dim) + " entries");
        }
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(i, j) = entry_from_json(row[j], complex_field, where.c_str());
        }
    }
    try {
        return HermitianMatrix::hermitize(m);
    } catch (const NotHermitianError &e) {
        throw SchemaError(where + ": " + e.what());
    }
}

bool all_real(const Matrix &m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j).imag() != 0.0) {
                return false;
            }
        }
    }
    return true;
}

json matrix_to_json(const HermitianMatrix &h, bool complex_field) {
    json rows = json::array();
    const Matrix &m = h.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (complex_field) {
                row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
            } else {
                row.push_back(m(i, j).real());
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<HermitianMatrix> matrices_from_json(const json &j,
                                                const char *where) {
    const auto dim_it = j.find("dim");
    if (dim_it == j.end() || !dim_it->is_number_integer()) {
        throw SchemaError(std::string(where) + ": missing integer dim");
    }
    const Eigen::Index dim = dim_it->get<Eigen::Index>();
    if (dim < 1) {
        throw SchemaError(std::string(where) + ": dim must be >= 1");
    }
    const bool complex_field = is_complex_field(j, where);
    const auto mats_it = j.find("matrices");
    if (mats_it == j.end() || !mats_it->is_array() || mats_it->empty()) {
        throw SchemaError(std::string(where) +
                          ": missing non-empty matrices array");
    }
    std::vector<HermitianMatrix> out;
    out.reserve(mats_it->size());
    for (std::size_t k = 0; k < mats_it->size(); ++k) {
        std::ostringstream ctx;
        ctx << where << ", matrix " << k;
        out.push_back(
            matrix_from_json((*mats_it)[k], dim, complex_field, ctx.str()));
    }
    return out;
}

bool matrices_all_real(const std::vector<HermitianMatrix> &ms) {
    for (const auto &m : ms) {
        if (!all_real(m.matrix())) {
            return false;
        }
    }
    return true;
}

json matrices_to_json(const std::vector<HermitianMatrix> &ms,
                      bool complex_field) {
    json arr = json::array();
    for (const auto &m : ms) {
        arr.push_back(matrix_to_json(m, complex_field));
    }
    return arr;
}

} // namespace

OperatorSequence sequence_from_json(const json &j) {
    require_schema_version(j, "sequence");
    return OperatorSequence(matrices_from_json(j, "sequence"));
}

json sequence_to_json(const OperatorSequence &seq) {
    const bool complex_field = !matrices_all_real(seq.terms());
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "operator_sequence";
    j["dim"] = seq.dim();
    j["field"] = complex_field ? "complex" : "real";
    j["matrices"] = matrices_to_json(seq.terms(), complex_field);
    return j;
}

WeightFamily weights_from_json(const json &j) {
    require_schema_version(j, "weights");
    try {
        return WeightFamily(matrices_from_json(j, "weights"));
    } catch (const NotPsdError &e) {
        throw SchemaError(std::string("weights: ") + e.what());
    }
}

json weights_to_json(const WeightFamily &w) {
    const bool complex_field = !matrices_all_real(w.weights());
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "weight_family";
    j["dim"] = w.dim();
    j["field"] = complex_field ? "complex" : "real";
    j["matrices"] = matrices_to_json(w.weights(), complex_field);
    return j;
}

AtomicOVM ovm_from_json(const json &j) {
    require_schema_version(j, "atomic ovm");
    const auto atoms_it = j.find("atoms");
    if (atoms_it == j.end() || !atoms_it->is_array()) {
        throw SchemaError("atomic ovm: missing atoms array");
    }
    std::vector<double> atoms;
    for (const json &a : *atoms_it) {
        if (!a.is_number()) {
            throw SchemaError("atomic ovm: atoms must be numbers");
        }
        atoms.push_back(a.get<double>());
    }
    const auto dim_it = j.find("dim");
    if (dim_it == j.end() || !dim_it->is_number_integer()) {
        throw SchemaError("atomic ovm: missing integer dim");
    }
    if (atoms.empty()) {
        return AtomicOVM::zero_measure(dim_it->get<Eigen::Index>());
    }
    json weights_obj = j;
    weights_obj["matrices"] = j.contains("weights") ? j["weights"] : json();
    if (!weights_obj["matrices"].is_array()) {
        throw SchemaError("atomic ovm: missing weights array");
    }
    std::vector<HermitianMatrix> weights =
        matrices_from_json(weights_obj, "atomic ovm weights");
    if (weights.size() != atoms.size()) {
        throw SchemaError("atomic ovm: atoms and weights differ in length");
    }
    return AtomicOVM(std::move(atoms), std::move(weights));
}

json ovm_to_json(const AtomicOVM &e) {
    const bool complex_field = !matrices_all_real(e.weights());
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "atomic_ovm";
    j["dim"] = e.dim();
    j["field"] = complex_field ? "complex" : "real";
    j["atoms"] = e.atoms();
    j["weights"] = matrices_to_json(e.weights(), complex_field);
    return j;
}

json verdict_to_json(const Verdict &v) {
    json j;
    j["check"] = v.check;
    j["pass"] = v.pass;
    j["margins"] = v.margins;
    j["diagnostics"] = v.diagnostics;
    if (!v.parts.empty()) {
        json parts = json::array();
        for (const Verdict &p : v.parts) {
            parts.push_back(verdict_to_json(p));
        }
        j["parts"] = std::move(parts);
    }
    return j;
}

json psd_report_to_json(const PsdReport &r) {
    json j;
    j["is_psd"] = r.is_psd;
    j["min_eigenvalue"] = r.min_eigenvalue;
    j["tolerance_used"] = r.tolerance_used;
    return j;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << hash;
    return out.str();
}

} // namespace ovmkit
