#pragma once

// JSON schemas for bases, states, counts, and reports, plus CSV emission for
// scans. Output is deterministic: fixed key order, pretty-printed, trailing
// newline; floats round-trip losslessly.

#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "entcert/baseline.hpp"
#include "entcert/qcore.hpp"
#include "entcert/witness.hpp"

namespace entcert::io {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaViolation("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols,
                               const std::string& what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
        throw SchemaViolation(what + ": expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
            throw SchemaViolation(what + ": expected " + std::to_string(cols) + " columns");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

// Basis: {dim, label, vectors: [[ [re,im], ... ], ...]}; vectors[a][j] is the
// amplitude <j|e_a>.
inline json basis_to_json(const Basis& b) {
    json out;
    out["dim"] = b.dim();
    out["label"] = b.label;
    json vecs = json::array();
    for (int a = 0; a < b.dim(); ++a) {
        json v = json::array();
        for (int j = 0; j < b.dim(); ++j) v.push_back(to_json(b.vectors(j, a)));
        vecs.push_back(std::move(v));
    }
    out["vectors"] = std::move(vecs);
    return out;
}

inline Basis basis_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("vectors"))
        throw SchemaViolation("basis: missing 'dim' or 'vectors'");
    const int d = j["dim"].get<int>();
    const std::string label = j.value("label", std::string("basis"));
    const Matrix cols = matrix_from_json(j["vectors"], d, d, "basis vectors");
    std::vector<Ket> vecs;
    for (int a = 0; a < d; ++a) vecs.push_back(cols.row(a).transpose());
    return make_basis(vecs, label);
}

// BasisSet: {dim, bases: [...], frame?: [[ [re,im], ... ]]}.
inline json basis_set_to_json(const BasisSet& bs) {
    json out;
    out["dim"] = bs.dim();
    json arr = json::array();
    for (const auto& b : bs.bases) arr.push_back(basis_to_json(b));
    out["bases"] = std::move(arr);
    if (!bs.frame.isIdentity(0.0)) out["frame"] = matrix_to_json(bs.frame);
    return out;
}

inline BasisSet basis_set_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("bases") || !j["bases"].is_array())
        throw SchemaViolation("basis set: missing 'dim' or 'bases'");
    const int d = j["dim"].get<int>();
    std::vector<Basis> bs;
    for (const auto& bj : j["bases"]) {
        bs.push_back(basis_from_json(bj));
        if (bs.back().dim() != d) throw SchemaViolation("basis set: dimension mismatch");
    }
    Matrix frame;
    if (j.contains("frame")) frame = matrix_from_json(j["frame"], d, d, "frame");
    return BasisSet(std::move(bs), std::move(frame));
}

// DensityMatrix: {d, matrix: [[ [re,im], ... ]]}.
inline json density_to_json(const DensityMatrix& rho) {
    json out;
    out["d"] = rho.local_dim;
    out["matrix"] = matrix_to_json(rho.mat);
    return out;
}

inline DensityMatrix density_from_json(const json& j) {
    if (!j.contains("d") || !j.contains("matrix"))
        throw SchemaViolation("state: missing 'd' or 'matrix'");
    const int d = j["d"].get<int>();
    if (d < 2) throw SchemaViolation("state: d must be >= 2");
    const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
    return DensityMatrix(d, matrix_from_json(j["matrix"], n, n, "state matrix"));
}

// Counts: {dim, bases: [label, ...], counts: {label: d x d integer matrix}}.
inline json counts_to_json(const MeasuredCounts& mc) {
    json out;
    out["dim"] = mc.dim;
    out["bases"] = mc.basis_labels;
    json tables;
    for (std::size_t i = 0; i < mc.basis_labels.size(); ++i) {
        json rows = json::array();
        for (int a = 0; a < mc.dim; ++a) {
            json row = json::array();
            for (int b = 0; b < mc.dim; ++b)
                row.push_back(static_cast<std::int64_t>(mc.counts[i](a, b)));
            rows.push_back(std::move(row));
        }
        tables[mc.basis_labels[i]] = std::move(rows);
    }
    out["counts"] = std::move(tables);
    return out;
}

inline MeasuredCounts counts_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("bases") || !j.contains("counts"))
        throw SchemaViolation("counts: missing 'dim', 'bases', or 'counts'");
    const int d = j["dim"].get<int>();
    std::vector<std::string> labels;
    std::vector<Eigen::MatrixXd> tables;
    for (const auto& lj : j["bases"]) {
        const std::string label = lj.get<std::string>();
        if (!j["counts"].contains(label))
            throw SchemaViolation("counts: no table for basis '" + label + "'");
        const json& t = j["counts"][label];
        if (!t.is_array() || static_cast<int>(t.size()) != d)
            throw SchemaViolation("counts: table for '" + label + "' must be d x d");
        Eigen::MatrixXd m(d, d);
        for (int a = 0; a < d; ++a) {
            if (!t[a].is_array() || static_cast<int>(t[a].size()) != d)
                throw SchemaViolation("counts: table for '" + label + "' must be d x d");
            for (int b = 0; b < d; ++b) {
                if (!t[a][b].is_number_integer())
                    throw SchemaViolation("counts: entries must be integers");
                const auto v = t[a][b].get<std::int64_t>();
                if (v < 0) throw NegativeCount("counts: negative entry");
                m(a, b) = static_cast<double>(v);
            }
        }
        labels.push_back(label);
        tables.push_back(std::move(m));
    }
    return MeasuredCounts(d, std::move(labels), std::move(tables));
}

inline json witness_report_to_json(const witness::WitnessReport& r) {
    json out;
    out["S_value"] = r.S_value;
    out["bound_mode"] = r.bound_mode == witness::BoundMode::Tight ? "tight" : "loose";
    out["T_value"] = r.T_value;
    out["bounds"] = r.bounds;
    out["certified_k_lower"] = r.certified_k_lower;
    out["fidelity_lower"] = r.fidelity_lower;
    out["subset"] = r.subset;
    return out;
}

inline witness::WitnessReport witness_report_from_json(const json& j) {
    witness::WitnessReport r;
    r.S_value = j.at("S_value").get<double>();
    r.bound_mode = j.at("bound_mode").get<std::string>() == "tight"
                       ? witness::BoundMode::Tight
                       : witness::BoundMode::Loose;
    r.T_value = j.at("T_value").get<double>();
    r.bounds = j.at("bounds").get<std::vector<double>>();
    r.certified_k_lower = j.at("certified_k_lower").get<int>();
    r.fidelity_lower = j.at("fidelity_lower").get<double>();
    r.subset = j.at("subset").get<std::vector<int>>();
    return r;
}

inline json baseline_report_to_json(const baseline::BaselineReport& r) {
    json out;
    out["M"] = r.M;
    out["lambda"] = std::vector<double>(r.lambda.data(), r.lambda.data() + r.lambda.size());
    out["F1"] = r.F1;
    out["F2_tilde"] = r.F2_tilde;
    out["F_tilde"] = r.F_tilde;
    out["B_tilde_k"] = r.B_tilde_k;
    out["certified_k_lower"] = r.certified_k_lower;
    return out;
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw IoFailure("write failed for '" + path + "'");
}

// CSV with one header row; floats carry 17 significant digits.
inline void save_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot write '" + path + "'");
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "");
    out << '\n';
    char buf[40];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << buf << (i + 1 < row.size() ? "," : "");
        }
        out << '\n';
    }
    if (!out) throw IoFailure("write failed for '" + path + "'");
}

}  // namespace entcert::io
