#pragma once

// JSON round-trips for the CLI: complex scalars as [re, im], matrices as
// nested row-major arrays, specs and parameters as tagged objects.

#include <json.hpp>

#include "generators.hpp"

namespace isotropy {

using json = nlohmann::ordered_json;

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("expected a complex scalar as [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

inline json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a matrix as nested arrays");
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<Index>(j[r].size()) != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

inline json spec_to_json(const CanonicalSpec& spec) {
    json eigen;
    switch (spec.eigen.kind) {
        case EigenKind::positive_real:
            eigen = {{"class", "positive_real"}, {"lambda", spec.eigen.lambda}};
            break;
        case EigenKind::zero:
            eigen = {{"class", "zero"}};
            break;
        case EigenKind::negative_real:
            eigen = {{"class", "negative_real"}, {"mu", spec.eigen.mu}};
            break;
        case EigenKind::non_real:
            eigen = {{"class", "non_real"}, {"xi", complex_to_json(spec.eigen.xi)}};
            break;
    }
    json out = {{"eigen", std::move(eigen)}, {"alpha", spec.alpha}, {"mu", spec.mult}};
    if (spec.has_signs()) out["eps"] = spec.eps;
    return out;
}

inline CanonicalSpec spec_from_json(const json& j) {
    CanonicalSpec spec;
    if (!j.contains("eigen") || !j["eigen"].contains("class"))
        throw std::invalid_argument("spec: missing eigen class");
    const json& e = j["eigen"];
    std::string cls = e["class"].get<std::string>();
    if (cls == "positive_real")
        spec.eigen = EigenClass::positive_real(e.at("lambda").get<double>());
    else if (cls == "zero")
        spec.eigen = EigenClass::zero_class();
    else if (cls == "negative_real")
        spec.eigen = EigenClass::negative_real(e.at("mu").get<double>());
    else if (cls == "non_real") {
        if (e.contains("xi"))
            spec.eigen = EigenClass::non_real(complex_from_json(e["xi"]));
        else if (e.contains("rho"))
            spec.eigen = EigenClass::non_real_from_rho(complex_from_json(e["rho"]));
        else
            throw std::invalid_argument("spec: non_real needs xi or rho");
    } else
        throw std::invalid_argument("spec: unknown eigen class " + cls);
    spec.alpha = j.at("alpha").get<std::vector<int>>();
    spec.mult = j.at("mu").get<std::vector<int>>();
    if (spec.has_signs()) {
        if (j.contains("eps"))
            spec.eps = j["eps"].get<std::vector<std::vector<int>>>();
        else
            for (int m : spec.mult) spec.eps.push_back(std::vector<int>(m, 1));
    }
    spec.validate();
    return spec;
}

inline json params_to_json(const FreeParameters& p) {
    json out;
    out["a0"] = json::array();
    for (const auto& a : p.a0) out["a0"].push_back(matrix_to_json(a));
    out["sub"] = json::array();
    for (const auto& [key, coeffs] : p.sub) {
        json entry = {{"r", key.first + 1}, {"s", key.second + 1}, {"coeffs", json::array()}};
        for (const auto& c : coeffs) entry["coeffs"].push_back(matrix_to_json(c));
        out["sub"].push_back(std::move(entry));
    }
    out["z"] = json::array();
    for (const auto& [key, zm] : p.z)
        out["z"].push_back(
            {{"r", key.first + 1}, {"j", key.second}, {"value", matrix_to_json(zm)}});
    return out;
}

inline FreeParameters params_from_json(const CongruenceProblem& pb, const json& j) {
    FreeParameters p = FreeParameters::identity(pb);
    if (j.contains("a0")) {
        const json& a = j["a0"];
        if (a.size() != size_t(pb.blocks()))
            throw std::invalid_argument("params: a0 must list one base block per r");
        p.a0.clear();
        for (const auto& m : a) p.a0.push_back(matrix_from_json(m));
    }
    if (j.contains("sub"))
        for (const auto& entry : j["sub"]) {
            int r = entry.at("r").get<int>() - 1, s = entry.at("s").get<int>() - 1;
            if (r <= s || r >= pb.blocks() || s < 0)
                throw std::invalid_argument("params: sub entries need 1 <= s < r <= N");
            std::vector<CMatrix> coeffs;
            for (const auto& c : entry.at("coeffs")) coeffs.push_back(matrix_from_json(c));
            p.sub[{r, s}] = std::move(coeffs);
        }
    if (j.contains("z"))
        for (const auto& entry : j["z"]) {
            int r = entry.at("r").get<int>() - 1, jj = entry.at("j").get<int>();
            if (r < 0 || r >= pb.blocks() || jj < 1 || jj >= pb.alpha[r])
                throw std::invalid_argument("params: z entries need 1 <= j < alpha_r");
            p.z[{r, jj}] = matrix_from_json(entry.at("value"));
        }
    return p;
}

inline json report_to_json(const VerificationReport& rep) {
    json out = {{"pass", rep.pass},
                {"residual_orth", rep.residual_orth},
                {"residual_consim", rep.residual_consim},
                {"residual_cong", rep.residual_cong},
                {"threshold_orth", rep.threshold_orth},
                {"threshold_consim", rep.threshold_consim},
                {"threshold_cong", rep.threshold_cong}};
    if (rep.tangent_dim_oracle >= 0) {
        out["tangent_dim"] = rep.tangent_dim_oracle;
        out["formula_dim"] = rep.formula_dim;
        out["match"] = rep.tangent_dim_oracle == rep.formula_dim;
    }
    if (rep.nilpotency_order) out["nilpotency_order"] = *rep.nilpotency_order;
    return out;
}

}  // namespace isotropy
