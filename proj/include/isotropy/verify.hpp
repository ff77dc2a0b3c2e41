#pragma once

// Independent brute-force checks: the tangent-space dimension oracle, residual
// reports for candidate isotropy elements and congruence solutions, the
// unipotency order, and additivity over direct sums with distinct eigenvalues.

#include <optional>

#include "congruence.hpp"

namespace isotropy {

struct VerificationReport {
    double residual_orth = 0.0;
    double residual_consim = 0.0;
    double residual_cong = 0.0;
    double threshold_orth = 0.0;
    double threshold_consim = 0.0;
    double threshold_cong = 0.0;
    int tangent_dim_oracle = -1;  // -1: not computed
    int formula_dim = -1;
    std::optional<int> nilpotency_order;
    bool pass = false;
};

// real basis of complex skew-symmetric matrices: pairs (j < k) with real and
// imaginary unit entries, lexicographic
inline std::vector<CMatrix> skew_symmetric_basis(Index n) {
    std::vector<CMatrix> basis;
    basis.reserve(size_t(n) * (n - 1));
    for (Index j = 0; j < n; ++j)
        for (Index k = j + 1; k < n; ++k)
            for (Complex c : {Complex(1, 0), Complex(0, 1)}) {
                CMatrix z = czero(n, n);
                z(j, k) = c;
                z(k, j) = -c;
                basis.push_back(z);
            }
    return basis;
}

// dim_R of the isotropy group at Hermitian h: real nullity of
// Z -> h Z - conj(Z) h on complex skew-symmetric Z
inline int tangent_dimension(const CMatrix& h, double cutoff = 1e-8) {
    if (h.rows() != h.cols()) throw std::invalid_argument("tangent_dimension: not square");
    if (fro_norm(CMatrix(h - h.adjoint())) > 1e-10 * (1 + fro_norm(h)))
        throw std::invalid_argument("tangent_dimension: input not Hermitian");
    auto op = [&](const CMatrix& z) { return CMatrix(h * z - z.conjugate() * h); };
    return real_linearize_nullity(op, skew_symmetric_basis(h.rows()), cutoff);
}

struct NilpotencyResult {
    bool unipotent = false;
    int order = 0;  // least k with (V - I)^k = 0; 1 for the identity
};

inline NilpotencyResult nilpotency_order(const CMatrix& v, double tol = 1e-10) {
    if (v.rows() != v.cols()) throw std::invalid_argument("nilpotency_order: not square");
    const Index n = v.rows();
    CMatrix d = CMatrix(v - identity(n));
    const double base = 1 + fro_norm(d);
    CMatrix pow = d;
    double scale = base;
    for (int k = 1; k <= n; ++k) {
        if (fro_norm(pow) <= tol * scale) return {true, k};
        pow = CMatrix(pow * d);
        scale *= base;
    }
    return {false, 0};
}

inline VerificationReport verify_element(const CanonicalSpec& spec, const CMatrix& q,
                                         double tol = 1e-8, bool with_oracle = false) {
    spec.validate();
    CMatrix h = canonical_form(spec);
    if (q.rows() != h.rows() || q.cols() != h.cols())
        throw std::invalid_argument("verify_element: shape mismatch");
    const double n = double(h.rows());
    VerificationReport rep;
    rep.residual_orth = fro_norm(CMatrix(q.transpose() * q - identity(h.rows())));
    // membership-oriented consimilarity identity: H Q = conj(Q) H; together
    // with orthogonality it forces Q^* H Q = Q^* conj(Q) H = H
    rep.residual_consim = fro_norm(CMatrix(h * q - q.conjugate() * h));
    rep.residual_cong = fro_norm(CMatrix(q.adjoint() * h * q - h));
    rep.threshold_orth = tol * n;
    rep.threshold_consim = tol * (1 + fro_norm(h));
    rep.threshold_cong = tol * (1 + fro_norm(h));
    rep.pass = rep.residual_orth <= rep.threshold_orth &&
               rep.residual_consim <= rep.threshold_consim &&
               rep.residual_cong <= rep.threshold_cong;
    if (with_oracle) {
        rep.tangent_dim_oracle = tangent_dimension(h);
        rep.formula_dim = dimension(spec);
        rep.pass = rep.pass && rep.tangent_dim_oracle == rep.formula_dim;
        NilpotencyResult nil = nilpotency_order(q);
        if (nil.unipotent) rep.nilpotency_order = nil.order;
    }
    return rep;
}

inline VerificationReport verify_family(const CongruenceProblem& pb, const ToeplitzFamily& fam,
                                        double tol = 1e-8) {
    pb.validate();
    VerificationReport rep;
    rep.residual_cong = congruence_residual(pb, fam);
    rep.threshold_cong =
        tol * (1 + fro_norm(detail_cong::problem_c_matrix(pb)));
    rep.pass = rep.residual_cong <= rep.threshold_cong;
    return rep;
}

// Proposition-level check: over pairwise distinct eigenvalues the tangent
// dimension of the direct sum is the sum of the parts.
inline bool splitting_check(const std::vector<CanonicalSpec>& specs, double cutoff = 1e-8) {
    if (specs.empty()) throw std::invalid_argument("splitting_check: empty list");
    for (size_t i = 0; i < specs.size(); ++i) {
        specs[i].validate();
        for (size_t j = i + 1; j < specs.size(); ++j)
            if (std::abs(specs[i].eigen.rho() - specs[j].eigen.rho()) < 1e-12)
                throw std::invalid_argument("splitting_check: eigenvalue collision");
    }
    std::vector<CMatrix> parts;
    int sum = 0;
    for (const auto& s : specs) {
        CMatrix h = canonical_form(s);
        sum += tangent_dimension(h, cutoff);
        parts.push_back(h);
    }
    return tangent_dimension(direct_sum(parts), cutoff) == sum;
}

}  // namespace isotropy
