#pragma once

// The block-Toeplitz congruence equation C = F X^T F B X over T^{alpha,mu}
// (plain, complex-alternating, and the structured negative-eigenvalue
// variant), the problems induced by canonical forms, and the isotropy group
// dimension formulas.
//
// Each step solves the linear equations of the underlying derivation
// (A^T Y = B, A^T X + X^T A = B and their conjugate-transpose variants); the
// unknown's right-hand side is read off the assembled partial product, in the
// mandated order: free sub-diagonal data first, then for each coefficient
// index j the diagonal blocks, then the upper off-diagonals by distance p.

#include <map>
#include <optional>
#include <utility>

#include <Eigen/Eigenvalues>

#include "canonical.hpp"
#include "rng.hpp"
#include "toeplitz.hpp"

namespace isotropy {

enum class ProblemFlavor { plain, alternating, vw };

struct CongruenceProblem {
    std::vector<int> alpha;
    std::vector<int> mult;  // coefficient sizes; for vw these are even (paired)
    ProblemFlavor flavor = ProblemFlavor::plain;
    bool real_solutions = false;  // plain flavor restricted to real families
    double mu = 0.0;              // vw only
    std::vector<std::vector<CMatrix>> B, C;  // [r][n], n < alpha[r], symmetric

    int blocks() const { return static_cast<int>(alpha.size()); }

    void validate() const {
        const int N = blocks();
        if (N == 0 || mult.size() != size_t(N) || B.size() != size_t(N) || C.size() != size_t(N))
            throw std::invalid_argument("problem: inconsistent block data");
        for (int r = 0; r < N; ++r) {
            if (alpha[r] < 1 || (r + 1 < N && alpha[r] <= alpha[r + 1]))
                throw std::invalid_argument("problem: alpha must be strictly decreasing");
            if (B[r].size() != size_t(alpha[r]) || C[r].size() != size_t(alpha[r]))
                throw std::invalid_argument("problem: coefficient lists must have alpha_r entries");
            for (const auto* fam : {&B[r], &C[r]})
                for (const CMatrix& c : *fam) {
                    if (c.rows() != mult[r] || c.cols() != mult[r])
                        throw std::invalid_argument("problem: coefficient size mismatch");
                    if (fro_norm(CMatrix(c - c.transpose())) > 1e-9 * (1 + fro_norm(c)))
                        throw std::invalid_argument("problem: coefficients must be symmetric");
                    if (flavor == ProblemFlavor::alternating &&
                        fro_norm(CMatrix(c.imag().cast<Complex>())) > 1e-12 * (1 + fro_norm(c)))
                        throw std::invalid_argument("problem: alternating flavor needs real B, C");
                }
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(Eigen::MatrixXcd(B[r][0]));
            Eigen::FullPivLU<Eigen::MatrixXcd> lc(Eigen::MatrixXcd(C[r][0]));
            if (!lu.isInvertible() || !lc.isInvertible())
                throw std::invalid_argument("problem: B_0, C_0 must be nonsingular");
            if (flavor == ProblemFlavor::vw && mult[r] % 2 != 0)
                throw std::invalid_argument("problem: vw flavor needs even coefficient sizes");
        }
        if (flavor == ProblemFlavor::vw && !(mu > 0))
            throw std::invalid_argument("problem: vw flavor needs mu > 0");
    }

    Flavor family_flavor() const {
        return flavor == ProblemFlavor::alternating ? Flavor::alternating : Flavor::plain;
    }
};

// --- structured-shape helpers for the vw flavor --------------------------

// [[V, W], [-mu^2 conj(W) + corr, conj(V)]]
inline CMatrix vw_make(const CMatrix& v, const CMatrix& w, double mu, const CMatrix* wprev) {
    const Index m = v.rows(), n = v.cols();
    CMatrix a = CMatrix::Zero(2 * m, 2 * n);
    a.block(0, 0, m, n) = v;
    a.block(0, n, m, n) = w;
    a.block(m, 0, m, n) = -mu * mu * w.conjugate();
    if (wprev) a.block(m, 0, m, n) += wprev->conjugate();
    a.block(m, n, m, n) = v.conjugate();
    return a;
}

inline void vw_split(const CMatrix& a, CMatrix& v, CMatrix& w) {
    const Index m = a.rows() / 2, n = a.cols() / 2;
    v = a.block(0, 0, m, n);
    w = a.block(0, n, m, n);
}

// checks the chained (Trsvw0) shape of a coefficient run A_0, ..., A_{b-1}
inline double vw_chain_error(const std::vector<CMatrix>& coeffs, double mu) {
    double err = 0.0;
    CMatrix wprev;
    for (size_t n = 0; n < coeffs.size(); ++n) {
        CMatrix v, w;
        vw_split(coeffs[n], v, w);
        CMatrix want = vw_make(v, w, mu, n == 0 ? nullptr : &wprev);
        err = std::max(err, fro_norm(CMatrix(coeffs[n] - want)));
        wprev = w;
    }
    return err;
}

// the free Z for a vw diagonal step: [[-mu^2 V, W],[conj W, conj V]] with
// V skew-symmetric and W skew-Hermitian (skew-symmetric as a whole)
inline CMatrix vw_z_make(const CMatrix& v, const CMatrix& w, double mu) {
    const Index m = v.rows();
    CMatrix z = CMatrix::Zero(2 * m, 2 * m);
    z.block(0, 0, m, m) = -mu * mu * v;
    z.block(0, m, m, m) = w;
    z.block(m, 0, m, m) = w.conjugate();
    z.block(m, m, m, m) = v.conjugate();
    return z;
}

inline bool is_skew_symmetric(const CMatrix& m, double tol) {
    return fro_norm(CMatrix(m + m.transpose())) <= tol * (1 + fro_norm(m));
}

inline bool is_skew_hermitian(const CMatrix& m, double tol) {
    return fro_norm(CMatrix(m + m.adjoint())) <= tol * (1 + fro_norm(m));
}

inline bool is_vw_z(const CMatrix& z, double mu, double tol) {
    const Index m = z.rows() / 2;
    if (z.rows() != z.cols() || z.rows() % 2 != 0) return false;
    CMatrix tl = z.block(0, 0, m, m), tr = z.block(0, m, m, m);
    CMatrix bl = z.block(m, 0, m, m), br = z.block(m, m, m, m);
    double scale = 1 + fro_norm(z);
    return is_skew_symmetric(tl, tol) && is_skew_hermitian(tr, tol) &&
           fro_norm(CMatrix(bl - tr.conjugate())) <= tol * scale &&
           fro_norm(CMatrix(br - tl.conjugate() / (-mu * mu))) <= tol * scale;
}

enum class ZSym { skew_symmetric, skew_hermitian, vw_structured };

inline ZSym z_symmetry(ProblemFlavor flavor, int alpha_r, int j) {
    switch (flavor) {
        case ProblemFlavor::plain: return ZSym::skew_symmetric;
        case ProblemFlavor::alternating:
            return (alpha_r - j) % 2 == 0 ? ZSym::skew_hermitian : ZSym::skew_symmetric;
        case ProblemFlavor::vw: return ZSym::vw_structured;
    }
    return ZSym::skew_symmetric;
}

// --- free parameters ------------------------------------------------------

struct FreeParameters {
    std::vector<CMatrix> a0;                              // per r
    std::map<std::pair<int, int>, std::vector<CMatrix>> sub;  // (r,s), r > s: b_rs coefficients
    std::map<std::pair<int, int>, CMatrix> z;             // (r,j), 1 <= j < alpha_r

    static FreeParameters identity(const CongruenceProblem& pb) {
        FreeParameters p;
        const int N = pb.blocks();
        for (int r = 0; r < N; ++r) p.a0.push_back(isotropy::identity(pb.mult[r]));
        for (int r = 0; r < N; ++r)
            for (int s = 0; s < r; ++s)
                p.sub[{r, s}] = std::vector<CMatrix>(std::min(pb.alpha[r], pb.alpha[s]),
                                                     czero(pb.mult[r], pb.mult[s]));
        for (int r = 0; r < N; ++r)
            for (int j = 1; j < pb.alpha[r]; ++j)
                p.z[{r, j}] = czero(pb.mult[r], pb.mult[r]);
        return p;
    }
};

// A stabilizer element of the base form: A^T B0 A = B0 (transpose case),
// A^* B0 A = B0 (star case), or the vw-shaped variant. Built as exp of the
// matching algebra element B0^{-1} S.
enum class BaseGroup { orthogonal_t, unitary_star, vw_shaped };

inline CMatrix sample_stabilizer(const CMatrix& b0, BaseGroup g, bool real_only, double mu,
                                 Rng& rng) {
    const Index m = b0.rows();
    switch (g) {
        case BaseGroup::orthogonal_t: {
            CMatrix s = 0.5 * rng.skew_symmetric(m, real_only);
            return expm(solve(b0, s));
        }
        case BaseGroup::unitary_star: {
            CMatrix s = 0.5 * rng.skew_hermitian(m);
            return expm(solve(b0, s));
        }
        case BaseGroup::vw_shaped: {
            const Index mh = m / 2;
            CMatrix v = 0.5 * rng.skew_symmetric(mh);
            CMatrix w = 0.5 * rng.skew_hermitian(mh);
            return expm(vw_make(v, w, mu, nullptr));
        }
    }
    return identity(m);
}

inline BaseGroup base_group(const CongruenceProblem& pb, int r) {
    switch (pb.flavor) {
        case ProblemFlavor::plain: return BaseGroup::orthogonal_t;
        case ProblemFlavor::alternating:
            return pb.alpha[r] % 2 == 1 ? BaseGroup::orthogonal_t : BaseGroup::unitary_star;
        case ProblemFlavor::vw: return BaseGroup::vw_shaped;
    }
    return BaseGroup::orthogonal_t;
}

inline CMatrix random_z(const CongruenceProblem& pb, int r, int j, Rng& rng) {
    const Index m = pb.mult[r];
    switch (z_symmetry(pb.flavor, pb.alpha[r], j)) {
        case ZSym::skew_symmetric: return rng.skew_symmetric(m, pb.real_solutions);
        case ZSym::skew_hermitian: return rng.skew_hermitian(m);
        case ZSym::vw_structured:
            return vw_z_make(rng.skew_symmetric(m / 2), rng.skew_hermitian(m / 2), pb.mu);
    }
    return czero(m, m);
}

inline std::vector<CMatrix> random_sub_block(const CongruenceProblem& pb, int r, int s, Rng& rng) {
    const int b = std::min(pb.alpha[r], pb.alpha[s]);
    std::vector<CMatrix> out;
    out.reserve(b);
    if (pb.flavor == ProblemFlavor::vw) {
        const Index mr = pb.mult[r] / 2, ms = pb.mult[s] / 2;
        CMatrix wprev;
        for (int n = 0; n < b; ++n) {
            CMatrix v = rng.complex_matrix(mr, ms), w = rng.complex_matrix(mr, ms);
            out.push_back(vw_make(v, w, pb.mu, n == 0 ? nullptr : &wprev));
            wprev = w;
        }
    } else {
        for (int n = 0; n < b; ++n)
            out.push_back(pb.real_solutions ? rng.real_matrix(pb.mult[r], pb.mult[s])
                                            : rng.complex_matrix(pb.mult[r], pb.mult[s]));
    }
    return out;
}

// Random free parameters around per-block base solutions. When no bases are
// given, C_0 = B_0 is required and the base group itself is sampled.
inline FreeParameters random_parameters(const CongruenceProblem& pb, Rng& rng,
                                        const std::vector<CMatrix>* bases = nullptr) {
    FreeParameters p;
    const int N = pb.blocks();
    for (int r = 0; r < N; ++r) {
        CMatrix g = sample_stabilizer(pb.B[r][0], base_group(pb, r),
                                      pb.real_solutions, pb.mu, rng);
        if (bases) {
            p.a0.push_back(CMatrix(g * (*bases)[r]));
        } else {
            if (fro_norm(CMatrix(pb.B[r][0] - pb.C[r][0])) >
                1e-10 * (1 + fro_norm(pb.B[r][0])))
                throw std::invalid_argument(
                    "random_parameters: need explicit bases when C_0 != B_0");
            p.a0.push_back(g);
        }
    }
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < r; ++s) p.sub[{r, s}] = random_sub_block(pb, r, s, rng);
    for (int r = 0; r < N; ++r)
        for (int j = 1; j < pb.alpha[r]; ++j) p.z[{r, j}] = random_z(pb, r, j, rng);
    return p;
}

// --- dimensions -----------------------------------------------------------

// Real dimension of the solution set of C = F X^T F B X for the given flavor.
// Sub-diagonal blocks carry b_rs = min(alpha_r, alpha_s) free coefficients.
inline int solution_dimension(const CongruenceProblem& pb) {
    const int N = pb.blocks();
    int total = 0;
    for (int r = 0; r < N; ++r) {
        const int a = pb.alpha[r];
        switch (pb.flavor) {
            case ProblemFlavor::plain: {
                const int m = pb.mult[r];
                int per = m * (m - 1) / 2;
                if (!pb.real_solutions) per *= 2;
                total += a * per;
                for (int s = 0; s < r; ++s)
                    total += (pb.real_solutions ? 1 : 2) * a * m * pb.mult[s];
                break;
            }
            case ProblemFlavor::alternating: {
                const int m = pb.mult[r];
                total += (a % 2 == 1) ? m * (m - 1) : m * m;  // base block
                for (int j = 1; j < a; ++j)
                    total += ((a - j) % 2 == 0) ? m * m : m * (m - 1);
                for (int s = 0; s < r; ++s) total += 2 * a * m * pb.mult[s];
                break;
            }
            case ProblemFlavor::vw: {
                const int m = pb.mult[r] / 2;
                total += a * m * (2 * m - 1);
                for (int s = 0; s < r; ++s) total += 4 * a * m * (pb.mult[s] / 2);
                break;
            }
        }
    }
    return total;
}

// Real dimension of the isotropy group of the canonical form.
inline int dimension(const CanonicalSpec& spec) {
    spec.validate();
    const int N = spec.blocks();
    auto cross = [&](int r) {  // sum over s < r of b_rs * m_s with b_rs = alpha_r
        int c = 0;
        for (int s = 0; s < r; ++s) c += spec.alpha[r] * spec.mult[s];
        return c;
    };
    int total = 0;
    for (int r = 0; r < N; ++r) {
        const int a = spec.alpha[r], m = spec.mult[r];
        switch (spec.eigen.kind) {
            case EigenKind::positive_real:
                total += a * m * (m - 1) / 2 + m * cross(r);
                break;
            case EigenKind::zero:
                total += a * m * m + 2 * m * cross(r);
                total -= (a % 2 == 0) ? (a / 2) * m : ((a + 1) / 2) * m;
                break;
            case EigenKind::negative_real:
                total += a * m * (2 * m - 1) + 4 * m * cross(r);
                break;
            case EigenKind::non_real:
                total += a * m * (m - 1) + 2 * m * cross(r);
                break;
        }
    }
    return total;
}

// --- scratch tables (plain flavor), used as independent cross-checks -------

namespace work {

// Phi_n^{ks} = sum_l B_{n-l}^k A_l^{ks}; coefficients beyond their range are zero.
inline CMatrix phi(const CongruenceProblem& pb, const ToeplitzFamily& fam, int k, int s, int n) {
    CMatrix out = czero(pb.mult[k], pb.mult[s]);
    const int b = std::min(pb.alpha[k], pb.alpha[s]);
    for (int l = 0; l <= n; ++l) {
        if (n - l >= pb.alpha[k] || l >= b) continue;
        out += CMatrix(pb.B[k][n - l] * fam.at(k, s, l));
    }
    return out;
}

// Psi_n^{krs} = sum_i (A_i^{kr})^T Phi_{n-i}^{ks}, zero for n < 0.
inline CMatrix psi(const CongruenceProblem& pb, const ToeplitzFamily& fam, int k, int r, int s,
                   int n) {
    CMatrix out = czero(pb.mult[r], pb.mult[s]);
    if (n < 0) return out;
    const int bkr = std::min(pb.alpha[k], pb.alpha[r]);
    for (int i = 0; i <= n && i < bkr; ++i)
        out += CMatrix(fam.at(k, r, i).transpose() * phi(pb, fam, k, s, n - i));
    return out;
}

}  // namespace work

// --- the solver -----------------------------------------------------------

struct SolveOutcome {
    enum class Status { ok, unsolvable };
    Status status = Status::ok;
    ToeplitzFamily family;
    std::string diagnostic;
    double residual = 0.0;  // ||F X^T F B X - C||_F of the returned family
};

namespace detail_cong {

inline CMatrix problem_b_matrix(const CongruenceProblem& pb) {
    std::vector<CMatrix> blocks;
    for (int r = 0; r < pb.blocks(); ++r) blocks.push_back(toeplitz(pb.B[r]));
    return direct_sum(blocks);
}

inline CMatrix problem_c_matrix(const CongruenceProblem& pb) {
    std::vector<CMatrix> blocks;
    for (int r = 0; r < pb.blocks(); ++r) blocks.push_back(toeplitz(pb.C[r]));
    return direct_sum(blocks);
}

inline CMatrix problem_f_matrix(const CongruenceProblem& pb) {
    std::vector<CMatrix> blocks;
    for (int r = 0; r < pb.blocks(); ++r)
        blocks.push_back(block_backward_identity(pb.alpha[r], pb.mult[r]));
    return direct_sum(blocks);
}

struct Engine {
    const CongruenceProblem& pb;
    ToeplitzFamily fam;
    CMatrix f, bmat;
    std::vector<Index> off;

    explicit Engine(const CongruenceProblem& pb_)
        : pb(pb_), fam(ToeplitzFamily::zero(pb_.alpha, pb_.mult, pb_.family_flavor())),
          f(problem_f_matrix(pb_)), bmat(problem_b_matrix(pb_)) {
        off.assign(pb.blocks() + 1, 0);
        for (int r = 0; r < pb.blocks(); ++r)
            off[r + 1] = off[r] + Index(pb.alpha[r]) * pb.mult[r];
    }

    CMatrix product() const {
        CMatrix x = assemble(fam);
        return CMatrix(f * x.transpose() * f * bmat * x);
    }

    // first block row of block (r,s), coefficient column j (s >= r, no padding)
    CMatrix entry(const CMatrix& m, int r, int s, int j) const {
        return m.block(off[r], off[s] + Index(j) * pb.mult[s], pb.mult[r], pb.mult[s]);
    }
};

inline const char* zsym_name(ZSym z) {
    switch (z) {
        case ZSym::skew_symmetric: return "skew-symmetric";
        case ZSym::skew_hermitian: return "skew-Hermitian";
        case ZSym::vw_structured: return "vw-structured skew";
    }
    return "";
}

inline void validate_parameters(const CongruenceProblem& pb, const FreeParameters& params) {
    const int N = pb.blocks();
    if (params.a0.size() != size_t(N))
        throw std::invalid_argument("params: need one base block per r");
    const double sym_tol = 1e-9;
    for (int r = 0; r < N; ++r) {
        const CMatrix& a0 = params.a0[r];
        if (a0.rows() != pb.mult[r] || a0.cols() != pb.mult[r])
            throw std::invalid_argument("params: base block size mismatch");
        bool star = pb.flavor == ProblemFlavor::alternating && pb.alpha[r] % 2 == 0;
        CMatrix lhs = star ? CMatrix(a0.adjoint() * pb.B[r][0] * a0)
                           : CMatrix(a0.transpose() * pb.B[r][0] * a0);
        if (fro_norm(CMatrix(lhs - pb.C[r][0])) > 1e-9 * (1 + fro_norm(pb.C[r][0])))
            throw std::invalid_argument("params: base block violates the base equation");
        if (pb.flavor == ProblemFlavor::vw) {
            std::vector<CMatrix> one = {a0};
            if (vw_chain_error(one, pb.mu) > sym_tol * (1 + fro_norm(a0)))
                throw std::invalid_argument("params: base block violates the paired shape");
        }
        if (pb.real_solutions && fro_norm(CMatrix(a0.imag().cast<Complex>())) >
                                     1e-12 * (1 + fro_norm(a0)))
            throw std::invalid_argument("params: real problem needs real base blocks");
    }
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < r; ++s) {
            auto it = params.sub.find({r, s});
            const int b = std::min(pb.alpha[r], pb.alpha[s]);
            if (it == params.sub.end() || it->second.size() != size_t(b))
                throw std::invalid_argument("params: missing sub-diagonal coefficients");
            for (const CMatrix& c : it->second) {
                if (c.rows() != pb.mult[r] || c.cols() != pb.mult[s])
                    throw std::invalid_argument("params: sub-diagonal size mismatch");
                if (pb.real_solutions && fro_norm(CMatrix(c.imag().cast<Complex>())) >
                                             1e-12 * (1 + fro_norm(c)))
                    throw std::invalid_argument("params: real problem needs real data");
            }
            if (pb.flavor == ProblemFlavor::vw &&
                vw_chain_error(it->second, pb.mu) > sym_tol)
                throw std::invalid_argument("params: sub-diagonal block violates the paired shape");
        }
    for (int r = 0; r < N; ++r)
        for (int j = 1; j < pb.alpha[r]; ++j) {
            auto it = params.z.find({r, j});
            if (it == params.z.end())
                throw std::invalid_argument("params: missing Z block");
            const CMatrix& zm = it->second;
            if (zm.rows() != pb.mult[r] || zm.cols() != pb.mult[r])
                throw std::invalid_argument("params: Z size mismatch");
            ZSym sym = z_symmetry(pb.flavor, pb.alpha[r], j);
            bool ok = sym == ZSym::skew_symmetric   ? is_skew_symmetric(zm, sym_tol)
                      : sym == ZSym::skew_hermitian ? is_skew_hermitian(zm, sym_tol)
                                                    : is_vw_z(zm, pb.mu, sym_tol);
            if (!ok)
                throw std::invalid_argument(std::string("params: Z block must be ") +
                                            zsym_name(sym));
            if (pb.real_solutions && fro_norm(CMatrix(zm.imag().cast<Complex>())) >
                                         1e-12 * (1 + fro_norm(zm)))
                throw std::invalid_argument("params: real problem needs real Z");
        }
}

inline std::pair<int, int> real_inertia(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(RMatrix(m.real()), Eigen::EigenvaluesOnly);
    int pos = 0, neg = 0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) > 0) ++pos;
        else ++neg;
    }
    return {pos, neg};
}

inline SolveOutcome run_solver(const CongruenceProblem& pb, const FreeParameters& params) {
    pb.validate();

    if (pb.flavor == ProblemFlavor::alternating)
        for (int r = 0; r < pb.blocks(); ++r)
            if (pb.alpha[r] % 2 == 0 && real_inertia(pb.B[r][0]) != real_inertia(pb.C[r][0])) {
                SolveOutcome out;
                out.status = SolveOutcome::Status::unsolvable;
                out.diagnostic = "B_0 and C_0 have different inertia at even block " +
                                 std::to_string(r + 1);
                return out;
            }

    validate_parameters(pb, params);

    Engine eng(pb);
    const int N = pb.blocks();
    for (int r = 0; r < N; ++r) eng.fam.at(r, r, 0) = params.a0[r];
    for (const auto& [key, coeffs] : params.sub)
        for (size_t n = 0; n < coeffs.size(); ++n)
            eng.fam.at(key.first, key.second, static_cast<int>(n)) = coeffs[n];

    // G^{-1} = A_0 C_0^{-1} for every case of the base equation
    std::vector<CMatrix> ginv;
    for (int r = 0; r < N; ++r) {
        CMatrix c0i = inverse(pb.C[r][0]);
        ginv.push_back(CMatrix(params.a0[r] * c0i));
    }

    for (int j = 0; j < pb.alpha[0]; ++j) {
        if (j >= 1) {
            bool any = false;
            for (int r = 0; r < N; ++r) any = any || (j <= pb.alpha[r] - 1);
            if (any) {
                CMatrix m = eng.product();
                for (int r = 0; r < N; ++r) {
                    if (j > pb.alpha[r] - 1) continue;
                    CMatrix rhs = CMatrix(pb.C[r][j] - eng.entry(m, r, r, j));
                    const CMatrix& z = params.z.at({r, j});
                    CMatrix fj = czero(pb.mult[r], pb.mult[r]);
                    if (pb.flavor == ProblemFlavor::vw) {
                        // solve in the shape-pure gauge: the chained correction
                        // from the previous coefficient is a known summand
                        const Index mh = pb.mult[r] / 2;
                        CMatrix vprev, wprev;
                        vw_split(eng.fam.at(r, r, j - 1), vprev, wprev);
                        fj.block(mh, 0, mh, mh) = wprev.conjugate();
                        CMatrix s = CMatrix(params.a0[r].transpose() * pb.B[r][0] * fj);
                        rhs -= CMatrix(s + s.transpose());
                    }
                    // the step equation is solvable for symmetric (Hermitian) rhs
                    bool herm = pb.flavor == ProblemFlavor::alternating &&
                                (pb.alpha[r] - j) % 2 == 0;
                    double asym = herm ? fro_norm(CMatrix(rhs - rhs.adjoint()))
                                       : fro_norm(CMatrix(rhs - rhs.transpose()));
                    if (asym > 1e-6 * (1 + fro_norm(rhs)))
                        throw std::logic_error("solver: step right-hand side lost symmetry");
                    eng.fam.at(r, r, j) = CMatrix(CMatrix(ginv[r] * (0.5 * rhs + z)) + fj);
                }
            }
        }
        for (int p = 1; p < N; ++p) {
            bool any = false;
            for (int r = 0; r + p < N; ++r) any = any || (j <= pb.alpha[r + p] - 1);
            if (!any) continue;
            CMatrix m = eng.product();
            for (int r = 0; r + p < N; ++r) {
                if (j > pb.alpha[r + p] - 1) continue;
                CMatrix e0 = eng.entry(m, r, r + p, j);
                eng.fam.at(r, r + p, j) = CMatrix(-ginv[r] * e0);
            }
        }
    }

    SolveOutcome out;
    out.family = eng.fam;
    CMatrix cmat = problem_c_matrix(pb);
    out.residual = fro_norm(CMatrix(eng.product() - cmat));
    return out;
}

}  // namespace detail_cong

inline SolveOutcome solve_congruence(const CongruenceProblem& pb, const FreeParameters& params) {
    if (pb.flavor != ProblemFlavor::plain)
        throw std::invalid_argument("solve_congruence: plain-flavor problems only");
    return detail_cong::run_solver(pb, params);
}

inline SolveOutcome solve_congruence_alternating(const CongruenceProblem& pb,
                                                 const FreeParameters& params) {
    if (pb.flavor != ProblemFlavor::alternating)
        throw std::invalid_argument("solve_congruence_alternating: alternating problems only");
    return detail_cong::run_solver(pb, params);
}

inline SolveOutcome solve_congruence_vw(const CongruenceProblem& pb,
                                        const FreeParameters& params) {
    if (pb.flavor != ProblemFlavor::vw)
        throw std::invalid_argument("solve_congruence_vw: vw problems only");
    return detail_cong::run_solver(pb, params);
}

// residual of a candidate family against the problem
inline double congruence_residual(const CongruenceProblem& pb, const ToeplitzFamily& fam) {
    CMatrix x = assemble(fam);
    CMatrix f = detail_cong::problem_f_matrix(pb);
    CMatrix lhs = CMatrix(f * x.transpose() * f * detail_cong::problem_b_matrix(pb) * x);
    return fro_norm(CMatrix(lhs - detail_cong::problem_c_matrix(pb)));
}

// --- problems induced by canonical forms -----------------------------------

inline CongruenceProblem derive_problem(const CanonicalSpec& spec) {
    spec.validate();
    CongruenceProblem pb;
    pb.alpha = spec.alpha;
    const int N = spec.blocks();
    switch (spec.eigen.kind) {
        case EigenKind::positive_real:
        case EigenKind::zero: {
            pb.flavor = spec.eigen.kind == EigenKind::positive_real ? ProblemFlavor::plain
                                                                    : ProblemFlavor::alternating;
            pb.real_solutions = spec.eigen.kind == EigenKind::positive_real;
            pb.mult = spec.mult;
            for (int r = 0; r < N; ++r) {
                CMatrix b0 = czero(spec.mult[r], spec.mult[r]);
                for (int j = 0; j < spec.mult[r]; ++j) b0(j, j) = double(spec.eps[r][j]);
                std::vector<CMatrix> coeffs(spec.alpha[r], czero(spec.mult[r], spec.mult[r]));
                coeffs[0] = b0;
                pb.B.push_back(coeffs);
                pb.C.push_back(coeffs);
            }
            break;
        }
        case EigenKind::non_real: {
            pb.flavor = ProblemFlavor::plain;
            pb.mult = spec.mult;
            for (int r = 0; r < N; ++r) {
                std::vector<CMatrix> coeffs(spec.alpha[r], czero(spec.mult[r], spec.mult[r]));
                coeffs[0] = identity(spec.mult[r]);
                pb.B.push_back(coeffs);
                pb.C.push_back(coeffs);
            }
            break;
        }
        case EigenKind::negative_real: {
            pb.flavor = ProblemFlavor::vw;
            pb.mu = spec.eigen.mu;
            for (int r = 0; r < N; ++r) pb.mult.push_back(2 * spec.mult[r]);

            TransformKit kit = transform_kit(spec);
            CMatrix vbar = kit.V.conjugate();
            CMatrix big = CMatrix(Complex(0, -1) * kit.E * kit.S.transpose() * vbar * kit.E *
                                  vbar * kit.S);
            CMatrix grouped = CMatrix(kit.omega.transpose() * big * kit.omega);
            ToeplitzFamily bf = extract(pb.alpha, pb.mult, Flavor::plain, grouped, 1e-8);
            for (int r = 0; r < N; ++r)
                for (int s = 0; s < N; ++s)
                    if (r != s)
                        for (int n = 0; n < bf.brs(r, s); ++n)
                            if (fro_norm(bf.at(r, s, n)) > 1e-8)
                                throw std::logic_error("derive_problem: induced form not diagonal");
            for (int r = 0; r < N; ++r) {
                const int m = spec.mult[r];
                std::vector<CMatrix> coeffs;
                double uprev = 0.0;
                for (int n = 0; n < spec.alpha[r]; ++n) {
                    CMatrix raw = bf.at(r, r, n);
                    double un = raw(m, m).real();
                    // clean reconstruction u_n K_r + u_{n-1} L_r
                    CMatrix want = czero(2 * m, 2 * m);
                    want.block(0, 0, m, m) = (-pb.mu * pb.mu * un + uprev) * identity(m);
                    want.block(m, m, m, m) = un * identity(m);
                    if (fro_norm(CMatrix(raw - want)) > 1e-8 * (1 + fro_norm(raw)))
                        throw std::logic_error("derive_problem: induced form is not u_n K + u_{n-1} L");
                    coeffs.push_back(want);
                    uprev = un;
                }
                pb.B.push_back(coeffs);
                pb.C.push_back(coeffs);
            }
            break;
        }
    }
    pb.validate();
    return pb;
}

}  // namespace isotropy
