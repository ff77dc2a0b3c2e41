#pragma once

// Block upper triangular Toeplitz families: the plain and complex-alternating
// matrix classes, their rectangular zero-padded assembly, and the column
// regrouping permutations.

#include <map>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"

namespace isotropy {

enum class Flavor { plain, alternating };

// T(A_0, ..., A_{beta-1}): constant block diagonals above the main diagonal.
inline CMatrix toeplitz(const std::vector<CMatrix>& coeffs) {
    if (coeffs.empty()) return CMatrix(0, 0);
    const Index mr = coeffs[0].rows(), ms = coeffs[0].cols();
    const int beta = static_cast<int>(coeffs.size());
    for (const auto& c : coeffs)
        if (c.rows() != mr || c.cols() != ms)
            throw std::invalid_argument("toeplitz: inconsistent coefficient sizes");
    CMatrix out = CMatrix::Zero(beta * mr, beta * ms);
    for (int a = 0; a < beta; ++a)
        for (int b = a; b < beta; ++b) out.block(a * mr, b * ms, mr, ms) = coeffs[b - a];
    return out;
}

// T_c(A_0, ..., A_{beta-1}): successive block rows conjugate, T'_{(j+1)(k+1)} = conj(T'_{jk}).
inline CMatrix toeplitz_alt(const std::vector<CMatrix>& coeffs) {
    if (coeffs.empty()) return CMatrix(0, 0);
    const Index mr = coeffs[0].rows(), ms = coeffs[0].cols();
    const int beta = static_cast<int>(coeffs.size());
    for (const auto& c : coeffs)
        if (c.rows() != mr || c.cols() != ms)
            throw std::invalid_argument("toeplitz_alt: inconsistent coefficient sizes");
    CMatrix out = CMatrix::Zero(beta * mr, beta * ms);
    for (int a = 0; a < beta; ++a)
        for (int b = a; b < beta; ++b) {
            CMatrix c = coeffs[b - a];
            if (a % 2 == 1) c = CMatrix(c.conjugate());
            out.block(a * mr, b * ms, mr, ms) = c;
        }
    return out;
}

struct NotAMember : std::runtime_error {
    int r, s;  // 1-based block coordinates of the first offending block
    NotAMember(int r_, int s_, const std::string& what)
        : std::runtime_error(what), r(r_), s(s_) {}
};

// Element of T^{alpha,mu} / T_c^{alpha,mu}, stored as first-row coefficients
// A_n^{rs} (n < b_rs = min(alpha_r, alpha_s)); assembly is the single source
// of truth for the rectangular zero padding.
struct ToeplitzFamily {
    std::vector<int> alpha;  // strictly decreasing
    std::vector<int> mult;   // coefficient row/col sizes m_r
    Flavor flavor = Flavor::plain;
    std::vector<std::vector<std::vector<CMatrix>>> coeff;  // coeff[r][s][n]

    int blocks() const { return static_cast<int>(alpha.size()); }
    int brs(int r, int s) const { return std::min(alpha[r], alpha[s]); }

    CMatrix& at(int r, int s, int n) { return coeff[r][s][n]; }
    const CMatrix& at(int r, int s, int n) const { return coeff[r][s][n]; }

    static ToeplitzFamily zero(std::vector<int> alpha, std::vector<int> mult, Flavor flavor) {
        ToeplitzFamily f;
        f.alpha = std::move(alpha);
        f.mult = std::move(mult);
        f.flavor = flavor;
        const int n = f.blocks();
        f.coeff.resize(n);
        for (int r = 0; r < n; ++r) {
            f.coeff[r].resize(n);
            for (int s = 0; s < n; ++s)
                f.coeff[r][s].assign(f.brs(r, s), CMatrix::Zero(f.mult[r], f.mult[s]));
        }
        return f;
    }

    static ToeplitzFamily identity_family(std::vector<int> alpha, std::vector<int> mult,
                                          Flavor flavor) {
        ToeplitzFamily f = zero(std::move(alpha), std::move(mult), flavor);
        for (int r = 0; r < f.blocks(); ++r) f.at(r, r, 0) = identity(f.mult[r]);
        return f;
    }

    Index total_size() const {
        Index n = 0;
        for (int r = 0; r < blocks(); ++r) n += Index(alpha[r]) * mult[r];
        return n;
    }
};

inline CMatrix assemble(const ToeplitzFamily& fam) {
    const int N = fam.blocks();
    std::vector<Index> roff(N + 1, 0);
    for (int r = 0; r < N; ++r) roff[r + 1] = roff[r] + Index(fam.alpha[r]) * fam.mult[r];
    CMatrix out = CMatrix::Zero(roff[N], roff[N]);
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s) {
            const int b = fam.brs(r, s);
            CMatrix t = fam.flavor == Flavor::plain ? toeplitz(fam.coeff[r][s])
                                                    : toeplitz_alt(fam.coeff[r][s]);
            // [0 T] when alpha_r < alpha_s, [T; 0] when alpha_r > alpha_s
            const Index row0 = roff[r];
            const Index col0 = roff[s] + Index(fam.alpha[s] - b) * fam.mult[s];
            out.block(row0, col0, Index(b) * fam.mult[r], Index(b) * fam.mult[s]) = t;
        }
    return out;
}

// Inverse of assemble on members; rejects non-members entrywise at 1e-12.
inline ToeplitzFamily extract(const std::vector<int>& alpha, const std::vector<int>& mult,
                              Flavor flavor, const CMatrix& x, double tol = 1e-12) {
    ToeplitzFamily fam = ToeplitzFamily::zero(alpha, mult, flavor);
    const int N = fam.blocks();
    std::vector<Index> roff(N + 1, 0);
    for (int r = 0; r < N; ++r) roff[r + 1] = roff[r] + Index(alpha[r]) * mult[r];
    if (x.rows() != roff[N] || x.cols() != roff[N])
        throw std::invalid_argument("extract: matrix size does not match (alpha, mu)");
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s) {
            const int b = fam.brs(r, s);
            const Index col0 = roff[s] + Index(alpha[s] - b) * mult[s];
            for (int n = 0; n < b; ++n)
                fam.at(r, s, n) = x.block(roff[r], col0 + Index(n) * mult[s], mult[r], mult[s]);
        }
    CMatrix rebuilt = assemble(fam);
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s) {
            const Index rows = Index(alpha[r]) * mult[r], cols = Index(alpha[s]) * mult[s];
            double err = (x.block(roff[r], roff[s], rows, cols) -
                          rebuilt.block(roff[r], roff[s], rows, cols))
                             .cwiseAbs()
                             .maxCoeff();
            if (err > tol)
                throw NotAMember(r + 1, s + 1,
                                 "extract: block (" + std::to_string(r + 1) + "," +
                                     std::to_string(s + 1) + ") deviates by " + std::to_string(err));
        }
    return fam;
}

// Omega_{alpha,m}: columns (e_1, e_{alpha+1}, ..., e_{(m-1)alpha+1}, e_2, ...).
// Right multiplication groups the k-th, (alpha+k)-th, ... columns together.
inline CMatrix omega(int alpha, int m) {
    CMatrix out = CMatrix::Zero(Index(alpha) * m, Index(alpha) * m);
    Index t = 0;
    for (int k = 0; k < alpha; ++k)
        for (int i = 0; i < m; ++i) out(Index(i) * alpha + k, t++) = 1.0;
    return out;
}

// Omega'_{alpha,m}: the doubled-block variant grouping the k-th, (2alpha+k)-th, ... columns.
inline CMatrix omega_prime(int alpha, int m) {
    CMatrix out = CMatrix::Zero(Index(2 * alpha) * m, Index(2 * alpha) * m);
    Index t = 0;
    for (int a = 0; a < alpha; ++a)
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < m; ++i) out(Index(i) * 2 * alpha + Index(c) * alpha + a, t++) = 1.0;
    return out;
}

struct PermutationPack {
    CMatrix omega;        // direct sum of Omega_{alpha_r, m_r}
    CMatrix omega_prime;  // direct sum of Omega'_{alpha_r, m_r}
    CMatrix omega_zero;   // splits the paired solution into V (+) conj(V)
};

// Omega_0: permutation with Omega_0^T X Omega_0 = V (+) conj(V) for block
// matrices whose inner 2x2 cells are diag(T, conj(T)).
inline CMatrix omega_zero(const std::vector<int>& alpha, const std::vector<int>& mult) {
    const int N = static_cast<int>(alpha.size());
    Index half = 0;
    for (int r = 0; r < N; ++r) half += Index(alpha[r]) * mult[r];
    CMatrix out = CMatrix::Zero(2 * half, 2 * half);
    Index src_off = 0, tgt_off = 0;
    for (int r = 0; r < N; ++r) {
        for (int j = 0; j < mult[r]; ++j)
            for (int c = 0; c < 2; ++c)
                for (int a = 0; a < alpha[r]; ++a) {
                    Index src = src_off + Index(j) * 2 * alpha[r] + Index(c) * alpha[r] + a;
                    Index tgt = Index(c) * half + tgt_off + Index(a) * mult[r] + j;
                    out(src, tgt) = 1.0;
                }
        src_off += Index(2 * alpha[r]) * mult[r];
        tgt_off += Index(alpha[r]) * mult[r];
    }
    return out;
}

inline PermutationPack omega_pack(const std::vector<int>& alpha, const std::vector<int>& mult) {
    const int N = static_cast<int>(alpha.size());
    std::vector<CMatrix> om, omp;
    om.reserve(N);
    omp.reserve(N);
    for (int r = 0; r < N; ++r) {
        om.push_back(omega(alpha[r], mult[r]));
        omp.push_back(omega_prime(alpha[r], mult[r]));
    }
    return {direct_sum(om), direct_sum(omp), omega_zero(alpha, mult)};
}

enum class Regroup { omega, omega_prime, omega_zero };

inline CMatrix regroup(const CMatrix& x, const PermutationPack& pack, Regroup which) {
    const CMatrix* om = which == Regroup::omega         ? &pack.omega
                        : which == Regroup::omega_prime ? &pack.omega_prime
                                                        : &pack.omega_zero;
    if (x.rows() != om->rows() || x.cols() != om->cols())
        throw std::invalid_argument("regroup: size mismatch");
    return CMatrix(om->transpose() * x * (*om));
}

}  // namespace isotropy
