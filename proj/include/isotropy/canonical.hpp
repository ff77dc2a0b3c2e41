#pragma once

// Hermitian canonical blocks H_n, K_n, L_n, the single-eigenvalue canonical
// form, and the change-of-basis transforms that carry orthogonal isotropy
// elements to block-Toeplitz congruence solutions.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "toeplitz.hpp"

namespace isotropy {

enum class EigenKind { positive_real, zero, negative_real, non_real };

// Eigenvalue class of H conj(H). For positive_real the stored lambda is the
// eigenvalue rho itself (blocks use sqrt(rho)); negative_real stores mu with
// rho = -mu^2; non_real stores xi with rho = xi^2.
struct EigenClass {
    EigenKind kind = EigenKind::zero;
    double lambda = 0.0;
    double mu = 0.0;
    Complex xi{0.0, 0.0};

    static EigenClass positive_real(double rho) {
        EigenClass e;
        e.kind = EigenKind::positive_real;
        e.lambda = rho;
        return e;
    }
    static EigenClass zero_class() { return EigenClass{}; }
    static EigenClass negative_real(double mu) {
        EigenClass e;
        e.kind = EigenKind::negative_real;
        e.mu = mu;
        return e;
    }
    static EigenClass non_real(Complex xi) {
        EigenClass e;
        e.kind = EigenKind::non_real;
        e.xi = xi;
        return e;
    }
    // accepts rho = xi^2 and takes the root with positive imaginary part
    static EigenClass non_real_from_rho(Complex rho) {
        Complex xi = std::sqrt(rho);
        if (xi.imag() < 0) xi = -xi;
        return non_real(xi);
    }

    Complex rho() const {
        switch (kind) {
            case EigenKind::positive_real: return {lambda, 0.0};
            case EigenKind::zero: return {0.0, 0.0};
            case EigenKind::negative_real: return {-mu * mu, 0.0};
            case EigenKind::non_real: return xi * xi;
        }
        return {};
    }

    // parameter handed to the block constructor: sqrt(rho), mu, or xi
    Complex block_param() const {
        switch (kind) {
            case EigenKind::positive_real: return {std::sqrt(lambda), 0.0};
            case EigenKind::zero: return {0.0, 0.0};
            case EigenKind::negative_real: return {mu, 0.0};
            case EigenKind::non_real: return xi;
        }
        return {};
    }

    bool doubled() const {
        return kind == EigenKind::negative_real || kind == EigenKind::non_real;
    }

    void validate() const {
        switch (kind) {
            case EigenKind::positive_real:
                if (!(lambda > 0)) throw std::invalid_argument("positive_real requires lambda > 0");
                break;
            case EigenKind::zero: break;
            case EigenKind::negative_real:
                if (!(mu > 0)) throw std::invalid_argument("negative_real requires mu > 0");
                break;
            case EigenKind::non_real:
                if (!(xi.imag() > 0)) throw std::invalid_argument("non_real requires Im(xi) > 0");
                if (xi.real() == 0.0)
                    throw std::invalid_argument("non_real requires xi^2 not real");
                break;
        }
    }
};

struct CanonicalSpec {
    EigenClass eigen;
    std::vector<int> alpha;              // block sizes, strictly decreasing
    std::vector<int> mult;               // multiplicities m_r
    std::vector<std::vector<int>> eps;   // signs, only for positive_real / zero

    int blocks() const { return static_cast<int>(alpha.size()); }

    bool has_signs() const {
        return eigen.kind == EigenKind::positive_real || eigen.kind == EigenKind::zero;
    }

    Index total_size() const {
        Index n = 0;
        for (int r = 0; r < blocks(); ++r) n += Index(alpha[r]) * mult[r];
        return eigen.doubled() ? 2 * n : n;
    }

    void validate() const {
        eigen.validate();
        if (alpha.empty() || alpha.size() != mult.size())
            throw std::invalid_argument("spec: alpha and mu must be nonempty and equally long");
        for (size_t r = 0; r < alpha.size(); ++r) {
            if (alpha[r] < 1) throw std::invalid_argument("spec: alpha entries must be >= 1");
            if (r + 1 < alpha.size() && alpha[r] <= alpha[r + 1])
                throw std::invalid_argument("spec: alpha must be strictly decreasing");
            if (mult[r] < 1) throw std::invalid_argument("spec: multiplicities must be >= 1");
        }
        if (has_signs()) {
            if (eps.size() != alpha.size())
                throw std::invalid_argument("spec: eps rows must match alpha");
            for (size_t r = 0; r < eps.size(); ++r) {
                if (static_cast<int>(eps[r].size()) != mult[r])
                    throw std::invalid_argument("spec: eps row length must match multiplicity");
                for (int e : eps[r]) {
                    if (e != 1 && e != -1)
                        throw std::invalid_argument("spec: eps entries must be +1 or -1");
                    if (e == -1 && eigen.kind == EigenKind::zero && alpha[r] % 2 == 1)
                        throw std::invalid_argument(
                            "spec: eps must be +1 for zero eigenvalue with odd block size");
                }
            }
        } else if (!eps.empty())
            throw std::invalid_argument("spec: eps only allowed for positive_real/zero");
    }
};

inline CMatrix jordan_block(Complex lam, int size) {
    if (size < 1) throw std::invalid_argument("jordan_block: size must be >= 1");
    CMatrix j = CMatrix::Zero(size, size);
    for (int i = 0; i < size; ++i) {
        j(i, i) = lam;
        if (i + 1 < size) j(i, i + 1) = 1.0;
    }
    return j;
}

inline CMatrix backward_identity(int size) {
    CMatrix e = CMatrix::Zero(size, size);
    for (int i = 0; i < size; ++i) e(i, size - 1 - i) = 1.0;
    return e;
}

inline CMatrix block_backward_identity(int beta, int m) {
    CMatrix e = CMatrix::Zero(Index(beta) * m, Index(beta) * m);
    for (int i = 0; i < beta; ++i)
        e.block(Index(i) * m, Index(beta - 1 - i) * m, m, m) = identity(m);
    return e;
}

// H_n(z) = (R + iS)/2 with 2z on the main antidiagonal of R, ones on the two
// neighbouring antidiagonals, and S the +1/-1 super/subdiagonal pair. This is
// the entrywise reading pinned by the identity P_n H_n(l) = J_n(l) conj(P_n).
inline CMatrix h_block(Complex z, int n) {
    if (n < 1) throw std::invalid_argument("h_block: size must be >= 1");
    CMatrix h = CMatrix::Zero(n, n);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            Complex v = 0.0;
            if (j + k == n + 1) v += 2.0 * z;
            if (j + k == n || j + k == n + 2) v += 1.0;
            if (k == j + 1) v += Complex(0.0, 1.0);
            if (j == k + 1) v += Complex(0.0, -1.0);
            h(j - 1, k - 1) = 0.5 * v;
        }
    return h;
}

inline CMatrix k_block(Complex z, int n) {
    if (n < 1) throw std::invalid_argument("k_block: size must be >= 1");
    CMatrix h = h_block(z, n);
    CMatrix out = CMatrix::Zero(2 * n, 2 * n);
    out.block(0, n, n, n) = Complex(0, -1) * h;
    out.block(n, 0, n, n) = Complex(0, 1) * h;
    return out;
}

inline CMatrix l_block(Complex z, int n) {
    if (n < 1) throw std::invalid_argument("l_block: size must be >= 1");
    CMatrix h = h_block(z, n);
    CMatrix out = CMatrix::Zero(2 * n, 2 * n);
    out.block(0, n, n, n) = h;
    out.block(n, 0, n, n) = h.adjoint();
    return out;
}

inline CMatrix canonical_form(const CanonicalSpec& spec) {
    spec.validate();
    std::vector<CMatrix> blocks;
    for (int r = 0; r < spec.blocks(); ++r)
        for (int j = 0; j < spec.mult[r]; ++j) {
            switch (spec.eigen.kind) {
                case EigenKind::positive_real:
                case EigenKind::zero:
                    blocks.push_back(double(spec.eps[r][j]) *
                                     h_block(spec.eigen.block_param(), spec.alpha[r]));
                    break;
                case EigenKind::negative_real:
                    blocks.push_back(k_block(spec.eigen.mu, spec.alpha[r]));
                    break;
                case EigenKind::non_real:
                    blocks.push_back(l_block(spec.eigen.xi, spec.alpha[r]));
                    break;
            }
        }
    return direct_sum(blocks);
}

// P_alpha = e^{-i pi/4}/sqrt(2) (I + iE); unitary, symmetric, P^2 = E.
inline CMatrix p_matrix(int alpha) {
    Complex phase = std::exp(Complex(0, -M_PI / 4)) / std::sqrt(2.0);
    return CMatrix(phase * (identity(alpha) + Complex(0, 1) * backward_identity(alpha)));
}

// W_alpha = diag(1, i, i^2, ...)
inline CMatrix w_matrix(int alpha) {
    CMatrix w = CMatrix::Zero(alpha, alpha);
    Complex v = 1.0;
    for (int j = 0; j < alpha; ++j, v *= Complex(0, 1)) w(j, j) = v;
    return w;
}

// U_alpha(mu): solution of U J(-mu^2) = J(i mu)^2 U built column by column
// from the seed e_1, with odd rows real and even rows purely imaginary, then
// rescaled so the normalization coefficient of the induced form has unit
// modulus. Columns solve (J(i mu)^2 + mu^2 I) v_n = v_{n-1} with the free
// first coordinate pinned to zero.
inline CMatrix u_chain(double mu, int alpha) {
    CMatrix u = CMatrix::Zero(alpha, alpha);
    u(0, 0) = 1.0;
    const Complex den(0.0, 2.0 * mu);  // 2 i mu
    for (int n = 1; n < alpha; ++n) {
        // rows i: 2 i mu * v[i+1] + v[i+2] = prev[i], solved bottom-up
        for (int i = alpha - 2; i >= 0; --i) {
            Complex rhs = u(i, n - 1);
            if (i + 2 < alpha) rhs -= u(i + 2, n);
            u(i + 1, n) = rhs / den;
        }
        if (std::abs(u(alpha - 1, n - 1)) > 1e-12)
            throw std::runtime_error("u_chain: inconsistent recursion (implementation bug)");
    }
    // normalization coefficient of i^{alpha-1}(-1)^alpha E U^T E U
    CMatrix e = backward_identity(alpha);
    Complex ph = std::pow(Complex(0, 1), alpha - 1) * (alpha % 2 == 0 ? 1.0 : -1.0);
    CMatrix t = CMatrix(ph * (e * u.transpose() * e * u));
    double u0 = t(0, 0).real();
    if (std::abs(t(0, 0).imag()) > 1e-10 * std::abs(u0) + 1e-14 || u0 == 0.0)
        throw std::runtime_error("u_chain: normalization coefficient not real");
    return CMatrix(u / std::sqrt(std::abs(u0)));
}

// S_alpha(eta) = [[0, U],[J(-i eta) conj(U), 0]]
inline CMatrix s_matrix(double eta, int alpha) {
    CMatrix u = u_chain(eta, alpha);
    CMatrix s = CMatrix::Zero(2 * alpha, 2 * alpha);
    s.block(0, alpha, alpha, alpha) = u;
    s.block(alpha, 0, alpha, alpha) = jordan_block(Complex(0, -eta), alpha) * u.conjugate();
    return s;
}

// Composed change of basis per eigenvalue class: an isotropy element is
// Q = pre * X * post with X the unregrouped solution matrix, and the family
// matrix is omega^T X omega (for non_real, X = omega (V (+) conj V) omega^T).
struct TransformKit {
    EigenKind kind = EigenKind::zero;
    CMatrix P;               // block-diagonal unitary
    CMatrix S_eps;           // positive_real / zero
    CMatrix V, S;            // negative_real
    std::vector<CMatrix> U;  // negative_real: per-r normalized chains
    CMatrix E;               // backward-identity direct sum matching the partition
    CMatrix omega;           // grouping permutation for this case
    CMatrix pre, post;       // Q = pre * X * post
    bool split = false;      // non_real: family describes V, X = V (+) conj V regrouped
};

inline TransformKit transform_kit(const CanonicalSpec& spec) {
    spec.validate();
    TransformKit kit;
    kit.kind = spec.eigen.kind;
    const int N = spec.blocks();
    std::vector<CMatrix> pblocks, eblocks;
    switch (spec.eigen.kind) {
        case EigenKind::positive_real:
        case EigenKind::zero: {
            std::vector<CMatrix> sblocks;
            for (int r = 0; r < N; ++r)
                for (int j = 0; j < spec.mult[r]; ++j) {
                    pblocks.push_back(p_matrix(spec.alpha[r]));
                    eblocks.push_back(backward_identity(spec.alpha[r]));
                    Complex s = spec.eps[r][j] == 1 ? Complex(1, 0) : Complex(0, 1);
                    sblocks.push_back(CMatrix(s * identity(spec.alpha[r])));
                }
            kit.P = direct_sum(pblocks);
            kit.E = direct_sum(eblocks);
            kit.S_eps = direct_sum(sblocks);
            kit.omega = omega_pack(spec.alpha, spec.mult).omega;
            CMatrix Pinv = kit.P.adjoint();  // unitary
            CMatrix Sinv = inverse(kit.S_eps);
            kit.pre = CMatrix(Sinv * Pinv);
            kit.post = CMatrix(kit.P * kit.S_eps);
            break;
        }
        case EigenKind::negative_real: {
            const double mu = spec.eigen.mu;
            std::vector<CMatrix> vblocks, sblocks;
            kit.U.reserve(N);
            for (int r = 0; r < N; ++r) kit.U.push_back(u_chain(mu, spec.alpha[r]));
            Complex ph = std::exp(Complex(0, M_PI / 4));
            for (int r = 0; r < N; ++r)
                for (int j = 0; j < spec.mult[r]; ++j) {
                    const int a = spec.alpha[r];
                    CMatrix pa = p_matrix(a);
                    pblocks.push_back(CMatrix(ph * direct_sum({pa, pa})));
                    CMatrix wa = w_matrix(a);
                    vblocks.push_back(
                        CMatrix(ph * direct_sum({wa, CMatrix(wa.conjugate())})));
                    CMatrix s = CMatrix::Zero(2 * a, 2 * a);
                    s.block(0, a, a, a) = kit.U[r];
                    s.block(a, 0, a, a) =
                        jordan_block(Complex(0, -mu), a) * kit.U[r].conjugate();
                    sblocks.push_back(s);
                    eblocks.push_back(direct_sum({backward_identity(a), backward_identity(a)}));
                }
            kit.P = direct_sum(pblocks);
            kit.V = direct_sum(vblocks);
            kit.S = direct_sum(sblocks);
            kit.E = direct_sum(eblocks);
            std::vector<int> dm(spec.mult);
            kit.omega = omega_pack(spec.alpha, dm).omega_prime;
            CMatrix Pinv = kit.P.adjoint();
            CMatrix Vinv = kit.V.conjugate();  // V^{-1} = conj(V)
            CMatrix Sinv = inverse(kit.S);
            kit.pre = CMatrix(Pinv * Vinv * kit.S);
            kit.post = CMatrix(Sinv * kit.V * kit.P);
            break;
        }
        case EigenKind::non_real: {
            for (int r = 0; r < N; ++r)
                for (int j = 0; j < spec.mult[r]; ++j) {
                    const int a = spec.alpha[r];
                    CMatrix pa = p_matrix(a);
                    pblocks.push_back(direct_sum({pa, pa}));
                    eblocks.push_back(direct_sum({backward_identity(a), backward_identity(a)}));
                }
            kit.P = direct_sum(pblocks);
            kit.E = direct_sum(eblocks);
            kit.omega = omega_zero(spec.alpha, spec.mult);
            kit.pre = kit.P.adjoint();
            kit.post = kit.P;
            kit.split = true;
            break;
        }
    }
    return kit;
}

}  // namespace isotropy
