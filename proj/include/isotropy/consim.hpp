#pragma once

// Solution spaces of J_m(l1) X = X J_n(l2) and M conj(Y) = Y N for pairs of
// canonical blocks, plus the brute-force real-linearized nullity baseline.

#include <functional>
#include <vector>

#include "canonical.hpp"

namespace isotropy {

enum class BlockKind { H, K, L };

struct BlockDesc {
    BlockKind kind = BlockKind::H;
    Complex param{};  // lambda >= 0 for H, mu > 0 for K, xi (Im > 0) for L
    int size = 1;

    CMatrix matrix() const {
        switch (kind) {
            case BlockKind::H: return h_block(param, size);
            case BlockKind::K: return k_block(param, size);
            case BlockKind::L: return l_block(param, size);
        }
        return {};
    }

    Index rows() const { return kind == BlockKind::H ? size : 2 * size; }

    Complex rho() const {
        switch (kind) {
            case BlockKind::H: return param * param;
            case BlockKind::K: return -param * param;
            case BlockKind::L: return param * param;
        }
        return {};
    }
};

// A parametrized solution space: linear in the real coordinate vector, with
// parametrize(0) = 0. Bases are materialized on demand.
struct SolutionSpace {
    int real_dim = 0;
    int complex_dim = -1;  // -1 when the space is not complex-linear
    Index rows = 0, cols = 0;
    std::function<CMatrix(const std::vector<double>&)> parametrize;

    std::vector<CMatrix> basis() const {
        std::vector<CMatrix> out;
        out.reserve(real_dim);
        for (int k = 0; k < real_dim; ++k) {
            std::vector<double> v(real_dim, 0.0);
            v[k] = 1.0;
            out.push_back(parametrize(v));
        }
        return out;
    }
};

namespace detail {

// m-by-n matrix [0 T] / [T; 0] / T with T the beta-by-beta scalar upper
// triangular Toeplitz on the given coefficients (beta = min(m, n)).
inline CMatrix padded_toeplitz(int m, int n, const std::vector<Complex>& t, bool alternating) {
    const int beta = std::min(m, n);
    CMatrix x = CMatrix::Zero(m, n);
    const int col_off = n - beta;
    for (int i = 0; i < beta; ++i)
        for (int j = i; j < beta; ++j) {
            Complex v = t[j - i];
            if (alternating && i % 2 == 1) v = std::conj(v);
            x(i, col_off + j) = v;
        }
    return x;
}

inline SolutionSpace zero_space(Index rows, Index cols) {
    SolutionSpace s;
    s.real_dim = 0;
    s.complex_dim = 0;
    s.rows = rows;
    s.cols = cols;
    s.parametrize = [rows, cols](const std::vector<double>&) { return czero(rows, cols); };
    return s;
}

inline std::vector<Complex> complex_coords(const std::vector<double>& v) {
    std::vector<Complex> t(v.size() / 2);
    for (size_t k = 0; k < t.size(); ++k) t[k] = Complex(v[2 * k], v[2 * k + 1]);
    return t;
}

}  // namespace detail

inline SolutionSpace sylvester_jordan(Complex lam1, int m, Complex lam2, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("sylvester_jordan: sizes must be >= 1");
    if (lam1 != lam2) return detail::zero_space(m, n);
    const int beta = std::min(m, n);
    SolutionSpace s;
    s.real_dim = 2 * beta;
    s.complex_dim = beta;
    s.rows = m;
    s.cols = n;
    s.parametrize = [m, n](const std::vector<double>& v) {
        return detail::padded_toeplitz(m, n, detail::complex_coords(v), false);
    };
    return s;
}

// Real nullity of Y -> M conj(Y) - Y N over all complex matrices Y.
// Unknown ordering: (vec Re Y, vec Im Y), column-major vec.
inline int brute_force_consim_nullity(const CMatrix& m, const CMatrix& n,
                                      double cutoff = 1e-8) {
    if (m.rows() != m.cols() || n.rows() != n.cols())
        throw std::invalid_argument("brute_force_consim_nullity: blocks must be square");
    std::vector<CMatrix> basis;
    for (Index j = 0; j < n.rows(); ++j)      // column-major enumeration
        for (Index i = 0; i < m.rows(); ++i)
            for (Complex c : {Complex(1, 0), Complex(0, 1)}) {
                CMatrix y = czero(m.rows(), n.rows());
                y(i, j) = c;
                basis.push_back(y);
            }
    auto op = [&](const CMatrix& y) { return CMatrix(m * y.conjugate() - y * n); };
    return real_linearize_nullity(op, basis, cutoff);
}

// Lemma-level solution spaces of M conj(Y) = Y N for canonical block pairs.
inline SolutionSpace consim_pair_solution(const BlockDesc& a, const BlockDesc& b) {
    if (a.size < 1 || b.size < 1)
        throw std::invalid_argument("consim_pair_solution: invalid descriptor");
    const Index rows = a.rows(), cols = b.rows();
    if (a.kind != b.kind || a.param != b.param) return detail::zero_space(rows, cols);

    const int m = a.size, n = b.size;
    const int beta = std::min(m, n);
    SolutionSpace s;
    s.rows = rows;
    s.cols = cols;

    switch (a.kind) {
        case BlockKind::H: {
            const bool zero_eig = (a.param == Complex(0, 0));
            CMatrix pmi = inverse(p_matrix(m)), pn = p_matrix(n);
            if (!zero_eig) {
                s.real_dim = beta;
                s.complex_dim = -1;  // real Toeplitz coefficients only
                s.parametrize = [=](const std::vector<double>& v) {
                    std::vector<Complex> t(v.begin(), v.end());
                    return CMatrix(pmi * detail::padded_toeplitz(m, n, t, false) * pn);
                };
            } else {
                s.real_dim = 2 * beta;
                s.complex_dim = -1;  // complex-alternating, not complex-linear
                s.parametrize = [=](const std::vector<double>& v) {
                    return CMatrix(pmi * detail::padded_toeplitz(m, n, detail::complex_coords(v), true) * pn);
                };
            }
            break;
        }
        case BlockKind::K: {
            const double mu = a.param.real();
            auto side = [&](int alpha) {
                CMatrix q = std::exp(Complex(0, M_PI / 4)) *
                            direct_sum({p_matrix(alpha), p_matrix(alpha)});
                CMatrix v = std::exp(Complex(0, M_PI / 4)) *
                            direct_sum({w_matrix(alpha), CMatrix(w_matrix(alpha).conjugate())});
                return CMatrix(v * q);
            };
            CMatrix left = CMatrix(inverse(CMatrix(side(m))) * s_matrix(mu, m));
            CMatrix right = CMatrix(inverse(s_matrix(mu, n)) * side(n));
            CMatrix jm = jordan_block(Complex(-mu * mu, 0), m);
            s.real_dim = 4 * beta;
            s.complex_dim = 2 * beta;
            s.parametrize = [=](const std::vector<double>& v) {
                auto t = detail::complex_coords(v);
                std::vector<Complex> t1(t.begin(), t.begin() + beta), t2(t.begin() + beta, t.end());
                CMatrix x1 = detail::padded_toeplitz(m, n, t1, false);
                CMatrix x2 = detail::padded_toeplitz(m, n, t2, false);
                CMatrix x = CMatrix::Zero(2 * m, 2 * n);
                x.block(0, 0, m, n) = x1;
                x.block(0, n, m, n) = x2;
                x.block(m, 0, m, n) = jm * x2.conjugate();
                x.block(m, n, m, n) = x1.conjugate();
                return CMatrix(left * x * right);
            };
            break;
        }
        case BlockKind::L: {
            CMatrix rmi = inverse(CMatrix(direct_sum({p_matrix(m), p_matrix(m)})));
            CMatrix rn = direct_sum({p_matrix(n), p_matrix(n)});
            s.real_dim = 2 * beta;
            s.complex_dim = -1;  // X (+) conj(X) is only real-linear in X
            s.parametrize = [=](const std::vector<double>& v) {
                CMatrix x1 = detail::padded_toeplitz(m, n, detail::complex_coords(v), false);
                CMatrix x = CMatrix::Zero(2 * m, 2 * n);
                x.block(0, 0, m, n) = x1;
                x.block(m, n, m, n) = x1.conjugate();
                return CMatrix(rmi * x * rn);
            };
            break;
        }
    }
    return s;
}

}  // namespace isotropy
