#pragma once

// Dense complex matrix kernel: thin, dimension-checked operations on top of
// Eigen, plus the real-linearization nullity used by the brute-force oracles.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isotropy {

using Complex = std::complex<double>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline bool is_finite(const CMatrix& a) {
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            const Complex& z = a(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    return true;
}

inline void require_finite(const CMatrix& a, const char* where) {
    if (!is_finite(a)) throw std::invalid_argument(std::string(where) + ": non-finite entry");
}

inline CMatrix czero(Index rows, Index cols) { return CMatrix::Zero(rows, cols); }

inline CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: dimension mismatch " + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()));
    require_finite(a, "matmul");
    require_finite(b, "matmul");
    return a * b;
}

inline CMatrix conj(const CMatrix& a) { return a.conjugate(); }

inline CMatrix transpose(const CMatrix& a) { return a.transpose(); }

inline CMatrix conj_transpose(const CMatrix& a) { return a.adjoint(); }

inline double fro_norm(const CMatrix& a) { return a.norm(); }

inline CMatrix direct_sum(const std::vector<CMatrix>& blocks) {
    Index r = 0, c = 0;
    for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
    CMatrix out = CMatrix::Zero(r, c);
    Index i = 0, j = 0;
    for (const auto& b : blocks) {
        out.block(i, j, b.rows(), b.cols()) = b;
        i += b.rows();
        j += b.cols();
    }
    return out;
}

inline CMatrix inverse(const CMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu{Eigen::MatrixXcd(a)};
    return CMatrix(lu.inverse());
}

// Solves a x = b for square nonsingular a.
inline CMatrix solve(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != a.cols() || a.cols() != b.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu{Eigen::MatrixXcd(a)};
    return CMatrix(lu.solve(Eigen::MatrixXcd(b)));
}

// Matrix exponential by scaling-and-squaring with a truncated Taylor series.
// Adequate for the well-scaled Lie-algebra samples used here.
inline CMatrix expm(const CMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix not square");
    const Index n = a.rows();
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm > 0.25) { norm /= 2; ++squarings; }
    CMatrix t = a / std::pow(2.0, squarings);
    CMatrix term = identity(n);
    CMatrix sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = CMatrix(term * t) / double(k);
        sum += term;
        if (term.norm() < 1e-18 * sum.norm()) break;
    }
    for (int s = 0; s < squarings; ++s) sum = CMatrix(sum * sum);
    return sum;
}

// Nullity of a real matrix: values below cutoff * (largest value) count as
// zero. cutoff < 0 selects the default max(rows,cols)*eps. A rank-revealing
// pivoted factorization decides clear-cut cases; pivots near the cutoff fall
// back to singular values.
inline int nullity(const RMatrix& a, double cutoff = -1.0) {
    const Index cols = a.cols();
    if (cols == 0) return 0;
    if (a.rows() == 0) return static_cast<int>(cols);
    if (cutoff < 0)
        cutoff = static_cast<double>(std::max(a.rows(), a.cols())) *
                 std::numeric_limits<double>::epsilon();

    Eigen::FullPivLU<RMatrix> lu(a);
    const Index npiv = std::min(a.rows(), a.cols());
    const double pmax = lu.maxPivot();
    if (pmax == 0.0) return static_cast<int>(cols);
    bool ambiguous = false;
    int rank = 0;
    for (Index i = 0; i < npiv; ++i) {
        double p = std::abs(lu.matrixLU()(i, i)) / pmax;
        if (p > cutoff) ++rank;
        if (p > cutoff * 1e-3 && p < cutoff * 1e4) ambiguous = true;
    }
    if (!ambiguous) return static_cast<int>(cols) - rank;

    Eigen::JacobiSVD<RMatrix> svd(a);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    if (smax == 0.0) return static_cast<int>(cols);
    rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff * smax) ++rank;
    return static_cast<int>(cols) - rank;
}

// Real nullity of a real-linear operator on the real span of `domain_basis`.
// The operator is sampled on each basis matrix and the stacked real matrix is
// rank-revealed by SVD.
inline int real_linearize_nullity(const std::function<CMatrix(const CMatrix&)>& op,
                                  const std::vector<CMatrix>& domain_basis,
                                  double cutoff = -1.0) {
    const int dim = static_cast<int>(domain_basis.size());
    if (dim == 0) return 0;
    CMatrix probe = op(domain_basis[0]);
    const Index out_rows = probe.rows(), out_cols = probe.cols();
    RMatrix sys(2 * out_rows * out_cols, dim);
    for (int k = 0; k < dim; ++k) {
        CMatrix m = (k == 0) ? probe : op(domain_basis[k]);
        if (m.rows() != out_rows || m.cols() != out_cols)
            throw std::invalid_argument("real_linearize_nullity: inconsistent operator output shape");
        Index idx = 0;
        for (Index i = 0; i < out_rows; ++i)
            for (Index j = 0; j < out_cols; ++j) {
                sys(idx, k) = m(i, j).real();
                sys(out_rows * out_cols + idx, k) = m(i, j).imag();
                ++idx;
            }
    }
    return nullity(sys, cutoff);
}

}  // namespace isotropy
