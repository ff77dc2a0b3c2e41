#pragma once

// Seeded random sampling with layout-stable output. mt19937_64 is fully
// specified by the standard; the [0,1) mapping avoids distribution objects,
// whose output is implementation-defined.

#include <cstdint>
#include <random>

#include "matrix.hpp"

namespace isotropy {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform in [-1, 1]
    double uniform() { return 2.0 * unit() - 1.0; }

    Complex cuniform() { return {uniform(), uniform()}; }

    std::uint64_t raw() { return gen_(); }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : gen_() % n; }

    CMatrix complex_matrix(Index rows, Index cols) {
        CMatrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = cuniform();
        return m;
    }

    CMatrix real_matrix(Index rows, Index cols) {
        CMatrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = Complex(uniform(), 0.0);
        return m;
    }

    // Z = -Z^T, complex entries unless real_only.
    CMatrix skew_symmetric(Index n, bool real_only = false) {
        CMatrix m = CMatrix::Zero(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j) {
                Complex z = real_only ? Complex(uniform(), 0.0) : cuniform();
                m(i, j) = z;
                m(j, i) = -z;
            }
        return m;
    }

    // Z = -Z^*
    CMatrix skew_hermitian(Index n) {
        CMatrix m = CMatrix::Zero(n, n);
        for (Index i = 0; i < n; ++i) {
            m(i, i) = Complex(0.0, uniform());
            for (Index j = i + 1; j < n; ++j) {
                Complex z = cuniform();
                m(i, j) = z;
                m(j, i) = -std::conj(z);
            }
        }
        return m;
    }

    CMatrix symmetric(Index n, bool real_only = false) {
        CMatrix m = CMatrix::Zero(n, n);
        for (Index i = 0; i < n; ++i) {
            m(i, i) = real_only ? Complex(uniform(), 0.0) : cuniform();
            for (Index j = i + 1; j < n; ++j) {
                Complex z = real_only ? Complex(uniform(), 0.0) : cuniform();
                m(i, j) = z;
                m(j, i) = z;
            }
        }
        return m;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace isotropy
