#include <catch2/catch_amalgamated.hpp>

#include <isotropy/canonical.hpp>
#include <isotropy/rng.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>

using namespace isotropy;

namespace {
// multiset of eigenvalues of H conj(H)
std::vector<Complex> hhbar_spectrum(const CMatrix& h) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(h * h.conjugate()), false);
    std::vector<Complex> out(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

CanonicalSpec spec_pos(double rho, std::vector<int> alpha, std::vector<int> mult,
                       std::vector<std::vector<int>> eps) {
    CanonicalSpec s;
    s.eigen = EigenClass::positive_real(rho);
    s.alpha = std::move(alpha);
    s.mult = std::move(mult);
    s.eps = std::move(eps);
    return s;
}
}  // namespace

TEST_CASE("jordan and backward identity blocks", "[canonical]") {
    REQUIRE(jordan_block(5.0, 1)(0, 0) == Complex(5.0));
    CMatrix j2 = jordan_block(0.0, 2);
    REQUIRE(j2(0, 1) == Complex(1.0));
    REQUIRE(fro_norm(j2) == 1.0);
    CMatrix j3 = jordan_block(Complex(0, 1), 3);
    REQUIRE(j3(2, 2) == Complex(0, 1));
    REQUIRE(j3(1, 2) == Complex(1.0));
    REQUIRE_THROWS_AS(jordan_block(1.0, 0), std::invalid_argument);

    REQUIRE(backward_identity(1)(0, 0) == Complex(1.0));
    CMatrix e2 = backward_identity(2);
    REQUIRE(e2(0, 1) == Complex(1.0));
    REQUIRE(e2(1, 0) == Complex(1.0));
    REQUIRE(e2(0, 0) == Complex(0.0));

    CMatrix be = block_backward_identity(2, 2);
    REQUIRE(be.rows() == 4);
    REQUIRE(fro_norm(CMatrix(be.block(0, 2, 2, 2) - identity(2))) == 0.0);
    REQUIRE(fro_norm(CMatrix(be.block(2, 0, 2, 2) - identity(2))) == 0.0);
    REQUIRE(fro_norm(CMatrix(be.block(0, 0, 2, 2))) == 0.0);
}

TEST_CASE("h_block entrywise reading", "[canonical]") {
    REQUIRE(h_block(1.7, 1)(0, 0) == Complex(1.7));

    CMatrix h = h_block(0.0, 2);
    CMatrix want(2, 2);
    want << 0.5, Complex(0, 0.5), Complex(0, -0.5), 0.5;
    REQUIRE(fro_norm(CMatrix(h - want)) == 0.0);
    REQUIRE(fro_norm(CMatrix(h * h.conjugate())) < 1e-15);  // nilpotent
}

TEST_CASE("block consimilarity identities", "[canonical]") {
    // P_a H_a(l) = J_a(l) conj(P_a), and the K/L/S analogues
    for (int a = 1; a <= 6; ++a) {
        for (double lam : {0.0, 1.0, 2.5}) {
            CMatrix res = p_matrix(a) * h_block(lam, a) -
                          jordan_block(lam, a) * p_matrix(a).conjugate();
            REQUIRE(fro_norm(res) < 1e-12);
        }
        for (double mu : {0.7, 1.0, 2.0}) {
            CMatrix q = std::exp(Complex(0, M_PI / 4)) *
                        direct_sum({p_matrix(a), p_matrix(a)});
            CMatrix jj = CMatrix::Zero(2 * a, 2 * a);
            jj.block(0, a, a, a) = jordan_block(mu, a);
            jj.block(a, 0, a, a) = -jordan_block(mu, a);
            REQUIRE(fro_norm(CMatrix(q * k_block(mu, a) - jj * q.conjugate())) < 1e-11);
        }
        for (Complex xi : {Complex(1, 1), Complex(0.5, 2)}) {
            CMatrix r = direct_sum({p_matrix(a), p_matrix(a)});
            CMatrix jl = CMatrix::Zero(2 * a, 2 * a);
            jl.block(0, a, a, a) = jordan_block(xi, a);
            jl.block(a, 0, a, a) = jordan_block(std::conj(xi), a);
            REQUIRE(fro_norm(CMatrix(r * l_block(xi, a) - jl * r.conjugate())) < 1e-11);
        }
    }
}

TEST_CASE("k and l blocks", "[canonical]") {
    double mu = 1.0;
    CMatrix k1 = k_block(mu, 1);
    REQUIRE(k1(0, 1) == Complex(0, -mu));
    REQUIRE(k1(1, 0) == Complex(0, mu));
    REQUIRE(fro_norm(CMatrix(k1 * k1.conjugate() + mu * mu * identity(2))) < 1e-15);
    REQUIRE(fro_norm(CMatrix(k1 - k1.adjoint())) == 0.0);  // Hermitian

    Complex xi(1, 1);
    CMatrix l1 = l_block(xi, 1);
    REQUIRE(l1(0, 1) == xi);
    REQUIRE(l1(1, 0) == std::conj(xi));
    CMatrix ll = l1 * l1.conjugate();
    REQUIRE(std::abs(ll(0, 0) - xi * xi) < 1e-15);
    REQUIRE(std::abs(ll(1, 1) - std::conj(xi) * std::conj(xi)) < 1e-15);
}

TEST_CASE("u_chain and the S identity", "[canonical]") {
    for (int a = 1; a <= 6; ++a)
        for (double mu : {0.7, 1.0, 2.0}) {
            CMatrix u = u_chain(mu, a);
            CMatrix lhs = u * jordan_block(Complex(-mu * mu, 0), a);
            CMatrix j2 = jordan_block(Complex(0, mu), a);
            REQUIRE(fro_norm(CMatrix(lhs - j2 * j2 * u)) < 1e-10);

            // odd rows real, even rows purely imaginary
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < a; ++j) {
                    if (i % 2 == 0) REQUIRE(std::abs(u(i, j).imag()) < 1e-14);
                    else REQUIRE(std::abs(u(i, j).real()) < 1e-14);
                }

            CMatrix s = s_matrix(mu, a);
            CMatrix mid = CMatrix::Zero(2 * a, 2 * a);
            mid.block(0, a, a, a) = jordan_block(Complex(0, mu), a);
            mid.block(a, 0, a, a) = jordan_block(Complex(0, -mu), a);
            CMatrix tgt = CMatrix::Zero(2 * a, 2 * a);
            tgt.block(0, a, a, a) = identity(a);
            tgt.block(a, 0, a, a) = jordan_block(Complex(-mu * mu, 0), a);
            REQUIRE(fro_norm(CMatrix(mid * s.conjugate() - s * tgt)) < 1e-10);

            // V identity from the same proof
            CMatrix v = std::exp(Complex(0, M_PI / 4)) *
                        direct_sum({w_matrix(a), CMatrix(w_matrix(a).conjugate())});
            CMatrix jpm = CMatrix::Zero(2 * a, 2 * a);
            jpm.block(0, a, a, a) = jordan_block(mu, a);
            jpm.block(a, 0, a, a) = -jordan_block(mu, a);
            REQUIRE(fro_norm(CMatrix(v * jpm - mid * v.conjugate())) < 1e-12);
        }
}

TEST_CASE("canonical_form basic shapes", "[canonical]") {
    CanonicalSpec s1 = spec_pos(2.0, {1}, {1}, {{1}});
    CMatrix h1 = canonical_form(s1);
    REQUIRE(h1.rows() == 1);
    REQUIRE(std::abs(h1(0, 0) - Complex(std::sqrt(2.0))) < 1e-15);

    CanonicalSpec s2;
    s2.eigen = EigenClass::zero_class();
    s2.alpha = {2};
    s2.mult = {1};
    s2.eps = {{1}};
    REQUIRE(fro_norm(CMatrix(canonical_form(s2) - h_block(0.0, 2))) == 0.0);

    CanonicalSpec s3;
    s3.eigen = EigenClass::negative_real(1.0);
    s3.alpha = {1};
    s3.mult = {2};
    CMatrix h3 = canonical_form(s3);
    REQUIRE(h3.rows() == 4);
    REQUIRE(fro_norm(CMatrix(h3 - direct_sum({k_block(1.0, 1), k_block(1.0, 1)}))) == 0.0);
}

TEST_CASE("canonical_form is Hermitian with the right spectrum", "[canonical]") {
    std::vector<CanonicalSpec> specs;
    specs.push_back(spec_pos(1.0, {3, 2}, {1, 2}, {{1}, {1, -1}}));
    {
        CanonicalSpec s;
        s.eigen = EigenClass::zero_class();
        s.alpha = {3, 2};
        s.mult = {1, 2};
        s.eps = {{1}, {1, -1}};
        specs.push_back(s);
    }
    {
        CanonicalSpec s;
        s.eigen = EigenClass::negative_real(1.3);
        s.alpha = {2, 1};
        s.mult = {1, 1};
        specs.push_back(s);
    }
    {
        CanonicalSpec s;
        s.eigen = EigenClass::non_real(Complex(0.5, 2.0));
        s.alpha = {2};
        s.mult = {2};
        specs.push_back(s);
    }
    for (const auto& s : specs) {
        CMatrix h = canonical_form(s);
        REQUIRE(fro_norm(CMatrix(h - h.adjoint())) < 1e-12);
        Complex rho = s.eigen.rho();

        // spectrum of H conj(H) is {rho} (and conj(rho) for the non-real class):
        // checked through the minimal polynomial, since eigenvalues of a
        // defective matrix scatter as eps^{1/alpha} in floating point
        CMatrix m = h * h.conjugate();
        const Index n = m.rows();
        CMatrix nil = CMatrix(m - rho * identity(n));
        if (s.eigen.kind == EigenKind::non_real)
            nil = CMatrix(nil * (m - std::conj(rho) * identity(n)));
        CMatrix pow = identity(n);
        for (int k = 0; k < s.alpha[0]; ++k) pow = CMatrix(pow * nil);
        REQUIRE(fro_norm(pow) <= 1e-8 * std::pow(1 + fro_norm(nil), s.alpha[0]));

        // eigenvalues still land near rho at the defectiveness-limited rate
        double scatter = 50.0 * std::pow(1e-15 * (1 + fro_norm(m)), 1.0 / s.alpha[0]);
        for (Complex ev : hhbar_spectrum(h)) {
            double d = std::abs(ev - rho);
            if (s.eigen.kind == EigenKind::non_real)
                d = std::min(d, std::abs(ev - std::conj(rho)));
            REQUIRE(d <= std::max(1e-8, scatter));
        }
    }
}

TEST_CASE("transform_kit", "[canonical]") {
    // P_1 reduces to the scalar 1
    REQUIRE(std::abs(p_matrix(1)(0, 0) - Complex(1.0)) < 1e-15);

    CanonicalSpec s = spec_pos(1.0, {2, 1}, {1, 2}, {{1}, {1, -1}});
    TransformKit kit = transform_kit(s);
    REQUIRE(fro_norm(CMatrix(kit.P * kit.P - kit.E)) < 1e-14);
    // S_eps for eps = -1 on a 1x1 block is [i]
    REQUIRE(std::abs(kit.S_eps(3, 3) - Complex(0, 1)) < 1e-15);
    REQUIRE(std::abs(kit.S_eps(3, 3) * kit.S_eps(3, 3) - Complex(-1.0)) < 1e-15);

    // omega is an orthogonal permutation
    REQUIRE(fro_norm(CMatrix(kit.omega.transpose() * kit.omega -
                             identity(kit.omega.rows()))) == 0.0);
}

TEST_CASE("spec validation", "[canonical]") {
    CanonicalSpec s = spec_pos(1.0, {2, 2}, {1, 1}, {{1}, {1}});
    REQUIRE_THROWS_AS(s.validate(), std::invalid_argument);  // not strictly decreasing

    CanonicalSpec z;
    z.eigen = EigenClass::zero_class();
    z.alpha = {3};
    z.mult = {1};
    z.eps = {{-1}};  // odd block size with zero eigenvalue must be +1
    REQUIRE_THROWS_AS(z.validate(), std::invalid_argument);

    REQUIRE_THROWS_AS(EigenClass::non_real(Complex(0, 1)).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(EigenClass::positive_real(0.0).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS(EigenClass::negative_real(-1.0).validate(), std::invalid_argument);

    // rho input for the non-real class takes the upper-half-plane root
    EigenClass e = EigenClass::non_real_from_rho(Complex(-3, -4));
    REQUIRE(e.xi.imag() > 0);
    REQUIRE(std::abs(e.xi * e.xi - Complex(-3, -4)) < 1e-14);
}
