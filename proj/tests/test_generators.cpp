#include <catch2/catch_amalgamated.hpp>

#include <isotropy/generators.hpp>
#include <isotropy/rng.hpp>

using namespace isotropy;

namespace {
CanonicalSpec spec_pos(double rho, std::vector<int> alpha, std::vector<int> mult) {
    CanonicalSpec s;
    s.eigen = EigenClass::positive_real(rho);
    s.alpha = std::move(alpha);
    s.mult = std::move(mult);
    for (int m : s.mult) s.eps.push_back(std::vector<int>(m, 1));
    return s;
}

CanonicalSpec spec_zero(std::vector<int> alpha, std::vector<int> mult) {
    CanonicalSpec s;
    s.eigen = EigenClass::zero_class();
    s.alpha = std::move(alpha);
    s.mult = std::move(mult);
    for (int m : s.mult) s.eps.push_back(std::vector<int>(m, 1));
    return s;
}

CanonicalSpec spec_neg(double mu, std::vector<int> alpha, std::vector<int> mult) {
    CanonicalSpec s;
    s.eigen = EigenClass::negative_real(mu);
    s.alpha = std::move(alpha);
    s.mult = std::move(mult);
    return s;
}

CanonicalSpec spec_nonreal(Complex xi, std::vector<int> alpha, std::vector<int> mult) {
    CanonicalSpec s;
    s.eigen = EigenClass::non_real(xi);
    s.alpha = std::move(alpha);
    s.mult = std::move(mult);
    return s;
}
}  // namespace

TEST_CASE("assemble_Q basics", "[generators]") {
    CanonicalSpec s = spec_pos(1.0, {1}, {1});
    CongruenceProblem pb = derive_problem(s);
    IsotropyElement id = assemble_Q(s, ToeplitzFamily::identity_family(pb.alpha, pb.mult,
                                                                      pb.family_flavor()));
    REQUIRE(fro_norm(CMatrix(id.q - identity(1))) < 1e-14);
    REQUIRE(id.residual_orth < 1e-14);

    ToeplitzFamily neg = ToeplitzFamily::identity_family(pb.alpha, pb.mult, pb.family_flavor());
    neg.at(0, 0, 0) = CMatrix(-identity(1));
    IsotropyElement sign = assemble_Q(s, neg);
    REQUIRE(std::abs(sign.q(0, 0) + 1.0) < 1e-14);
    REQUIRE(sign.residual_cong < 1e-12);

    // a family violating the congruence residual is refused
    ToeplitzFamily bad = ToeplitzFamily::identity_family(pb.alpha, pb.mult, pb.family_flavor());
    bad.at(0, 0, 0) = CMatrix(2.0 * identity(1));
    REQUIRE_THROWS_AS(assemble_Q(s, bad), std::invalid_argument);
}

TEST_CASE("end-to-end elements for every eigenvalue class", "[generators]") {
    Rng rng(314);
    std::vector<CanonicalSpec> specs = {
        spec_pos(1.7, {3, 2}, {1, 2}),
        spec_zero({3, 2}, {2, 1}),
        spec_neg(0.8, {2, 1}, {1, 2}),
        spec_nonreal(Complex(0.5, 2.0), {3, 1}, {1, 2}),
    };
    specs.push_back(spec_pos(2.5, {2, 1}, {2, 1}));
    specs.back().eps = {{1, -1}, {1}};
    specs.push_back(spec_zero({2}, {3}));
    specs.back().eps = {{1, -1, 1}};

    for (const auto& s : specs) {
        CongruenceProblem pb = derive_problem(s);
        for (int trial = 0; trial < 3; ++trial) {
            FreeParameters prm = random_parameters(pb, rng);
            SolveOutcome out = detail_cong::run_solver(pb, prm);
            REQUIRE(out.status == SolveOutcome::Status::ok);
            IsotropyElement el = assemble_Q(s, out.family);
            VerificationReport rep = verify_element(s, el.q);
            INFO("class " << int(s.eigen.kind) << " residuals " << el.residual_orth << " "
                          << el.residual_consim << " " << el.residual_cong);
            REQUIRE(rep.pass);
        }
    }
}

TEST_CASE("gen_asZ", "[generators]") {
    // all Z = 0 gives the identity family
    std::vector<CMatrix> b = {identity(2)};
    ToeplitzFamily id = gen_asZ({3}, {2}, b, {});
    REQUIRE(fro_norm(CMatrix(assemble(id) - identity(6))) == 0.0);

    // W_1 = Z_1 / 2 for B = I
    CMatrix z1(2, 2);
    z1 << 0.0, 1.0, -1.0, 0.0;
    std::map<std::pair<int, int>, CMatrix> z = {{{0, 1}, z1}};
    ToeplitzFamily fam = gen_asZ({2}, {2}, b, z);
    REQUIRE(fro_norm(CMatrix(fam.at(0, 0, 1) - 0.5 * z1)) < 1e-15);

    // assembled element passes the isotropy residuals (identity base form)
    CanonicalSpec s = spec_nonreal(Complex(1, 1), {2}, {2});
    IsotropyElement el = assemble_Q(s, fam);
    REQUIRE(verify_element(s, el.q).pass);

    CMatrix not_skew = identity(2);
    REQUIRE_THROWS_AS(gen_asZ({2}, {2}, b, {{{0, 1}, not_skew}}), std::invalid_argument);
}

TEST_CASE("gen_asZ2", "[generators]") {
    Rng rng(7);
    std::vector<int> alpha = {3, 2}, mult = {2, 1};
    std::vector<CMatrix> b = {identity(2), identity(1)};
    std::map<std::pair<int, int>, CMatrix> z;
    for (int r = 0; r < 2; ++r)
        for (int j = 1; j < alpha[r]; ++j)
            z[{r, j}] = (alpha[r] - j) % 2 == 0 ? rng.skew_hermitian(mult[r])
                                                : rng.skew_symmetric(mult[r]);
    ToeplitzFamily fam = gen_asZ2(alpha, mult, b, z);
    CanonicalSpec s = spec_zero(alpha, mult);
    IsotropyElement el = assemble_Q(s, fam);
    REQUIRE(verify_element(s, el.q).pass);

    // wrong symmetry rejected
    std::map<std::pair<int, int>, CMatrix> badz = {{{0, 1}, rng.skew_symmetric(2)}};
    badz[{0, 1}](0, 0) = 1.0;
    REQUIRE_THROWS_AS(gen_asZ2(alpha, mult, b, badz), std::invalid_argument);
}

TEST_CASE("corner coefficient scalars", "[generators]") {
    REQUIRE(detail_gen::corner_scalar(0) == -0.5);
    REQUIRE(detail_gen::corner_scalar(1) == -0.125);
    REQUIRE(detail_gen::corner_scalar(2) == -0.0625);
}

TEST_CASE("corner generator reproduces the golden layout", "[generators]") {
    Rng rng(11);
    std::vector<int> alpha = {4, 2}, mult = {2, 3};
    std::vector<CMatrix> b = {identity(2), identity(3)};
    for (int trial = 0; trial < 3; ++trial) {
        CMatrix f = rng.real_matrix(3, 2);
        ToeplitzFamily fam = gen_corner(alpha, mult, 1, 2, 0, f, b);

        REQUIRE(fro_norm(CMatrix(fam.at(0, 0, 0) - identity(2))) == 0.0);
        REQUIRE(fro_norm(fam.at(0, 0, 1)) == 0.0);
        REQUIRE(fro_norm(CMatrix(fam.at(0, 0, 2) + 0.5 * f.transpose() * f)) < 1e-13);
        REQUIRE(fro_norm(fam.at(0, 0, 3)) == 0.0);
        REQUIRE(fro_norm(CMatrix(fam.at(1, 0, 0) - f)) == 0.0);
        REQUIRE(fro_norm(fam.at(1, 0, 1)) == 0.0);
        REQUIRE(fro_norm(CMatrix(fam.at(0, 1, 0) + f.transpose())) < 1e-14);
        REQUIRE(fro_norm(fam.at(0, 1, 1)) == 0.0);
        REQUIRE(fro_norm(CMatrix(fam.at(1, 1, 0) - identity(3))) == 0.0);
        REQUIRE(fro_norm(fam.at(1, 1, 1)) == 0.0);

        // full 14x14 layout, built independently
        CMatrix want = CMatrix::Zero(14, 14);
        auto put = [&](Index r0, Index c0, const CMatrix& m) {
            want.block(r0, c0, m.rows(), m.cols()) = m;
        };
        for (int d = 0; d < 4; ++d) put(2 * d, 2 * d, identity(2));
        for (int d = 0; d < 2; ++d) put(8 + 3 * d, 8 + 3 * d, identity(3));
        CMatrix corr = CMatrix(-0.5 * f.transpose() * f);
        put(0, 4, corr);
        put(2, 6, corr);
        put(0, 8, CMatrix(-f.transpose()));
        put(2, 11, CMatrix(-f.transpose()));
        put(8, 4, f);
        put(11, 6, f);
        REQUIRE((assemble(fam) - want).cwiseAbs().maxCoeff() < 1e-12);

        // and the assembled element is a genuine isotropy element
        CanonicalSpec s = spec_pos(1.0, alpha, mult);
        IsotropyElement el = assemble_Q(s, fam);
        REQUIRE(verify_element(s, el.q).pass);
    }

    // F = 0 gives the identity family
    ToeplitzFamily id = gen_corner(alpha, mult, 1, 2, 0, czero(3, 2), b);
    REQUIRE(fro_norm(CMatrix(assemble(id) - identity(14))) == 0.0);

    REQUIRE_THROWS_AS(gen_corner(alpha, mult, 2, 1, 0, czero(3, 2), b), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_corner(alpha, mult, 1, 2, 5, czero(3, 2), b), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_corner(alpha, mult, 1, 2, 0, czero(2, 3), b), std::invalid_argument);

    // nonzero k places the corner on an upper diagonal
    CMatrix f = rng.real_matrix(3, 2);
    ToeplitzFamily shifted = gen_corner(alpha, mult, 1, 2, 1, f, b);
    REQUIRE(fro_norm(CMatrix(shifted.at(1, 0, 1) - f)) == 0.0);
    REQUIRE(fro_norm(shifted.at(1, 0, 0)) == 0.0);
    CanonicalSpec s = spec_pos(0.6, alpha, mult);
    REQUIRE(verify_element(s, assemble_Q(s, shifted).q).pass);
}

TEST_CASE("alternating corner generator", "[generators]") {
    Rng rng(13);
    std::vector<int> alpha = {4, 2}, mult = {2, 3};
    std::vector<CMatrix> b = {identity(2), identity(3)};
    CMatrix f = rng.complex_matrix(3, 2);
    ToeplitzFamily fam = gen_corner_alt(alpha, mult, 1, 2, 0, f, b);

    // printed layout: G = conj(F), corners F and -F^*, correction -1/2 F^* F
    REQUIRE(fro_norm(CMatrix(fam.at(1, 0, 0) - f)) == 0.0);
    REQUIRE(fro_norm(CMatrix(fam.at(0, 1, 0) + f.adjoint())) < 1e-14);
    REQUIRE(fro_norm(CMatrix(fam.at(0, 0, 2) + 0.5 * f.adjoint() * f)) < 1e-13);
    CMatrix x = assemble(fam);
    // the alternating assembly puts -F^T and -1/2 F^T conj(F) on the second rows
    REQUIRE(fro_norm(CMatrix(x.block(2, 11, 2, 3) + f.transpose())) < 1e-13);
    REQUIRE(fro_norm(CMatrix(x.block(2, 6, 2, 2) + 0.5 * f.transpose() * f.conjugate())) < 1e-13);

    CanonicalSpec s = spec_zero(alpha, mult);
    IsotropyElement el = assemble_Q(s, fam);
    REQUIRE(verify_element(s, el.q).pass);

    // mixed block-size parity exercises the alternating powers
    std::vector<int> alpha2 = {3, 2}, mult2 = {1, 1};
    std::vector<CMatrix> b2 = {identity(1), identity(1)};
    for (int k = 0; k < 2; ++k) {
        CMatrix f2 = rng.complex_matrix(1, 1);
        ToeplitzFamily g = gen_corner_alt(alpha2, mult2, 1, 2, k, f2, b2);
        CanonicalSpec s2 = spec_zero(alpha2, mult2);
        IsotropyElement el2 = assemble_Q(s2, g);
        REQUIRE(verify_element(s2, el2.q).pass);
    }
}

TEST_CASE("block-diagonal factor samples preserve the base form", "[generators]") {
    Rng rng(3);
    CMatrix g = czero(3, 3);
    g(0, 0) = 1;
    g(1, 1) = 1;
    g(2, 2) = -1;
    for (int trial = 0; trial < 5; ++trial) {
        // real pseudo-orthogonal sample
        CMatrix q = sample_stabilizer(g, BaseGroup::orthogonal_t, true, 0.0, rng);
        REQUIRE(fro_norm(CMatrix(q.transpose() * g * q - g)) < 1e-11);
        REQUIRE(fro_norm(CMatrix(q.imag().cast<Complex>())) < 1e-12);
        // pseudo-unitary sample
        CMatrix u = sample_stabilizer(g, BaseGroup::unitary_star, false, 0.0, rng);
        REQUIRE(fro_norm(CMatrix(u.adjoint() * g * u - g)) < 1e-11);
        // complex orthogonal sample
        CMatrix c = sample_stabilizer(identity(3), BaseGroup::orthogonal_t, false, 0.0, rng);
        REQUIRE(fro_norm(CMatrix(c.transpose() * c - identity(3))) < 1e-11);
        // paired-shape sample keeps shape and the K-form
        double mu = 1.3;
        CMatrix k = czero(4, 4);
        k.block(0, 0, 2, 2) = -mu * mu * identity(2);
        k.block(2, 2, 2, 2) = identity(2);
        CMatrix v = sample_stabilizer(k, BaseGroup::vw_shaped, false, mu, rng);
        REQUIRE(fro_norm(CMatrix(v.transpose() * k * v - k)) < 1e-11);
        std::vector<CMatrix> one = {v};
        REQUIRE(vw_chain_error(one, mu) < 1e-11);
    }
}

TEST_CASE("generator sets", "[generators]") {
    std::vector<CanonicalSpec> specs = {
        spec_pos(1.3, {2, 1}, {2, 1}),
        spec_zero({3, 1}, {1, 2}),
        spec_neg(1.1, {2, 1}, {1, 1}),
        spec_nonreal(Complex(1, 1), {2, 1}, {1, 1}),
    };
    for (const auto& s : specs) {
        GeneratorSet base_only = generator_set(s, 0, 5);
        REQUIRE(base_only.o_part.size() == 1);
        REQUIRE(base_only.v_part.empty());
        REQUIRE(fro_norm(CMatrix(base_only.o_part[0].element.q -
                                 identity(base_only.o_part[0].element.q.rows()))) < 1e-12);

        GeneratorSet gs = generator_set(s, 2, 77);
        REQUIRE(gs.o_part.size() == 3);  // identity + budget samples
        REQUIRE(!gs.v_part.empty());
        for (const auto& e : gs.v_part) {
            NilpotencyResult nil = nilpotency_order(e.element.q);
            REQUIRE(nil.unipotent);
            // diagonal unitriangular elements vanish at power alpha_1; corner
            // elements can chain through the corner pair up to twice that
            if (e.tag == GeneratorSet::Provenance::asZ ||
                e.tag == GeneratorSet::Provenance::asZ2)
                REQUIRE(nil.order <= s.alpha[0]);
            else
                REQUIRE(nil.order <= 2 * s.alpha[0]);
        }
        // closure: products and inverses of verified elements re-verify
        CMatrix q1 = gs.o_part[1].element.q, q2 = gs.v_part[0].element.q;
        REQUIRE(verify_element(s, CMatrix(q1 * q2)).pass);
        REQUIRE(verify_element(s, CMatrix(q2.transpose())).pass);
    }

    // all multiplicities one with a nonreal eigenvalue: the skew samples are
    // zero, so the block factor reduces to signs
    CanonicalSpec ones = spec_nonreal(Complex(0.5, 2), {2, 1}, {1, 1});
    GeneratorSet gs = generator_set(ones, 2, 9);
    for (const auto& e : gs.o_part) {
        CMatrix q = e.element.q;
        REQUIRE(fro_norm(CMatrix(q * q - identity(q.rows()))) < 1e-10);
    }
}
