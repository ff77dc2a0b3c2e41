#include <catch2/catch_amalgamated.hpp>

#include <isotropy/generators.hpp>
#include <isotropy/rng.hpp>
#include <isotropy/verify.hpp>

using namespace isotropy;

namespace {
CanonicalSpec make_spec(EigenClass e, std::vector<int> alpha, std::vector<int> mult) {
    CanonicalSpec s;
    s.eigen = e;
    s.alpha = std::move(alpha);
    s.mult = std::move(mult);
    if (s.has_signs())
        for (int m : s.mult) s.eps.push_back(std::vector<int>(m, 1));
    return s;
}
}  // namespace

TEST_CASE("tangent dimension basics", "[verify]") {
    CMatrix lam(1, 1);
    lam << 2.0;
    REQUIRE(tangent_dimension(lam) == 0);

    // generic canonical form: distinct 1x1 values and distinct nonreal pairs
    CMatrix h = direct_sum({lam, CMatrix(-1.0 * identity(1)), l_block(Complex(1, 1), 1),
                            l_block(Complex(0.5, 2), 1)});
    REQUIRE(tangent_dimension(h) == 0);

    CanonicalSpec pair = make_spec(EigenClass::zero_class(), {1}, {2});
    REQUIRE(tangent_dimension(canonical_form(pair)) == 2);
    REQUIRE(dimension(pair) == 2);

    REQUIRE_THROWS_AS(tangent_dimension(CMatrix(jordan_block(1.0, 2))), std::invalid_argument);
}

TEST_CASE("tangent dimension equals the formula on a grid", "[verify]") {
    std::vector<CanonicalSpec> specs;
    specs.push_back(make_spec(EigenClass::positive_real(1.0), {3, 2}, {1, 1}));
    specs.push_back(make_spec(EigenClass::positive_real(2.5), {2}, {3}));
    specs.push_back(make_spec(EigenClass::zero_class(), {3, 2}, {1, 2}));
    specs.push_back(make_spec(EigenClass::negative_real(0.7), {3, 1}, {1, 1}));
    specs.push_back(make_spec(EigenClass::negative_real(1.0), {2}, {2}));
    specs.push_back(make_spec(EigenClass::non_real(Complex(1, 1)), {2, 1}, {1, 2}));
    for (const auto& s : specs) {
        INFO("kind " << int(s.eigen.kind));
        REQUIRE(tangent_dimension(canonical_form(s)) == dimension(s));
    }
}

TEST_CASE("tangent dimension is conjugation invariant", "[verify]") {
    Rng rng(4);
    CanonicalSpec s = make_spec(EigenClass::positive_real(1.3), {2, 1}, {1, 2});
    CMatrix h = canonical_form(s);
    int want = tangent_dimension(h);
    for (int trial = 0; trial < 3; ++trial) {
        CMatrix q = expm(rng.skew_symmetric(h.rows()));
        CMatrix conj_h = CMatrix(q.adjoint() * h * q);
        REQUIRE(tangent_dimension(conj_h) == want);
    }
}

TEST_CASE("verify_element reports", "[verify]") {
    CanonicalSpec s = make_spec(EigenClass::positive_real(1.0), {2}, {2});
    CMatrix h = canonical_form(s);
    VerificationReport ok = verify_element(s, identity(h.rows()));
    REQUIRE(ok.pass);
    REQUIRE(ok.residual_orth == 0.0);
    REQUIRE(ok.residual_consim == 0.0);
    REQUIRE(ok.residual_cong == 0.0);

    CMatrix notq = CMatrix(2.0 * identity(h.rows()));
    VerificationReport bad = verify_element(s, notq);
    REQUIRE(!bad.pass);
    REQUIRE(bad.residual_orth > bad.threshold_orth);

    VerificationReport with_dims = verify_element(s, identity(h.rows()), 1e-8, true);
    REQUIRE(with_dims.tangent_dim_oracle == with_dims.formula_dim);
    REQUIRE(with_dims.pass);

    REQUIRE_THROWS_AS(verify_element(s, identity(2)), std::invalid_argument);
}

TEST_CASE("verify_family", "[verify]") {
    CanonicalSpec s = make_spec(EigenClass::non_real(Complex(1, 2)), {2, 1}, {1, 1});
    CongruenceProblem pb = derive_problem(s);
    ToeplitzFamily id = ToeplitzFamily::identity_family(pb.alpha, pb.mult, pb.family_flavor());
    REQUIRE(verify_family(pb, id).pass);

    ToeplitzFamily off = id;
    off.at(0, 0, 0) = CMatrix(1.5 * identity(1));
    REQUIRE(!verify_family(pb, off).pass);
}

TEST_CASE("nilpotency order", "[verify]") {
    REQUIRE(nilpotency_order(identity(3)).unipotent);
    REQUIRE(nilpotency_order(identity(3)).order == 1);

    CMatrix shift = identity(3);
    shift(0, 1) = 1.0;
    shift(1, 2) = 1.0;
    NilpotencyResult r = nilpotency_order(shift);
    REQUIRE(r.unipotent);
    REQUIRE(r.order == 3);

    REQUIRE(!nilpotency_order(CMatrix(2.0 * identity(2))).unipotent);
}

TEST_CASE("splitting over distinct eigenvalues", "[verify]") {
    CanonicalSpec a = make_spec(EigenClass::positive_real(1.0), {1}, {1});
    CanonicalSpec b = make_spec(EigenClass::positive_real(2.0), {1}, {1});
    REQUIRE(splitting_check({a, b}));
    REQUIRE(splitting_check({a}));

    CanonicalSpec h20 = make_spec(EigenClass::zero_class(), {2}, {1});
    REQUIRE(splitting_check({h20, a}));

    // eigenvalue collision is rejected
    CanonicalSpec a2 = make_spec(EigenClass::positive_real(1.0), {2}, {1});
    REQUIRE_THROWS_AS(splitting_check({a, a2}), std::invalid_argument);

    // mixed classes
    CanonicalSpec k = make_spec(EigenClass::negative_real(1.0), {1}, {1});
    CanonicalSpec l = make_spec(EigenClass::non_real(Complex(1, 1)), {1}, {1});
    REQUIRE(splitting_check({a, k, l}));
}
