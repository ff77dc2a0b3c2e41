#pragma once

// Explicit isotropy elements: assembly of orthogonal Q from congruence
// solutions, the unitriangular generator recurrences, corner generators with
// their diagonal corrections, and sampled generator sets.

#include "verify.hpp"

namespace isotropy {

struct IsotropyElement {
    CMatrix q;
    double residual_orth = 0.0;
    double residual_consim = 0.0;
    double residual_cong = 0.0;
};

// Orthogonal isotropy element of the canonical form from a congruence
// solution family. Refuses families that fail the induced residual law.
inline IsotropyElement assemble_Q(const CanonicalSpec& spec, const ToeplitzFamily& fam) {
    spec.validate();
    CongruenceProblem pb = derive_problem(spec);
    double res = congruence_residual(pb, fam);
    double lim = 1e-8 * (1 + fro_norm(detail_cong::problem_c_matrix(pb)));
    if (res > lim)
        throw std::invalid_argument("assemble_Q: family fails the congruence residual (" +
                                    std::to_string(res) + ")");
    TransformKit kit = transform_kit(spec);
    CMatrix grouped = assemble(fam);
    CMatrix x;
    if (kit.split) {
        CMatrix both = direct_sum({grouped, CMatrix(grouped.conjugate())});
        x = CMatrix(kit.omega * both * kit.omega.transpose());
    } else {
        x = CMatrix(kit.omega * grouped * kit.omega.transpose());
    }
    // pre * x * post solves H conj(Y) = Y H; its adjoint is the isotropy element
    IsotropyElement el;
    el.q = CMatrix(CMatrix(kit.pre * x * kit.post).adjoint());
    CMatrix h = canonical_form(spec);
    el.residual_orth = fro_norm(CMatrix(el.q.transpose() * el.q - identity(h.rows())));
    el.residual_consim = fro_norm(CMatrix(h * el.q - el.q.conjugate() * h));
    el.residual_cong = fro_norm(CMatrix(el.q.adjoint() * h * el.q - h));
    return el;
}

// Unitriangular diagonal family from skew-symmetric data:
// W_n = 1/2 B_r^{-1} (Z_n - sum_{j=1}^{n-1} W_j^T B_r W_{n-j}).
inline ToeplitzFamily gen_asZ(const std::vector<int>& alpha, const std::vector<int>& mult,
                              const std::vector<CMatrix>& b,
                              const std::map<std::pair<int, int>, CMatrix>& z) {
    ToeplitzFamily fam = ToeplitzFamily::identity_family(alpha, mult, Flavor::plain);
    for (int r = 0; r < fam.blocks(); ++r) {
        std::vector<CMatrix> w(alpha[r], czero(mult[r], mult[r]));
        for (int n = 1; n < alpha[r]; ++n) {
            auto it = z.find({r, n});
            CMatrix zn = it != z.end() ? it->second : czero(mult[r], mult[r]);
            if (!is_skew_symmetric(zn, 1e-9))
                throw std::invalid_argument("gen_asZ: Z blocks must be skew-symmetric");
            CMatrix acc = zn;
            for (int j = 1; j <= n - 1; ++j)
                acc -= CMatrix(w[j].transpose() * b[r] * w[n - j]);
            w[n] = CMatrix(0.5 * solve(b[r], acc));
            fam.at(r, r, n) = w[n];
        }
    }
    return fam;
}

// Complex-alternating variant; Z_n is skew-symmetric for alpha_r - n odd and
// skew-Hermitian for alpha_r - n even.
inline ToeplitzFamily gen_asZ2(const std::vector<int>& alpha, const std::vector<int>& mult,
                               const std::vector<CMatrix>& b,
                               const std::map<std::pair<int, int>, CMatrix>& z) {
    ToeplitzFamily fam = ToeplitzFamily::identity_family(alpha, mult, Flavor::alternating);
    for (int r = 0; r < fam.blocks(); ++r) {
        std::vector<CMatrix> w(alpha[r], czero(mult[r], mult[r]));
        for (int n = 1; n < alpha[r]; ++n) {
            auto it = z.find({r, n});
            CMatrix zn = it != z.end() ? it->second : czero(mult[r], mult[r]);
            bool want_herm = (alpha[r] - n) % 2 == 0;
            if (want_herm ? !is_skew_hermitian(zn, 1e-9) : !is_skew_symmetric(zn, 1e-9))
                throw std::invalid_argument("gen_asZ2: Z block has the wrong symmetry");
            // column j of the row vector is W_j^T (conjugated for j even);
            // row j of the column vector is W_{n-j} (conjugated for j odd)
            CMatrix acc = czero(mult[r], mult[r]);
            for (int j = 1; j <= n - 1; ++j) {
                CMatrix cj = CMatrix(w[j].transpose());
                if (j % 2 == 0) cj = CMatrix(cj.conjugate());
                if (alpha[r] % 2 == 1) cj = CMatrix(cj.conjugate());
                CMatrix pj = w[n - j];
                if (j % 2 == 1) pj = CMatrix(pj.conjugate());
                acc += CMatrix(cj * b[r] * pj);
            }
            w[n] = CMatrix(0.5 * solve(b[r], CMatrix(zn - acc)));
            fam.at(r, r, n) = w[n];
        }
    }
    return fam;
}

namespace detail_gen {

inline double corner_scalar(int n) {
    // a_n = -binom(2n, n) / (2^{2n+1} (n+1))
    double binom = 1.0;
    for (int i = 1; i <= n; ++i) binom = binom * (n + i) / i;
    return -binom / (std::pow(2.0, 2 * n + 1) * (n + 1));
}

inline CMatrix alt_power(const CMatrix& x, int n) {
    // x conj(x) x ... with n factors, starting unconjugated
    CMatrix out = identity(x.rows());
    for (int i = 0; i < n; ++i) out = CMatrix(out * (i % 2 == 0 ? x : CMatrix(x.conjugate())));
    return out;
}

}  // namespace detail_gen

// Corner generator: identity outside rows/columns p, t (1-based, p < t),
// N^k(F) in the (t,p) corner, -B_p^{-1} F^T B_t in the (p,t) corner, and the
// a_n-weighted diagonal corrections at coefficient indices n(2k + a_p - a_t).
// F has size m_t x m_p.
inline ToeplitzFamily gen_corner(const std::vector<int>& alpha, const std::vector<int>& mult,
                                 int p, int t, int k, const CMatrix& f,
                                 const std::vector<CMatrix>& b) {
    const int N = static_cast<int>(alpha.size());
    if (!(1 <= p && p < t && t <= N)) throw std::invalid_argument("gen_corner: need 1 <= p < t <= N");
    const int pi = p - 1, ti = t - 1;
    if (k < 0 || k > alpha[ti] - 1) throw std::invalid_argument("gen_corner: k out of range");
    if (f.rows() != mult[ti] || f.cols() != mult[pi])
        throw std::invalid_argument("gen_corner: F must be m_t x m_p");
    ToeplitzFamily fam = ToeplitzFamily::identity_family(alpha, mult, Flavor::plain);
    fam.at(ti, pi, k) = f;
    fam.at(pi, ti, k) = CMatrix(-solve(b[pi], CMatrix(f.transpose() * b[ti])));
    const int step = 2 * k + alpha[pi] - alpha[ti];
    CMatrix gp = CMatrix(f.transpose() * b[ti] * f * inverse(b[pi]));
    CMatrix gt = CMatrix(b[ti] * f * inverse(b[pi]) * f.transpose());
    for (int n = 1; n * step <= alpha[pi] - 1; ++n) {
        double a = detail_gen::corner_scalar(n - 1);
        CMatrix pw = identity(mult[pi]);
        for (int i = 0; i < n; ++i) pw = CMatrix(pw * gp);
        fam.at(pi, pi, n * step) = CMatrix(a * solve(b[pi], CMatrix(pw * b[pi])));
    }
    for (int n = 1; n * step <= alpha[ti] - 1; ++n) {
        double a = detail_gen::corner_scalar(n - 1);
        CMatrix pw = identity(mult[ti]);
        for (int i = 0; i < n; ++i) pw = CMatrix(pw * gt);
        fam.at(ti, ti, n * step) = CMatrix(a * solve(b[ti], CMatrix(pw * b[ti])));
    }
    return fam;
}

// Complex-alternating corner generator; G = F for k + alpha_t odd, conj(F)
// otherwise, with complex-alternating powers in the mixed-parity cases.
inline ToeplitzFamily gen_corner_alt(const std::vector<int>& alpha, const std::vector<int>& mult,
                                     int p, int t, int k, const CMatrix& f,
                                     const std::vector<CMatrix>& b) {
    const int N = static_cast<int>(alpha.size());
    if (!(1 <= p && p < t && t <= N))
        throw std::invalid_argument("gen_corner_alt: need 1 <= p < t <= N");
    const int pi = p - 1, ti = t - 1;
    if (k < 0 || k > alpha[ti] - 1) throw std::invalid_argument("gen_corner_alt: k out of range");
    if (f.rows() != mult[ti] || f.cols() != mult[pi])
        throw std::invalid_argument("gen_corner_alt: F must be m_t x m_p");
    ToeplitzFamily fam = ToeplitzFamily::identity_family(alpha, mult, Flavor::alternating);
    const bool p_odd = alpha[pi] % 2 == 1, t_odd = alpha[ti] % 2 == 1;
    const bool plain_power = (p_odd == t_odd);  // mixed parity uses alternating products
    CMatrix g = (k + alpha[ti]) % 2 == 1 ? f : CMatrix(f.conjugate());
    fam.at(ti, pi, k) = f;
    fam.at(pi, ti, k) = CMatrix(-solve(b[pi], CMatrix(g.transpose() * b[ti])));
    const int step = 2 * k + alpha[pi] - alpha[ti];
    CMatrix bpinv = inverse(b[pi]);
    // inner factors: conj^k(F) on the p side, conj^{[alpha_p even]}(F)^T on the
    // t side (the first follows the printed table, the second corrects its
    // mixed-parity rows; both pinned by the first-row equations)
    CMatrix gp = CMatrix(g.transpose() * b[ti] * (t_odd ? g : CMatrix(g.conjugate())) * bpinv);
    CMatrix gt = CMatrix(b[ti] * f * bpinv *
                         (p_odd ? CMatrix(f.transpose()) : CMatrix(f.adjoint())));
    auto power = [&](const CMatrix& core, int n) {
        if (!plain_power) return detail_gen::alt_power(core, n);
        CMatrix acc = identity(core.rows());
        for (int i = 0; i < n; ++i) acc = CMatrix(acc * core);
        return acc;
    };
    for (int n = 1; n * step <= alpha[pi] - 1; ++n)
        fam.at(pi, pi, n * step) = CMatrix(detail_gen::corner_scalar(n - 1) *
                                           solve(b[pi], CMatrix(power(gp, n) * b[pi])));
    for (int n = 1; n * step <= alpha[ti] - 1; ++n)
        fam.at(ti, ti, n * step) = CMatrix(detail_gen::corner_scalar(n - 1) *
                                           solve(b[ti], CMatrix(power(gt, n) * b[ti])));
    return fam;
}

struct GeneratorSet {
    enum class Provenance { base, asZ, asZ2, corner, corner_alt };
    struct Element {
        IsotropyElement element;
        Provenance tag = Provenance::base;
    };
    std::vector<Element> o_part;  // block-diagonal factor samples
    std::vector<Element> v_part;  // unipotent factor samples
};

// Sampled generators: block-diagonal elements from exponentiated structured
// skew matrices, unitriangular elements from the Z-recurrences, and corner
// elements per block pair. budget counts samples per family.
inline GeneratorSet generator_set(const CanonicalSpec& spec, int budget,
                                  std::uint64_t seed = 0) {
    spec.validate();
    Rng rng(seed);
    CongruenceProblem pb = derive_problem(spec);
    const int N = pb.blocks();
    GeneratorSet out;

    auto push = [&](std::vector<GeneratorSet::Element>& side, const ToeplitzFamily& fam,
                    GeneratorSet::Provenance tag) {
        IsotropyElement el = assemble_Q(spec, fam);
        VerificationReport rep = verify_element(spec, el.q);
        if (!rep.pass) throw std::logic_error("generator_set: sampled element failed verification");
        side.push_back({el, tag});
    };

    push(out.o_part, ToeplitzFamily::identity_family(pb.alpha, pb.mult, pb.family_flavor()),
         GeneratorSet::Provenance::base);

    std::vector<CMatrix> b0;
    for (int r = 0; r < N; ++r) b0.push_back(pb.B[r][0]);

    for (int sample = 0; sample < budget; ++sample) {
        // block-diagonal factor
        if (pb.flavor == ProblemFlavor::vw) {
            FreeParameters prm = FreeParameters::identity(pb);
            for (int r = 0; r < N; ++r)
                prm.a0[r] = sample_stabilizer(pb.B[r][0], BaseGroup::vw_shaped, false, pb.mu, rng);
            push(out.o_part, solve_congruence_vw(pb, prm).family, GeneratorSet::Provenance::base);
        } else {
            ToeplitzFamily fam =
                ToeplitzFamily::identity_family(pb.alpha, pb.mult, pb.family_flavor());
            for (int r = 0; r < N; ++r)
                fam.at(r, r, 0) = sample_stabilizer(pb.B[r][0], base_group(pb, r),
                                                    pb.real_solutions, 0.0, rng);
            push(out.o_part, fam, GeneratorSet::Provenance::base);
        }

        // unitriangular diagonal factor
        if (pb.flavor == ProblemFlavor::vw) {
            FreeParameters prm = FreeParameters::identity(pb);
            for (int r = 0; r < N; ++r)
                for (int j = 1; j < pb.alpha[r]; ++j) prm.z[{r, j}] = random_z(pb, r, j, rng);
            push(out.v_part, solve_congruence_vw(pb, prm).family, GeneratorSet::Provenance::asZ);
        } else if (pb.flavor == ProblemFlavor::alternating) {
            std::map<std::pair<int, int>, CMatrix> z;
            for (int r = 0; r < N; ++r)
                for (int j = 1; j < pb.alpha[r]; ++j) z[{r, j}] = random_z(pb, r, j, rng);
            push(out.v_part, gen_asZ2(pb.alpha, pb.mult, b0, z), GeneratorSet::Provenance::asZ2);
        } else {
            std::map<std::pair<int, int>, CMatrix> z;
            for (int r = 0; r < N; ++r)
                for (int j = 1; j < pb.alpha[r]; ++j)
                    z[{r, j}] = rng.skew_symmetric(pb.mult[r], pb.real_solutions);
            push(out.v_part, gen_asZ(pb.alpha, pb.mult, b0, z), GeneratorSet::Provenance::asZ);
        }

        // corner factors
        for (int p = 1; p <= N; ++p)
            for (int t = p + 1; t <= N; ++t) {
                int k = static_cast<int>(rng.below(pb.alpha[t - 1]));
                if (pb.flavor == ProblemFlavor::vw) {
                    FreeParameters prm = FreeParameters::identity(pb);
                    auto& coeffs = prm.sub[{t - 1, p - 1}];
                    const Index mr = pb.mult[t - 1] / 2, ms = pb.mult[p - 1] / 2;
                    std::vector<CMatrix> vs(coeffs.size(), czero(mr, ms)),
                        ws(coeffs.size(), czero(mr, ms));
                    vs[k] = rng.complex_matrix(mr, ms);
                    ws[k] = rng.complex_matrix(mr, ms);
                    CMatrix wprev = czero(mr, ms);
                    for (size_t n = 0; n < coeffs.size(); ++n) {
                        coeffs[n] = vw_make(vs[n], ws[n], pb.mu, n == 0 ? nullptr : &wprev);
                        wprev = ws[n];
                    }
                    push(out.v_part, solve_congruence_vw(pb, prm).family,
                         GeneratorSet::Provenance::corner);
                } else if (pb.flavor == ProblemFlavor::alternating) {
                    CMatrix f = rng.complex_matrix(pb.mult[t - 1], pb.mult[p - 1]);
                    push(out.v_part, gen_corner_alt(pb.alpha, pb.mult, p, t, k, f, b0),
                         GeneratorSet::Provenance::corner_alt);
                } else {
                    CMatrix f = pb.real_solutions
                                    ? rng.real_matrix(pb.mult[t - 1], pb.mult[p - 1])
                                    : rng.complex_matrix(pb.mult[t - 1], pb.mult[p - 1]);
                    push(out.v_part, gen_corner(pb.alpha, pb.mult, p, t, k, f, b0),
                         GeneratorSet::Provenance::corner);
                }
            }
    }
    return out;
}

}  // namespace isotropy
