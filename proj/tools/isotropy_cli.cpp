// Command-line front end: construct canonical forms, compute isotropy group
// dimensions, generate verified isotropy elements, and run the brute-force
// oracle. All file I/O is JSON; complex scalars are [re, im] pairs and
// matrices nested row-major arrays.
//
// Exit codes: 0 success / verification passed, 1 verification failure or
// unsolvable instance, 2 invalid input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include <isotropy/isotropy.hpp>
#include <isotropy/serialize.hpp>

using namespace isotropy;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open " + out_path + " for writing");
        out << j.dump(2) << "\n";
    }
}

struct GeneratorRequest {
    std::string type;  // asZ | asZ2 | corner
    int p = 0, t = 0, k = 0;
    std::optional<CMatrix> f;
};

std::vector<GeneratorRequest> parse_requests(const json& spec_doc) {
    std::vector<GeneratorRequest> reqs;
    if (!spec_doc.contains("generators")) return reqs;
    for (const auto& g : spec_doc["generators"]) {
        GeneratorRequest r;
        r.type = g.at("type").get<std::string>();
        if (r.type == "corner") {
            r.p = g.at("p").get<int>();
            r.t = g.at("t").get<int>();
            r.k = g.at("k").get<int>();
            if (g.contains("F")) r.f = matrix_from_json(g["F"]);
        } else if (r.type != "asZ" && r.type != "asZ2") {
            throw std::invalid_argument("unknown generator type " + r.type);
        }
        reqs.push_back(std::move(r));
    }
    return reqs;
}

ToeplitzFamily family_for_request(const CongruenceProblem& pb, const GeneratorRequest& req,
                                  Rng& rng) {
    const int N = pb.blocks();
    std::vector<CMatrix> b0;
    for (int r = 0; r < N; ++r) b0.push_back(pb.B[r][0]);

    if (req.type == "asZ" || req.type == "asZ2") {
        bool alt = pb.flavor == ProblemFlavor::alternating;
        if ((req.type == "asZ2") != alt)
            throw std::invalid_argument(req.type + " does not match the eigenvalue class");
        if (pb.flavor == ProblemFlavor::vw) {
            FreeParameters prm = FreeParameters::identity(pb);
            for (int r = 0; r < N; ++r)
                for (int j = 1; j < pb.alpha[r]; ++j) prm.z[{r, j}] = random_z(pb, r, j, rng);
            return solve_congruence_vw(pb, prm).family;
        }
        std::map<std::pair<int, int>, CMatrix> z;
        for (int r = 0; r < N; ++r)
            for (int j = 1; j < pb.alpha[r]; ++j) z[{r, j}] = random_z(pb, r, j, rng);
        return alt ? gen_asZ2(pb.alpha, pb.mult, b0, z) : gen_asZ(pb.alpha, pb.mult, b0, z);
    }

    if (req.p < 1 || req.t <= req.p || req.t > N)
        throw std::invalid_argument("corner request needs 1 <= p < t <= N");
    if (pb.flavor == ProblemFlavor::vw) {
        FreeParameters prm = FreeParameters::identity(pb);
        auto& coeffs = prm.sub[{req.t - 1, req.p - 1}];
        if (req.k < 0 || req.k >= static_cast<int>(coeffs.size()))
            throw std::invalid_argument("corner request: k out of range");
        const Index mr = pb.mult[req.t - 1] / 2, ms = pb.mult[req.p - 1] / 2;
        CMatrix v = rng.complex_matrix(mr, ms), w = rng.complex_matrix(mr, ms);
        CMatrix wprev = czero(mr, ms);
        for (size_t n = 0; n < coeffs.size(); ++n) {
            CMatrix vn = static_cast<int>(n) == req.k ? v : czero(mr, ms);
            CMatrix wn = static_cast<int>(n) == req.k ? w : czero(mr, ms);
            coeffs[n] = vw_make(vn, wn, pb.mu, n == 0 ? nullptr : &wprev);
            wprev = wn;
        }
        return solve_congruence_vw(pb, prm).family;
    }
    CMatrix f;
    if (req.f) {
        f = *req.f;
    } else {
        f = pb.real_solutions ? rng.real_matrix(pb.mult[req.t - 1], pb.mult[req.p - 1])
                              : rng.complex_matrix(pb.mult[req.t - 1], pb.mult[req.p - 1]);
    }
    if (pb.real_solutions && fro_norm(CMatrix(f.imag().cast<Complex>())) > 0)
        throw std::invalid_argument("corner request: F must be real for a positive eigenvalue");
    return pb.flavor == ProblemFlavor::alternating
               ? gen_corner_alt(pb.alpha, pb.mult, req.p, req.t, req.k, f, b0)
               : gen_corner(pb.alpha, pb.mult, req.p, req.t, req.k, f, b0);
}

int run(int argc, char** argv) {
    CLI::App app{"isotropy: canonical Hermitian forms under complex-orthogonal congruence "
                 "and their isotropy groups"};
    app.require_subcommand(1);

    std::string spec_path, out_path, params_path, matrix_path;
    std::optional<std::uint64_t> seed_flag;
    int count = 1;
    double tol = 1e-8;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--spec", spec_path, "problem file (JSON)")->required();
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--tol", tol, "residual tolerance factor (default 1e-8)");
    };

    CLI::App* cmd_dim = app.add_subcommand("dim", "print the isotropy group dimension");
    add_common(cmd_dim);
    CLI::App* cmd_canonical = app.add_subcommand("canonical", "print the canonical form");
    add_common(cmd_canonical);
    CLI::App* cmd_generate =
        app.add_subcommand("generate", "generate verified isotropy group elements");
    add_common(cmd_generate);
    cmd_generate->add_option("--seed", seed_flag, "random seed");
    cmd_generate->add_option("--params", params_path, "explicit free parameters (JSON)");
    cmd_generate->add_option("--count", count, "number of random elements (default 1)");
    CLI::App* cmd_verify = app.add_subcommand("verify", "verify a candidate element");
    add_common(cmd_verify);
    cmd_verify->add_option("--matrix", matrix_path, "candidate matrix file (JSON)")->required();
    CLI::App* cmd_oracle =
        app.add_subcommand("oracle", "compare the dimension formula with the tangent oracle");
    add_common(cmd_oracle);

    CLI11_PARSE(app, argc, argv);

    json spec_doc = load_json(spec_path);
    CanonicalSpec spec = spec_from_json(spec_doc);

    if (cmd_dim->parsed()) {
        emit(json{{"spec", spec_to_json(spec)}, {"dimension", dimension(spec)}}, out_path);
        return 0;
    }

    if (cmd_canonical->parsed()) {
        emit(json{{"spec", spec_to_json(spec)}, {"matrix", matrix_to_json(canonical_form(spec))}},
             out_path);
        return 0;
    }

    if (cmd_oracle->parsed()) {
        int formula = dimension(spec);
        int oracle = tangent_dimension(canonical_form(spec));
        bool match = formula == oracle;
        emit(json{{"spec", spec_to_json(spec)},
                  {"formula_dim", formula},
                  {"tangent_dim", oracle},
                  {"match", match}},
             out_path);
        return match ? 0 : 1;
    }

    if (cmd_verify->parsed()) {
        json mdoc = load_json(matrix_path);
        CMatrix q = matrix_from_json(mdoc.contains("matrix") ? mdoc["matrix"] : mdoc);
        VerificationReport rep = verify_element(spec, q, tol);
        emit(json{{"spec", spec_to_json(spec)}, {"report", report_to_json(rep)}}, out_path);
        return rep.pass ? 0 : 1;
    }

    // generate
    CongruenceProblem pb = derive_problem(spec);
    bool have_params = !params_path.empty() || spec_doc.contains("params");
    bool have_seed = seed_flag.has_value() || spec_doc.contains("seed");
    if (have_params && have_seed)
        throw std::invalid_argument("seed and explicit params are mutually exclusive");

    json out = {{"spec", spec_to_json(spec)}, {"elements", json::array()}};
    bool all_pass = true;
    auto push_element = [&](const ToeplitzFamily& fam, const std::string& provenance) {
        IsotropyElement el = assemble_Q(spec, fam);
        VerificationReport rep = verify_element(spec, el.q, tol);
        all_pass = all_pass && rep.pass;
        out["elements"].push_back({{"provenance", provenance},
                                   {"q", matrix_to_json(el.q)},
                                   {"report", report_to_json(rep)}});
    };

    if (have_params) {
        json pdoc = params_path.empty() ? spec_doc["params"] : load_json(params_path);
        FreeParameters prm = params_from_json(pb, pdoc);
        SolveOutcome sol = detail_cong::run_solver(pb, prm);
        if (sol.status == SolveOutcome::Status::unsolvable) {
            emit(json{{"spec", spec_to_json(spec)},
                      {"status", "unsolvable"},
                      {"diagnostic", sol.diagnostic}},
                 out_path);
            return 1;
        }
        push_element(sol.family, "params");
    } else {
        std::uint64_t seed =
            seed_flag ? *seed_flag
                      : (spec_doc.contains("seed") ? spec_doc["seed"].get<std::uint64_t>() : 0);
        Rng rng(seed);
        std::vector<GeneratorRequest> reqs = parse_requests(spec_doc);
        if (!reqs.empty()) {
            for (const auto& r : reqs) push_element(family_for_request(pb, r, rng), r.type);
        } else {
            for (int i = 0; i < count; ++i) {
                FreeParameters prm = random_parameters(pb, rng);
                SolveOutcome sol = detail_cong::run_solver(pb, prm);
                if (sol.status == SolveOutcome::Status::unsolvable) {
                    emit(json{{"spec", spec_to_json(spec)},
                              {"status", "unsolvable"},
                              {"diagnostic", sol.diagnostic}},
                         out_path);
                    return 1;
                }
                push_element(sol.family, "random");
            }
        }
    }
    emit(out, out_path);
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
