// Walks the main library surface: build a canonical form, compare the
// dimension formula with the brute-force tangent oracle, generate a few
// isotropy elements, and verify them.

#include <iostream>

#include <isotropy/isotropy.hpp>

using namespace isotropy;

int main() {
    CanonicalSpec spec;
    spec.eigen = EigenClass::negative_real(1.0);
    spec.alpha = {2, 1};
    spec.mult = {1, 2};

    CMatrix h = canonical_form(spec);
    std::cout << "canonical form is " << h.rows() << "x" << h.cols()
              << ", Hermitian residual " << fro_norm(CMatrix(h - h.adjoint())) << "\n";

    std::cout << "isotropy group dimension: formula " << dimension(spec) << ", tangent oracle "
              << tangent_dimension(h) << "\n";

    GeneratorSet gs = generator_set(spec, 2, /*seed=*/7);
    std::cout << "sampled " << gs.o_part.size() << " block-diagonal and " << gs.v_part.size()
              << " unipotent generators\n";
    for (const auto& e : gs.v_part) {
        VerificationReport rep = verify_element(spec, e.element.q);
        NilpotencyResult nil = nilpotency_order(e.element.q);
        std::cout << "  unipotent generator: pass=" << rep.pass << " order=" << nil.order
                  << " residuals (orth, consim, cong) = " << rep.residual_orth << ", "
                  << rep.residual_consim << ", " << rep.residual_cong << "\n";
    }

    // product of two elements is again an element
    CMatrix q = CMatrix(gs.o_part.back().element.q * gs.v_part.front().element.q);
    std::cout << "product re-verifies: " << verify_element(spec, q).pass << "\n";
    return 0;
}
