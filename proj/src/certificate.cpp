#include "semiample/certificate.hpp"

#include "semiample/divisor.hpp"
#include "semiample/errors.hpp"
#include "semiample/residue.hpp"

namespace semiample {

NondegeneracyReport nondegeneracy_certificate(const GradedPolynomial& f) {
    NondegeneracyReport r;
    const DegreeClass& beta = f.degree();
    const ClassGroup& g = *beta.group;
    auto sets = admissible_index_sets(beta, 1);
    if (sets.empty()) {
        if (beta == g.zero()) {
            r.reason = "zero degree";
            return r;
        }
        throw InconsistencyError("nonzero degree without an index set of nonzero c_I");
    }
    r.index_set = sets[0];
    if (!is_semiample(TorusInvariantDivisor(g.fan_ptr(), beta.rep))) {
        r.reason = "degree is not semiample";
        return r;
    }
    std::vector<GradedPolynomial> F;
    for (auto i : r.index_set) F.push_back(f.weighted_partial(i));
    GradedPolynomial J = toric_jacobian(F, r.index_set);
    GradedSubspace span = ideal_graded_piece(F, J.degree());
    r.codimension = span.codim();
    r.jacobian_outside = !J.is_zero() && !span.contains(J);
    if (r.codimension == 1 && r.jacobian_outside) {
        r.verdict = Nondegeneracy::certified;
    } else if (r.codimension != 1) {
        r.reason = "weighted partials span a subspace of codimension " + std::to_string(r.codimension);
    } else {
        r.reason = "toric Jacobian lies in the span of the weighted partials";
    }
    return r;
}

}  // namespace semiample
