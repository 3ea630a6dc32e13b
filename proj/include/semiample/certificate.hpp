#pragma once

#include "semiample/coxring.hpp"

#include <string>
#include <vector>

namespace semiample {

enum class Nondegeneracy { certified, inconclusive };

struct NondegeneracyReport {
    Nondegeneracy verdict = Nondegeneracy::inconclusive;
    std::vector<std::size_t> index_set;
    std::size_t codimension = 0;      // of <F_i : i in I> in degree (d+1) beta - beta_0
    bool jacobian_outside = false;    // J_F not in that span
    std::string reason;

    bool certified() const { return verdict == Nondegeneracy::certified; }
};

// Sufficient test that the weighted partials x_i df/dx_i have no common zero.
// Throws InconsistencyError when beta != 0 has no admissible index set.
NondegeneracyReport nondegeneracy_certificate(const GradedPolynomial& f);

}  // namespace semiample
