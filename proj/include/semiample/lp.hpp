#pragma once

#include "semiample/matrix.hpp"

#include <optional>

namespace semiample {

// Exact feasibility of { x in Q^n : A x >= b, E x = e } by a phase-one simplex with
// Bland's rule. Returns a feasible point or nothing.
std::optional<RationalVector> find_feasible_point(const RationalMatrix& A, const RationalVector& b,
                                                  const RationalMatrix& E, const RationalVector& e);

}  // namespace semiample
