#pragma once

#include "semiample/matrix.hpp"

#include <optional>
#include <vector>

namespace semiample {

Integer pairing(const LatticeVector& m, const LatticeVector& n);
Rational pairing(const RationalVector& m, const LatticeVector& n);
Rational pairing(const RationalVector& m, const RationalVector& n);

Integer content(const LatticeVector& v);  // gcd of the entries, 0 for the zero vector
LatticeVector primitivize(const LatticeVector& v);
// Smallest positive multiple of a rational vector that is integral, then made primitive.
LatticeVector primitive_direction(const RationalVector& v);

bool is_zero(const LatticeVector& v);

Integer determinant(const IntegerMatrix& a);  // Bareiss
std::size_t rank(const IntegerMatrix& a);

// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SmithForm {
    IntegerMatrix U, V, D;
    IntegerMatrix U_inverse, V_inverse;
    std::vector<Integer> invariants;  // the nonzero diagonal entries, length = rank
    std::size_t rank() const { return invariants.size(); }
};
SmithForm smith_normal_form(const IntegerMatrix& a);

// Basis of {x in Z^cols : A x = 0}; the basis vectors span a saturated sublattice.
std::vector<LatticeVector> integer_kernel(const IntegerMatrix& a);
// Some x in Z^cols with A x = b, if one exists.
std::optional<LatticeVector> solve_integer(const IntegerMatrix& a, const LatticeVector& b);

// Index of the subgroup generated by independent vectors inside the lattice points of
// their real span: product of the Smith invariant factors.
Integer cone_multiplicity(const std::vector<LatticeVector>& generators);

// The quotient N -> N / (saturation of span(S)). `projection` has rank(S) fewer rows
// than columns and maps Z^d onto Z^(d-k); `lift` gives a preimage of a quotient vector.
class QuotientLattice {
public:
    QuotientLattice(const std::vector<LatticeVector>& span, std::size_t ambient);
    std::size_t ambient() const { return ambient_; }
    std::size_t rank() const { return projection_.rows(); }
    LatticeVector project(const LatticeVector& v) const;
    LatticeVector lift(const LatticeVector& q) const;
    const IntegerMatrix& projection() const { return projection_; }

private:
    std::size_t ambient_;
    IntegerMatrix projection_;
    IntegerMatrix section_;  // projection * section = identity
};

}  // namespace semiample
