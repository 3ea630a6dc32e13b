#pragma once

#include "semiample/coxring.hpp"

#include <optional>
#include <vector>

namespace semiample {

// Ordered tuple of ray indices; order matters for signs.
using IndexSet = std::vector<std::size_t>;

// det(<m_j, e_{i_k}>) for |J| = d, with m_j the standard basis.
Integer det_e(const Fan& f, const IndexSet& J);
// Determinant of the (d+1)x(d+1) matrix with first row (b_{i_k}) above the ray coordinates.
Integer c_I_beta(const Fan& f, const LatticeVector& b, const IndexSet& I);
Integer c_I_beta(const DegreeClass& beta, const IndexSet& I);
// Increasing index sets with nonzero constant, lexicographic, at most `limit` of them.
std::vector<IndexSet> admissible_index_sets(const DegreeClass& beta, std::size_t limit = 2);

// Leibniz-free determinant of a square matrix of polynomials (expansion by minors with memoization).
GradedPolynomial polynomial_determinant(const std::vector<std::vector<GradedPolynomial>>& m);

// J_F for F_0..F_d of a common degree: det(dF_j / dx_{i_k}) / (c_I x^_I).
GradedPolynomial toric_jacobian(const std::vector<GradedPolynomial>& F, const IndexSet& I);
// Uses the first admissible I and cross-checks against the second when there is one.
GradedPolynomial toric_jacobian(const std::vector<GradedPolynomial>& F);

// d! vol of the section polytope of beta; throws PreconditionError unless beta is semiample.
Rational section_degree(const DegreeClass& beta);

class ToricResidue {
public:
    // Throws PreconditionError when <F>_rho does not have codimension one with J_F outside it.
    explicit ToricResidue(std::vector<GradedPolynomial> F);

    Rational operator()(const GradedPolynomial& H) const;
    const GradedPolynomial& jacobian() const { return jacobian_; }
    const DegreeClass& rho() const { return span_.basis->degree; }
    const Rational& degree() const { return degree_; }
    const GradedSubspace& span() const { return span_; }

private:
    std::vector<GradedPolynomial> F_;
    GradedPolynomial jacobian_;
    GradedSubspace span_;
    Rational degree_;
    std::size_t free_column_ = 0;
    Rational jacobian_coefficient_;
};

Rational toric_residue(const std::vector<GradedPolynomial>& F, const GradedPolynomial& H);

// Value r * (2 pi sqrt(-1))^e.
struct PairingValue {
    Rational rational;
    int two_pi_i_exponent = 0;
    bool operator==(const PairingValue& o) const = default;
};

Rational c_ab(int a, int b, int d);

// Data attached to a hypersurface f in S_beta for the residue pairing: an admissible I,
// the polynomial J = J_{F_I} / c_I, and J0(f) in degree (d+1) beta - beta_0.
class CupProduct {
public:
    // Throws PreconditionError if f is not certified nondegenerate.
    explicit CupProduct(GradedPolynomial f);

    const GradedPolynomial& f() const { return f_; }
    const DegreeClass& beta() const { return f_.degree(); }
    int dim() const { return dim_; }
    const IndexSet& index_set() const { return I_; }
    const GradedPolynomial& cup_jacobian() const { return J_; }
    const Rational& section_degree() const { return degree_; }
    // (a+1) beta - beta_0
    DegreeClass level(int a) const;
    // Coefficient c with H - c J in J0(f), for H of degree (d+1) beta - beta_0.
    Rational jacobian_coefficient(const GradedPolynomial& H) const;
    // c_I Res_{F_I}(H x_1...x_n) on degree (d+1) beta - 2 beta_0, zero in other degrees.
    Rational eta(const GradedPolynomial& H) const;
    // A in S_{(a+1)beta-beta_0}, B in S_{(b+1)beta-beta_0}, a + b = d - 1.
    PairingValue pair(const GradedPolynomial& A, const GradedPolynomial& B, int a, int b) const;
    // J computed from another admissible index set, when one exists.
    std::optional<GradedPolynomial> alternative_jacobian() const;

private:
    GradedPolynomial f_;
    int dim_;
    IndexSet I_;
    GradedPolynomial J_;
    Rational degree_;
    GradedSubspace j0_;
    std::size_t free_column_ = 0;
    Rational j_coefficient_;
};

GradedPolynomial cup_jacobian(const GradedPolynomial& f);
Rational eta(const GradedPolynomial& f, const GradedPolynomial& H);
PairingValue cup_pair(const GradedPolynomial& f, const GradedPolynomial& A, const GradedPolynomial& B, int a, int b);

}  // namespace semiample
