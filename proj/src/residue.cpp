#include "semiample/residue.hpp"

#include "semiample/certificate.hpp"
#include "semiample/combinatorics.hpp"
#include "semiample/divisor.hpp"
#include "semiample/errors.hpp"
#include "semiample/lattice.hpp"

#include <map>

namespace semiample {

namespace {

const char* kResidueAnchor = "toric residue isomorphism and Res_F(J_F) = d! vol";

void check_indices(const Fan& f, const IndexSet& I, std::size_t size) {
    if (I.size() != size) throw ValidationError("index set has wrong size");
    for (auto i : I)
        if (i >= f.num_rays()) throw ValidationError("index out of range");
}

std::vector<GradedPolynomial> select(const std::vector<GradedPolynomial>& F, const IndexSet& I) {
    std::vector<GradedPolynomial> out;
    for (auto i : I) out.push_back(F.at(i));
    return out;
}

Monomial complement_monomial(std::size_t n, const IndexSet& I) {
    Monomial m(n, 1);
    for (auto i : I) m[i] = 0;
    return m;
}

// Column of the unique free column when the subspace has codimension one.
std::size_t single_free_column(const GradedSubspace& s) {
    auto free = s.space.free_columns();
    if (free.size() != 1) throw PreconditionError("F has common zeros or certificate failed", kResidueAnchor);
    return free[0];
}

Rational coefficient_at(const SparseVector& v, std::size_t column) {
    for (const auto& [c, x] : v)
        if (c == column) return x;
    return 0;
}

}  // namespace

Integer det_e(const Fan& f, const IndexSet& J) {
    const std::size_t d = f.ambient();
    check_indices(f, J, d);
    IntegerMatrix m(d, d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < d; ++j) m(j, k) = f.ray(J[k])[j];
    return determinant(m);
}

Integer c_I_beta(const Fan& f, const LatticeVector& b, const IndexSet& I) {
    const std::size_t d = f.ambient();
    check_indices(f, I, d + 1);
    if (b.size() != f.num_rays()) throw ValidationError("degree vector has wrong length");
    IntegerMatrix m(d + 1, d + 1);
    for (std::size_t k = 0; k <= d; ++k) {
        m(0, k) = b[I[k]];
        for (std::size_t j = 0; j < d; ++j) m(j + 1, k) = f.ray(I[k])[j];
    }
    return determinant(m);
}

Integer c_I_beta(const DegreeClass& beta, const IndexSet& I) {
    return c_I_beta(beta.group->fan(), beta.rep, I);
}

std::vector<IndexSet> admissible_index_sets(const DegreeClass& beta, std::size_t limit) {
    const Fan& f = beta.group->fan();
    std::vector<IndexSet> out;
    if (limit == 0) return out;
    for_each_combination(f.num_rays(), f.ambient() + 1, [&](const std::vector<std::size_t>& I) {
        if (c_I_beta(f, beta.rep, I) != 0) out.push_back(I);
        return out.size() < limit;
    });
    return out;
}

GradedPolynomial polynomial_determinant(const std::vector<std::vector<GradedPolynomial>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw ValidationError("empty determinant");
    for (const auto& row : m)
        if (row.size() != n) throw ValidationError("determinant of a non-square matrix");
    if (n > 20) throw ValidationError("determinant too large");
    const ClassGroup& g = *m[0][0].degree().group;
    // minors of the trailing rows, keyed by the set of remaining columns
    std::map<unsigned long, GradedPolynomial> minors;
    minors.emplace(0UL, GradedPolynomial::monomial(g.zero(), Monomial(g.num_vars(), 0)));
    for (std::size_t r = n; r-- > 0;) {
        std::map<unsigned long, GradedPolynomial> next;
        const std::size_t size = n - r;
        for_each_combination(n, size, [&](const std::vector<std::size_t>& cols) {
            unsigned long mask = 0;
            for (auto c : cols) mask |= 1UL << c;
            GradedPolynomial acc(g.zero());
            for (std::size_t p = 0; p < cols.size(); ++p) {
                const GradedPolynomial& entry = m[r][cols[p]];
                if (entry.is_zero()) continue;
                auto it = minors.find(mask & ~(1UL << cols[p]));
                if (it == minors.end() || it->second.is_zero()) continue;
                GradedPolynomial term = entry * it->second;
                if (p % 2 == 1) term *= Rational(-1);
                acc += term;
            }
            next.emplace(mask, std::move(acc));
            return true;
        });
        minors = std::move(next);
    }
    return minors.begin()->second;
}

GradedPolynomial toric_jacobian(const std::vector<GradedPolynomial>& F, const IndexSet& I) {
    if (F.empty()) throw ValidationError("toric Jacobian of an empty family");
    const DegreeClass beta = F[0].degree();
    const Fan& fan = beta.group->fan();
    const std::size_t d = fan.ambient();
    if (F.size() != d + 1) throw ValidationError("toric Jacobian needs d + 1 polynomials");
    for (const auto& p : F)
        if (!p.is_zero() && p.degree() != beta) throw ValidationError("toric Jacobian needs a common degree");
    Integer c = c_I_beta(beta, I);
    if (c == 0) throw PreconditionError("c_I vanishes for the chosen index set", kResidueAnchor);
    std::vector<std::vector<GradedPolynomial>> m;
    for (const auto& p : F) {
        std::vector<GradedPolynomial> row;
        for (auto i : I) row.push_back(p.derivative(i));
        m.push_back(std::move(row));
    }
    GradedPolynomial det = polynomial_determinant(m);
    const Monomial hat = complement_monomial(fan.num_rays(), I);
    if (det.is_zero()) {
        // keep the degree of J_F even when it vanishes
        LatticeVector rho(fan.num_rays());
        for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = beta.rep[i] * Integer(d + 1) - 1;
        return GradedPolynomial(beta.group->of(rho));
    }
    auto q = det.divide_by_monomial(hat);
    if (!q) throw InconsistencyError("toric Jacobian determinant is not divisible by the complementary variables");
    *q *= Rational(1) / Rational(c);
    return *q;
}

GradedPolynomial toric_jacobian(const std::vector<GradedPolynomial>& F) {
    if (F.empty()) throw ValidationError("toric Jacobian of an empty family");
    auto sets = admissible_index_sets(F[0].degree(), 2);
    if (sets.empty()) {
        if (F[0].degree() == F[0].degree().group->zero())
            throw PreconditionError("no index set with nonzero c_I for the zero degree", kResidueAnchor);
        throw InconsistencyError("nonzero degree without an index set of nonzero c_I");
    }
    GradedPolynomial J = toric_jacobian(F, sets[0]);
    if (sets.size() > 1 && !(toric_jacobian(F, sets[1]) == J))
        throw InconsistencyError("toric Jacobian depends on the index set");
    return J;
}

Rational section_degree(const DegreeClass& beta) {
    TorusInvariantDivisor D(beta.group->fan_ptr(), beta.rep);
    if (!is_semiample(D)) throw PreconditionError("degree is not semiample", "semiample degree");
    return normalized_volume(divisor_polytope(D));
}

ToricResidue::ToricResidue(std::vector<GradedPolynomial> F)
    : F_(std::move(F)), jacobian_(toric_jacobian(F_)), degree_(section_degree(F_.at(0).degree())) {
    span_ = ideal_graded_piece(F_, jacobian_.degree());
    if (span_.codim() != 1) throw PreconditionError("F has common zeros or certificate failed", kResidueAnchor);
    free_column_ = single_free_column(span_);
    jacobian_coefficient_ = coefficient_at(span_.space.reduce(span_.coordinates(jacobian_)), free_column_);
    if (jacobian_coefficient_ == 0)
        throw PreconditionError("F has common zeros or certificate failed", kResidueAnchor);
}

Rational ToricResidue::operator()(const GradedPolynomial& H) const {
    Rational c = coefficient_at(span_.space.reduce(span_.coordinates(H)), free_column_);
    return c / jacobian_coefficient_ * degree_;
}

Rational toric_residue(const std::vector<GradedPolynomial>& F, const GradedPolynomial& H) {
    return ToricResidue(F)(H);
}

Rational c_ab(int a, int b, int d) {
    long e = static_cast<long>(a) * (a + 1) / 2 + static_cast<long>(b) * (b + 1) / 2 +
             static_cast<long>(a) * a + d - 1;
    Rational sign = (e % 2 == 0) ? 1 : -1;
    return sign / Rational(factorial(a) * factorial(b));
}

CupProduct::CupProduct(GradedPolynomial f)
    : f_(std::move(f)), dim_(static_cast<int>(f_.degree().group->fan().ambient())), J_(f_.degree()) {
    NondegeneracyReport cert = nondegeneracy_certificate(f_);
    if (!cert.certified())
        throw PreconditionError("f is not certified nondegenerate: " + cert.reason,
                                "nondegenerate hypersurface, weighted partials without common zeros");
    I_ = cert.index_set;
    const Integer c = c_I_beta(beta(), I_);
    J_ = toric_jacobian(select(weighted_partials(f_), I_), I_);
    J_ *= Rational(1) / Rational(c);
    degree_ = semiample::section_degree(beta());
    j0_ = j0_graded_piece(f_, J_.degree());
    free_column_ = single_free_column(j0_);
    j_coefficient_ = coefficient_at(j0_.space.reduce(j0_.coordinates(J_)), free_column_);
    if (j_coefficient_ == 0) throw InconsistencyError("cup Jacobian lies in J0 after certification");
}

DegreeClass CupProduct::level(int a) const {
    return static_cast<long>(a + 1) * beta() - f_.degree().group->anticanonical();
}

Rational CupProduct::jacobian_coefficient(const GradedPolynomial& H) const {
    return coefficient_at(j0_.space.reduce(j0_.coordinates(H)), free_column_) / j_coefficient_;
}

Rational CupProduct::eta(const GradedPolynomial& H) const {
    if (H.is_zero()) return 0;
    const ClassGroup& g = *beta().group;
    DegreeClass top = static_cast<long>(dim_ + 1) * beta() - 2L * g.anticanonical();
    if (H.degree() != top) return 0;
    return jacobian_coefficient(H.times_monomial(product_of_variables(g.num_vars()))) * degree_;
}

PairingValue CupProduct::pair(const GradedPolynomial& A, const GradedPolynomial& B, int a, int b) const {
    if (a < 0 || b < 0 || a + b != dim_ - 1) throw ValidationError("cup pairing needs a, b >= 0 with a + b = d - 1");
    if (!A.is_zero() && A.degree() != level(a)) throw ValidationError("A has the wrong degree");
    if (!B.is_zero() && B.degree() != level(b)) throw ValidationError("B has the wrong degree");
    PairingValue v;
    v.two_pi_i_exponent = dim_;
    if (A.is_zero() || B.is_zero()) return v;
    const ClassGroup& g = *beta().group;
    Rational c = jacobian_coefficient((A * B).times_monomial(product_of_variables(g.num_vars())));
    Rational sign = (dim_ % 2 == 0) ? 1 : -1;
    v.rational = c * sign * c_ab(a, b, dim_) * degree_;
    return v;
}

std::optional<GradedPolynomial> CupProduct::alternative_jacobian() const {
    for (const auto& I : admissible_index_sets(beta(), 2)) {
        if (I == I_) continue;
        GradedPolynomial J = toric_jacobian(select(weighted_partials(f_), I), I);
        J *= Rational(1) / Rational(c_I_beta(beta(), I));
        return J;
    }
    return std::nullopt;
}

GradedPolynomial cup_jacobian(const GradedPolynomial& f) { return CupProduct(f).cup_jacobian(); }

Rational eta(const GradedPolynomial& f, const GradedPolynomial& H) { return CupProduct(f).eta(H); }

PairingValue cup_pair(const GradedPolynomial& f, const GradedPolynomial& A, const GradedPolynomial& B, int a, int b) {
    return CupProduct(f).pair(A, B, a, b);
}

}  // namespace semiample
