#pragma once

#include "semiample/fan.hpp"
#include "semiample/linalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace semiample {

using Monomial = std::vector<long>;  // exponent per ray

class ClassGroup;
struct GradedPieceBasis;

// Element of Z^n modulo the image of M under m -> (<m, e_i>)_i.
struct DegreeClass {
    std::shared_ptr<const ClassGroup> group;
    LatticeVector rep;  // canonical representative
    LatticeVector key;  // torsion coordinates reduced, then free coordinates

    bool operator==(const DegreeClass& o) const { return key == o.key; }
    bool operator!=(const DegreeClass& o) const { return !(*this == o); }
};
DegreeClass operator+(const DegreeClass& a, const DegreeClass& b);
DegreeClass operator-(const DegreeClass& a, const DegreeClass& b);
DegreeClass operator*(long k, const DegreeClass& a);

class ClassGroup : public std::enable_shared_from_this<ClassGroup> {
public:
    static std::shared_ptr<const ClassGroup> create(std::shared_ptr<const Fan> fan);

    const Fan& fan() const { return *fan_; }
    const std::shared_ptr<const Fan>& fan_ptr() const { return fan_; }
    std::size_t num_vars() const { return fan_->num_rays(); }
    std::size_t free_rank() const;
    std::vector<Integer> torsion() const;

    DegreeClass of(const LatticeVector& b) const;
    DegreeClass of_monomial(const Monomial& a) const;
    DegreeClass zero() const;
    DegreeClass variable(std::size_t i) const;
    DegreeClass anticanonical() const;  // class of x_1 ... x_n

    // Cached monomial basis of S_gamma.
    std::shared_ptr<const GradedPieceBasis> basis(const DegreeClass& gamma) const;
    // m with a_i = rep_i + <m, e_i>, for a monomial of degree gamma.
    LatticeVector lattice_point(const Monomial& a, const DegreeClass& gamma) const;

private:
    explicit ClassGroup(std::shared_ptr<const Fan> fan);

    std::shared_ptr<const Fan> fan_;
    SmithForm smith_;
    std::size_t rank_;
    mutable std::mutex cache_mutex_;
    mutable std::map<LatticeVector, std::shared_ptr<const GradedPieceBasis>> cache_;
};

bool degrees_equal(const DegreeClass& a, const DegreeClass& b);
DegreeClass degree_of_monomial(const ClassGroup& g, const Monomial& a);

struct GradedPieceBasis {
    DegreeClass degree;
    std::vector<Monomial> monomials;  // descending lexicographic order
    std::map<Monomial, std::size_t> index;

    std::size_t size() const { return monomials.size(); }
    std::optional<std::size_t> find(const Monomial& a) const;
};
GradedPieceBasis monomial_basis(const DegreeClass& gamma);

class GradedPolynomial {
public:
    explicit GradedPolynomial(DegreeClass degree);
    // Throws ValidationError if a term has the wrong length, a negative exponent or the wrong degree.
    GradedPolynomial(DegreeClass degree, const std::map<Monomial, Rational>& terms);
    static GradedPolynomial monomial(const DegreeClass& degree, const Monomial& a, const Rational& c = 1);
    static GradedPolynomial from_monomial(const ClassGroup& g, const Monomial& a, const Rational& c = 1);

    const DegreeClass& degree() const { return degree_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    std::size_t num_vars() const;
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& a, const Rational& c);
    GradedPolynomial derivative(std::size_t i) const;
    GradedPolynomial weighted_partial(std::size_t i) const;  // x_i d/dx_i
    GradedPolynomial times_monomial(const Monomial& a) const;
    std::optional<GradedPolynomial> divide_by_monomial(const Monomial& a) const;

    GradedPolynomial& operator+=(const GradedPolynomial& o);
    GradedPolynomial& operator-=(const GradedPolynomial& o);
    GradedPolynomial& operator*=(const Rational& c);
    bool operator==(const GradedPolynomial& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

private:
    DegreeClass degree_;
    std::map<Monomial, Rational> terms_;
};
GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b);
GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b);
GradedPolynomial operator*(const Rational& c, GradedPolynomial a);
GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b);

Monomial product_of_variables(std::size_t n);
std::vector<GradedPolynomial> partials(const GradedPolynomial& f);
std::vector<GradedPolynomial> weighted_partials(const GradedPolynomial& f);

// A subspace of S_gamma in echelon form over the monomial basis.
struct GradedSubspace {
    std::shared_ptr<const GradedPieceBasis> basis;
    EchelonSpace space;

    std::size_t dim() const { return space.dim(); }
    std::size_t ambient_dim() const { return basis->size(); }
    std::size_t codim() const { return ambient_dim() - dim(); }
    // Throws ValidationError on degree mismatch.
    SparseVector coordinates(const GradedPolynomial& h) const;
    GradedPolynomial polynomial(const SparseVector& v) const;
    bool contains(const GradedPolynomial& h) const;
    // Monomials indexing the non-pivot columns; their cosets form a basis of the quotient.
    std::vector<Monomial> standard_monomials() const;
};

GradedSubspace ideal_graded_piece(const std::vector<GradedPolynomial>& generators, const DegreeClass& gamma);
GradedSubspace jacobian_graded_piece(const GradedPolynomial& f, const DegreeClass& gamma);  // J(f)
GradedSubspace j0_graded_piece(const GradedPolynomial& f, const DegreeClass& gamma);
// {h in S_gamma : h x_1...x_n in J0(f)}
GradedSubspace j1_graded_piece(const GradedPolynomial& f, const DegreeClass& gamma);
std::size_t r_dim(const GradedPolynomial& f, const DegreeClass& gamma);
std::size_t r0_dim(const GradedPolynomial& f, const DegreeClass& gamma);
std::size_t r1_dim(const GradedPolynomial& f, const DegreeClass& gamma);

// Canonical coset representative of h modulo the subspace, as a polynomial.
GradedPolynomial reduce_modulo(const GradedSubspace& s, const GradedPolynomial& h);

}  // namespace semiample
