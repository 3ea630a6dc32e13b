#include "doctest.h"
#include "support.hpp"

#include "semiample/certificate.hpp"
#include "semiample/divisor.hpp"
#include "semiample/errors.hpp"
#include "semiample/residue.hpp"

#include <functional>

using namespace semiample;
using namespace testsupport;

namespace {

std::vector<long> mono(std::initializer_list<long> xs) { return std::vector<long>(xs); }

// Exponent vectors with entries in [0, bound] whose class is gamma, found by brute force.
std::size_t brute_force_count(const DegreeClass& gamma, long bound, long cap = -1) {
    const ClassGroup& g = *gamma.group;
    std::size_t n = g.num_vars(), count = 0;
    std::vector<long> a(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            if (g.of_monomial(a) == gamma) ++count;
            return;
        }
        for (long e = 0; e <= bound; ++e) {
            if (cap >= 0 && e > cap) break;
            a[i] = e;
            rec(i + 1);
        }
        a[i] = 0;
    };
    rec(0);
    return count;
}

// Exponent vectors of total degree t in n variables with every entry at most cap.
std::size_t bounded_compositions(std::size_t n, long t, long cap) {
    if (n == 0) return t == 0 ? 1 : 0;
    std::size_t s = 0;
    for (long e = 0; e <= std::min(t, cap); ++e) s += bounded_compositions(n - 1, t - e, cap);
    return s;
}

DegreeClass multiple_of_hyperplane(const std::shared_ptr<const ClassGroup>& g, long k) {
    std::vector<long> a(g->num_vars(), 0);
    a[0] = k;
    return g->of_monomial(a);
}

}  // namespace

TEST_CASE("degree classes") {
    auto p2 = class_group(projective_plane());
    CHECK(p2->of_monomial(mono({1, 0, 0})) == p2->of_monomial(mono({0, 1, 0})));
    CHECK(p2->of_monomial(mono({1, 0, 0})) == p2->of_monomial(mono({0, 0, 1})));
    CHECK(p2->anticanonical() == multiple_of_hyperplane(p2, 3));
    CHECK(p2->free_rank() == 1);
    CHECK(p2->torsion().empty());
    auto bl = class_group(blowup_plane());
    CHECK(bl->free_rank() == 2);
    CHECK(bl->of_monomial(mono({1, 1, 0, 0})) != bl->of_monomial(mono({0, 0, 2, 0})));
    // P^2 modulo Z/3
    auto quot = class_group(make_fan({{2, -1}, {-1, 2}, {-1, -1}}, {{0, 1}, {0, 2}, {1, 2}}));
    CHECK(quot->torsion() == std::vector<Integer>{3});
    CHECK(quot->of_monomial(mono({3, 0, 0})) == quot->of_monomial(mono({0, 3, 0})));
    CHECK(quot->of_monomial(mono({1, 0, 0})) != quot->of_monomial(mono({0, 1, 0})));
    auto a = p2->of_monomial(mono({2, 1, 0}));
    CHECK(a + a == 2L * a);
    CHECK(a - a == p2->zero());
    CHECK_THROWS_AS(p2->of_monomial(mono({1, 0})), ValidationError);
}

TEST_CASE("monomial bases") {
    auto p2 = class_group(projective_plane());
    CHECK(p2->basis(multiple_of_hyperplane(p2, 3))->size() == 10);
    auto p1 = class_group(projective_line());
    auto b = monomial_basis(p1->of_monomial(mono({2, 0})));
    CHECK(b.monomials == std::vector<Monomial>{mono({2, 0}), mono({1, 1}), mono({0, 2})});
    CHECK(monomial_basis(p1->of_monomial(mono({2, 0})) - p1->anticanonical() - p1->anticanonical()).size() == 0);
    CHECK(monomial_basis(p2->zero() - p2->anticanonical()).size() == 0);
    // brute force over exponent vectors as an independent count
    auto bl = class_group(blowup_plane());
    for (auto gamma : {bl->of_monomial(mono({2, 1, 3, 0})), bl->of_monomial(mono({0, 0, 3, 1})),
                       bl->of_monomial(mono({1, 1, 1, 1}))})
        CHECK(bl->basis(gamma)->size() == brute_force_count(gamma, 6));
    auto w = class_group(p11222());
    auto beta = w->anticanonical();
    CHECK(w->basis(beta)->size() == 105);
    CHECK(w->basis(beta)->size() == brute_force_count(beta, 8));
    auto h2 = class_group(hirzebruch(2));
    auto gamma = h2->of_monomial(mono({1, 0, 2, 1}));
    CHECK(h2->basis(gamma)->size() == brute_force_count(gamma, 8));
    // lattice point of a monomial
    auto basis = p2->basis(multiple_of_hyperplane(p2, 2));
    for (const auto& a : basis->monomials) {
        LatticeVector m = p2->lattice_point(a, basis->degree);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(basis->degree.rep[i] + pairing(m, p2->fan().ray(i)) == a[i]);
    }
}

TEST_CASE("polynomials") {
    auto p2 = class_group(projective_plane());
    GradedPolynomial f = fermat(p2, 3);
    CHECK(f.terms().size() == 3);
    CHECK_THROWS_AS(poly(p2, {{mono({3, 0, 0}), 1}, {mono({1, 0, 0}), 1}}), ValidationError);
    GradedPolynomial dx = f.derivative(0);
    CHECK(dx == poly(p2, {{mono({2, 0, 0}), 3}}));
    CHECK(f.weighted_partial(1) == poly(p2, {{mono({0, 3, 0}), 3}}));
    GradedPolynomial sq = f * f;
    CHECK(sq.terms().size() == 6);
    CHECK(sq.terms().at(mono({3, 3, 0})) == 2);
    CHECK((f - f).is_zero());
    auto q = poly(p2, {{mono({2, 1, 1}), 1}}).divide_by_monomial(mono({1, 1, 1}));
    REQUIRE(q);
    CHECK(*q == poly(p2, {{mono({1, 0, 0}), 1}}));
    CHECK_FALSE(f.divide_by_monomial(mono({1, 0, 0})));
}

TEST_CASE("ideal pieces and reduction") {
    auto p2 = class_group(projective_plane());
    GradedPolynomial f = fermat(p2, 3);
    auto gens = weighted_partials(f);
    CHECK(ideal_graded_piece(gens, multiple_of_hyperplane(p2, 3)).dim() == 3);
    // degree 6: every monomial except x^2 y^2 z^2 is divisible by a cube
    CHECK(ideal_graded_piece(gens, multiple_of_hyperplane(p2, 6)).dim() ==
          bounded_compositions(3, 6, 6) - bounded_compositions(3, 6, 2));
    CHECK(ideal_graded_piece({}, multiple_of_hyperplane(p2, 3)).dim() == 0);
    auto x3 = poly(p2, {{mono({3, 0, 0}), 1}});
    CHECK(reduce_modulo(ideal_graded_piece({x3}, x3.degree()), x3).is_zero());
    auto xyz = poly(p2, {{mono({1, 1, 1}), 1}});
    CHECK(reduce_modulo(j0_graded_piece(f, xyz.degree()), xyz) == xyz);
    auto x4y = poly(p2, {{mono({4, 1, 0}), 1}});
    CHECK(reduce_modulo(j0_graded_piece(f, x4y.degree()), x4y).is_zero());
    CHECK_THROWS_AS(reduce_modulo(j0_graded_piece(f, xyz.degree()), x4y), ValidationError);
}

TEST_CASE("Fermat R1 dimensions against exponent counting") {
    auto p2 = class_group(projective_plane());
    GradedPolynomial cubic = fermat(p2, 3);
    CHECK(r1_dim(cubic, p2->zero()) == 1);
    CHECK(r1_dim(cubic, multiple_of_hyperplane(p2, 3)) == 1);
    CHECK(r1_dim(cubic, multiple_of_hyperplane(p2, 3)) == bounded_compositions(3, 3, 1));
    auto p3 = class_group(projective_space(3));
    GradedPolynomial quartic = fermat(p3, 4);
    CHECK(r1_dim(quartic, multiple_of_hyperplane(p3, 4)) == 19);
    CHECK(r1_dim(quartic, multiple_of_hyperplane(p3, 4)) == bounded_compositions(4, 4, 2));
    auto p4 = class_group(projective_space(4));
    GradedPolynomial quintic = fermat(p4, 5);
    std::vector<std::size_t> dims;
    for (long a = 0; a <= 3; ++a) dims.push_back(r1_dim(quintic, multiple_of_hyperplane(p4, 5 * a)));
    CHECK(dims == std::vector<std::size_t>{1, 101, 101, 1});
    for (long a = 0; a <= 3; ++a) CHECK(dims[a] == bounded_compositions(5, 5 * a, 3));
    // J = (x^2, y^2, z^2) leaves xyz in degree 3; J0 = (x^3, y^3, z^3) only removes the cubes
    CHECK(r_dim(cubic, multiple_of_hyperplane(p2, 3)) == bounded_compositions(3, 3, 1));
    CHECK(r0_dim(cubic, multiple_of_hyperplane(p2, 3)) == bounded_compositions(3, 3, 2));
}

TEST_CASE("nondegeneracy certificate") {
    auto p2 = class_group(projective_plane());
    CHECK(nondegeneracy_certificate(fermat(p2, 3)).certified());
    auto bad = nondegeneracy_certificate(poly(p2, {{mono({3, 0, 0}), 1}}));
    CHECK_FALSE(bad.certified());
    CHECK_FALSE(bad.reason.empty());
    auto p4 = class_group(projective_space(4));
    CHECK(nondegeneracy_certificate(fermat(p4, 5)).certified());
    // semiample but not ample: pullback of a cubic to the blowup
    auto bl = class_group(blowup_plane());
    auto pulled = poly(bl, {{mono({3, 0, 0, 3}), 1}, {mono({0, 3, 0, 3}), 1}, {mono({0, 0, 3, 0}), 1}});
    CHECK(nondegeneracy_certificate(pulled).certified());
}

TEST_CASE("ring properties on random polynomials") {
    std::mt19937_64 rng(seed_for("coxring properties"));
    struct Case {
        Fan fan;
        std::vector<long> degree;
    };
    std::vector<Case> cases = {{projective_plane(), {3, 0, 0}},
                               {p1xp1(), {2, 2, 0, 0}},
                               {blowup_plane(), {0, 0, 3, 0}},
                               {hirzebruch(1), {1, 1, 1, 1}},
                               {projective_space(3), {4, 0, 0, 0}}};
    for (auto& c : cases) {
        auto g = class_group(c.fan);
        DegreeClass beta = g->of_monomial(c.degree);
        GradedPolynomial f = random_nondegenerate(beta, rng);
        // J0 inside J1
        GradedSubspace j1 = j1_graded_piece(f, beta);
        for (const auto& Fi : weighted_partials(f)) CHECK(j1.contains(Fi));
        // R1 in degree beta - beta_0 counts interior points of the section polytope
        TorusInvariantDivisor D(g->fan_ptr(), beta.rep);
        CHECK(r1_dim(f, beta - g->anticanonical()) == count_interior_points(divisor_polytope(D)));
        // Euler formula for every admissible I
        for (const auto& I : admissible_index_sets(beta, 1000)) {
            const std::size_t d = g->fan().ambient();
            GradedPolynomial rhs(beta);
            for (std::size_t k = 0; k <= d; ++k) {
                IndexSet rest;
                for (std::size_t t = 0; t <= d; ++t)
                    if (t != k) rest.push_back(I[t]);
                Rational coef = Rational(det_e(g->fan(), rest)) * (k % 2 == 0 ? 1 : -1);
                rhs += coef * f.weighted_partial(I[k]);
            }
            CHECK(Rational(c_I_beta(beta, I)) * f == rhs);
        }
    }
}
