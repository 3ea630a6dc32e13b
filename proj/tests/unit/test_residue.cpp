#include "doctest.h"
#include "support.hpp"

#include "semiample/certificate.hpp"
#include "semiample/divisor.hpp"
#include "semiample/errors.hpp"
#include "semiample/residue.hpp"

#include <optional>

using namespace semiample;
using namespace testsupport;

namespace {

std::vector<long> mono(std::initializer_list<long> xs) { return std::vector<long>(xs); }

DegreeClass multiple_of_hyperplane(const std::shared_ptr<const ClassGroup>& g, long k) {
    std::vector<long> a(g->num_vars(), 0);
    a[0] = k;
    return g->of_monomial(a);
}

// Top self-intersection, computed through the divisor module as an independent route.
Rational top_intersection(const DegreeClass& beta) {
    TorusInvariantDivisor D(beta.group->fan_ptr(), beta.rep);
    return intersection_number(D, static_cast<int>(beta.group->fan().ambient()), ConeRef{{}, 0});
}

// Fermat polynomial plus a few random monomials of the same degree; keeps elimination sparse in dim 3.
GradedPolynomial sparse_perturbation(const DegreeClass& beta, std::mt19937_64& rng, std::size_t extra) {
    auto basis = beta.group->basis(beta);
    long k = 0;
    for (long x : basis->monomials.front()) k += x;
    GradedPolynomial f = fermat(beta.group, k);
    std::uniform_int_distribution<std::size_t> pick(0, basis->size() - 1);
    std::uniform_int_distribution<int> coef(1, 3);
    for (int attempt = 0; attempt < 50; ++attempt) {
        GradedPolynomial g = f;
        for (std::size_t t = 0; t < extra; ++t)
            g += Rational(coef(rng)) * GradedPolynomial::monomial(beta, basis->monomials[pick(rng)]);
        if (nondegeneracy_certificate(g).certified()) return g;
    }
    return f;
}

GradedPolynomial random_in(const GradedSubspace& s, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-3, 3);
    GradedPolynomial p(s.basis->degree);
    for (const auto& row : s.space.basis_rows()) {
        GradedPolynomial r = s.polynomial(row);
        p += Rational(coef(rng)) * r;
    }
    return p;
}

}  // namespace

TEST_CASE("c_I constants") {
    auto p1 = class_group(projective_line());
    CHECK(c_I_beta(p1->fan(), lv({2, 0}), {0, 1}) == -2);
    auto p2 = class_group(projective_plane());
    CHECK(c_I_beta(p2->fan(), lv({3, 0, 0}), {0, 1, 2}) == 3);
    CHECK(c_I_beta(multiple_of_hyperplane(p2, 3), {0, 1, 2}) == 3);
    // repeated ray direction: the columns of two equal rays coincide
    auto doubled = make_fan({{1, 0}, {0, 1}, {-1, -1}, {1, 0}}, {{0, 1}, {0, 2}, {1, 2}});
    (void)doubled;
    CHECK_THROWS_AS(c_I_beta(p2->fan(), lv({3, 0, 0}), {0, 1}), ValidationError);
    CHECK(det_e(p2->fan(), {0, 1}) == 1);
    CHECK(det_e(p2->fan(), {1, 2}) == 1);
}

TEST_CASE("toric Jacobian and residue on the projective line") {
    auto p1 = class_group(projective_line());
    GradedPolynomial x2 = poly(p1, {{mono({2, 0}), 1}});
    GradedPolynomial y2 = poly(p1, {{mono({0, 2}), 1}});
    GradedPolynomial J = toric_jacobian({x2, y2});
    CHECK(J == poly(p1, {{mono({1, 1}), -2}}));
    ToricResidue res({x2, y2});
    CHECK(res(J) == 2);
    CHECK(res(poly(p1, {{mono({1, 1}), 1}})) == -1);
    CHECK(res(poly(p1, {{mono({2, 0}), 1}})) == 0);
    CHECK(res.degree() == 2);
    CHECK(toric_jacobian({x2, x2}).is_zero());
    CHECK_THROWS_AS(ToricResidue({x2, x2}), PreconditionError);
}

TEST_CASE("toric Jacobian of the Fermat cubic partials") {
    auto p2 = class_group(projective_plane());
    std::vector<GradedPolynomial> F;
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<long> a(3, 0);
        a[i] = 3;
        F.push_back(poly(p2, {{a, 1}}));
    }
    // det diag(3x^2, 3y^2, 3z^2) / c_I with c_I = 3
    CHECK(toric_jacobian(F) == poly(p2, {{mono({2, 2, 2}), 9}}));
    CHECK(ToricResidue(F)(poly(p2, {{mono({2, 2, 2}), 1}})) == Rational(1));
}

TEST_CASE("residue normalization on random certified families") {
    std::mt19937_64 rng(seed_for("residue normalization"));
    struct Case {
        Fan fan;
        std::vector<long> degree;
    };
    std::vector<Case> cases = {{projective_line(), {3, 0}},
                               {projective_plane(), {2, 0, 0}},
                               {p1xp1(), {1, 1, 0, 0}},
                               {blowup_plane(), {0, 0, 2, 0}},
                               {hirzebruch(1), {1, 1, 1, 1}}};
    for (auto& c : cases) {
        auto g = class_group(c.fan);
        DegreeClass beta = g->of_monomial(c.degree);
        for (int trial = 0; trial < 2; ++trial) {
            std::vector<GradedPolynomial> F;
            std::optional<ToricResidue> built;
            // redraw the rare families with a common zero
            for (int attempt = 0; attempt < 50 && !built; ++attempt) {
                F.clear();
                for (std::size_t j = 0; j <= g->fan().ambient(); ++j) F.push_back(random_polynomial(beta, rng));
                try {
                    built.emplace(F);
                } catch (const PreconditionError&) {
                }
            }
            REQUIRE(built);
            ToricResidue& res = *built;
            CHECK(res(res.jacobian()) == top_intersection(beta));
            CHECK(res(random_in(res.span(), rng)) == 0);
        }
    }
}

TEST_CASE("c_I identities") {
    std::mt19937_64 rng(seed_for("c_I identities"));
    std::uniform_int_distribution<int> coef(-4, 4);
    for (Fan fan : {projective_plane(), blowup_plane(), hirzebruch(3), p1_cubed(), p11222_resolved()}) {
        const std::size_t n = fan.num_rays(), d = fan.ambient();
        for (int trial = 0; trial < 5; ++trial) {
            LatticeVector b(n), m(d);
            for (auto& x : b) x = coef(rng);
            for (auto& x : m) x = coef(rng);
            LatticeVector shifted = b;
            for (std::size_t i = 0; i < n; ++i) shifted[i] += pairing(m, fan.ray(i));
            std::vector<std::size_t> all(n);
            for (std::size_t i = 0; i < n; ++i) all[i] = i;
            std::shuffle(all.begin(), all.end(), rng);
            IndexSet I(all.begin(), all.begin() + d + 1);
            CHECK(c_I_beta(fan, b, I) == c_I_beta(fan, shifted, I));
            // replacing i_k by j, with j moved to the front
            for (std::size_t j = 0; j < n; ++j) {
                Integer total = c_I_beta(fan, b, I) * b[j];
                for (std::size_t k = 0; k <= d; ++k) {
                    IndexSet J{j};
                    for (std::size_t t = 0; t <= d; ++t)
                        if (t != k) J.push_back(I[t]);
                    Integer term = c_I_beta(fan, b, J) * b[I[k]];
                    total += (k % 2 == 0) ? -term : term;
                }
                CHECK(total == 0);
            }
        }
    }
}

TEST_CASE("cup Jacobian, eta and the pairing on the Fermat cubic") {
    auto p2 = class_group(projective_plane());
    GradedPolynomial f = fermat(p2, 3);
    CupProduct cup(f);
    // det diag(9x^3, 9y^3, 9z^3) / (c_I^2 xyz) with c_I = 3
    CHECK(cup.cup_jacobian() == poly(p2, {{mono({2, 2, 2}), 81}}));
    CHECK(cup.section_degree() == 9);
    GradedPolynomial xyz = poly(p2, {{mono({1, 1, 1}), 1}});
    CHECK(cup.eta(xyz) == Rational(1, 9));
    CHECK(cup.eta(poly(p2, {{mono({3, 0, 0}), 1}})) == 0);
    CHECK(cup.eta(poly(p2, {{mono({1, 0, 0}), 1}})) == 0);
    GradedPolynomial one = GradedPolynomial::monomial(p2->zero(), mono({0, 0, 0}));
    PairingValue v = cup.pair(one, xyz, 0, 1);
    CHECK(v.rational == Rational(1, 9));
    CHECK(v.two_pi_i_exponent == 2);
    PairingValue w = cup.pair(xyz, one, 1, 0);
    CHECK(w.rational == v.rational * c_ab(1, 0, 2) / c_ab(0, 1, 2));
    CHECK(w.rational == -v.rational);
    CHECK_THROWS_AS(cup.pair(one, xyz, 0, 0), ValidationError);
    CHECK_THROWS_AS(CupProduct(poly(p2, {{mono({3, 0, 0}), 1}})), PreconditionError);
}

TEST_CASE("c_ab constants") {
    CHECK(c_ab(0, 1, 2) == 1);
    CHECK(c_ab(1, 0, 2) == -1);
    CHECK(c_ab(1, 2, 4) == Rational(1, 2));
    CHECK(c_ab(2, 1, 4) == Rational(-1, 2));
    CHECK(c_ab(0, 3, 4) == Rational(-1, 6));
    CHECK(c_ab(3, 0, 4) == Rational(1, 6));
}

TEST_CASE("cup Jacobian across admissible index sets") {
    std::mt19937_64 rng(seed_for("cup jacobian index sets"));
    // P^2 has a single index set; use fans with more rays than d + 1
    auto pp = class_group(p1xp1());
    auto bl = class_group(blowup_plane());
    for (auto beta : {pp->of_monomial(mono({2, 2, 0, 0})), bl->of_monomial(mono({1, 1, 1, 1}))}) {
        GradedPolynomial f = random_nondegenerate(beta, rng);
        CupProduct cup(f);
        auto alt = cup.alternative_jacobian();
        REQUIRE(alt);
        GradedSubspace j0 = j0_graded_piece(f, alt->degree());
        CHECK(j0.contains(*alt - cup.cup_jacobian()));
        CHECK(cup.jacobian_coefficient(*alt) == 1);
    }
}

TEST_CASE("pairing properties on random hypersurfaces") {
    std::mt19937_64 rng(seed_for("pairing properties"));
    std::uniform_int_distribution<int> coef(-3, 3);
    struct Case {
        Fan fan;
        std::vector<long> degree;
        bool sparse = false;
    };
    std::vector<Case> cases = {{projective_plane(), {3, 0, 0}},
                               {blowup_plane(), {1, 1, 1, 1}},
                               {p1xp1(), {2, 2, 0, 0}},
                               {projective_space(3), {4, 0, 0, 0}, true}};
    for (auto& c : cases) {
        auto g = class_group(c.fan);
        DegreeClass beta = g->of_monomial(c.degree);
        GradedPolynomial f = c.sparse ? sparse_perturbation(beta, rng, 3) : random_nondegenerate(beta, rng);
        CupProduct cup(f);
        const int d = cup.dim();
        for (int a = 0; a <= d - 1; ++a) {
            const int b = d - 1 - a;
            GradedSubspace ja = j1_graded_piece(f, cup.level(a));
            GradedSubspace jb = j1_graded_piece(f, cup.level(b));
            GradedPolynomial A = random_polynomial(cup.level(a), rng, 3);
            GradedPolynomial A2 = random_polynomial(cup.level(a), rng, 3);
            GradedPolynomial B = random_polynomial(cup.level(b), rng, 3);
            if (A.is_zero() || B.is_zero()) continue;
            PairingValue base = cup.pair(A, B, a, b);
            // coset invariance in both slots
            CHECK(cup.pair(A + random_in(ja, rng), B, a, b) == base);
            CHECK(cup.pair(A, B + random_in(jb, rng), a, b) == base);
            CHECK(cup.pair(random_in(ja, rng), B, a, b).rational == 0);
            // bilinearity
            Rational s = coef(rng), t = coef(rng);
            CHECK(cup.pair(s * A + t * A2, B, a, b).rational ==
                  s * base.rational + t * cup.pair(A2, B, a, b).rational);
            // swapping the slots scales by the ratio of constants
            CHECK(cup.pair(B, A, b, a).rational * c_ab(a, b, d) == base.rational * c_ab(b, a, d));
            // eta of the product agrees with the pairing
            Rational sign = (d % 2 == 0) ? 1 : -1;
            CHECK(base.rational == sign * c_ab(a, b, d) * cup.eta(A * B));
            // eta is well defined on R1 cosets in the top degree
            GradedSubspace top = j1_graded_piece(f, A.degree() + B.degree());
            CHECK(cup.eta(A * B + random_in(top, rng)) == cup.eta(A * B));
        }
    }
}
