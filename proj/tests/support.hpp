#pragma once
// Shared fixtures and helpers for the unit and acceptance tests.

#include "semiample/certificate.hpp"
#include "semiample/coxring.hpp"
#include "semiample/divisor.hpp"
#include "semiample/fan.hpp"
#include "semiample/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

using namespace semiample;

inline LatticeVector lv(std::initializer_list<long> xs) {
    LatticeVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline RationalVector rv(std::initializer_list<long> xs) {
    RationalVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Fan make_fan(std::vector<std::vector<long>> rays, std::vector<std::vector<std::size_t>> cones) {
    std::size_t d = rays.empty() ? 0 : rays[0].size();
    std::vector<LatticeVector> r;
    for (auto& x : rays) {
        LatticeVector v;
        for (long c : x) v.emplace_back(c);
        r.push_back(v);
    }
    return Fan(r, cones, d);
}

inline Fan projective_line() { return make_fan({{1}, {-1}}, {{0}, {1}}); }
inline Fan projective_plane() { return make_fan({{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {0, 2}, {1, 2}}); }
// projective plane blown up at a fixed point: extra ray (1,1)
inline Fan blowup_plane() {
    return make_fan({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 3}, {3, 1}, {1, 2}, {2, 0}});
}
inline Fan p1xp1() { return make_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
// Hirzebruch surface F_a
inline Fan hirzebruch(long a) {
    return make_fan({{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}
// fan over the faces of the simplex conv(e_1..e_d, -sum e_i)
inline Fan projective_space(std::size_t d) {
    std::vector<std::vector<long>> rays;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<long> e(d, 0);
        e[i] = 1;
        rays.push_back(e);
    }
    rays.push_back(std::vector<long>(d, -1));
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t skip = 0; skip <= d; ++skip) {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i <= d; ++i)
            if (i != skip) c.push_back(i);
        cones.push_back(c);
    }
    return make_fan(rays, cones);
}
// product of three projective lines
inline Fan p1_cubed() {
    std::vector<std::vector<long>> rays = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t a : {0, 1})
        for (std::size_t b : {2, 3})
            for (std::size_t c : {4, 5}) cones.push_back({a, b, c});
    return make_fan(rays, cones);
}

// Weighted projective 4-space P(1,1,2,2,2) and its subdivision at (0,-1,-1,-1).
inline Fan p11222() {
    std::vector<std::vector<long>> rays = {{-1, -2, -2, -2}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t skip = 0; skip < 5; ++skip) {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i < 5; ++i)
            if (i != skip) c.push_back(i);
        cones.push_back(c);
    }
    return make_fan(rays, cones);
}
inline Fan p11222_resolved() {
    std::vector<std::vector<long>> rays = {{-1, -2, -2, -2}, {1, 0, 0, 0}, {0, 1, 0, 0},
                                           {0, 0, 1, 0},     {0, 0, 0, 1}, {0, -1, -1, -1}};
    // rays 0..4 are v1..v5, ray 5 is v6
    std::vector<std::vector<std::size_t>> cones = {{0, 2, 3, 4}, {1, 2, 3, 4}, {0, 5, 2, 3}, {0, 5, 2, 4},
                                                   {0, 5, 3, 4}, {5, 1, 2, 3}, {5, 1, 2, 4}, {5, 1, 3, 4}};
    return make_fan(rays, cones);
}

// The seven-dimensional reflexive simplex from the mirror counterexample.
inline HPolytope seven_dim_system() {
    HPolytope h;
    h.ambient = 7;
    for (std::size_t i = 0; i < 7; ++i) {
        LatticeVector e(7);
        e[i] = 1;
        h.inequalities.push_back({e, Integer(-1)});
    }
    h.inequalities.push_back({lv({-2, -2, -2, -2, -3, -3, -3}), Integer(-1)});
    return h;
}

inline std::shared_ptr<const ClassGroup> class_group(Fan f) {
    return ClassGroup::create(std::make_shared<const Fan>(std::move(f)));
}

// Polynomial from (exponents, coefficient) pairs; the degree is read off the first term.
inline GradedPolynomial poly(const std::shared_ptr<const ClassGroup>& g,
                             std::vector<std::pair<std::vector<long>, long>> terms) {
    GradedPolynomial p(g->of_monomial(terms.at(0).first));
    for (auto& [a, c] : terms) p.add_term(a, c);
    return p;
}

// sum x_i^k over all variables
inline GradedPolynomial fermat(const std::shared_ptr<const ClassGroup>& g, long k) {
    std::vector<std::pair<std::vector<long>, long>> terms;
    for (std::size_t i = 0; i < g->num_vars(); ++i) {
        std::vector<long> a(g->num_vars(), 0);
        a[i] = k;
        terms.push_back({a, 1});
    }
    return poly(g, terms);
}

// Random combination of the monomial basis with small nonzero integer coefficients.
inline GradedPolynomial random_polynomial(const DegreeClass& beta, std::mt19937_64& rng, int spread = 5) {
    std::uniform_int_distribution<int> coef(-spread, spread);
    GradedPolynomial p(beta);
    for (const auto& a : beta.group->basis(beta)->monomials) {
        int c = 0;
        while (c == 0) c = coef(rng);
        p.add_term(a, c);
    }
    return p;
}

// Seeds are logged so a failing randomized run can be replayed with SEMIAMPLE_SEED.
// Sum of the monomials sitting at vertices of the section polytope: Fermat-type.
inline GradedPolynomial vertex_polynomial(const DegreeClass& beta) {
    const ClassGroup& g = *beta.group;
    TorusInvariantDivisor D(g.fan_ptr(), beta.rep);
    LatticePolytope P = divisor_polytope(D);
    GradedPolynomial f(beta);
    for (const auto& a : g.basis(beta)->monomials) {
        RationalVector m = to_rational(g.lattice_point(a, beta));
        if (std::find(P.vertices().begin(), P.vertices().end(), m) != P.vertices().end())
            f += GradedPolynomial::monomial(beta, a);
    }
    return f;
}

// Star subdivision of a simplicial fan at v, inserted in the relative interior of its
// smallest containing cone.
inline Fan stellar_subdivision(const Fan& f, const LatticeVector& v) {
    ConeRef tau = smallest_containing_cone(f, {v});
    std::vector<LatticeVector> rays = f.rays();
    const std::size_t fresh = rays.size();
    rays.push_back(v);
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& m : f.max_cones()) {
        if (!std::includes(m.rays.begin(), m.rays.end(), tau.rays.begin(), tau.rays.end())) {
            cones.push_back(m.rays);
            continue;
        }
        for (auto r : tau.rays) {
            std::vector<std::size_t> c;
            for (auto x : m.rays)
                if (x != r) c.push_back(x);
            c.push_back(fresh);
            cones.push_back(c);
        }
    }
    Fan out(rays, cones, f.ambient());
    if (!validate(out).valid) throw std::runtime_error("stellar subdivision produced an invalid fan");
    return out;
}

// Small coefficients hit the discriminant a few percent of the time; redraw until certified.
inline GradedPolynomial random_nondegenerate(const DegreeClass& beta, std::mt19937_64& rng, int spread = 5) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        GradedPolynomial f = random_polynomial(beta, rng, spread);
        if (nondegeneracy_certificate(f).certified()) return f;
    }
    throw std::runtime_error("no certified polynomial in 50 draws");
}

inline std::uint64_t seed_for(const std::string& name) {
    std::uint64_t s;
    if (const char* env = std::getenv("SEMIAMPLE_SEED")) s = std::strtoull(env, nullptr, 10);
    else s = std::random_device{}();
    std::cerr << "[seed] " << name << " = " << s << "\n";
    return s;
}

}  // namespace testsupport
