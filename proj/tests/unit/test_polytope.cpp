#include "doctest.h"
#include "support.hpp"

#include "semiample/errors.hpp"

#include <set>

using namespace semiample;
using testsupport::lv;
using testsupport::rv;

namespace {

HPolytope unit_triangle() {
    return {2, {{lv({1, 0}), 0}, {lv({0, 1}), 0}, {lv({-1, -1}), -1}}};
}

LatticePolytope standard_simplex(std::size_t d, long k) {
    std::vector<LatticeVector> pts{LatticeVector(d)};
    for (std::size_t i = 0; i < d; ++i) {
        LatticeVector e(d);
        e[i] = k;
        pts.push_back(e);
    }
    return LatticePolytope::from_points(pts, d);
}

LatticePolytope cube(std::size_t d) {
    std::vector<LatticeVector> pts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        LatticeVector v(d);
        for (std::size_t j = 0; j < d; ++j) v[j] = (mask >> j) & 1;
        pts.push_back(v);
    }
    return LatticePolytope::from_points(pts, d);
}

// Independent oracle: count integer points in a box satisfying all facet inequalities.
std::size_t brute_count(const LatticePolytope& p, long lo, long hi, bool interior) {
    std::size_t d = p.ambient(), n = 0;
    std::vector<long> x(d, lo);
    for (;;) {
        RationalVector r(d);
        for (std::size_t j = 0; j < d; ++j) r[j] = x[j];
        if (interior ? p.contains_in_relative_interior(r) : p.contains(r)) ++n;
        std::size_t j = 0;
        while (j < d && x[j] == hi) x[j++] = lo;
        if (j == d) break;
        ++x[j];
    }
    return n;
}

}  // namespace

TEST_CASE("vertices from inequalities") {
    LatticePolytope t = vertices_from_inequalities(unit_triangle());
    CHECK(t.vertices() == std::vector<RationalVector>{rv({0, 0}), rv({0, 1}), rv({1, 0})});
    CHECK(t.dim() == 2);
    CHECK(t.facets().size() == 3);

    LatticePolytope seg = vertices_from_inequalities({1, {{lv({1}), 0}, {lv({-1}), -2}}});
    CHECK(seg.vertices() == std::vector<RationalVector>{rv({0}), rv({2})});

    LatticePolytope delta = vertices_from_inequalities(testsupport::seven_dim_system());
    CHECK(delta.dim() == 7);
    CHECK(delta.vertices().size() == 8);
    CHECK(is_reflexive(delta));

    CHECK_THROWS_AS(vertices_from_inequalities({2, {{lv({1, 0}), 0}, {lv({0, 1}), 0}}}), PreconditionError);
    CHECK(vertices_from_inequalities({1, {{lv({1}), 1}, {lv({-1}), 0}}}).is_empty());
    // a redundant inequality is neither a facet nor a problem
    HPolytope h = unit_triangle();
    h.inequalities.push_back({lv({1, 1}), -5});
    CHECK(vertices_from_inequalities(h) == t);
    // implicit equality gives a lower-dimensional polytope
    LatticePolytope flat = vertices_from_inequalities({2, {{lv({1, 0}), 0}, {lv({-1, 0}), 0}, {lv({0, 1}), 0}, {lv({0, -1}), -3}}});
    CHECK(flat.dim() == 1);
    CHECK(count_lattice_points(flat) == 4);
}

TEST_CASE("lattice points and interior points") {
    LatticePolytope t = vertices_from_inequalities(unit_triangle());
    CHECK(lattice_points(t).size() == 3);
    CHECK(relative_interior_points(t).empty());
    CHECK(count_lattice_points(standard_simplex(4, 5)) == 126);
    CHECK(count_interior_points(standard_simplex(4, 5)) == 1);

    LatticePolytope dual = dual_polytope(vertices_from_inequalities(testsupport::seven_dim_system()));
    auto pts = lattice_points(dual);
    CHECK(pts.size() == 9);
    CHECK(std::find(pts.begin(), pts.end(), LatticeVector(7)) != pts.end());

    // the doubled 4-face conv(n0..n4) of the dual has the interior point (-1,-1,-1,-1,-2,-2,-2)
    std::vector<LatticeVector> face = {lv({-2, -2, -2, -2, -3, -3, -3}), lv({1, 0, 0, 0, 0, 0, 0}),
                                       lv({0, 1, 0, 0, 0, 0, 0}), lv({0, 0, 1, 0, 0, 0, 0}), lv({0, 0, 0, 1, 0, 0, 0})};
    LatticePolytope gamma = LatticePolytope::from_points(face, 7);
    CHECK(gamma.dim() == 4);
    CHECK(count_interior_points(gamma) == 0);
    auto inner = relative_interior_points(dilate(gamma, 2));
    CHECK(inner == std::vector<LatticeVector>{lv({-1, -1, -1, -1, -2, -2, -2})});

    LatticePolytope tri = LatticePolytope::from_points(
        std::vector<LatticeVector>{lv({-1, -1, -1, -1, 5, -1, -1}), lv({-1, -1, -1, -1, -1, 5, -1}),
                                   lv({-1, -1, -1, -1, -1, -1, 5})},
        7);
    auto tri_inner = relative_interior_points(tri);
    CHECK(std::find(tri_inner.begin(), tri_inner.end(), lv({-1, -1, -1, -1, 1, 1, 1})) != tri_inner.end());
    CHECK(tri_inner.size() == 10);  // interior points of 6 times a unimodular triangle: C(5,2)

    // a point polytope is its own relative interior
    LatticePolytope pt = LatticePolytope::from_points(std::vector<LatticeVector>{lv({3, -1})}, 2);
    CHECK(count_interior_points(pt) == 1);
    // a rational point has none
    LatticePolytope half = LatticePolytope::from_points(std::vector<RationalVector>{{Rational(1, 2)}}, 1);
    CHECK(count_lattice_points(half) == 0);
}

TEST_CASE("lattice point counts agree with a brute-force box scan") {
    std::mt19937_64 rng(testsupport::seed_for("lattice point oracle"));
    std::uniform_int_distribution<int> coord(-3, 3), npts(1, 7), dim(1, 3);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t d = dim(rng);
        std::vector<LatticeVector> pts(npts(rng), LatticeVector(d));
        for (auto& v : pts)
            for (auto& x : v) x = coord(rng);
        LatticePolytope p = LatticePolytope::from_points(pts, d);
        std::size_t all = count_lattice_points(p), inner = count_interior_points(p);
        CHECK(all == brute_count(p, -3, 3, false));
        CHECK(inner == brute_count(p, -3, 3, true));
        CHECK(lattice_points(p).size() == all);
        // invariance under a unimodular map and an integral translation
        IntegerMatrix u = IntegerMatrix::identity(d);
        if (d > 1) u(0, d - 1) = 2;
        std::vector<LatticeVector> moved;
        for (const auto& v : pts) {
            LatticeVector w = u * v;
            w[0] += 5;
            moved.push_back(w);
        }
        LatticePolytope q = LatticePolytope::from_points(moved, d);
        CHECK(count_lattice_points(q) == all);
        CHECK(count_interior_points(q) == inner);
        CHECK(normalized_volume(q) == normalized_volume(p));
        // monotone under inclusion
        pts.push_back(LatticeVector(d, Integer(coord(rng))));
        CHECK(count_lattice_points(LatticePolytope::from_points(pts, d)) >= all);
        if (p.is_full_dimensional()) {
            std::size_t boundary = 0;
            for (const auto& x : lattice_points(p))
                if (!p.contains_in_relative_interior(to_rational(x))) ++boundary;
            CHECK(inner + boundary == all);
        }
    }
}

TEST_CASE("faces") {
    LatticePolytope t = vertices_from_inequalities(unit_triangle());
    CHECK(faces(t, 1).size() == 3);
    CHECK(faces(t, 0).size() == 3);
    CHECK(faces(t, 2).size() == 1);
    CHECK(faces(cube(3), 2).size() == 6);
    CHECK(faces(cube(3), 1).size() == 12);
    LatticePolytope dual = dual_polytope(vertices_from_inequalities(testsupport::seven_dim_system()));
    CHECK(faces(dual, 0).size() == 8);
    CHECK(faces(dual, 4).size() == 56);
    CHECK_THROWS_AS(faces(t, 3), ValidationError);
}

TEST_CASE("normalized volume") {
    CHECK(normalized_volume(vertices_from_inequalities(unit_triangle())) == 1);
    CHECK(normalized_volume(LatticePolytope::from_points(std::vector<LatticeVector>{lv({-2}), lv({0})}, 1)) == 2);
    CHECK(normalized_volume(standard_simplex(4, 5)) == 625);
    CHECK(normalized_volume(cube(3)) == 6);
    // lower-dimensional: the segment from (0,0) to (2,2) has lattice length 2
    CHECK(normalized_volume(LatticePolytope::from_points(std::vector<LatticeVector>{lv({0, 0}), lv({2, 2})}, 2)) == 2);
    CHECK(normalized_volume(LatticePolytope::empty(2)) == 0);
}

TEST_CASE("normalized volume is additive over pulling triangulations") {
    std::mt19937_64 rng(testsupport::seed_for("volume additivity"));
    std::uniform_int_distribution<int> coord(-2, 2), npts(3, 7), dim(2, 3);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t d = dim(rng);
        std::vector<LatticeVector> pts(npts(rng) + d, LatticeVector(d));
        for (auto& v : pts)
            for (auto& x : v) x = coord(rng);
        LatticePolytope p = LatticePolytope::from_points(pts, d);
        if (!p.is_full_dimensional()) continue;
        auto lp = lattice_points(p);
        std::vector<std::size_t> order(lp.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        auto simplices = pulling_triangulation(lp, order);
        Rational total = 0;
        for (const auto& s : simplices) {
            std::vector<LatticeVector> vs;
            for (auto i : s) vs.push_back(lp[i]);
            total += normalized_volume(LatticePolytope::from_points(vs, d));
        }
        CHECK(total == normalized_volume(p));
        // every lattice point was pulled, so in rank 2 each triangle is unimodular
        if (d == 2)
            for (const auto& s : simplices)
                CHECK(normalized_volume(LatticePolytope::from_points(
                          std::vector<LatticeVector>{lp[s[0]], lp[s[1]], lp[s[2]]}, 2)) == 1);
    }
}

TEST_CASE("dilation") {
    LatticePolytope seg = LatticePolytope::from_points(std::vector<LatticeVector>{lv({0}), lv({1})}, 1);
    CHECK(dilate(seg, 2).vertices() == std::vector<RationalVector>{rv({0}), rv({2})});
    CHECK(count_lattice_points(dilate(vertices_from_inequalities(unit_triangle()), 2)) == 6);
}

TEST_CASE("reflexive duality") {
    LatticePolytope delta = vertices_from_inequalities(testsupport::seven_dim_system());
    LatticePolytope dual = dual_polytope(delta);
    std::set<LatticeVector> expected = {lv({-2, -2, -2, -2, -3, -3, -3})};
    for (std::size_t i = 0; i < 7; ++i) {
        LatticeVector e(7);
        e[i] = 1;
        expected.insert(e);
    }
    std::set<LatticeVector> got;
    for (const auto& v : dual.vertices()) got.insert(to_lattice(v));
    CHECK(got == expected);
    CHECK(dual_polytope(dual) == delta);

    for (const auto& f : all_faces(delta)) {
        Face g = dual_face(delta, f);
        CHECK(f.dim + g.dim == 6);
    }
    // the 2-face with vertices (-1,-1,-1,-1,5,-1,-1), ... is dual to conv(n0..n4)
    Face tri;
    for (std::size_t i = 0; i < delta.vertices().size(); ++i) {
        const auto& v = delta.vertices()[i];
        if (v[0] == -1 && v[1] == -1 && v[2] == -1 && v[3] == -1 &&
            (v[4] == 5 || v[5] == 5 || v[6] == 5))
            tri.vertices.push_back(i);
    }
    REQUIRE(tri.vertices.size() == 3);
    tri.dim = 2;
    Face g = dual_face(delta, tri);
    std::set<LatticeVector> gv;
    for (auto i : g.vertices) gv.insert(to_lattice(dual.vertices()[i]));
    std::set<LatticeVector> want = {lv({-2, -2, -2, -2, -3, -3, -3}), lv({1, 0, 0, 0, 0, 0, 0}), lv({0, 1, 0, 0, 0, 0, 0}),
                                    lv({0, 0, 1, 0, 0, 0, 0}), lv({0, 0, 0, 1, 0, 0, 0})};
    CHECK(gv == want);

    LatticePolytope diamond = LatticePolytope::from_points(
        std::vector<LatticeVector>{lv({1, 0}), lv({-1, 0}), lv({0, 1}), lv({0, -1})}, 2);
    CHECK(is_reflexive(diamond));
    CHECK(dual_polytope(diamond).vertices().size() == 4);
    LatticePolytope square = dual_polytope(diamond);
    for (const auto& v : square.vertices()) CHECK((abs(v[0]) == 1 && abs(v[1]) == 1));
    CHECK_FALSE(is_reflexive(cube(2)));
    CHECK_THROWS_AS(dual_polytope(cube(2)), PreconditionError);
}

TEST_CASE("normal fans") {
    Fan f = normal_fan(vertices_from_inequalities(unit_triangle()));
    CHECK(same_cones(f, testsupport::projective_plane()));
    Fan sq = normal_fan(cube(2));
    CHECK(sq.num_rays() == 4);
    CHECK(sq.max_cones().size() == 4);
    LatticePolytope delta = vertices_from_inequalities(testsupport::seven_dim_system());
    Fan w = normal_fan(delta);
    FanDiagnostics diag = validate(w);
    CHECK(diag.complete);
    CHECK(diag.simplicial);
    CHECK(w.num_rays() == 8);
    // cone-face correspondence: k-cones <-> (d-k)-faces
    for (int k = 0; k <= 7; ++k) CHECK(w.cones(k).size() == faces(delta, 7 - k).size());
    CHECK_THROWS_AS(normal_fan(LatticePolytope::from_points(std::vector<LatticeVector>{lv({0, 0}), lv({1, 0})}, 2)),
                    PreconditionError);
}
